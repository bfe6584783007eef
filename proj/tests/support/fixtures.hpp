#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "portkit/archive.hpp"

namespace portkit::fixtures {

inline std::string place_visit(const std::string& address, std::int64_t start, std::int64_t end,
                               std::int64_t lat = 520907000, std::int64_t lng = 51214000,
                               const std::string& place_id = "ChIJfixture") {
  return R"({"placeVisit":{"location":{"latitudeE7":)" + std::to_string(lat) + R"(,"longitudeE7":)" +
         std::to_string(lng) + R"(,"placeId":")" + place_id + R"(","address":")" + address +
         R"("},"duration":{"startTimestampMs":")" + std::to_string(start) + R"(","endTimestampMs":")" +
         std::to_string(end) + R"("}}})";
}

inline std::string activity(std::int64_t start, std::int64_t end, double meters,
                            const std::string& type = "WALKING") {
  return R"({"activitySegment":{"startLocation":{"latitudeE7":520907000,"longitudeE7":51214000},)"
         R"("endLocation":{"latitudeE7":520917000,"longitudeE7":51224000},"duration":{"startTimestampMs":)" +
         std::to_string(start) + R"(,"endTimestampMs":)" + std::to_string(end) + R"(},"distance":)" +
         std::to_string(meters) + R"(,"activityType":")" + type + R"("}})";
}

inline std::string month_doc(const std::vector<std::string>& items) {
  std::string out = R"({"timelineObjects":[)";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out + "]}";
}

inline DdpArchive archive_of(const std::vector<std::pair<std::string, std::string>>& files,
                             std::string name = "fixture.zip") {
  DdpArchive a{std::move(name)};
  for (const auto& [path, text] : files) a.add(path, Bytes(text.begin(), text.end()));
  return a;
}

inline Bytes zip_of(const std::vector<std::pair<std::string, std::string>>& files) {
  return write_zip(archive_of(files));
}

inline std::string browser_visit(const std::string& url, std::int64_t time_usec,
                                 const std::string& title = "Some page title",
                                 const std::string& client_id = "Zq8Kc0Lm2P", const std::string& transition = "LINK") {
  return R"({"page_transition":")" + transition + R"(","title":")" + title + R"(","url":")" + url +
         R"(","client_id":")" + client_id + R"(","time_usec":)" + std::to_string(time_usec) + "}";
}

inline std::string browser_doc(const std::vector<std::string>& visits) {
  std::string out = R"({"Browser History":[)";
  for (std::size_t i = 0; i < visits.size(); ++i) {
    if (i) out += ',';
    out += visits[i];
  }
  return out + "]}";
}

// 2019-03-01T00:00:00Z and friends, in ms.
inline constexpr std::int64_t kMar2019Ms = 1551398400000;
inline constexpr std::int64_t kHourMs = 3'600'000;

}  // namespace portkit::fixtures
