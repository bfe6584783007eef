#pragma once

// Typed records for the two Google Takeout products the extractors consume,
// plus tolerant ingestion from a DdpArchive.

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "portkit/archive.hpp"

namespace portkit {

struct GeoPointE7 {
  std::int64_t latitude_e7 = 0;
  std::int64_t longitude_e7 = 0;

  static constexpr std::int64_t kScale = 10'000'000;

  static GeoPointE7 from_degrees(double latitude, double longitude);
  [[nodiscard]] double latitude_deg() const noexcept {
    return static_cast<double>(latitude_e7) / kScale;
  }
  [[nodiscard]] double longitude_deg() const noexcept {
    return static_cast<double>(longitude_e7) / kScale;
  }
  [[nodiscard]] bool valid() const noexcept;

  friend bool operator==(const GeoPointE7&, const GeoPointE7&) = default;
};

struct PlaceVisit {
  GeoPointE7 location;
  std::string address;
  std::string place_id;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;

  friend bool operator==(const PlaceVisit&, const PlaceVisit&) = default;
};

struct ActivitySegment {
  GeoPointE7 start_location;
  GeoPointE7 end_location;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  double distance_m = 0.0;
  std::string activity_type;

  friend bool operator==(const ActivitySegment&, const ActivitySegment&) = default;
};

using TimelineItem = std::variant<PlaceVisit, ActivitySegment>;

std::int64_t start_ms(const TimelineItem& item) noexcept;
std::int64_t end_ms(const TimelineItem& item) noexcept;

struct SemanticMonth {
  int year = 0;
  int month = 1;  // 1..12
  std::vector<TimelineItem> timeline;

  friend bool operator==(const SemanticMonth&, const SemanticMonth&) = default;
};

struct SemanticParse {
  std::vector<SemanticMonth> months;
  std::size_t skipped = 0;
};

class PageTransition {
 public:
  enum class Kind { Link, Generated, Reload, Other };

  PageTransition() = default;
  static PageTransition parse(std::string_view raw);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// The wire spelling, e.g. "LINK" or the preserved unknown value.
  [[nodiscard]] std::string str() const;

  friend bool operator==(const PageTransition&, const PageTransition&) = default;

 private:
  Kind kind_ = Kind::Other;
  std::string other_;
};

struct BrowserVisit {
  PageTransition page_transition;
  std::string title;
  std::string url;
  std::string client_id;
  std::int64_t time_usec = 0;

  friend bool operator==(const BrowserVisit&, const BrowserVisit&) = default;
};

struct BrowserParse {
  std::vector<BrowserVisit> visits;
  std::size_t skipped = 0;
};

/// English uppercase month name used in Takeout file names ("JANUARY").
std::string_view month_name(int month);

/// `Takeout/Location History/Semantic Location History/<Y>/<Y>_<MONTH>.json`
std::string semantic_month_path(int year, int month);
inline constexpr std::string_view kBrowserHistoryPath = "Takeout/Chrome/BrowserHistory.json";

/// Parses every Semantic Location History month file in the archive.
///
/// Items lacking required fields (or violating record invariants) are
/// skipped and counted. Unknown fields are ignored.
/// Throws NoSemanticHistory or MalformedJson.
SemanticParse parse_semantic_months(const DdpArchive& archive);

/// Parses the first entry named `BrowserHistory.json` (case-insensitive).
/// Throws NoBrowserHistory or MalformedJson.
BrowserParse parse_browser_history(const DdpArchive& archive);

// Takeout-shaped JSON, used by the simulator and for round-trip checks.
nlohmann::json to_takeout_json(const SemanticMonth& month);
nlohmann::json to_takeout_json(const std::vector<BrowserVisit>& visits);

}  // namespace portkit
