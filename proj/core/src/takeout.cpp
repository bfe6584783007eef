#include "portkit/takeout.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <regex>

#include "portkit/error.hpp"

namespace portkit {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "JANUARY", "FEBRUARY", "MARCH",     "APRIL",   "MAY",      "JUNE",
    "JULY",    "AUGUST",   "SEPTEMBER", "OCTOBER", "NOVEMBER", "DECEMBER"};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Takeout writes millisecond timestamps as strings, other exporters as numbers.
std::optional<std::int64_t> read_integer(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (it->is_number_integer()) return it->get<std::int64_t>();
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e18) return static_cast<std::int64_t>(v);
    return std::nullopt;
  }
  if (it->is_string()) {
    const auto& s = it->get_ref<const std::string&>();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return v;
  }
  return std::nullopt;
}

std::optional<double> read_number(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) return std::nullopt;
  const double v = it->get<double>();
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::string> read_string(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

const json* child_object(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_object()) return nullptr;
  return &*it;
}

std::optional<GeoPointE7> read_point(const json& obj) {
  auto lat = read_integer(obj, "latitudeE7");
  auto lng = read_integer(obj, "longitudeE7");
  if (!lat || !lng) return std::nullopt;
  GeoPointE7 p{*lat, *lng};
  if (!p.valid()) return std::nullopt;
  return p;
}

struct Span {
  std::int64_t start;
  std::int64_t end;
};

std::optional<Span> read_duration(const json& item) {
  const json* duration = child_object(item, "duration");
  if (!duration) return std::nullopt;
  auto start = read_integer(*duration, "startTimestampMs");
  auto end = read_integer(*duration, "endTimestampMs");
  if (!start || !end || *end < *start) return std::nullopt;
  return Span{*start, *end};
}

std::optional<PlaceVisit> read_place_visit(const json& raw) {
  if (!raw.is_object()) return std::nullopt;
  const json* location = child_object(raw, "location");
  if (!location) return std::nullopt;
  auto point = read_point(*location);
  auto address = read_string(*location, "address");
  auto span = read_duration(raw);
  if (!point || !address || !span) return std::nullopt;
  PlaceVisit v;
  v.location = *point;
  v.address = std::move(*address);
  v.place_id = read_string(*location, "placeId").value_or("");
  v.start_ms = span->start;
  v.end_ms = span->end;
  return v;
}

std::optional<ActivitySegment> read_activity(const json& raw) {
  if (!raw.is_object()) return std::nullopt;
  const json* from = child_object(raw, "startLocation");
  const json* to = child_object(raw, "endLocation");
  if (!from || !to) return std::nullopt;
  auto a = read_point(*from);
  auto b = read_point(*to);
  auto span = read_duration(raw);
  auto distance = read_number(raw, "distance");
  if (!a || !b || !span || !distance || *distance < 0.0) return std::nullopt;
  ActivitySegment s;
  s.start_location = *a;
  s.end_location = *b;
  s.start_ms = span->start;
  s.end_ms = span->end;
  s.distance_m = *distance;
  s.activity_type = read_string(raw, "activityType").value_or("UNKNOWN_ACTIVITY_TYPE");
  return s;
}

json parse_entry(const DdpArchive::Entry& entry) {
  json doc = json::parse(entry.data.begin(), entry.data.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedJson, "'" + entry.path + "' is not valid JSON");
  return doc;
}

json point_json(const GeoPointE7& p) {
  return json{{"latitudeE7", p.latitude_e7}, {"longitudeE7", p.longitude_e7}};
}

json duration_json(std::int64_t start, std::int64_t end) {
  return json{{"startTimestampMs", std::to_string(start)}, {"endTimestampMs", std::to_string(end)}};
}

}  // namespace

GeoPointE7 GeoPointE7::from_degrees(double latitude, double longitude) {
  return GeoPointE7{std::llround(latitude * kScale), std::llround(longitude * kScale)};
}

bool GeoPointE7::valid() const noexcept {
  return latitude_e7 >= -90 * kScale && latitude_e7 <= 90 * kScale && longitude_e7 >= -180 * kScale &&
         longitude_e7 <= 180 * kScale;
}

std::int64_t start_ms(const TimelineItem& item) noexcept {
  return std::visit([](const auto& v) { return v.start_ms; }, item);
}

std::int64_t end_ms(const TimelineItem& item) noexcept {
  return std::visit([](const auto& v) { return v.end_ms; }, item);
}

PageTransition PageTransition::parse(std::string_view raw) {
  PageTransition t;
  if (raw == "LINK") {
    t.kind_ = Kind::Link;
  } else if (raw == "GENERATED") {
    t.kind_ = Kind::Generated;
  } else if (raw == "RELOAD") {
    t.kind_ = Kind::Reload;
  } else {
    t.kind_ = Kind::Other;
    t.other_ = std::string(raw);
  }
  return t;
}

std::string PageTransition::str() const {
  switch (kind_) {
    case Kind::Link: return "LINK";
    case Kind::Generated: return "GENERATED";
    case Kind::Reload: return "RELOAD";
    case Kind::Other: break;
  }
  return other_;
}

std::string_view month_name(int month) {
  if (month < 1 || month > 12) throw std::out_of_range("month out of range");
  return kMonthNames[static_cast<std::size_t>(month - 1)];
}

std::string semantic_month_path(int year, int month) {
  const auto y = std::to_string(year);
  return "Takeout/Location History/Semantic Location History/" + y + "/" + y + "_" + std::string(month_name(month)) +
         ".json";
}

SemanticParse parse_semantic_months(const DdpArchive& archive) {
  static const std::regex layout(R"((?:^|/)semantic location history/\d{4}/(\d{4})_([a-z]+)\.json$)",
                                 std::regex::icase | std::regex::optimize);
  SemanticParse out;
  bool matched_any = false;
  for (const auto& entry : archive.entries()) {
    std::smatch m;
    if (!std::regex_search(entry.path, m, layout)) continue;
    const auto name = upper(m[2].str());
    auto it = std::find(kMonthNames.begin(), kMonthNames.end(), name);
    if (it == kMonthNames.end()) continue;
    matched_any = true;

    const json doc = parse_entry(entry);
    if (!doc.is_object()) throw Error(ErrorCode::MalformedJson, "'" + entry.path + "' is not a JSON object");

    SemanticMonth month;
    month.year = std::stoi(m[1].str());
    month.month = static_cast<int>(it - kMonthNames.begin()) + 1;

    auto objects = doc.find("timelineObjects");
    if (objects != doc.end()) {
      if (!objects->is_array()) {
        throw Error(ErrorCode::MalformedJson, "'" + entry.path + "': timelineObjects is not a list");
      }
      for (const auto& obj : *objects) {
        std::optional<TimelineItem> item;
        if (obj.is_object()) {
          if (auto pv = obj.find("placeVisit"); pv != obj.end()) {
            if (auto v = read_place_visit(*pv)) item = std::move(*v);
          } else if (auto as = obj.find("activitySegment"); as != obj.end()) {
            if (auto s = read_activity(*as)) item = std::move(*s);
          }
        }
        if (item) {
          month.timeline.push_back(std::move(*item));
        } else {
          ++out.skipped;
        }
      }
    }
    out.months.push_back(std::move(month));
  }
  if (!matched_any) {
    throw Error(ErrorCode::NoSemanticHistory, "no Semantic Location History month files found in '" +
                                                  archive.source_name() + "'");
  }
  return out;
}

BrowserParse parse_browser_history(const DdpArchive& archive) {
  const DdpArchive::Entry* found = nullptr;
  for (const auto& entry : archive.entries()) {
    const auto slash = entry.path.rfind('/');
    const auto base = slash == std::string::npos ? entry.path : entry.path.substr(slash + 1);
    if (lower(base) == "browserhistory.json") {
      found = &entry;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::NoBrowserHistory, "no BrowserHistory.json found");

  const json doc = parse_entry(*found);
  if (!doc.is_object()) throw Error(ErrorCode::MalformedJson, "'" + found->path + "' is not a JSON object");
  auto list = doc.find("Browser History");
  if (list == doc.end() || !list->is_array()) {
    throw Error(ErrorCode::MalformedJson, "'" + found->path + "' has no 'Browser History' list");
  }

  BrowserParse out;
  out.visits.reserve(list->size());
  for (const auto& raw : *list) {
    if (!raw.is_object()) {
      ++out.skipped;
      continue;
    }
    auto url = read_string(raw, "url");
    auto time = read_integer(raw, "time_usec");
    if (!url || url->empty() || !time || *time < 0) {
      ++out.skipped;
      continue;
    }
    BrowserVisit v;
    v.page_transition = PageTransition::parse(read_string(raw, "page_transition").value_or(""));
    v.title = read_string(raw, "title").value_or("");
    v.url = std::move(*url);
    v.client_id = read_string(raw, "client_id").value_or("");
    v.time_usec = *time;
    out.visits.push_back(std::move(v));
  }
  return out;
}

json to_takeout_json(const SemanticMonth& month) {
  json objects = json::array();
  for (const auto& item : month.timeline) {
    if (const auto* v = std::get_if<PlaceVisit>(&item)) {
      json location = point_json(v->location);
      location["placeId"] = v->place_id;
      location["address"] = v->address;
      objects.push_back(json{{"placeVisit", {{"location", location}, {"duration", duration_json(v->start_ms, v->end_ms)}}}});
    } else {
      const auto& s = std::get<ActivitySegment>(item);
      json segment{{"startLocation", point_json(s.start_location)},
                   {"endLocation", point_json(s.end_location)},
                   {"duration", duration_json(s.start_ms, s.end_ms)},
                   {"activityType", s.activity_type}};
      if (s.distance_m == std::floor(s.distance_m) && s.distance_m < 9.0e15) {
        segment["distance"] = static_cast<std::int64_t>(s.distance_m);
      } else {
        segment["distance"] = s.distance_m;
      }
      objects.push_back(json{{"activitySegment", std::move(segment)}});
    }
  }
  return json{{"timelineObjects", std::move(objects)}};
}

json to_takeout_json(const std::vector<BrowserVisit>& visits) {
  json list = json::array();
  for (const auto& v : visits) {
    list.push_back(json{{"page_transition", v.page_transition.str()},
                        {"title", v.title},
                        {"url", v.url},
                        {"client_id", v.client_id},
                        {"time_usec", v.time_usec}});
  }
  return json{{"Browser History", std::move(list)}};
}

}  // namespace portkit
