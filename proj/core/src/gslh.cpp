#include "portkit/gslh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "portkit/error.hpp"

namespace portkit::gslh {

namespace {

constexpr std::size_t kTopPlaces = 3;

struct CivilMonth {
  int year;
  int month;
};

CivilMonth utc_month(std::int64_t ms) {
  using namespace std::chrono;
  const auto days = floor<std::chrono::days>(sys_time<milliseconds>{milliseconds{ms}});
  const year_month_day ymd{days};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month()))};
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

struct YearAccumulator {
  std::map<int, MonthTotals> months;
  std::map<std::string, PlaceTally> places;
};

constexpr const char* kListing = R"(# Semantic Location History extraction
for each file Takeout/Location History/Semantic Location History/<YEAR>/<YEAR>_<MONTH>.json:
    for each item in timelineObjects:
        year = UTC year of the item's start timestamp
        if item is placeVisit:
            place_ms[year] += end - start
            visits[year][address] += 1
        if item is activitySegment:
            travel_ms[year] += end - start
            meters[year] += distance
        (items missing required fields are skipped)
for each year, ascending:
    days at places   = place_ms / 86,400,000
    days travelling  = travel_ms / 86,400,000
    km travelled     = meters / 1000
    % time at places = 100 * place_ms / (place_ms + travel_ms)
    places visited   = number of distinct addresses
    top 3 places     = three most visited addresses (ties: earliest first visit,
                       then alphabetical), shown only as "Place <n>" where n
                       counts up the first time an address enters any top 3
addresses, place ids and coordinates are never shown or shared
)";

}  // namespace

double ms_to_days(std::int64_t ms) {
  if (ms < 0) throw Error(ErrorCode::NegativeDuration, "negative duration: " + std::to_string(ms) + " ms");
  return static_cast<double>(ms) / static_cast<double>(kMsPerDay);
}

double meters_to_km(double meters) {
  if (meters < 0.0) throw Error(ErrorCode::NegativeDistance, "negative distance: " + std::to_string(meters) + " m");
  return meters / 1000.0;
}

int PlaceLabeler::index_of(const std::string& address) {
  auto [it, inserted] = assignment_.try_emplace(address, next_index_);
  if (inserted) ++next_index_;
  return it->second;
}

std::vector<YearLabels> label_top_places(const std::vector<YearTallies>& per_year) {
  for (std::size_t i = 1; i < per_year.size(); ++i) {
    if (per_year[i - 1].first >= per_year[i].first) {
      throw std::invalid_argument("label_top_places: years must be strictly ascending");
    }
  }
  PlaceLabeler labeler;
  std::vector<YearLabels> out;
  out.reserve(per_year.size());
  for (const auto& [year, tallies] : per_year) {
    std::vector<std::pair<std::string, PlaceTally>> ranked(tallies.begin(), tallies.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second.count != b.second.count) return a.second.count > b.second.count;
      if (a.second.first_visit_ms != b.second.first_visit_ms) return a.second.first_visit_ms < b.second.first_visit_ms;
      return a.first < b.first;
    });
    if (ranked.size() > kTopPlaces) ranked.resize(kTopPlaces);
    std::vector<LabeledPlace> labels;
    for (const auto& [address, tally] : ranked) labels.push_back({labeler.label(address), tally.count});
    out.emplace_back(year, std::move(labels));
  }
  return out;
}

std::vector<YearSummary> summarize_years(const std::vector<SemanticMonth>& months) {
  std::map<int, YearAccumulator> years;
  for (const auto& month : months) {
    for (const auto& item : month.timeline) {
      const auto when = utc_month(start_ms(item));
      auto& acc = years[when.year];
      auto& totals = acc.months[when.month];
      totals.month = when.month;
      if (const auto* visit = std::get_if<PlaceVisit>(&item)) {
        totals.place_ms += visit->end_ms - visit->start_ms;
        auto& tally = acc.places[visit->address];
        ++tally.count;
        tally.first_visit_ms = std::min(tally.first_visit_ms, visit->start_ms);
      } else {
        const auto& segment = std::get<ActivitySegment>(item);
        totals.travel_ms += segment.end_ms - segment.start_ms;
        totals.distance_m += segment.distance_m;
      }
    }
  }

  std::vector<YearTallies> tallies;
  std::vector<YearSummary> out;
  for (auto& [year, acc] : years) {
    YearSummary s;
    s.year = year;
    std::int64_t place_ms = 0;
    std::int64_t travel_ms = 0;
    double meters = 0.0;
    for (const auto& [m, totals] : acc.months) {
      place_ms += totals.place_ms;
      travel_ms += totals.travel_ms;
      meters += totals.distance_m;
      s.months.push_back(totals);
    }
    s.days_at_places = ms_to_days(place_ms);
    s.days_travelling = ms_to_days(travel_ms);
    s.km_travelled = meters_to_km(meters);
    const std::int64_t total = place_ms + travel_ms;
    s.pct_time_at_places = total == 0 ? 0.0 : 100.0 * static_cast<double>(place_ms) / static_cast<double>(total);
    s.distinct_places = static_cast<std::int64_t>(acc.places.size());
    tallies.emplace_back(year, std::move(acc.places));
    out.push_back(std::move(s));
  }

  auto labels = label_top_places(tallies);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].top_places = std::move(labels[i].second);
  return out;
}

const ExtractorDescriptor& descriptor() {
  static const ExtractorDescriptor d{"gslh", "1.0.0", "Google Semantic Location History", kListing};
  return d;
}

ExtractionResult render_result(const std::vector<YearSummary>& summaries) {
  ExtractionResult result;
  result.extractor = descriptor();
  result.blocks.emplace_back(TextBlock{
      "This overview was computed on your device from your Google Semantic Location History. "
      "Each row covers one calendar year (UTC). "
      "\"Places visited\" is the number of different places you visited. "
      "\"Days at places\" is the total time you spent at places and \"Days travelling\" the total time spent "
      "moving between them, both in days. "
      "\"Km travelled\" is the total distance of all your trips in kilometers. "
      "\"% time at places\" is the share of time at places out of time at places plus travelling. "
      "\"Top place\" columns show your three most visited places of that year with the number of visits; "
      "addresses are replaced by \"Place 1\", \"Place 2\" and so on, and a new number is used whenever a "
      "different place enters a top three. No addresses or coordinates are included."});

  TableBlock table;
  table.title = "Location history per year";
  table.columns = {"Year",           "Places visited",    "Days at places", "Days travelling", "Km travelled",
                   "% time at places", "Top place 1", "Top place 2",    "Top place 3"};
  for (const auto& s : summaries) {
    std::vector<Cell> row{static_cast<std::int64_t>(s.year), s.distinct_places, round2(s.days_at_places),
                          round2(s.days_travelling),         round2(s.km_travelled), round2(s.pct_time_at_places)};
    for (std::size_t i = 0; i < kTopPlaces; ++i) {
      if (i < s.top_places.size()) {
        row.emplace_back(s.top_places[i].label + " (" + std::to_string(s.top_places[i].visit_count) + " visits)");
      } else {
        row.emplace_back(std::string{});
      }
    }
    table.rows.push_back(std::move(row));
  }
  result.blocks.emplace_back(std::move(table));
  return result;
}

}  // namespace portkit::gslh
