#pragma once

// Semantic Location History summary: time at places vs. travelling, distance
// travelled and an anonymized top three of visited places, per year.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "portkit/result.hpp"
#include "portkit/takeout.hpp"

namespace portkit::gslh {

inline constexpr std::int64_t kMsPerDay = 86'400'000;

/// Throws NegativeDuration for ms < 0.
double ms_to_days(std::int64_t ms);
/// Throws NegativeDistance for meters < 0.
double meters_to_km(double meters);

struct MonthTotals {
  int month = 0;
  std::int64_t place_ms = 0;
  std::int64_t travel_ms = 0;
  double distance_m = 0.0;
};

struct LabeledPlace {
  std::string label;  // "Place <n>"
  std::int64_t visit_count = 0;
  friend bool operator==(const LabeledPlace&, const LabeledPlace&) = default;
};

struct YearSummary {
  int year = 0;
  double days_at_places = 0.0;
  double days_travelling = 0.0;
  double km_travelled = 0.0;
  double pct_time_at_places = 0.0;
  std::int64_t distinct_places = 0;
  std::vector<LabeledPlace> top_places;
  std::vector<MonthTotals> months;  // ascending, only months with items

  friend bool operator==(const YearSummary&, const YearSummary&) = default;
};

/// Hands out `Place 1`, `Place 2`, ... in first-seen order; an address keeps
/// its label for the lifetime of the labeler.
class PlaceLabeler {
 public:
  int index_of(const std::string& address);
  std::string label(const std::string& address) { return "Place " + std::to_string(index_of(address)); }
  [[nodiscard]] int next_index() const noexcept { return next_index_; }

 private:
  std::map<std::string, int> assignment_;
  int next_index_ = 1;
};

struct PlaceTally {
  std::int64_t count = 0;
  std::int64_t first_visit_ms = INT64_MAX;
};

using YearTallies = std::pair<int, std::map<std::string, PlaceTally>>;
using YearLabels = std::pair<int, std::vector<LabeledPlace>>;

/// Top three addresses per year, relabeled through one shared labeler.
/// Ordering: count desc, first visit asc, address asc. Years must ascend.
std::vector<YearLabels> label_top_places(const std::vector<YearTallies>& per_year);

/// One summary per distinct UTC year of item start, ascending.
std::vector<YearSummary> summarize_years(const std::vector<SemanticMonth>& months);

const ExtractorDescriptor& descriptor();

/// Explanation text plus the per-year table. Contains no address,
/// place id or coordinate.
ExtractionResult render_result(const std::vector<YearSummary>& summaries);

}  // namespace portkit::gslh
