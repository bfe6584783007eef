#pragma once

// Seeded generators for synthetic Takeout packages with known ground truth.

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "portkit/archive.hpp"
#include "portkit/browser_history.hpp"
#include "portkit/takeout.hpp"
#include "portkit/timezone.hpp"

namespace portkit::sim {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

/// Thin wrapper over mt19937_64 whose derived draws are fully specified
/// (no implementation-defined std distributions), so output is stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform01() < p; }
  /// Index drawn proportionally to non-negative weights.
  std::size_t weighted(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

struct Address {
  std::string street_address;
  GeoPointE7 location;
  std::string place_id;
};

/// `n` distinct synthetic Dutch street addresses, each uniformly placed
/// within `radius_deg` of `center` on both axes.
std::vector<Address> make_addresses(std::uint64_t seed, std::size_t n, GeoPointE7 center, double radius_deg);

// ---------------------------------------------------------------------------
// Semantic Location History

struct YearPlan {
  int year = 2019;
  std::size_t address_pool_size = 50;
  double place_time_fraction = 0.8;
};

struct GslhSimConfig {
  std::uint64_t seed = 42;
  std::vector<YearPlan> years{{2019, 50, 0.80}, {2020, 50, 0.80}, {2021, 20, 0.95}};
  std::size_t total_addresses = 50;
  double radius_deg = 0.1;
  GeoPointE7 center{520907000, 51214000};  // Utrecht
  std::array<double, 3> top3_weights{3.0, 2.0, 1.5};
  std::size_t visits_per_year = 120;

  /// Throws Error(InvalidConfig).
  void validate() const;
};

struct GslhYearTruth {
  int year = 0;
  std::size_t address_pool_size = 0;
  double target_place_time_fraction = 0.0;
  std::int64_t place_visits = 0;
  std::int64_t activity_segments = 0;
  std::int64_t distinct_places = 0;
  std::int64_t place_ms = 0;
  std::int64_t travel_ms = 0;
  double place_time_fraction = 0.0;
  double distance_m = 0.0;
  double km = 0.0;
  std::map<std::string, std::int64_t> visits_per_address;
};

struct GslhGroundTruth {
  std::string rng{kRngAlgorithm};
  std::uint64_t seed = 0;
  std::vector<GslhYearTruth> years;
  std::size_t month_files = 0;
};

struct GslhSimulation {
  DdpArchive archive;
  std::vector<SemanticMonth> months;  // in archive entry order
  std::vector<Address> addresses;
  GslhGroundTruth truth;
};

GslhSimulation simulate_gslh(const GslhSimConfig& config);

// ---------------------------------------------------------------------------
// Chrome Browser History

struct BrowserSimConfig {
  std::uint64_t seed = 42;
  std::size_t n_visits = 1000;
  double news_fraction_base = 0.5;
  double news_uplift = 0.15;
  double evening_uplift_during_curfew = 1.5;
  browser::CurfewWindow curfew;
  std::size_t client_id_length = 10;
  std::chrono::year_month_day history_start{std::chrono::year{2020}, std::chrono::November, std::chrono::day{1}};
  std::chrono::year_month_day history_end{std::chrono::year{2021}, std::chrono::July, std::chrono::day{31}};

  void validate() const;
};

struct BrowserGroundTruth {
  std::string rng{kRngAlgorithm};
  std::uint64_t seed = 0;
  std::int64_t n_visits = 0;
  std::array<std::int64_t, browser::VisitProfile::kCount> profile_counts{};
  std::array<std::int64_t, 3> visits_per_period{};
  std::array<std::int64_t, 3> news_per_period{};
  std::int64_t earliest_usec = 0;
  std::int64_t latest_usec = 0;
  double news_fraction_base = 0.0;
  double news_uplift = 0.0;
  double evening_uplift_during_curfew = 0.0;
};

struct BrowserSimulation {
  DdpArchive archive;
  std::vector<BrowserVisit> visits;  // file order (newest first)
  BrowserGroundTruth truth;
};

BrowserSimulation simulate_browser(const BrowserSimConfig& config, const TimeZone& zone);
/// Loads config.curfew.timezone from the zoneinfo database.
BrowserSimulation simulate_browser(const BrowserSimConfig& config);

nlohmann::json to_json(const GslhGroundTruth& truth);
nlohmann::json to_json(const BrowserGroundTruth& truth);

}  // namespace portkit::sim
