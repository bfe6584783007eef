#include "portkit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "portkit/error.hpp"
#include "portkit/geo.hpp"

namespace portkit::sim {

using nlohmann::json;

namespace {

constexpr std::int64_t kHourMs = 3'600'000;
constexpr std::int64_t kDayMs = 24 * kHourMs;
constexpr std::int64_t kMonthBudgetMs = 26 * kDayMs;  // keeps every start inside the month (Feb has 28 days)
constexpr std::int64_t kMonthStartOffsetMs = kHourMs;

constexpr std::array<std::string_view, 30> kStreets = {
    "Kerkstraat",   "Dorpsstraat",    "Schoolstraat", "Molenweg",      "Stationsweg",  "Nieuwstraat",
    "Julianastraat", "Beatrixlaan",   "Wilhelminaweg", "Kastanjelaan", "Lindelaan",    "Eikenlaan",
    "Prinsengracht", "Oudegracht",    "Marktplein",   "Havenstraat",   "Parkweg",      "Zuidsingel",
    "Noorderhaven",  "Westerstraat",  "Oosterpark",   "Brinkweg",      "Vaartweg",     "Dijkstraat",
    "Bloemstraat",   "Tulpstraat",    "Rozenlaan",    "Berkenhof",     "Esdoornlaan",  "Populierenweg"};

constexpr std::array<std::string_view, 12> kCities = {"Utrecht",  "Zeist",     "Bunnik",     "Houten",
                                                       "Nieuwegein", "De Bilt", "Bilthoven",  "Maarssen",
                                                       "IJsselstein", "Vianen", "Driebergen", "Odijk"};

constexpr std::array<std::string_view, 6> kActivityTypes = {"WALKING", "CYCLING",  "IN_PASSENGER_VEHICLE",
                                                             "IN_BUS",  "IN_TRAIN", "RUNNING"};

constexpr std::array<std::string_view, 40> kWords = {
    "lorem",   "ipsum",   "dolor",   "sit",     "amet",    "consectetur", "adipiscing", "elit",
    "sed",     "eiusmod", "tempor",  "magna",   "aliqua",  "enim",        "minim",      "veniam",
    "quis",    "nostrud", "ullamco", "laboris", "nisi",    "aliquip",     "commodo",    "duis",
    "aute",    "irure",   "velit",   "esse",    "cillum",  "fugiat",      "nulla",      "pariatur",
    "officia", "mollit",  "anim",    "laborum", "perspic", "unde",        "omnis",      "natus"};

constexpr std::array<std::string_view, 5> kTlds = {"com", "org", "net", "info", "biz"};
constexpr std::array<std::string_view, 3> kTransitions = {"LINK", "GENERATED", "RELOAD"};
constexpr std::string_view kAlnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
constexpr std::string_view kPlaceIdAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

template <std::size_t N>
std::string_view pick(Rng& rng, const std::array<std::string_view, N>& items) {
  return items[rng.below(N)];
}

std::string random_string(Rng& rng, std::string_view alphabet, std::size_t length) {
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(alphabet[rng.below(alphabet.size())]);
  return out;
}

std::int64_t month_start_ms(int year, int month) {
  using namespace std::chrono;
  const sys_days day{std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(month)} / 1};
  return duration_cast<milliseconds>(day.time_since_epoch()).count();
}

// Raw place durations are scaled so travel = place * (1 - f) / f exactly
// (to the millisecond) while the month stays within its budget.
struct MonthDurations {
  std::vector<std::int64_t> place;
  std::vector<std::int64_t> travel;
};

MonthDurations draw_month_durations(Rng& rng, std::size_t k, double fraction) {
  MonthDurations d;
  d.place.resize(k);
  std::int64_t place_total = 0;
  for (auto& p : d.place) {
    p = static_cast<std::int64_t>(rng.uniform(2.0, 30.0) * static_cast<double>(kHourMs));
    place_total += p;
  }
  auto travel_for = [fraction](std::int64_t place) {
    return static_cast<std::int64_t>(std::llround(static_cast<double>(place) * (1.0 - fraction) / fraction));
  };
  std::int64_t travel_total = travel_for(place_total);
  if (place_total + travel_total > kMonthBudgetMs) {
    const double scale = static_cast<double>(kMonthBudgetMs) / static_cast<double>(place_total + travel_total);
    place_total = 0;
    for (auto& p : d.place) {
      p = std::max<std::int64_t>(1, static_cast<std::int64_t>(static_cast<double>(p) * scale));
      place_total += p;
    }
    travel_total = travel_for(place_total);
  }

  std::vector<double> weights(k);
  double weight_sum = 0.0;
  for (auto& w : weights) {
    w = rng.uniform(0.5, 1.5);
    weight_sum += w;
  }
  d.travel.resize(k);
  std::int64_t assigned = 0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    d.travel[j] = static_cast<std::int64_t>(static_cast<double>(travel_total) * weights[j] / weight_sum);
    assigned += d.travel[j];
  }
  if (k > 0) d.travel[k - 1] = travel_total - assigned;
  return d;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

std::size_t Rng::weighted(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double target = uniform01() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (target < weights[i]) return i;
    target -= weights[i];
  }
  return weights.size() - 1;
}

std::vector<Address> make_addresses(std::uint64_t seed, std::size_t n, GeoPointE7 center, double radius_deg) {
  if (n == 0) invalid("make_addresses: n must be at least 1");
  if (!(radius_deg >= 0.0)) invalid("make_addresses: radius must be non-negative");
  Rng rng(seed);
  const auto radius_e7 = static_cast<std::int64_t>(std::floor(radius_deg * GeoPointE7::kScale));
  std::set<std::string> seen;
  std::vector<Address> out;
  out.reserve(n);
  while (out.size() < n) {
    std::string street = std::string(pick(rng, kStreets)) + " " + std::to_string(1 + rng.below(199)) + ", " +
                         std::to_string(1000 + rng.below(9000)) + " " +
                         random_string(rng, "ABCDEFGHJKLMNPRSTVWXZ", 2) + " " + std::string(pick(rng, kCities));
    const auto dlat = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * radius_e7 + 1))) - radius_e7;
    const auto dlng = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * radius_e7 + 1))) - radius_e7;
    std::string place_id = "ChIJ" + random_string(rng, kPlaceIdAlphabet, 23);
    if (!seen.insert(street).second) continue;
    out.push_back(Address{std::move(street), GeoPointE7{center.latitude_e7 + dlat, center.longitude_e7 + dlng},
                          std::move(place_id)});
  }
  return out;
}

void GslhSimConfig::validate() const {
  if (years.empty()) invalid("at least one year is required");
  if (total_addresses == 0) invalid("total_addresses must be at least 1");
  if (!(radius_deg >= 0.0 && radius_deg <= 10.0)) invalid("radius_deg must be within [0, 10]");
  if (!center.valid()) invalid("center is not a valid coordinate");
  for (double w : top3_weights) {
    if (!(w > 1.0)) invalid("top3 weights must exceed the uniform weight 1");
  }
  for (std::size_t i = 0; i < years.size(); ++i) {
    const auto& y = years[i];
    if (i > 0 && years[i - 1].year >= y.year) invalid("years must be strictly ascending");
    if (y.year < 1971 || y.year > 9999) invalid("year out of range");
    if (y.address_pool_size == 0 || y.address_pool_size > total_addresses) {
      invalid("address_pool_size must be in [1, total_addresses]");
    }
    if (!(y.place_time_fraction > 0.0 && y.place_time_fraction <= 1.0)) {
      invalid("place_time_fraction must be in (0, 1]");
    }
  }
}

GslhSimulation simulate_gslh(const GslhSimConfig& config) {
  config.validate();
  GslhSimulation out;
  out.archive = DdpArchive{"takeout-location-history.zip"};
  out.addresses = make_addresses(config.seed, config.total_addresses, config.center, config.radius_deg);
  out.truth.seed = config.seed;

  // A separate stream from the address stream keeps address lists stable
  // when only timeline parameters change.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  auto weights_for = [&](std::size_t pool) {
    std::vector<double> w(pool, 1.0);
    for (std::size_t i = 0; i < std::min<std::size_t>(3, pool); ++i) w[i] = config.top3_weights[i];
    return w;
  };

  // Every visit destination up front, plus one trailing destination for the
  // final activity segment.
  std::vector<std::vector<std::size_t>> visits(config.years.size());
  for (std::size_t y = 0; y < config.years.size(); ++y) {
    const auto weights = weights_for(config.years[y].address_pool_size);
    for (std::size_t i = 0; i < config.visits_per_year; ++i) visits[y].push_back(rng.weighted(weights));
  }
  const std::size_t trailing = rng.weighted(weights_for(config.years.back().address_pool_size));
  auto next_destination = [&](std::size_t y, std::size_t i) {
    if (i + 1 < visits[y].size()) return visits[y][i + 1];
    for (std::size_t z = y + 1; z < visits.size(); ++z) {
      if (!visits[z].empty()) return visits[z].front();
    }
    return trailing;
  };

  for (std::size_t y = 0; y < config.years.size(); ++y) {
    const auto& plan = config.years[y];
    GslhYearTruth truth;
    truth.year = plan.year;
    truth.address_pool_size = plan.address_pool_size;
    truth.target_place_time_fraction = plan.place_time_fraction;

    std::size_t visit_index = 0;
    for (int month = 1; month <= 12; ++month) {
      const std::size_t k = config.visits_per_year / 12 +
                            (static_cast<std::size_t>(month - 1) < config.visits_per_year % 12 ? 1 : 0);
      const auto durations = draw_month_durations(rng, k, plan.place_time_fraction);
      SemanticMonth sm;
      sm.year = plan.year;
      sm.month = month;
      std::int64_t clock = month_start_ms(plan.year, month) + kMonthStartOffsetMs;
      for (std::size_t j = 0; j < k; ++j, ++visit_index) {
        const auto& here = out.addresses[visits[y][visit_index]];
        const auto& there = out.addresses[next_destination(y, visit_index)];

        PlaceVisit pv{here.location, here.street_address, here.place_id, clock, clock + durations.place[j]};
        clock = pv.end_ms;
        ++truth.visits_per_address[pv.address];
        truth.place_ms += pv.end_ms - pv.start_ms;
        ++truth.place_visits;

        ActivitySegment seg;
        seg.start_location = here.location;
        seg.end_location = there.location;
        seg.start_ms = clock;
        seg.end_ms = clock + durations.travel[j];
        seg.distance_m = static_cast<double>(std::llround(haversine_km(here.location, there.location) * 1000.0));
        seg.activity_type = std::string(pick(rng, kActivityTypes));
        clock = seg.end_ms;
        truth.travel_ms += seg.end_ms - seg.start_ms;
        truth.distance_m += seg.distance_m;
        ++truth.activity_segments;

        sm.timeline.emplace_back(std::move(pv));
        sm.timeline.emplace_back(std::move(seg));
      }
      const auto body = to_takeout_json(sm).dump(2);
      out.archive.add(semantic_month_path(plan.year, month), Bytes(body.begin(), body.end()));
      out.months.push_back(std::move(sm));
    }

    truth.distinct_places = static_cast<std::int64_t>(truth.visits_per_address.size());
    const auto total = truth.place_ms + truth.travel_ms;
    truth.place_time_fraction = total == 0 ? 0.0 : static_cast<double>(truth.place_ms) / static_cast<double>(total);
    truth.km = truth.distance_m / 1000.0;
    out.truth.years.push_back(std::move(truth));
  }
  out.truth.month_files = out.months.size();
  return out;
}

void BrowserSimConfig::validate() const {
  if (!(news_fraction_base >= 0.0 && news_fraction_base <= 1.0)) invalid("news_fraction_base must be in [0, 1]");
  if (!(news_uplift >= -1.0) || news_fraction_base * (1.0 + news_uplift) > 1.0) {
    invalid("news_fraction_base * (1 + news_uplift) must be a probability");
  }
  if (!(evening_uplift_during_curfew > 0.0)) invalid("evening_uplift_during_curfew must be positive");
  if (client_id_length == 0) invalid("client_id_length must be at least 1");
  if (!history_start.ok() || !history_end.ok() || history_end < history_start) {
    invalid("history range must be valid and ordered");
  }
  if (!curfew.start_date.ok() || !curfew.end_date.ok() || curfew.end_date < curfew.start_date) {
    invalid("curfew window must be valid and ordered");
  }
}

BrowserSimulation simulate_browser(const BrowserSimConfig& config, const TimeZone& zone) {
  using namespace std::chrono;
  config.validate();
  Rng rng(config.seed);
  BrowserSimulation out;
  out.archive = DdpArchive{"Takeout.zip"};
  out.truth.seed = config.seed;
  out.truth.n_visits = static_cast<std::int64_t>(config.n_visits);
  out.truth.news_fraction_base = config.news_fraction_base;
  out.truth.news_uplift = config.news_uplift;
  out.truth.evening_uplift_during_curfew = config.evening_uplift_during_curfew;

  const auto& news = browser::NewsSiteList::dutch_default().domains();
  const std::vector<std::string> news_domains(news.begin(), news.end());
  const std::string client_id = random_string(rng, kAlnum, config.client_id_length);
  const sys_days first{config.history_start};
  const auto span_days = static_cast<std::uint64_t>((sys_days{config.history_end} - first).count() + 1);
  const std::vector<double> even{1.0, 1.0, 1.0, 1.0};
  const std::vector<double> curfew_evening{1.0, 1.0, config.evening_uplift_during_curfew, 1.0};
  constexpr std::array<int, 4> kBucketStartHour = {6, 12, 18, 0};  // Morning, Afternoon, Evening, Night

  out.visits.reserve(config.n_visits);
  for (std::size_t i = 0; i < config.n_visits; ++i) {
    const year_month_day date{first + days{static_cast<int>(rng.below(span_days))}};
    const auto period = date < config.curfew.start_date ? browser::Period::Before
                        : date > config.curfew.end_date ? browser::Period::After
                                                        : browser::Period::During;
    const bool in_curfew = period == browser::Period::During;
    const auto bucket = static_cast<browser::TimeOfDay>(rng.weighted(in_curfew ? curfew_evening : even));
    const int hour = kBucketStartHour[static_cast<std::size_t>(bucket)] + static_cast<int>(rng.below(6));
    const int minute = static_cast<int>(rng.below(60));
    const int second = static_cast<int>(rng.below(60));
    const auto micros = static_cast<std::int64_t>(rng.below(1'000'000));

    const double p_news = config.news_fraction_base * (in_curfew ? 1.0 + config.news_uplift : 1.0);
    const bool is_news = rng.bernoulli(p_news);

    std::string path;
    const auto path_words = rng.below(3);
    for (std::uint64_t w = 0; w < path_words; ++w) path += "/" + std::string(pick(rng, kWords));
    if (path.empty()) path = "/";

    BrowserVisit v;
    v.page_transition = PageTransition::parse(pick(rng, kTransitions));
    std::string title;
    const auto title_words = 4 + rng.below(5);
    for (std::uint64_t w = 0; w < title_words; ++w) {
      if (!title.empty()) title += ' ';
      title += pick(rng, kWords);
    }
    title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title[0])));
    v.title = title + ".";
    if (is_news) {
      const auto& domain = news_domains[rng.below(news_domains.size())];
      v.url = "https://" + std::string(rng.bernoulli(0.5) ? "www." : "") + domain + path;
    } else {
      v.url = "https://www." + std::string(pick(rng, kWords)) + std::string(pick(rng, kWords)) + "." +
              std::string(pick(rng, kTlds)) + path;
    }
    v.client_id = client_id;
    v.time_usec = zone.to_usec(date, hour, minute, second) + micros;

    const browser::VisitProfile profile{period, is_news ? browser::SiteType::News : browser::SiteType::Other, bucket};
    ++out.truth.profile_counts[profile.index()];
    ++out.truth.visits_per_period[static_cast<std::size_t>(period)];
    if (is_news) ++out.truth.news_per_period[static_cast<std::size_t>(period)];
    out.visits.push_back(std::move(v));
  }

  std::stable_sort(out.visits.begin(), out.visits.end(),
                   [](const BrowserVisit& a, const BrowserVisit& b) { return a.time_usec > b.time_usec; });
  if (!out.visits.empty()) {
    out.truth.latest_usec = out.visits.front().time_usec;
    out.truth.earliest_usec = out.visits.back().time_usec;
  }
  const auto body = to_takeout_json(out.visits).dump(2);
  out.archive.add(std::string(kBrowserHistoryPath), Bytes(body.begin(), body.end()));
  return out;
}

BrowserSimulation simulate_browser(const BrowserSimConfig& config) {
  return simulate_browser(config, TimeZone::load(config.curfew.timezone));
}

json to_json(const GslhGroundTruth& truth) {
  json years = json::array();
  for (const auto& y : truth.years) {
    years.push_back(json{{"year", y.year},
                         {"address_pool_size", y.address_pool_size},
                         {"target_place_time_fraction", y.target_place_time_fraction},
                         {"place_visits", y.place_visits},
                         {"activity_segments", y.activity_segments},
                         {"distinct_places", y.distinct_places},
                         {"place_ms", y.place_ms},
                         {"travel_ms", y.travel_ms},
                         {"place_time_fraction", y.place_time_fraction},
                         {"distance_m", y.distance_m},
                         {"km", y.km},
                         {"visits_per_address", y.visits_per_address}});
  }
  return json{{"kind", "gslh"},
              {"rng", truth.rng},
              {"seed", truth.seed},
              {"month_files", truth.month_files},
              {"years", std::move(years)}};
}

json to_json(const BrowserGroundTruth& truth) {
  json profiles = json::array();
  for (std::size_t i = 0; i < truth.profile_counts.size(); ++i) {
    const auto p = browser::VisitProfile::from_index(i);
    profiles.push_back(json{{"period", browser::to_string(p.period)},
                            {"site_type", browser::to_string(p.site_type)},
                            {"time_of_day", browser::to_string(p.time_of_day)},
                            {"count", truth.profile_counts[i]}});
  }
  json periods = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    periods.push_back(json{{"period", browser::to_string(static_cast<browser::Period>(i))},
                           {"visits", truth.visits_per_period[i]},
                           {"news", truth.news_per_period[i]}});
  }
  return json{{"kind", "browser"},
              {"rng", truth.rng},
              {"seed", truth.seed},
              {"total", truth.n_visits},
              {"earliest_usec", truth.earliest_usec},
              {"latest_usec", truth.latest_usec},
              {"news_fraction_base", truth.news_fraction_base},
              {"news_uplift", truth.news_uplift},
              {"evening_uplift_during_curfew", truth.evening_uplift_during_curfew},
              {"periods", std::move(periods)},
              {"profiles", std::move(profiles)}};
}

}  // namespace portkit::sim
