#pragma once

// Independent reference computations for tests. Nothing here calls the
// parsing, summarizing or classification code under test.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "portkit/archive.hpp"

namespace portkit::oracle {

struct GslhYear {
  int year = 0;
  std::int64_t place_ms = 0;
  std::int64_t travel_ms = 0;
  double meters = 0.0;
  std::map<std::string, std::int64_t> visits;
  std::map<std::string, std::int64_t> first_visit;
  std::vector<std::pair<std::string, std::int64_t>> top3_labels;  // ("Place n", count)
};

/// Walks the raw month JSON of every Semantic Location History entry.
std::vector<GslhYear> brute_force_gslh(const DdpArchive& archive);

/// UTC year of a millisecond timestamp via gmtime_r.
int utc_year(std::int64_t ms);

enum class Period { Before = 0, During = 1, After = 2 };
enum class Site { News = 0, Other = 1 };
enum class Tod { Morning = 0, Afternoon = 1, Evening = 2, Night = 3 };

/// Local calendar fields through glibc's localtime_r with TZ set.
struct LocalFields {
  int year, month, day, hour;
};
LocalFields local_fields(std::int64_t time_usec, const std::string& tz);

Period period_of(std::int64_t time_usec, const std::string& tz, int start_ymd, int end_ymd);  // ymd as YYYYMMDD
Tod tod_of(std::int64_t time_usec, const std::string& tz);
Site site_of(const std::string& url, const std::vector<std::string>& news_domains);

/// 24 counts indexed period*8 + site*4 + tod.
std::vector<std::int64_t> brute_force_profile(const std::vector<std::pair<std::int64_t, std::string>>& visits,
                                              const std::string& tz, int start_ymd, int end_ymd,
                                              const std::vector<std::string>& news_domains);

inline const std::vector<std::string>& default_news() {
  static const std::vector<std::string> d{"nos.nl",  "nu.nl",         "telegraaf.nl", "ad.nl",
                                          "rtlnieuws.nl", "volkskrant.nl", "nrc.nl", "trouw.nl",
                                          "geenstijl.nl", "metronieuws.nl"};
  return d;
}

/// Reference haversine in long double.
long double haversine_km(long double lat1, long double lon1, long double lat2, long double lon2);

}  // namespace portkit::oracle
