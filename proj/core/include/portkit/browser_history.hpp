#pragma once

// Browser history profile: every visit is classified by curfew period,
// news vs. other site and time of day, then counted into 24 cells.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "portkit/result.hpp"
#include "portkit/takeout.hpp"
#include "portkit/timezone.hpp"

namespace portkit::browser {

enum class Period { Before, During, After };
enum class SiteType { News, Other };
enum class TimeOfDay { Morning, Afternoon, Evening, Night };

std::string_view to_string(Period p) noexcept;
std::string_view to_string(SiteType s) noexcept;
std::string_view to_string(TimeOfDay t) noexcept;

/// Both endpoint dates belong to the curfew.
struct CurfewWindow {
  std::chrono::year_month_day start_date{std::chrono::year{2021}, std::chrono::January, std::chrono::day{23}};
  std::chrono::year_month_day end_date{std::chrono::year{2021}, std::chrono::April, std::chrono::day{28}};
  std::string timezone = "Europe/Amsterdam";
};

/// `YYYY-MM-DD`; throws std::invalid_argument.
std::chrono::year_month_day parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day date);

class NewsSiteList {
 public:
  /// Normalizes to lowercase and strips a leading `www.`. Throws
  /// Error(InvalidNewsList) on an empty list or entries with a scheme, path,
  /// port or whitespace.
  explicit NewsSiteList(const std::vector<std::string>& domains);

  /// One domain per line, `#` comments, blank lines ignored.
  static NewsSiteList parse(std::string_view text);
  static const NewsSiteList& dutch_default();

  [[nodiscard]] const std::set<std::string>& domains() const noexcept { return domains_; }
  [[nodiscard]] bool matches_host(std::string_view host) const;

 private:
  std::set<std::string> domains_;
};

struct VisitProfile {
  Period period = Period::Before;
  SiteType site_type = SiteType::Other;
  TimeOfDay time_of_day = TimeOfDay::Morning;

  static constexpr std::size_t kCount = 24;
  [[nodiscard]] std::size_t index() const noexcept {
    return static_cast<std::size_t>(period) * 8 + static_cast<std::size_t>(site_type) * 4 +
           static_cast<std::size_t>(time_of_day);
  }
  static VisitProfile from_index(std::size_t index) noexcept;
  friend bool operator==(const VisitProfile&, const VisitProfile&) = default;
};

struct BoundaryInfo {
  std::optional<std::int64_t> earliest_usec;
  std::optional<std::int64_t> latest_usec;
  std::optional<std::chrono::year_month_day> earliest_local_date;
  std::optional<std::chrono::year_month_day> latest_local_date;
  CurfewWindow window;
};

struct ProfileTable {
  std::array<std::int64_t, VisitProfile::kCount> counts{};
  BoundaryInfo boundary;

  [[nodiscard]] std::int64_t at(const VisitProfile& p) const noexcept { return counts[p.index()]; }
  [[nodiscard]] std::int64_t total() const noexcept;
};

/// Lowercased host with one leading `www.` removed, or nullopt when the URL
/// has no `scheme://host` authority.
std::optional<std::string> normalized_host(std::string_view url);

Period classify_period(std::int64_t time_usec, const CurfewWindow& window, const TimeZone& zone);
/// Loads window.timezone from the zoneinfo database. Throws InvalidTimezone.
Period classify_period(std::int64_t time_usec, const CurfewWindow& window);

TimeOfDay classify_time_of_day(std::int64_t time_usec, const TimeZone& zone);
TimeOfDay classify_time_of_day(std::int64_t time_usec, std::string_view timezone);

SiteType classify_site(std::string_view url, const NewsSiteList& list);

ProfileTable build_profile_table(const std::vector<BrowserVisit>& visits, const CurfewWindow& window,
                                 const NewsSiteList& list, const TimeZone& zone);
ProfileTable build_profile_table(const std::vector<BrowserVisit>& visits, const CurfewWindow& window,
                                 const NewsSiteList& list);

const ExtractorDescriptor& descriptor();

/// Explanation text plus the 24-row frequency table. No URL, title or
/// client id is included.
ExtractionResult render_result(const ProfileTable& table);

}  // namespace portkit::browser
