#include "portkit/browser_history.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "portkit/error.hpp"

namespace portkit::browser {

namespace detail {
extern const std::string_view kDefaultNewsSites;
}

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string strip_www(std::string host) {
  if (host.starts_with("www.")) host.erase(0, 4);
  return host;
}

void require_non_negative(std::int64_t time_usec) {
  if (time_usec < 0) throw std::invalid_argument("time_usec must be non-negative");
}

constexpr const char* kListing = R"(# Browser History extraction
open Takeout/Chrome/BrowserHistory.json and read the "Browser History" list
for each visit:
    local = time_usec converted to the study time zone (default Europe/Amsterdam)
    period      = Before  if local date <  curfew start (2021-01-23)
                  During  if curfew start <= local date <= curfew end (2021-04-28)
                  After   if local date >  curfew end
    website     = News if the host of the url (without "www.") is a listed
                  Dutch news site or a subdomain of one, otherwise Other
    time of day = Night [00:00-06:00), Morning [06:00-12:00),
                  Afternoon [12:00-18:00), Evening [18:00-24:00)
    count[period, website, time of day] += 1
show the earliest and latest visit dates, the curfew dates and all 24 counts
urls, page titles and client ids are never shown or shared
)";

}  // namespace

std::string_view to_string(Period p) noexcept {
  switch (p) {
    case Period::Before: return "Before curfew";
    case Period::During: return "During curfew";
    case Period::After: return "After curfew";
  }
  return "";
}

std::string_view to_string(SiteType s) noexcept { return s == SiteType::News ? "News" : "Other"; }

std::string_view to_string(TimeOfDay t) noexcept {
  switch (t) {
    case TimeOfDay::Morning: return "Morning";
    case TimeOfDay::Afternoon: return "Afternoon";
    case TimeOfDay::Evening: return "Evening";
    case TimeOfDay::Night: return "Night";
  }
  return "";
}

std::chrono::year_month_day parse_date(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse_part = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  const bool shaped = text.size() == 10 && text[4] == '-' && text[7] == '-';
  if (!shaped || !parse_part(text.substr(0, 4), y) || !parse_part(text.substr(5, 2), m) ||
      !parse_part(text.substr(8, 2), d)) {
    throw std::invalid_argument("expected a YYYY-MM-DD date, got '" + std::string(text) + "'");
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
  return ymd;
}

std::string format_date(std::chrono::year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

NewsSiteList::NewsSiteList(const std::vector<std::string>& domains) {
  for (const auto& raw : domains) {
    auto domain = strip_www(lowercase(trim(raw)));
    const bool bad = domain.empty() || domain.find_first_of("/:?#@ \t") != std::string::npos ||
                     domain.front() == '.' || domain.back() == '.';
    if (bad) throw Error(ErrorCode::InvalidNewsList, "invalid news site entry '" + raw + "'");
    domains_.insert(std::move(domain));
  }
  if (domains_.empty()) throw Error(ErrorCode::InvalidNewsList, "news site list is empty");
}

NewsSiteList NewsSiteList::parse(std::string_view text) {
  std::vector<std::string> domains;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) domains.emplace_back(line);
  }
  return NewsSiteList(domains);
}

const NewsSiteList& NewsSiteList::dutch_default() {
  static const NewsSiteList list = parse(detail::kDefaultNewsSites);
  return list;
}

bool NewsSiteList::matches_host(std::string_view host) const {
  for (const auto& domain : domains_) {
    if (host == domain) return true;
    if (host.size() > domain.size() && host.ends_with(domain) && host[host.size() - domain.size() - 1] == '.') {
      return true;
    }
  }
  return false;
}

VisitProfile VisitProfile::from_index(std::size_t index) noexcept {
  return VisitProfile{static_cast<Period>(index / 8), static_cast<SiteType>((index / 4) % 2),
                      static_cast<TimeOfDay>(index % 4)};
}

std::int64_t ProfileTable::total() const noexcept {
  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::optional<std::string> normalized_host(std::string_view url) {
  url = trim(url);
  const auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  const auto scheme = url.substr(0, sep);
  const bool scheme_ok = std::all_of(scheme.begin(), scheme.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
  if (!scheme_ok) return std::nullopt;

  auto authority = url.substr(sep + 3);
  authority = authority.substr(0, authority.find_first_of("/?#"));
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
  if (authority.starts_with('[')) return std::nullopt;  // IPv6 literal, never a news site
  authority = authority.substr(0, authority.find(':'));
  std::string host = lowercase(authority);
  while (!host.empty() && host.back() == '.') host.pop_back();
  host = strip_www(std::move(host));
  if (host.empty()) return std::nullopt;
  return host;
}

Period classify_period(std::int64_t time_usec, const CurfewWindow& window, const TimeZone& zone) {
  require_non_negative(time_usec);
  const auto date = zone.local(time_usec).date;
  if (date < window.start_date) return Period::Before;
  if (date > window.end_date) return Period::After;
  return Period::During;
}

Period classify_period(std::int64_t time_usec, const CurfewWindow& window) {
  return classify_period(time_usec, window, TimeZone::load(window.timezone));
}

TimeOfDay classify_time_of_day(std::int64_t time_usec, const TimeZone& zone) {
  require_non_negative(time_usec);
  const int hour = zone.local(time_usec).hour;
  if (hour < 6) return TimeOfDay::Night;
  if (hour < 12) return TimeOfDay::Morning;
  if (hour < 18) return TimeOfDay::Afternoon;
  return TimeOfDay::Evening;
}

TimeOfDay classify_time_of_day(std::int64_t time_usec, std::string_view timezone) {
  return classify_time_of_day(time_usec, TimeZone::load(timezone));
}

SiteType classify_site(std::string_view url, const NewsSiteList& list) {
  auto host = normalized_host(url);
  return host && list.matches_host(*host) ? SiteType::News : SiteType::Other;
}

ProfileTable build_profile_table(const std::vector<BrowserVisit>& visits, const CurfewWindow& window,
                                 const NewsSiteList& list, const TimeZone& zone) {
  ProfileTable table;
  table.boundary.window = window;
  for (const auto& visit : visits) {
    const VisitProfile profile{classify_period(visit.time_usec, window, zone), classify_site(visit.url, list),
                               classify_time_of_day(visit.time_usec, zone)};
    ++table.counts[profile.index()];
    auto& b = table.boundary;
    if (!b.earliest_usec || visit.time_usec < *b.earliest_usec) b.earliest_usec = visit.time_usec;
    if (!b.latest_usec || visit.time_usec > *b.latest_usec) b.latest_usec = visit.time_usec;
  }
  if (table.boundary.earliest_usec) {
    table.boundary.earliest_local_date = zone.local(*table.boundary.earliest_usec).date;
    table.boundary.latest_local_date = zone.local(*table.boundary.latest_usec).date;
  }
  return table;
}

ProfileTable build_profile_table(const std::vector<BrowserVisit>& visits, const CurfewWindow& window,
                                 const NewsSiteList& list) {
  return build_profile_table(visits, window, list, TimeZone::load(window.timezone));
}

const ExtractorDescriptor& descriptor() {
  static const ExtractorDescriptor d{"browser-history", "1.0.0", "Google Chrome Browser History", kListing};
  return d;
}

ExtractionResult render_result(const ProfileTable& table) {
  const auto& b = table.boundary;
  std::string text = "This overview was computed on your device from your Chrome browser history. ";
  if (b.earliest_local_date) {
    text += "The earliest web visit in your history is from " + format_date(*b.earliest_local_date) +
            " and the latest is from " + format_date(*b.latest_local_date) + ". ";
  } else {
    text += "Your history contains no web visits. ";
  }
  text += "The curfew lasted from " + format_date(b.window.start_date) + " to " + format_date(b.window.end_date) +
          " (both days included, " + b.window.timezone + " time). "
          "The table counts your web visits per period (before, during or after the curfew), per type of website "
          "(a popular Dutch news website or any other website) and per time of day (night 00:00-06:00, morning "
          "06:00-12:00, afternoon 12:00-18:00, evening 18:00-24:00). "
          "Only these counts are included; no web addresses, page titles or identifiers.";

  ExtractionResult result;
  result.extractor = descriptor();
  result.blocks.emplace_back(TextBlock{std::move(text)});
  TableBlock t;
  t.title = "Web visits per profile";
  t.columns = {"Period", "Website type", "Time of day", "Visits"};
  for (std::size_t i = 0; i < VisitProfile::kCount; ++i) {
    const auto p = VisitProfile::from_index(i);
    t.rows.push_back({std::string(to_string(p.period)), std::string(to_string(p.site_type)),
                      std::string(to_string(p.time_of_day)), table.counts[i]});
  }
  result.blocks.emplace_back(std::move(t));
  return result;
}

}  // namespace portkit::browser
