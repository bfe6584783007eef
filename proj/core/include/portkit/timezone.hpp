#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace portkit {

struct LocalTime {
  std::chrono::year_month_day date;
  int hour = 0;
  int minute = 0;
  int second = 0;
};

/// An IANA time zone resolved from the system zoneinfo database.
class TimeZone {
 public:
  /// Reads zone data from disk. Throws Error(InvalidTimezone).
  static TimeZone load(std::string_view name);
  static TimeZone utc();

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] LocalTime local(std::int64_t time_usec) const;
  /// Converts a local wall-clock time to microseconds since the epoch.
  /// Skipped wall times (DST gaps) resolve with the pre-transition offset.
  [[nodiscard]] std::int64_t to_usec(std::chrono::year_month_day date, int hour, int minute, int second) const;

 private:
  struct Impl;
  TimeZone(std::string name, std::shared_ptr<const Impl> impl) : name_(std::move(name)), impl_(std::move(impl)) {}

  std::string name_;
  std::shared_ptr<const Impl> impl_;
};

/// Zones loaded ahead of sandboxed work, so lookups never touch storage.
class TimeZoneTable {
 public:
  const TimeZone& preload(std::string_view name);
  /// Throws Error(InvalidTimezone) when the zone was not preloaded.
  [[nodiscard]] const TimeZone& get(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const;

 private:
  std::map<std::string, TimeZone, std::less<>> zones_;
};

}  // namespace portkit
