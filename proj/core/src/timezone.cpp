#include "portkit/timezone.hpp"

#include <absl/time/civil_time.h>
#include <absl/time/time.h>

#include "portkit/error.hpp"

namespace portkit {

struct TimeZone::Impl {
  absl::TimeZone zone;
};

TimeZone TimeZone::load(std::string_view name) {
  auto impl = std::make_shared<Impl>();
  if (name.empty() || !absl::LoadTimeZone(std::string(name), &impl->zone)) {
    throw Error(ErrorCode::InvalidTimezone, "unknown time zone '" + std::string(name) + "'");
  }
  return TimeZone(std::string(name), std::move(impl));
}

TimeZone TimeZone::utc() {
  auto impl = std::make_shared<Impl>();
  impl->zone = absl::UTCTimeZone();
  return TimeZone("UTC", std::move(impl));
}

LocalTime TimeZone::local(std::int64_t time_usec) const {
  const auto cs = absl::ToCivilSecond(absl::FromUnixMicros(time_usec), impl_->zone);
  LocalTime out;
  out.date = std::chrono::year_month_day{std::chrono::year{static_cast<int>(cs.year())},
                                         std::chrono::month{static_cast<unsigned>(cs.month())},
                                         std::chrono::day{static_cast<unsigned>(cs.day())}};
  out.hour = cs.hour();
  out.minute = cs.minute();
  out.second = cs.second();
  return out;
}

std::int64_t TimeZone::to_usec(std::chrono::year_month_day date, int hour, int minute, int second) const {
  const absl::CivilSecond cs(static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                             static_cast<unsigned>(date.day()), hour, minute, second);
  return absl::ToUnixMicros(absl::FromCivil(cs, impl_->zone));
}

const TimeZone& TimeZoneTable::preload(std::string_view name) {
  if (auto it = zones_.find(name); it != zones_.end()) return it->second;
  auto zone = name == "UTC" ? TimeZone::utc() : TimeZone::load(name);
  return zones_.emplace(std::string(name), std::move(zone)).first->second;
}

const TimeZone& TimeZoneTable::get(std::string_view name) const {
  auto it = zones_.find(name);
  if (it == zones_.end()) {
    throw Error(ErrorCode::InvalidTimezone, "time zone '" + std::string(name) + "' is not available to the engine");
  }
  return it->second;
}

bool TimeZoneTable::contains(std::string_view name) const { return zones_.find(name) != zones_.end(); }

}  // namespace portkit
