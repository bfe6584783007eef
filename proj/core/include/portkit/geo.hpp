#pragma once

#include "portkit/takeout.hpp"

namespace portkit {

/// Mean Earth radius (IUGG), kilometers.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPointE7& a, const GeoPointE7& b) noexcept;

}  // namespace portkit
