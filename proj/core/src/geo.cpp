#include "portkit/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace portkit {

double haversine_km(const GeoPointE7& a, const GeoPointE7& b) noexcept {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double lat1 = a.latitude_deg() * kRad;
  const double lat2 = b.latitude_deg() * kRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.longitude_deg() - a.longitude_deg()) * kRad;
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  const double h = std::clamp(s_lat * s_lat + std::cos(lat1) * std::cos(lat2) * s_lon * s_lon, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

}  // namespace portkit
