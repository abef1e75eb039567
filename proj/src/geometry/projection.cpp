#include "intentdbn/geometry/projection.hpp"

#include <cmath>

#include "intentdbn/geometry/angles.hpp"

namespace intentdbn::geo {

Vec2 project_local(double lat, double lon, LatLon origin) {
  const double k = std::cos(deg2rad(origin.lat));
  return {kEarthRadius * k * deg2rad(lon - origin.lon), kEarthRadius * deg2rad(lat - origin.lat)};
}

LatLon unproject_local(Vec2 p, LatLon origin) {
  const double k = std::cos(deg2rad(origin.lat));
  return {origin.lat + rad2deg(p.y / kEarthRadius), origin.lon + rad2deg(p.x / (kEarthRadius * k))};
}

}  // namespace intentdbn::geo
