#pragma once

#include "intentdbn/geometry/types.hpp"

namespace intentdbn::geo {

inline constexpr double kEarthRadius = 6371000.0;

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Equirectangular projection about `origin` (degrees in, meters out).
Vec2 project_local(double lat, double lon, LatLon origin);
LatLon unproject_local(Vec2 p, LatLon origin);

}  // namespace intentdbn::geo
