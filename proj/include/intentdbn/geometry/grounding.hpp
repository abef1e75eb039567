#pragma once

#include <limits>
#include <vector>

#include "intentdbn/geometry/types.hpp"

namespace intentdbn::geo {

/// Flattened polygon vertices for sector scans (closing duplicates removed).
struct VertexCloud {
  std::vector<double> xs;
  std::vector<double> ys;

  static VertexCloud from(const PolygonMap& map);
  std::size_t size() const { return xs.size(); }
};

/// Insert vertices so no ring edge exceeds `spacing` meters.
PolygonMap densify(const PolygonMap& map, double spacing);

/// Nearest vertex whose bearing relative to `cog` lies in the closed interval
/// [rel_start, rel_end] (radians, positive to starboard, rel_end − rel_start ≤ π).
/// Returns `none` when no vertex qualifies.
double sector_ground_distance(Vec2 pos, double cog, const VertexCloud& cloud, double rel_start,
                              double rel_end, double none = std::numeric_limits<double>::infinity());

struct GroundDistances {
  double dgsb = std::numeric_limits<double>::infinity();
  double dgps = std::numeric_limits<double>::infinity();
  double dgf = std::numeric_limits<double>::infinity();
};

/// Starboard [f, π], port [−π, −f] and front [−f, f] sector minima, f = front_half_angle.
GroundDistances grounding_measurements(const ShipState& s, const VertexCloud& cloud,
                                       const GeometryParams& params = {});

}  // namespace intentdbn::geo
