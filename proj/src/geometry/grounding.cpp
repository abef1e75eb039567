#include "intentdbn/geometry/grounding.hpp"

#include <cmath>

#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/simd/kernels.hpp"

namespace intentdbn::geo {

VertexCloud VertexCloud::from(const PolygonMap& map) {
  VertexCloud c;
  for (const auto& ring : map.rings) {
    std::size_t n = ring.size();
    if (n > 1 && ring.front() == ring.back()) --n;
    for (std::size_t i = 0; i < n; ++i) {
      c.xs.push_back(ring[i].x);
      c.ys.push_back(ring[i].y);
    }
  }
  return c;
}

PolygonMap densify(const PolygonMap& map, double spacing) {
  PolygonMap out;
  out.crs = map.crs;
  for (const auto& ring : map.rings) {
    std::vector<Vec2> r;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      const Vec2 a = ring[i], b = ring[i + 1];
      const double len = norm(b - a);
      const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(len / spacing)));
      for (std::size_t k = 0; k < pieces; ++k) r.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
    }
    if (!ring.empty()) r.push_back(ring.back());
    out.rings.push_back(std::move(r));
  }
  return out;
}

double sector_ground_distance(Vec2 pos, double cog, const VertexCloud& cloud, double rel_start, double rel_end,
                              double none) {
  if (cloud.size() == 0) return none;
  const Vec2 s = direction(cog + rel_start);
  const Vec2 e = direction(cog + rel_end);
  simd::SectorQuery q{pos.x, pos.y, s.x, s.y, e.x, e.y, 1e-12};
  const double d2 = simd::kernels().sector_min_dist2(cloud.xs.data(), cloud.ys.data(), cloud.size(), q);
  return std::isfinite(d2) ? std::sqrt(d2) : none;
}

GroundDistances grounding_measurements(const ShipState& s, const VertexCloud& cloud, const GeometryParams& params) {
  const double f = params.front_half_angle;
  GroundDistances g;
  g.dgsb = sector_ground_distance(s.pos(), s.cog, cloud, f, kPi);
  g.dgps = sector_ground_distance(s.pos(), s.cog, cloud, -kPi, -f);
  g.dgf = sector_ground_distance(s.pos(), s.cog, cloud, -f, f);
  return g;
}

}  // namespace intentdbn::geo
