#include "intentdbn/geometry/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "intentdbn/geometry/angles.hpp"

namespace intentdbn::geo {

namespace {

// Unconstrained minimizer of |p + v t|.
double cpa_time(Vec2 p, Vec2 v) {
  const double vv = dot(v, v);
  if (vv == 0.0) return 0.0;
  return -dot(p, v) / vv;
}

Side side_of(Vec2 heading, Vec2 rel) { return cross(heading, rel) > 0.0 ? Side::kPort : Side::kStarboard; }

}  // namespace

Cpa cpa_linear(const ShipState& a, const ShipState& b) {
  const Vec2 p = b.pos() - a.pos();
  const Vec2 v = b.velocity() - a.velocity();
  const double t = cpa_time(p, v);
  if (!(t > 0.0)) return {0.0, norm(p)};
  return {t, norm(p + v * t)};
}

SegmentCpa segment_cpa(const ShipState& a_curr, const ShipState& a_next, const ShipState& b_curr,
                       const ShipState& b_next) {
  auto course = [](const ShipState& c, const ShipState& n) {
    const double dx = n.x - c.x, dy = n.y - c.y;
    if (dx == 0.0 && dy == 0.0) return c.cog;
    return std::atan2(dx, dy);
  };
  const Vec2 va = direction(course(a_curr, a_next)) * a_curr.sog;
  const Vec2 vb = direction(course(b_curr, b_next)) * b_curr.sog;
  const double horizon = std::max(0.0, std::min(a_next.t - a_curr.t, b_next.t - b_curr.t));
  const Vec2 p = b_curr.pos() - a_curr.pos();
  const Vec2 v = vb - va;
  const double t = std::clamp(cpa_time(p, v), 0.0, horizon);
  return {t, norm(p + v * t)};
}

double cross_front_distance(const ShipState& ref, const ShipState& obs, double saturated) {
  const Vec2 h = obs.heading();
  const Vec2 r0 = ref.pos() - obs.pos();
  const double c0 = cross(h, r0);
  const double rate = cross(h, ref.velocity());
  double t = 0.0;
  if (c0 != 0.0) {
    if (rate == 0.0) return saturated;
    t = -c0 / rate;
    if (t < 0.0) return saturated;
  }
  const Vec2 rel = r0 + (ref.velocity() - obs.velocity()) * t;
  const double ahead = dot(h, rel);
  if (ahead < 0.0) return saturated;
  return ahead;
}

MidpointCpa midpoint_cpa(const ShipState& ref, const ShipState& obs) {
  const Vec2 m = (ref.pos() + obs.pos()) * 0.5;
  const Vec2 d = m - ref.pos();
  const Vec2 h = ref.heading();
  MidpointCpa out;
  out.mps = side_of(h, d);
  if (ref.sog == 0.0) {
    out.dm = norm(d);
    return out;
  }
  const double along = dot(d, h);
  out.dm = along <= 0.0 ? norm(d) : std::abs(cross(h, d));
  return out;
}

Side passing_side(const ShipState& ref, const ShipState& obs) {
  const Cpa c = cpa_linear(ref, obs);
  const Vec2 rel = obs.advanced(c.tcpa).pos() - ref.advanced(c.tcpa).pos();
  return side_of(ref.heading(), rel);
}

bool has_passed(const ShipState& ref, const ShipState& obs) {
  const Vec2 p = obs.pos() - ref.pos();
  const Vec2 v = obs.velocity() - ref.velocity();
  if (dot(v, v) == 0.0) return false;
  return dot(p, v) > 0.0;
}

Situation classify_colregs(const ShipState& ref, const ShipState& obs, const GeometryParams& params) {
  const double beta = relative_bearing(ref.pos(), ref.cog, obs.pos());
  const Situation crossing = beta < 0.0 ? Situation::kCrPs : Situation::kCrSs;
  if (ref.sog <= 0.0 || obs.sog <= 0.0) return crossing;

  const double course_diff = angle_diff(obs.cog, ref.cog);
  if (std::abs(std::abs(course_diff) - kPi) < params.head_on_half_angle &&
      std::abs(beta) < params.head_on_half_angle) {
    return Situation::kHo;
  }
  const double stern_half = params.overtaking_half_angle;
  if (std::abs(angle_diff(beta, kPi)) < stern_half && ref.sog < obs.sog) return Situation::kOtEn;
  const double beta_obs = relative_bearing(obs.pos(), obs.cog, ref.pos());
  if (std::abs(angle_diff(beta_obs, kPi)) < stern_half && ref.sog > obs.sog) return Situation::kOtIng;
  return crossing;
}

}  // namespace intentdbn::geo
