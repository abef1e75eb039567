#pragma once

#include "intentdbn/geometry/types.hpp"

namespace intentdbn::geo {

struct Cpa {
  double tcpa = 0.0;  // s, ≥ 0
  double dcpa = 0.0;  // m
};

/// Constant-velocity CPA from the common time of `a` and `b`. When the
/// unconstrained minimizer lies in the past, tcpa = 0 and dcpa is the current range.
Cpa cpa_linear(const ShipState& a, const ShipState& b);

struct SegmentCpa {
  double t_opt = 0.0;
  double d_opt = 0.0;
};

/// Closest approach while both vessels sail between two consecutive samples.
/// Course comes from the position delta (cog when the vessel did not move),
/// speed from the current sample; t_opt is clamped to the shorter segment.
SegmentCpa segment_cpa(const ShipState& a_curr, const ShipState& a_next, const ShipState& b_curr,
                       const ShipState& b_next);

/// Range from obs to ref when ref crosses obs's track line ahead of obs.
/// Returns `saturated` if that never happens.
double cross_front_distance(const ShipState& ref, const ShipState& obs, double saturated);

struct MidpointCpa {
  double dm = 0.0;
  Side mps = Side::kStarboard;
};

/// Closest distance of ref's course ray to the current midpoint of the pair,
/// and the side of ref's track the midpoint lies on.
MidpointCpa midpoint_cpa(const ShipState& ref, const ShipState& obs);

/// Side of ref on which obs lies at the CPA instant.
Side passing_side(const ShipState& ref, const ShipState& obs);

/// Range is opening (unconstrained CPA time strictly negative).
bool has_passed(const ShipState& ref, const ShipState& obs);

/// COLREGS situation of ref towards obs.
Situation classify_colregs(const ShipState& ref, const ShipState& obs, const GeometryParams& params = {});

}  // namespace intentdbn::geo
