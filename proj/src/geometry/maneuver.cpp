#include "intentdbn/geometry/maneuver.hpp"

#include <cmath>

#include "intentdbn/geometry/angles.hpp"

namespace intentdbn::geo {

namespace {

Trend trend(double delta, double deadband) {
  if (delta < -deadband) return Trend::kDecreasing;
  if (delta > deadband) return Trend::kIncreasing;
  return Trend::kNeither;
}

}  // namespace

WaypointMeasurements waypoint_change(const ShipState& past, const ShipState& now, Waypoint wp,
                                     const GeometryParams& params) {
  const double rb_now = std::abs(relative_bearing(now.pos(), now.cog, wp.pos()));
  const double rb_past = std::abs(relative_bearing(past.pos(), past.cog, wp.pos()));
  WaypointMeasurements m;
  m.wprb = trend(rb_now - rb_past, params.wprb_deadband);
  m.wprd = trend(norm(wp.pos() - now.pos()) - norm(wp.pos() - past.pos()), params.wprd_deadband);
  m.wpah = rb_now <= params.wp_ahead_half_angle;
  return m;
}

WaypointMeasurements waypoint_measurements(std::span<const ShipState> history, Waypoint wp,
                                           const GeometryParams& params) {
  WaypointMeasurements m;
  if (history.empty()) return m;
  const ShipState& now = history.back();
  const double cutoff = now.t - params.wpt_window;
  const ShipState* past = nullptr;
  for (const auto& s : history) {
    if (s.t <= cutoff) past = &s;
  }
  if (past == nullptr) {
    m.wpah = std::abs(relative_bearing(now.pos(), now.cog, wp.pos())) <= params.wp_ahead_half_angle;
    return m;
  }
  return waypoint_change(*past, now, wp, params);
}

CourseSpeedChanges course_speed_changes(const ShipState& initial, std::span<const ShipState> recent,
                                        const GeometryParams& params) {
  CourseSpeedChanges c;
  if (recent.empty()) return c;
  const ShipState& now = recent.back();
  const double dcog = angle_diff(now.cog, initial.cog);
  if (dcog > params.cic_threshold) {
    c.cic = CourseChange::kStarboard;
  } else if (dcog < -params.cic_threshold) {
    c.cic = CourseChange::kPort;
  }
  const double dsog = now.sog - initial.sog;
  if (dsog > params.cis_threshold) {
    c.cis = SpeedChange::kHigher;
  } else if (dsog < -params.cis_threshold) {
    c.cis = SpeedChange::kLower;
  }
  const double from = now.t - params.ccc_window;
  for (const auto& s : recent) {
    if (s.t >= from && std::abs(angle_diff(now.cog, s.cog)) > params.cic_threshold) {
      c.ccc = true;
      break;
    }
  }
  return c;
}

CourseSpeedChanges course_speed_changes(std::span<const ShipState> history, const GeometryParams& params) {
  if (history.empty()) return {};
  return course_speed_changes(history.front(), history, params);
}

}  // namespace intentdbn::geo
