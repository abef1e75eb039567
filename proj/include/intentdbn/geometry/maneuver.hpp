#pragma once

#include <span>

#include "intentdbn/geometry/types.hpp"

namespace intentdbn::geo {

struct WaypointMeasurements {
  Trend wprb = Trend::kNeither;
  Trend wprd = Trend::kNeither;
  bool wpah = false;
};

/// Compare `now` against `past` (typically one waypoint window earlier).
WaypointMeasurements waypoint_change(const ShipState& past, const ShipState& now, Waypoint wp,
                                     const GeometryParams& params = {});

/// History is time-sorted with the current state last. Trends are neither
/// unless the history spans at least the waypoint window.
WaypointMeasurements waypoint_measurements(std::span<const ShipState> history, Waypoint wp,
                                           const GeometryParams& params = {});

struct CourseSpeedChanges {
  CourseChange cic = CourseChange::kStraight;
  SpeedChange cis = SpeedChange::kNone;
  bool ccc = false;
};

/// `initial` is the situation-start state; `recent` is time-sorted with the
/// current state last. ccc compares the current course against every state
/// in the trailing ccc window.
CourseSpeedChanges course_speed_changes(const ShipState& initial, std::span<const ShipState> recent,
                                        const GeometryParams& params = {});

/// History since situation start, first element is the initial state.
CourseSpeedChanges course_speed_changes(std::span<const ShipState> history, const GeometryParams& params = {});

}  // namespace intentdbn::geo
