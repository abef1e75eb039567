#pragma once

#include <numbers>

#include "intentdbn/geometry/types.hpp"

namespace intentdbn::geo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

/// Angle in [0, 2π).
double wrap_two_pi(double a);
/// Angle in (−π, π].
double wrap_pi(double a);
/// Smallest signed difference a − b in (−π, π]; positive means a is clockwise of b.
double angle_diff(double a, double b);

/// Nautical bearing from `from` to `to` (clockwise from north, [0, 2π)).
double bearing(Vec2 from, Vec2 to);
/// Bearing of `target` relative to a course, in (−π, π]; positive = starboard.
double relative_bearing(Vec2 own, double cog, Vec2 target);
/// Unit vector of a nautical direction.
Vec2 direction(double cog);

}  // namespace intentdbn::geo
