#include "intentdbn/geometry/angles.hpp"

#include <cmath>
#include <stdexcept>

namespace intentdbn::geo {

double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_pi(double a) {
  double r = wrap_two_pi(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

double angle_diff(double a, double b) { return wrap_pi(a - b); }

double bearing(Vec2 from, Vec2 to) { return wrap_two_pi(std::atan2(to.x - from.x, to.y - from.y)); }

double relative_bearing(Vec2 own, double cog, Vec2 target) { return angle_diff(bearing(own, target), cog); }

Vec2 direction(double cog) { return {std::sin(cog), std::cos(cog)}; }

std::size_t PolygonMap::vertex_count() const {
  std::size_t n = 0;
  for (const auto& r : rings) n += r.size();
  return n;
}

const char* to_string(Side s) { return s == Side::kStarboard ? "starboard" : "port"; }

const char* to_string(CourseChange c) {
  switch (c) {
    case CourseChange::kStarboard: return "starboard";
    case CourseChange::kPort: return "port";
    case CourseChange::kStraight: return "straight";
  }
  return "?";
}

const char* to_string(SpeedChange c) {
  switch (c) {
    case SpeedChange::kHigher: return "higher";
    case SpeedChange::kLower: return "lower";
    case SpeedChange::kNone: return "none";
  }
  return "?";
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::kDecreasing: return "decreasing";
    case Trend::kIncreasing: return "increasing";
    case Trend::kNeither: return "neither";
  }
  return "?";
}

const char* to_string(Situation s) {
  switch (s) {
    case Situation::kOtIng: return "OT_ing";
    case Situation::kOtEn: return "OT_en";
    case Situation::kHo: return "HO";
    case Situation::kCrPs: return "CR_PS";
    case Situation::kCrSs: return "CR_SS";
  }
  return "?";
}

void GeometryParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("geometry.") + name + " must be positive");
  };
  positive(front_half_angle, "front_half_angle");
  positive(wpt_window, "wpt_window");
  positive(wp_ahead_half_angle, "wp_ahead_half_angle");
  positive(cic_threshold, "cic_threshold");
  positive(ccc_window, "ccc_window");
  positive(cis_threshold, "cis_threshold");
  positive(wprb_deadband, "wprb_deadband");
  positive(wprd_deadband, "wprd_deadband");
  positive(head_on_half_angle, "head_on_half_angle");
  positive(overtaking_half_angle, "overtaking_half_angle");
  if (front_half_angle >= kPi / 2.0) throw std::invalid_argument("geometry.front_half_angle must be < π/2");
}

}  // namespace intentdbn::geo
