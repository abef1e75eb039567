#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace intentdbn::geo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of a × b; positive when b is counter-clockwise of a.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Planar kinematic state. x east, y north (meters); cog is the course over
/// ground in radians, clockwise from north, in [0, 2π).
struct ShipState {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double sog = 0.0;
  double cog = 0.0;

  Vec2 pos() const { return {x, y}; }
  Vec2 heading() const { return {std::sin(cog), std::cos(cog)}; }
  Vec2 velocity() const { return heading() * sog; }
  /// Constant-velocity extrapolation by dt seconds.
  ShipState advanced(double dt) const {
    ShipState s = *this;
    s.t += dt;
    s.x += sog * std::sin(cog) * dt;
    s.y += sog * std::cos(cog) * dt;
    return s;
  }
};

struct Waypoint {
  double x = 0.0;
  double y = 0.0;

  Vec2 pos() const { return {x, y}; }
};

/// Closed vertex rings (first == last) in the planar frame.
struct PolygonMap {
  std::vector<std::vector<Vec2>> rings;
  std::string crs = "local-equirectangular";

  bool empty() const { return rings.empty(); }
  std::size_t vertex_count() const;
};

enum class Side : std::uint8_t { kStarboard = 0, kPort = 1 };
enum class CourseChange : std::uint8_t { kStarboard = 0, kPort = 1, kStraight = 2 };
enum class SpeedChange : std::uint8_t { kHigher = 0, kLower = 1, kNone = 2 };
enum class Trend : std::uint8_t { kDecreasing = 0, kIncreasing = 1, kNeither = 2 };
enum class Situation : std::uint8_t { kOtIng = 0, kOtEn = 1, kHo = 2, kCrPs = 3, kCrSs = 4 };

const char* to_string(Side s);
const char* to_string(CourseChange c);
const char* to_string(SpeedChange c);
const char* to_string(Trend t);
const char* to_string(Situation s);

struct GeometryParams {
  double front_half_angle = std::numbers::pi / 8.0;
  double wpt_window = 30.0;                      // s
  double wp_ahead_half_angle = 15.0 * std::numbers::pi / 180.0;
  double cic_threshold = 5.0 * std::numbers::pi / 180.0;
  double ccc_window = 60.0;                      // s
  double cis_threshold = 0.5;                    // m/s
  double wprb_deadband = 1.0 * std::numbers::pi / 180.0;
  double wprd_deadband = 10.0;                   // m
  double head_on_half_angle = 22.5 * std::numbers::pi / 180.0;
  double overtaking_half_angle = 67.5 * std::numbers::pi / 180.0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

}  // namespace intentdbn::geo
