#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/geometry/grounding.hpp"
#include "intentdbn/geometry/kinematics.hpp"
#include "intentdbn/geometry/maneuver.hpp"
#include "intentdbn/geometry/projection.hpp"

using namespace intentdbn;
using geo::deg2rad;

TEST_CASE("angle wrapping") {
  CHECK(geo::wrap_two_pi(-0.5) == doctest::Approx(geo::kTwoPi - 0.5));
  CHECK(geo::wrap_pi(geo::kPi) == doctest::Approx(geo::kPi));
  CHECK(geo::wrap_pi(-geo::kPi) == doctest::Approx(geo::kPi));
  CHECK(geo::angle_diff(deg2rad(10), deg2rad(350)) == doctest::Approx(deg2rad(20)));
  CHECK(geo::bearing({0, 0}, {1, 0}) == doctest::Approx(geo::kPi / 2));
  CHECK(geo::relative_bearing({0, 0}, deg2rad(90), {0, 10}) == doctest::Approx(-geo::kPi / 2));
}

TEST_CASE("projection round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lat(-70, 70), lon(-179, 179), off(-0.3, 0.3);
  for (int k = 0; k < 1000; ++k) {
    const geo::LatLon o{lat(rng), lon(rng)};
    const double a = o.lat + off(rng), b = o.lon + off(rng);
    const auto back = geo::unproject_local(geo::project_local(a, b, o), o);
    CHECK(std::abs(back.lat - a) < 1e-9);
    CHECK(std::abs(back.lon - b) < 1e-9);
  }
}

TEST_CASE("linear cpa") {
  const geo::ShipState a{0, 0, 0, 5, 0};
  const geo::ShipState b{0, 300, 1000, 5, geo::kPi};
  const auto c = geo::cpa_linear(a, b);
  CHECK(c.tcpa == doctest::Approx(100.0));
  CHECK(c.dcpa == doctest::Approx(300.0));
  // Opening range: tcpa clamps to now.
  const geo::ShipState d{0, 0, -1000, 5, geo::kPi};
  const auto o = geo::cpa_linear(a, d);
  CHECK(o.tcpa == 0.0);
  CHECK(o.dcpa == doctest::Approx(1000.0));
  CHECK(geo::has_passed(a, d));
}

TEST_CASE("passing side mirrors under reflection") {
  const geo::ShipState a{0, 0, 0, 5, 0};
  const geo::ShipState stb{0, 300, 1000, 5, geo::kPi};
  const geo::ShipState prt{0, -300, 1000, 5, geo::kPi};
  CHECK(geo::passing_side(a, stb) == geo::Side::kStarboard);
  CHECK(geo::passing_side(a, prt) == geo::Side::kPort);
}

TEST_CASE("colregs classification") {
  const geo::ShipState ref{0, 0, 0, 6, 0};
  CHECK(geo::classify_colregs(ref, {0, 50, 3000, 6, geo::kPi}) == geo::Situation::kHo);
  CHECK(geo::classify_colregs(ref, {0, 0, 1000, 3, 0}) == geo::Situation::kOtIng);
  CHECK(geo::classify_colregs(ref, {0, 0, -1000, 9, 0}) == geo::Situation::kOtEn);
  // Obstacle on the starboard bow crossing to port: ref gives way.
  CHECK(geo::classify_colregs(ref, {0, 2000, 2000, 6, deg2rad(270)}) == geo::Situation::kCrSs);
  CHECK(geo::classify_colregs(ref, {0, -2000, 2000, 6, deg2rad(90)}) == geo::Situation::kCrPs);
}

TEST_CASE("sector ground distance") {
  geo::PolygonMap m;
  m.rings.push_back({{-100, 500}, {100, 500}, {100, 600}, {-100, 600}, {-100, 500}});
  const auto cloud = geo::VertexCloud::from(m);
  CHECK(cloud.size() == 4);
  const auto d = geo::grounding_measurements({0, 0, 0, 5, 0}, cloud);
  CHECK(d.dgf == doctest::Approx(std::hypot(100.0, 500.0)));
  CHECK(std::isinf(d.dgsb));
  CHECK(std::isinf(d.dgps));
  // Turned 90° to port, the box lies on the starboard side.
  const auto s = geo::grounding_measurements({0, 0, 0, 5, deg2rad(270)}, cloud);
  CHECK(s.dgsb == doctest::Approx(std::hypot(100.0, 500.0)));
  CHECK(std::isinf(s.dgf));
}

TEST_CASE("densify bounds edge length") {
  geo::PolygonMap m;
  m.rings.push_back({{0, 0}, {1000, 0}, {1000, 10}, {0, 0}});
  const auto d = geo::densify(m, 50.0);
  const auto& r = d.rings.front();
  CHECK(r.front() == r.back());
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(geo::norm(r[i] - r[i - 1]) <= 50.0 + 1e-9);
}

TEST_CASE("course change classification") {
  const geo::ShipState s0{0, 0, 0, 6, 0};
  const geo::ShipState st[] = {{60, 0, 360, 6, deg2rad(20)}};
  CHECK(geo::course_speed_changes(s0, st).cic == geo::CourseChange::kStarboard);
  const geo::ShipState pt[] = {{60, 0, 360, 6, deg2rad(340)}};
  CHECK(geo::course_speed_changes(s0, pt).cic == geo::CourseChange::kPort);
  const geo::ShipState sl[] = {{60, 0, 360, 4, deg2rad(2)}};
  const auto c = geo::course_speed_changes(s0, sl);
  CHECK(c.cic == geo::CourseChange::kStraight);
  CHECK(c.cis == geo::SpeedChange::kLower);
}

TEST_CASE("geometry params validation") {
  geo::GeometryParams p;
  CHECK_NOTHROW(p.validate());
  p.front_half_angle = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
