#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "intentdbn/extract/extract.hpp"
#include "intentdbn/runtime/session.hpp"

namespace intentdbn::testing {

/// Reference track integrated from a course schedule: at each `t` the ship
/// starts turning toward `course_deg` at `rate` rad/s.
struct Leg {
  double t;
  double course_deg;
};
std::vector<geo::ShipState> scripted_track(geo::ShipState start, const std::vector<Leg>& legs, double t_end,
                                           double rate = geo::deg2rad(2.0), double dt = 0.5);
/// Sample of a scripted track at time t (nearest integration step).
geo::ShipState sample(const std::vector<geo::ShipState>& track, double t);

geo::PolygonMap box(double x0, double x1, double y0, double y1);

struct StepTrace {
  double t = 0.0;
  runtime::NodeProbabilities np;
  model::MeasurementVector mv;
  double front_distance = 0.0;  // m, raw
  double stbd_distance = 0.0;   // m, raw
  std::vector<runtime::CandidateScore> scores;
};

/// Straight approach at 6 m/s to a hazard whose edge is `start_gap` m ahead;
/// stops when the edge is reached.
std::vector<StepTrace> approach_run(double dts_max, double start_gap = 1500.0, double dt = 5.0);

/// 20° starboard turn at t = 30 s toward a wall parallel to the initial
/// course `wall_x` m abeam, held until the wall is close (or straight when !turn).
std::vector<StepTrace> wall_turn_run(bool turn, double dts_max, double wall_x = 750.0, double dt = 5.0);

/// Head-on encounter, brief starboard jog, then a port turn to a waypoint.
/// Scores candidates at each step with t ≥ score_from.
std::vector<StepTrace> head_on_turn_run(double t_end = 500.0, double score_from = 240.0, double dt = 5.0);

/// Stand-on crossing with hazards flanking the port candidates; scores once
/// at the final step.
StepTrace flanked_crossing_run();

/// 100 straight-line encounters sampled every `dt` s with a planted CPA.
struct PlantedCpa {
  extract::Encounter e;
  double dcpa = 0.0;
  double tcpa = 0.0;
  double rel_speed = 0.0;
  double dt = 0.0;
};
std::vector<PlantedCpa> planted_cpa_corpus(std::size_t n, std::uint64_t seed);

/// Overtaking encounters whose dcpa is drawn from the given truncated normal.
std::vector<extract::Encounter> planted_overtaking_corpus(std::size_t n, const model::TruncNormSpec& sd,
                                                          std::uint64_t seed, std::vector<double>* planted = nullptr);

/// Random one-obstacle session stepped a few times, with its environment.
struct RandomFixture {
  runtime::Session session;
  runtime::Environment env;
  runtime::VesselStates last;
};
RandomFixture random_fixture(std::mt19937_64& rng);

}  // namespace intentdbn::testing
