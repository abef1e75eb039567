#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intentdbn/bn/inference.hpp"
#include "intentdbn/geometry/grounding.hpp"
#include "intentdbn/geometry/types.hpp"
#include "intentdbn/model/intention_dbn.hpp"
#include "intentdbn/model/measurements.hpp"
#include "intentdbn/trajectory/los.hpp"

namespace intentdbn::runtime {

/// Reference vessel and obstacles at one instant (common timestamp).
struct VesselStates {
  geo::ShipState ref;
  std::vector<geo::ShipState> obstacles;
};

/// Static surroundings: ground vertices and the reference vessel's route.
struct Environment {
  geo::VertexCloud ground;
  std::vector<geo::Waypoint> route;
  double waypoint_reached = 100.0;  // m

  static Environment from(const geo::PolygonMap& map, std::vector<geo::Waypoint> route,
                          double densify_spacing = 50.0);
};

struct SessionParams {
  double dts_max = 60.0;                  // s
  double dts_min = 10.0;                  // s
  double theta = geo::deg2rad(5.0);       // rad
  double upsilon = 0.5;                   // m/s
  double lookahead = 60.0;                // s
  std::size_t workers = 1;
  geo::GeometryParams geometry;
  bn::InferenceOptions inference;
  void validate() const;
};

struct IntentionPosterior {
  double t = 0.0;
  std::vector<std::string> names;
  std::vector<bn::Distribution> dists;

  const bn::Distribution& operator[](std::string_view name) const;
};

/// P(true) of selected model nodes in the latest slice.
struct NodeProbabilities {
  double sdg_f = 0.0;
  double sdg_s = 0.0;
  std::vector<double> c_nav_m;    // per obstacle
  std::vector<double> c_colav_m;  // per obstacle
  /// P(C = true) for the latest slice with its own C evidence withheld.
  double c = 0.0;
};

struct CandidateScore {
  std::string id;
  double raw = 0.0;
  double normalized = 0.0;
};

struct CandidateScores {
  std::vector<CandidateScore> scores;
  bool all_incompatible = false;
};

/// The step-update loop for one reference vessel. Single-threaded; distinct
/// sessions share nothing.
class Session {
 public:
  /// init_session: one slice at t0, situation-start states recorded.
  Session(const VesselStates& initial, const model::IntentionPriors& priors = {},
          const model::DiscretizationSet& disc = {}, SessionParams params = {});

  /// Measure, apply evidence and infer for states strictly later than the last step.
  const IntentionPosterior& step_update(const VesselStates& states, const Environment& env);

  bool should_add_slice(const VesselStates& states) const;

  /// Candidate scoring on a detached scoring network; the session is not modified.
  CandidateScores score_candidates(std::span<const traj::CandidateTrajectory> candidates,
                                   const Environment& env) const;
  model::MeasurementVector measure_candidate(const traj::CandidateTrajectory& candidate,
                                             const Environment& env) const;

  /// Measurements of the current step for the given states.
  model::RawMeasurements measure(const VesselStates& states, const Environment& env) const;

  const IntentionPosterior& posterior() const { return posterior_; }
  NodeProbabilities node_probabilities() const;
  const model::IntentionDbn& dbn() const { return dbn_; }
  std::size_t slice_count() const { return dbn_.slices.size(); }
  const std::vector<double>& slice_times() const { return slice_times_; }
  const std::vector<model::MeasurementVector>& slice_measurements() const { return slice_mv_; }
  const VesselStates& situation_start() const { return start_; }
  const SessionParams& params() const { return params_; }
  std::optional<geo::Waypoint> current_waypoint(const Environment& env) const;

  /// FNV-1a digest of all mutable state (evidence, slices, history, posterior).
  std::uint64_t state_hash() const;

 private:
  IntentionPosterior infer_posterior(double t) const;
  bool latch(geo::CourseChange side) const;
  std::vector<geo::ShipState> recent_history(const geo::ShipState& now) const;

  SessionParams params_;
  model::IntentionDbn dbn_;
  model::IntentionDbn scoring_;
  VesselStates start_;
  VesselStates last_states_;
  std::vector<geo::ShipState> ref_history_;
  std::vector<double> slice_times_;
  std::vector<VesselStates> slice_states_;
  std::vector<model::MeasurementVector> slice_mv_;
  std::size_t waypoint_index_ = 0;
  double last_t_;
  bool stepped_ = false;
  IntentionPosterior posterior_;
};

/// Workers from INTENTDBN_WORKERS, else hardware concurrency (at least 1).
std::size_t default_workers();

}  // namespace intentdbn::runtime
