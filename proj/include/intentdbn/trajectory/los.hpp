#pragma once

#include <string>
#include <vector>

#include "intentdbn/geometry/angles.hpp"
#include "intentdbn/geometry/types.hpp"

namespace intentdbn::traj {

struct CandidateTrajectory {
  std::string id;
  std::vector<geo::ShipState> samples;  // samples[0] is the start state
  double offset = 0.0;                  // rad, positive to starboard

  double duration() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }
  /// Linear interpolation in time, clamped to the sampled interval.
  geo::ShipState at(double t) const;
};

struct LosParams {
  double horizon = 600.0;                 // s
  double dt = 5.0;                        // s
  double turn_rate = geo::deg2rad(2.0);   // rad/s
  double deviation_time = 60.0;           // s held on the offset course
  void validate() const;
};

/// The six default course offsets.
std::vector<double> default_offsets();

/// Stable label for an offset, e.g. "stbd20", "port45", "nominal".
std::string offset_label(double offset);

/// One trajectory per offset: rate-limited turn to cog + offset, hold, then a
/// rate-limited return to the initial course, leaving a parallel track.
/// Speed stays at start.sog throughout.
std::vector<CandidateTrajectory> los_candidates(const geo::ShipState& start, const std::vector<double>& offsets,
                                                const LosParams& params = {});

}  // namespace intentdbn::traj
