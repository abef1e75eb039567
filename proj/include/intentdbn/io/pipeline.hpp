#pragma once

#include <optional>
#include <vector>

#include "intentdbn/extract/extract.hpp"
#include "intentdbn/io/config.hpp"
#include "intentdbn/io/export.hpp"
#include "intentdbn/runtime/session.hpp"

namespace intentdbn::io {

/// Ground cloud and route (projected about `origin`) for one encounter.
runtime::Environment make_environment(const RunConfig& cfg, const geo::PolygonMap& map, geo::LatLon origin);

struct RunResult {
  RunLayout layout;
  std::vector<StepRecord> records;
};

struct ReplayOptions {
  std::size_t workers = 1;
  /// Score candidates at every step.
  bool score = true;
  /// Stop after the last step with t ≤ until.
  std::optional<double> until;
};

/// Step loop and candidate scoring over every aligned reference sample of `e`.
RunResult replay(const extract::Encounter& e, const geo::PolygonMap& map, const RunConfig& cfg,
                 const ReplayOptions& opts = {});

/// Replays without scoring up to `t`, then scores candidates once; the
/// returned record is the step at or before `t`.
StepRecord score_at(const extract::Encounter& e, const geo::PolygonMap& map, const RunConfig& cfg, double t,
                    std::size_t workers = 1, RunLayout* layout = nullptr);

}  // namespace intentdbn::io
