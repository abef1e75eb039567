#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "intentdbn/extract/extract.hpp"
#include "intentdbn/geometry/projection.hpp"
#include "intentdbn/io/errors.hpp"
#include "intentdbn/model/discretization.hpp"
#include "intentdbn/model/priors.hpp"
#include "intentdbn/runtime/session.hpp"
#include "intentdbn/trajectory/los.hpp"

namespace intentdbn::io {

enum class ExportFormat { kCsv, kJsonl };

struct ExportOptions {
  ExportFormat format = ExportFormat::kCsv;
  bool intentions = true;
  bool candidates = true;
};

struct SlicePolicy {
  double dts_max = 60.0;
  double dts_min = 10.0;
  double theta = geo::deg2rad(5.0);
  double upsilon = 0.5;
  double lookahead = 60.0;
  double waypoint_reached = 100.0;
  double ground_spacing = 50.0;
};

struct RunConfig {
  model::IntentionPriors priors;
  model::DiscretizationSet discretization;
  geo::GeometryParams geometry;
  SlicePolicy slice;
  traj::LosParams trajectory;
  std::vector<double> offsets = traj::default_offsets();
  extract::Thresholds extraction;
  ExportOptions output;
  /// Waypoints in degrees; empty means no route.
  std::vector<geo::LatLon> route;

  /// Throws FormatError when a value is out of range.
  void validate() const;
  runtime::SessionParams session_params(std::size_t workers) const;
  bool operator==(const RunConfig&) const;
};

/// Strict parse: unknown members and wrong types throw SchemaError, missing
/// members take their defaults.
RunConfig parse_config(const std::string& json_text, const std::string& source = "<memory>");
RunConfig load_config(const std::filesystem::path& path);

/// Canonical form: every member present, keys sorted, two-space indent.
std::string serialize_config(const RunConfig& cfg);

}  // namespace intentdbn::io
