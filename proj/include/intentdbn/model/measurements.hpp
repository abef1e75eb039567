#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "intentdbn/bn/network.hpp"
#include "intentdbn/geometry/types.hpp"
#include "intentdbn/model/discretization.hpp"
#include "intentdbn/model/intention_dbn.hpp"

namespace intentdbn::model {

/// Real-valued measurements towards one obstacle (+inf = saturated).
struct RawShipMeasurements {
  double dcpa = std::numeric_limits<double>::infinity();
  double df = std::numeric_limits<double>::infinity();
  double dm = std::numeric_limits<double>::infinity();
  double tcpa = std::numeric_limits<double>::infinity();
  bool passed = false;
  geo::Side ps = geo::Side::kStarboard;
  geo::Side mps = geo::Side::kStarboard;
  geo::Situation cs = geo::Situation::kCrSs;
};

struct RawMeasurements {
  std::vector<RawShipMeasurements> ships;
  geo::CourseChange cic = geo::CourseChange::kStraight;
  geo::SpeedChange cis = geo::SpeedChange::kNone;
  bool ccc = false;
  double dgsb = std::numeric_limits<double>::infinity();
  double dgps = std::numeric_limits<double>::infinity();
  double dgf = std::numeric_limits<double>::infinity();
  geo::Trend wprb = geo::Trend::kNeither;
  geo::Trend wprd = geo::Trend::kNeither;
  bool wpah = false;
};

struct ShipMeasurements {
  std::uint32_t dcpa_bin = 0, df_bin = 0, dm_bin = 0, tcpa_bin = 0;
  bool passed = false;
  geo::Side ps = geo::Side::kStarboard;
  geo::Side mps = geo::Side::kStarboard;
  geo::Situation cs = geo::Situation::kCrSs;

  bool operator==(const ShipMeasurements&) const = default;
};

/// One slice of measurement-node states.
struct MeasurementVector {
  std::vector<ShipMeasurements> ships;
  geo::CourseChange cic = geo::CourseChange::kStraight;
  geo::SpeedChange cis = geo::SpeedChange::kNone;
  bool ccc = false;
  std::uint32_t dgsb_bin = 0, dgps_bin = 0, dgf_bin = 0;
  geo::Trend wprb = geo::Trend::kNeither;
  geo::Trend wprd = geo::Trend::kNeither;
  bool wpah = false;

  bool operator==(const MeasurementVector&) const = default;
};

MeasurementVector discretize(const RawMeasurements& raw, const DiscretizationSet& disc);

/// Pairwise kinematic measurements of ref towards obs.
RawShipMeasurements measure_pair(const geo::ShipState& ref, const geo::ShipState& obs,
                                 const geo::GeometryParams& params = {});

/// Hard evidence for every measurement node of `slice`.
void apply_measurements(bn::Network& net, const SliceIds& slice, const MeasurementVector& m);

}  // namespace intentdbn::model
