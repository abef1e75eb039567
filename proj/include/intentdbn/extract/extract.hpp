#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intentdbn/geometry/projection.hpp"
#include "intentdbn/geometry/types.hpp"
#include "intentdbn/model/priors.hpp"

namespace intentdbn::extract {

enum class ColregsLabel { kHeadOn, kOvertaking, kCrossing };

const char* to_string(ColregsLabel l);
/// Accepts "head-on", "overtaking", "crossing". Throws std::invalid_argument otherwise.
ColregsLabel parse_label(const std::string& s);

struct Encounter {
  std::string id;
  std::vector<geo::ShipState> ref;
  std::vector<geo::ShipState> obs;
  ColregsLabel label = ColregsLabel::kCrossing;
  geo::LatLon origin;

  /// Throws std::invalid_argument unless both tracks have ≥ 2 time-ordered
  /// samples and their time spans overlap.
  void validate() const;
};

/// Reference samples inside the common time span, each paired with the
/// obstacle linearly interpolated to the same timestamp.
struct AlignedPair {
  geo::ShipState ref;
  geo::ShipState obs;
};
std::vector<AlignedPair> align(const Encounter& e);

/// Per encounter, the smallest range while the obstacle is inside the
/// ±π/8 front sector. Encounters without such a timestep are omitted.
std::vector<double> find_isdf_vals(std::span<const Encounter> encounters);
std::optional<double> isdf_value(const Encounter& e);

struct CpaState {
  double dcpa = 0.0;
  double tcpa = 0.0;
  /// Aligned index of the minimum-distance timestep.
  std::size_t index = 0;
  geo::ShipState ref;
};

/// Closest point of approach for one encounter; nullopt (with a warning) when fewer than 2 aligned samples.
std::optional<CpaState> find_cpa(const Encounter& e, std::vector<std::string>* warnings = nullptr);

struct CpaValues {
  std::vector<double> dcpa_vals;
  std::vector<double> tcpa_vals;
};
CpaValues find_cpa(std::span<const Encounter> encounters, std::vector<std::string>* warnings = nullptr);

struct GroundValues {
  std::vector<double> sdgs_vals;
  std::vector<double> sdgf_vals;
};

struct SectorDistances {
  double sb = 0.0;
  double ps = 0.0;
  double fr = 0.0;
};

/// Sector ground distances at `at`, scanning vertices of `map` within the
/// square of half-width `roi_len` about the position.
SectorDistances dist2grd(const geo::ShipState& at, const geo::PolygonMap& map, double roi_len = 10000.0);

/// Sector ground distances over a corpus, sampled at each encounter's CPA state.
GroundValues find_dist2grd_cpa(std::span<const Encounter> encounters, const geo::PolygonMap& map,
                               double dist_thresh = 2000.0, double roi_len = 10000.0);

enum class FitMethod { kRawMoments, kTruncationCorrected };

struct TruncNormFit {
  double mu = 0.0;
  double sigma = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;
  FitMethod method = FitMethod::kRawMoments;

  model::TruncNormSpec spec() const { return {mu, sigma, lo, hi}; }
};

/// Samples clamped to [lo, hi]. kRawMoments reports the sample mean and
/// sd (n − 1); kTruncationCorrected returns the parent-normal parameters whose
/// truncated mean and sd equal them, falling back to raw moments if no solution
/// exists. σ = 0 is floored at 1% of the range and flagged degenerate.
/// Throws std::invalid_argument for fewer than 2 samples or an empty window.
TruncNormFit fit_truncnorm(std::span<const double> samples, double lo, double hi,
                           FitMethod method = FitMethod::kRawMoments);

/// Mean and sd of N(mu, sigma) truncated to [lo, hi].
struct TruncMoments {
  double mean = 0.0;
  double sd = 0.0;
};
TruncMoments truncnorm_moments(double mu, double sigma, double lo, double hi);

struct Thresholds {
  double dist_thresh = 2000.0;
  double roi_len = 10000.0;
  FitMethod method = FitMethod::kTruncationCorrected;
};

struct ExtractionResult {
  std::vector<double> isdf_vals;
  std::vector<double> dcpa_vals;
  std::vector<double> tcpa_vals;
  std::vector<double> sdgs_vals;
  std::vector<double> sdgf_vals;
};

struct NodeFit {
  std::string node;
  std::size_t samples = 0;
  bool fallback = false;
  TruncNormFit fit;
};

struct PriorReport {
  model::IntentionPriors priors;
  ExtractionResult values;
  std::vector<NodeFit> fits;
  std::vector<std::string> warnings;
  std::size_t head_on = 0, overtaking = 0, crossing = 0;

  std::string text() const;
};

/// I_SDF from crossings, I_SD from overtaking dcpa, I_SDM from head-on dcpa/2,
/// I_AT from every tcpa, I_SDGS/I_SDGF from the ground scan. Truncation windows
/// and the discrete priors come from `base`; an empty sample list (or one with
/// a single value) keeps the base parameters and adds a warning.
PriorReport build_prior_config(std::span<const Encounter> corpus, const geo::PolygonMap& map,
                               const Thresholds& thresholds = {}, const model::IntentionPriors& base = {},
                               std::size_t workers = 1);

/// Ground map per encounter, projected about that encounter's origin.
using MapProvider = std::function<geo::PolygonMap(const Encounter&)>;
PriorReport build_prior_config(std::span<const Encounter> corpus, const MapProvider& map_for,
                               const Thresholds& thresholds = {}, const model::IntentionPriors& base = {},
                               std::size_t workers = 1);

}  // namespace intentdbn::extract
