#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "intentdbn/geometry/types.hpp"
#include "intentdbn/model/discretization.hpp"

namespace intentdbn::model {

/// Normal(mu, sigma) truncated to [lo, hi]; mu and sigma are the parent parameters.
struct TruncNormSpec {
  double mu = 0.0;
  double sigma = 1.0;
  double lo = 0.0;
  double hi = 1.0;

  void validate(const char* name) const;
  bool operator==(const TruncNormSpec&) const = default;
};

struct IntentionPriors {
  TruncNormSpec at{2527.0, 1120.0, 0.0, 5000.0};
  TruncNormSpec sdgs{436.0, 124.0, 0.0, 700.0};
  TruncNormSpec sdgf{535.0, 120.0, 0.0, 800.0};
  TruncNormSpec sd{808.0, 430.0, 0.0, 1500.0};
  TruncNormSpec sdf{1411.0, 472.0, 0.0, 2000.0};
  TruncNormSpec sdm{249.0, 148.0, 0.0, 600.0};
  double cc_true = 0.98;
  double gs_true = 0.99;
  double g_true = 0.01;
  double u_true = 0.01;
  std::array<double, 3> p{0.05, 0.90, 0.05};  // higher, similar, lower
  double cs_concentration = 0.92;

  void validate() const;
  bool operator==(const IntentionPriors&) const = default;
};

/// Bin masses of a truncated normal over `bins` equal bins of [lo, hi].
/// Throws std::invalid_argument for a degenerate window.
std::vector<double> discretize_truncnorm(double mu, double sigma, double lo, double hi, std::uint32_t bins);
std::vector<double> discretize_truncnorm(const TruncNormSpec& s, std::uint32_t bins);

/// `concentration` on the measured situation, the rest spread evenly.
std::vector<double> intention_cs_prior(geo::Situation measured, double concentration = 0.92);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace intentdbn::model
