#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multiroots.h>
#include <gsl/gsl_randist.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "intentdbn/extract/extract.hpp"

namespace intentdbn::extract {

namespace {

// Φ(b) − Φ(a) without cancellation in the upper tail.
double mass(double a, double b) {
  if (a > 0.0) return gsl_cdf_ugaussian_Q(a) - gsl_cdf_ugaussian_Q(b);
  return gsl_cdf_ugaussian_P(b) - gsl_cdf_ugaussian_P(a);
}

struct Target {
  double mean, sd, lo, hi;
};

int residual(const gsl_vector* x, void* params, gsl_vector* f) {
  const auto* t = static_cast<const Target*>(params);
  const double mu = gsl_vector_get(x, 0);
  const double sigma = std::exp(gsl_vector_get(x, 1));
  const auto m = truncnorm_moments(mu, sigma, t->lo, t->hi);
  if (!std::isfinite(m.mean) || !std::isfinite(m.sd)) return GSL_EDOM;
  const double w = t->hi - t->lo;
  gsl_vector_set(f, 0, (m.mean - t->mean) / w);
  gsl_vector_set(f, 1, (m.sd - t->sd) / w);
  return GSL_SUCCESS;
}

bool solve_corrected(const Target& target, double& mu, double& sigma) {
  if (target.sd >= (target.hi - target.lo) / std::sqrt(12.0)) return false;
  gsl_set_error_handler_off();
  Target t = target;
  gsl_multiroot_function fn{&residual, 2, &t};
  std::unique_ptr<gsl_multiroot_fsolver, decltype(&gsl_multiroot_fsolver_free)> solver(
      gsl_multiroot_fsolver_alloc(gsl_multiroot_fsolver_hybrids, 2), &gsl_multiroot_fsolver_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x0(gsl_vector_alloc(2), &gsl_vector_free);
  gsl_vector_set(x0.get(), 0, target.mean);
  gsl_vector_set(x0.get(), 1, std::log(target.sd));
  if (gsl_multiroot_fsolver_set(solver.get(), &fn, x0.get()) != GSL_SUCCESS) return false;
  for (int it = 0; it < 200; ++it) {
    if (gsl_multiroot_fsolver_iterate(solver.get()) != GSL_SUCCESS) break;
    if (gsl_multiroot_test_residual(solver->f, 1e-12) == GSL_SUCCESS) {
      mu = gsl_vector_get(solver->x, 0);
      sigma = std::exp(gsl_vector_get(solver->x, 1));
      return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0;
    }
  }
  return false;
}

}  // namespace

TruncMoments truncnorm_moments(double mu, double sigma, double lo, double hi) {
  const double a = (lo - mu) / sigma, b = (hi - mu) / sigma;
  const double z = mass(a, b);
  const double pa = gsl_ran_ugaussian_pdf(a), pb = gsl_ran_ugaussian_pdf(b);
  const double r = (pa - pb) / z;
  const double var = sigma * sigma * (1.0 + (a * pa - b * pb) / z - r * r);
  return {mu + sigma * r, std::sqrt(std::max(0.0, var))};
}

TruncNormFit fit_truncnorm(std::span<const double> samples, double lo, double hi, FitMethod method) {
  if (samples.size() < 2) throw std::invalid_argument("fit_truncnorm needs at least 2 samples");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("fit_truncnorm needs a finite window lo < hi");
  }
  double sum = 0.0;
  for (double s : samples) sum += std::clamp(s, lo, hi);
  const double n = static_cast<double>(samples.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double s : samples) {
    const double d = std::clamp(s, lo, hi) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));

  TruncNormFit fit{mean, sd, lo, hi, false, FitMethod::kRawMoments};
  if (sd == 0.0) {
    fit.sigma = 0.01 * (hi - lo);
    fit.degenerate = true;
    return fit;
  }
  if (method == FitMethod::kTruncationCorrected) {
    double mu = 0.0, sigma = 0.0;
    if (solve_corrected({mean, sd, lo, hi}, mu, sigma)) {
      fit.mu = mu;
      fit.sigma = sigma;
      fit.method = FitMethod::kTruncationCorrected;
    }
  }
  return fit;
}

}  // namespace intentdbn::extract
