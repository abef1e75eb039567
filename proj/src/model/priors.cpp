#include "intentdbn/model/priors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace intentdbn::model {

namespace {

// Upper tail 1 − Φ(z), accurate for large z.
double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Φ(b) − Φ(a) for a ≤ b without cancellation in either tail.
double normal_mass(double a, double b) {
  if (a >= 0.0) return normal_sf(a) - normal_sf(b);
  if (b <= 0.0) return normal_sf(-b) - normal_sf(-a);
  return 1.0 - normal_sf(b) - normal_sf(-a);
}

}  // namespace

double normal_cdf(double z) { return normal_sf(-z); }

void TruncNormSpec::validate(const char* name) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument(std::string(name) + ": sigma must be > 0");
  if (!(lo < hi)) throw std::invalid_argument(std::string(name) + ": lo must be < hi");
  if (!std::isfinite(mu)) throw std::invalid_argument(std::string(name) + ": mu must be finite");
}

void IntentionPriors::validate() const {
  at.validate("priors.at");
  sdgs.validate("priors.sdgs");
  sdgf.validate("priors.sdgf");
  sd.validate("priors.sd");
  sdf.validate("priors.sdf");
  sdm.validate("priors.sdm");
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  prob(cc_true, "priors.cc_true");
  prob(gs_true, "priors.gs_true");
  prob(g_true, "priors.g_true");
  prob(u_true, "priors.u_true");
  prob(cs_concentration, "priors.cs_concentration");
  for (double x : p) prob(x, "priors.p");
  if (std::abs(p[0] + p[1] + p[2] - 1.0) > 1e-9) throw std::invalid_argument("priors.p must sum to 1");
}

std::vector<double> discretize_truncnorm(double mu, double sigma, double lo, double hi, std::uint32_t bins) {
  if (!(sigma > 0.0)) throw std::invalid_argument("discretize_truncnorm: sigma must be > 0");
  if (!(lo < hi)) throw std::invalid_argument("discretize_truncnorm: lo must be < hi");
  if (bins < 2) throw std::invalid_argument("discretize_truncnorm: at least two bins required");
  std::vector<double> m(bins);
  for (std::uint32_t k = 0; k < bins; ++k) {
    const double a = lo + (hi - lo) * k / bins;
    const double b = k + 1 == bins ? hi : lo + (hi - lo) * (k + 1) / bins;
    m[k] = std::max(0.0, normal_mass((a - mu) / sigma, (b - mu) / sigma));
  }
  const double z = std::accumulate(m.begin(), m.end(), 0.0);
  if (!(z >= 1e-300)) throw std::invalid_argument("discretize_truncnorm: degenerate truncation window");
  for (double& x : m) x /= z;
  return m;
}

std::vector<double> discretize_truncnorm(const TruncNormSpec& s, std::uint32_t bins) {
  return discretize_truncnorm(s.mu, s.sigma, s.lo, s.hi, bins);
}

std::vector<double> intention_cs_prior(geo::Situation measured, double concentration) {
  std::vector<double> p(5, (1.0 - concentration) / 4.0);
  p[static_cast<std::size_t>(measured)] = concentration;
  return p;
}

}  // namespace intentdbn::model
