#include "intentdbn/model/discretization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace intentdbn::model {

std::vector<double> Discretization::edges() const {
  std::vector<double> e(bins + 1);
  for (std::uint32_t k = 0; k <= bins; ++k) e[k] = upper * k / bins;
  return e;
}

void Discretization::validate(const char* name) const {
  if (bins < 2) throw std::invalid_argument(std::string(name) + ": at least two bins required");
  if (!(upper > 0.0) || !std::isfinite(upper)) throw std::invalid_argument(std::string(name) + ": upper must be positive");
}

std::uint32_t real_to_bin(double value, const Discretization& d) {
  if (std::isnan(value) || value < 0.0) throw std::invalid_argument("real_to_bin: value must be >= 0");
  if (!std::isfinite(value) || value >= d.upper) return d.bins - 1;
  const auto k = static_cast<std::uint32_t>(std::floor(value / d.width()));
  return std::min(k, d.bins - 1);
}

void DiscretizationSet::validate() const {
  tcpa.validate("discretization.tcpa");
  dcpa.validate("discretization.dcpa");
  df.validate("discretization.df");
  dm.validate("discretization.dm");
  dgs.validate("discretization.dgs");
  dgf.validate("discretization.dgf");
}

}  // namespace intentdbn::model
