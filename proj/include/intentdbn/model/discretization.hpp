#pragma once

#include <cstdint>
#include <vector>

namespace intentdbn::model {

/// Uniform bins over [0, upper]; the last bin also absorbs everything above upper.
struct Discretization {
  std::uint32_t bins = 10;
  double upper = 1.0;

  double width() const { return upper / bins; }
  std::vector<double> edges() const;
  void validate(const char* name) const;
  bool operator==(const Discretization&) const = default;
};

/// floor(value / width) clamped to the last bin; +inf maps to the last bin.
/// Throws std::invalid_argument for negative or NaN values.
std::uint32_t real_to_bin(double value, const Discretization& d);

/// One range per measurement/intention pair that is compared bin-by-bin.
struct DiscretizationSet {
  Discretization tcpa{10, 5000.0};  // M_TCPA vs I_AT
  Discretization dcpa{10, 1500.0};  // M_DCPA vs I_SD
  Discretization df{10, 2000.0};    // M_DF vs I_SDF
  Discretization dm{10, 600.0};     // M_DM vs I_SDM
  Discretization dgs{10, 700.0};    // M_DGSB, M_DGPS vs I_SDGS
  Discretization dgf{10, 800.0};    // M_DGF vs I_SDGF

  void validate() const;
  bool operator==(const DiscretizationSet&) const = default;
};

}  // namespace intentdbn::model
