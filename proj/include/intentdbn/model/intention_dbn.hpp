#pragma once

#include <optional>
#include <span>
#include <vector>

#include "intentdbn/bn/network.hpp"
#include "intentdbn/geometry/types.hpp"
#include "intentdbn/model/discretization.hpp"
#include "intentdbn/model/priors.hpp"

namespace intentdbn::model {

using bn::VarId;

struct IntentionIds {
  VarId at, cc, gs, g, sdgs, sdgf, sd, sdf, sdm, u;
  std::vector<VarId> p;   // I_P_i
  std::vector<VarId> cs;  // I_CS_i
  VarId sa_init, pa_init;

  /// The 10 + 2n intention nodes in canonical order.
  std::vector<VarId> all() const;
};

struct ShipSliceIds {
  VarId m_dcpa, m_df, m_dm, m_tcpa, m_p, m_ps, m_mps, m_cs;
  VarId sd, p, c_oten, c_oting, c_ho, c_cr_ss, c_cr_ps, c_nav_m, r, gs, cem, soc, gwc, c_colav_m, c;
};

struct SliceIds {
  VarId m_cic, m_cis, m_ccc, m_dgsb, m_dgps, m_dgf, m_wprb, m_wprd, m_wpah;
  VarId nav_m, sdg_s, sdg_f, sdg, c, sa, pa;
  std::vector<ShipSliceIds> ships;
};

struct IntentionDbn {
  bn::Network net;
  std::size_t n_ships = 0;
  DiscretizationSet disc;
  IntentionIds intent;
  std::vector<SliceIds> slices;

  /// Append one slice wired to the previous one through SA/PA.
  const SliceIds& add_slice();
};

/// `initial_cs` gives the measured situation per ship for the I_CS priors
/// (uniform when empty).
IntentionDbn build_intention_dbn(std::size_t n_ships, const IntentionPriors& priors, const DiscretizationSet& disc,
                                 std::size_t slices, std::span<const geo::Situation> initial_cs = {});

/// Same structure with uniform intention priors, for scoring under virtual evidence.
IntentionDbn build_scoring_dbn(std::size_t n_ships, const DiscretizationSet& disc);

/// 10 + 2n intention nodes, SA/PA carry-in roots, and 16 + 23n nodes per slice.
constexpr std::size_t expected_node_count(std::size_t n_ships, std::size_t slices) {
  return 10 + 2 * n_ships + 2 + slices * (16 + 23 * n_ships);
}

}  // namespace intentdbn::model
