#include "intentdbn/model/intention_dbn.hpp"

#include <stdexcept>
#include <string>

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/model/predicates.hpp"

namespace intentdbn::model {

namespace {

const std::vector<std::string> kBool{"false", "true"};
const std::vector<std::string> kSide{"starboard", "port"};
const std::vector<std::string> kCourse{"starboard", "port", "straight"};
const std::vector<std::string> kSpeed{"higher", "lower", "none"};
const std::vector<std::string> kTrend{"decreasing", "increasing", "neither"};
const std::vector<std::string> kSituation{"OT_ing", "OT_en", "HO", "CR_PS", "CR_SS"};
const std::vector<std::string> kPriority{"higher", "similar", "lower"};
const std::vector<std::string> kRole{"SO", "GW"};

std::vector<std::string> bin_states(const Discretization& d) {
  std::vector<std::string> s;
  const auto e = d.edges();
  for (std::uint32_t k = 0; k < d.bins; ++k) {
    s.push_back("[" + std::to_string(static_cast<long long>(e[k])) + "," +
                (k + 1 == d.bins ? std::string("inf") : std::to_string(static_cast<long long>(e[k + 1]))) + ")");
  }
  return s;
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

std::vector<double> bernoulli(double p_true) { return {1.0 - p_true, p_true}; }

VarId root(bn::Network& net, std::string name, std::vector<std::string> states, std::vector<double> prior) {
  const VarId v = net.add_variable(std::move(name), std::move(states));
  net.set_cpt(v, {}, std::move(prior));
  return v;
}

VarId measurement(bn::Network& net, std::string name, std::vector<std::string> states) {
  const std::size_t n = states.size();
  return root(net, std::move(name), std::move(states), uniform(n));
}

VarId model(bn::Network& net, std::string name, NodeKind kind, std::vector<VarId> parents, std::size_t fan_in = 0) {
  const VarId v = net.add_variable(std::move(name), kind == NodeKind::kR ? kRole : kBool);
  const ModelNodeSpec spec = node_spec(kind, fan_in);
  if (spec.parents.size() != parents.size()) throw bn::StructuralError("parent count mismatch while building the DBN");
  net.set_predicate(v, std::move(parents), node_rule(spec));
  return v;
}

std::string sfx(std::size_t ship, std::size_t slice) {
  return "_" + std::to_string(ship + 1) + "[" + std::to_string(slice) + "]";
}

std::string sfx(std::size_t slice) { return "[" + std::to_string(slice) + "]"; }

}  // namespace

std::vector<VarId> IntentionIds::all() const {
  std::vector<VarId> v{at, cc, gs};
  v.insert(v.end(), p.begin(), p.end());
  v.insert(v.end(), cs.begin(), cs.end());
  v.insert(v.end(), {g, sdgs, sdgf, sd, sdf, sdm, u});
  return v;
}

const SliceIds& IntentionDbn::add_slice() {
  const std::size_t t = slices.size();
  const std::size_t n = n_ships;
  bn::Network& g = net;
  SliceIds s;
  s.ships.resize(n);

  s.m_cic = measurement(g, "M_CIC" + sfx(t), kCourse);
  s.m_cis = measurement(g, "M_CIS" + sfx(t), kSpeed);
  s.m_ccc = measurement(g, "M_CCC" + sfx(t), kBool);
  s.m_dgsb = measurement(g, "M_DGSB" + sfx(t), bin_states(disc.dgs));
  s.m_dgps = measurement(g, "M_DGPS" + sfx(t), bin_states(disc.dgs));
  s.m_dgf = measurement(g, "M_DGF" + sfx(t), bin_states(disc.dgf));
  s.m_wprb = measurement(g, "M_WPRB" + sfx(t), kTrend);
  s.m_wprd = measurement(g, "M_WPRD" + sfx(t), kTrend);
  s.m_wpah = measurement(g, "M_WPAH" + sfx(t), kBool);

  const VarId sa_prev = t == 0 ? intent.sa_init : slices.back().sa;
  const VarId pa_prev = t == 0 ? intent.pa_init : slices.back().pa;
  s.sa = model(g, "SA" + sfx(t), NodeKind::kSA, {sa_prev, s.m_cic});
  s.pa = model(g, "PA" + sfx(t), NodeKind::kPA, {pa_prev, s.m_cic});
  s.nav_m = model(g, "NAV_M" + sfx(t), NodeKind::kNAVM, {s.m_wprd, s.m_wprb, s.m_wpah});

  for (std::size_t i = 0; i < n; ++i) {
    ShipSliceIds& h = s.ships[i];
    h.m_dcpa = measurement(g, "M_DCPA" + sfx(i, t), bin_states(disc.dcpa));
    h.m_df = measurement(g, "M_DF" + sfx(i, t), bin_states(disc.df));
    h.m_dm = measurement(g, "M_DM" + sfx(i, t), bin_states(disc.dm));
    h.m_tcpa = measurement(g, "M_TCPA" + sfx(i, t), bin_states(disc.tcpa));
    h.m_p = measurement(g, "M_P" + sfx(i, t), kBool);
    h.m_ps = measurement(g, "M_PS" + sfx(i, t), kSide);
    h.m_mps = measurement(g, "M_MPS" + sfx(i, t), kSide);
    h.m_cs = measurement(g, "M_CS" + sfx(i, t), kSituation);

    const VarId ics = intent.cs[i];
    h.sd = model(g, "SD" + sfx(i, t), NodeKind::kSD, {h.m_dcpa, intent.sd, h.m_df, intent.sdf});
    h.p = model(g, "P" + sfx(i, t), NodeKind::kP, {h.m_p, h.sd});
    h.c_oten = model(g, "C_OTen" + sfx(i, t), NodeKind::kCOTen, {h.sd});
    h.c_oting = model(g, "C_OTing" + sfx(i, t), NodeKind::kCOTing, {h.sd});
    h.c_ho = model(g, "C_HO" + sfx(i, t), NodeKind::kCHO, {h.m_dm, intent.sdm, h.m_mps});
    h.c_cr_ss = model(g, "C_CR_SS" + sfx(i, t), NodeKind::kCCRSS, {h.sd, h.m_ps});
    h.c_cr_ps = model(g, "C_CR_PS" + sfx(i, t), NodeKind::kCCRPS, {h.sd, s.m_cic});
    h.c_nav_m = model(g, "C_NAV_M" + sfx(i, t), NodeKind::kCNAVM,
                      {s.nav_m, h.sd, ics, h.m_p, h.m_dm, intent.sdm});
    h.r = model(g, "R" + sfx(i, t), NodeKind::kR, {intent.p[i], ics});
    h.gs = model(g, "GS" + sfx(i, t), NodeKind::kGS, {s.sa, s.pa, s.m_cic, h.m_ps});
    h.cem = model(g, "CEM" + sfx(i, t), NodeKind::kCEM,
                  {intent.gs, h.gs, intent.cc, ics, h.c_oting, h.c_oten, h.c_ho, h.c_cr_ss, h.c_cr_ps});
  }

  s.sdg_s = model(g, "SDG_S" + sfx(t), NodeKind::kSDGS, {s.m_dgsb, s.m_dgps, intent.sdgs, s.m_cic});
  s.sdg_f = model(g, "SDG_F" + sfx(t), NodeKind::kSDGF, {s.m_dgf, intent.sdgf, s.m_cic});
  s.sdg = model(g, "SDG" + sfx(t), NodeKind::kSDG, {s.sdg_s, s.sdg_f});

  for (std::size_t i = 0; i < n; ++i) {
    ShipSliceIds& h = s.ships[i];
    std::vector<VarId> soc_parents{s.m_cic, s.m_cis};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      soc_parents.insert(soc_parents.end(), {s.ships[j].r, s.ships[j].cem, s.ships[j].p});
    }
    h.soc = model(g, "SOC" + sfx(i, t), NodeKind::kSOC, std::move(soc_parents), n - 1);
    h.gwc = model(g, "GWC" + sfx(i, t), NodeKind::kGWC, {h.cem, s.m_ccc, h.m_tcpa, intent.at, h.soc});
    h.c_colav_m = model(g, "C_COLAV_M" + sfx(i, t), NodeKind::kCCOLAVM, {h.p, h.r, h.soc, h.gwc});
    h.c = model(g, "C" + sfx(i, t), NodeKind::kCi, {h.c_colav_m, h.c_nav_m, s.sdg, intent.g});
  }

  std::vector<VarId> c_parents;
  for (const auto& h : s.ships) c_parents.push_back(h.c);
  c_parents.push_back(intent.u);
  s.c = model(g, "C" + sfx(t), NodeKind::kC, std::move(c_parents), n);

  slices.push_back(std::move(s));
  return slices.back();
}

namespace {

IntentionDbn build(std::size_t n_ships, const IntentionPriors* priors, const DiscretizationSet& disc,
                   std::size_t slices, std::span<const geo::Situation> initial_cs) {
  if (n_ships == 0) throw bn::StructuralError("at least one obstacle ship is required");
  if (!initial_cs.empty() && initial_cs.size() != n_ships) {
    throw bn::StructuralError("initial situation count does not match the number of ships");
  }
  disc.validate();
  if (priors) priors->validate();

  IntentionDbn d;
  d.n_ships = n_ships;
  d.disc = disc;
  bn::Network& g = d.net;
  auto tn = [&](const TruncNormSpec& spec, const Discretization& dz) {
    if (!priors) return uniform(dz.bins);
    if (spec.lo != 0.0 || spec.hi != dz.upper) {
      throw std::invalid_argument("intention prior range must match its discretization range [0, upper]");
    }
    return discretize_truncnorm(spec, dz.bins);
  };
  auto bern = [&](double p) { return priors ? bernoulli(p) : uniform(2); };

  IntentionIds& I = d.intent;
  const IntentionPriors def;
  const IntentionPriors& P = priors ? *priors : def;
  I.at = root(g, "I_AT", bin_states(disc.tcpa), tn(P.at, disc.tcpa));
  I.cc = root(g, "I_CC", kBool, bern(P.cc_true));
  I.gs = root(g, "I_GS", kBool, bern(P.gs_true));
  for (std::size_t i = 0; i < n_ships; ++i) {
    I.p.push_back(root(g, "I_P_" + std::to_string(i + 1), kPriority,
                       priors ? std::vector<double>(P.p.begin(), P.p.end()) : uniform(3)));
  }
  for (std::size_t i = 0; i < n_ships; ++i) {
    std::vector<double> cs = uniform(5);
    if (priors && !initial_cs.empty()) cs = intention_cs_prior(initial_cs[i], P.cs_concentration);
    I.cs.push_back(root(g, "I_CS_" + std::to_string(i + 1), kSituation, std::move(cs)));
  }
  I.g = root(g, "I_G", kBool, bern(P.g_true));
  I.sdgs = root(g, "I_SDGS", bin_states(disc.dgs), tn(P.sdgs, disc.dgs));
  I.sdgf = root(g, "I_SDGF", bin_states(disc.dgf), tn(P.sdgf, disc.dgf));
  I.sd = root(g, "I_SD", bin_states(disc.dcpa), tn(P.sd, disc.dcpa));
  I.sdf = root(g, "I_SDF", bin_states(disc.df), tn(P.sdf, disc.df));
  I.sdm = root(g, "I_SDM", bin_states(disc.dm), tn(P.sdm, disc.dm));
  I.u = root(g, "I_U", kBool, bern(P.u_true));
  I.sa_init = root(g, "SA_init", kBool, uniform(2));
  I.pa_init = root(g, "PA_init", kBool, uniform(2));

  for (std::size_t t = 0; t < slices; ++t) d.add_slice();
  return d;
}

}  // namespace

IntentionDbn build_intention_dbn(std::size_t n_ships, const IntentionPriors& priors, const DiscretizationSet& disc,
                                 std::size_t slices, std::span<const geo::Situation> initial_cs) {
  return build(n_ships, &priors, disc, slices, initial_cs);
}

IntentionDbn build_scoring_dbn(std::size_t n_ships, const DiscretizationSet& disc) {
  return build(n_ships, nullptr, disc, 1, {});
}

}  // namespace intentdbn::model
