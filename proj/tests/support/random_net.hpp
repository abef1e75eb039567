#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "intentdbn/bn/network.hpp"

namespace intentdbn::testing {

struct RandomNetSpec {
  std::size_t max_vars = 12;
  std::uint32_t max_card = 5;
  std::size_t max_parents = 3;
  double joint_cap = 1e7;
  double p_predicate = 0.2;
  double p_zero_entry = 0.1;
  double p_hard = 0.2;
  double p_virtual = 0.2;
};

inline bn::Network random_network(std::mt19937_64& rng, const RandomNetSpec& spec = {}) {
  using bn::State;
  using bn::VarId;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bn::Network net;
  const std::size_t n = 1 + rng() % spec.max_vars;
  double joint = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t c = 2 + static_cast<std::uint32_t>(rng() % (spec.max_card - 1));
    while (c > 2 && joint * c > spec.joint_cap) --c;
    if (joint * c > spec.joint_cap) break;
    joint *= c;
    std::vector<std::string> states;
    for (std::uint32_t s = 0; s < c; ++s) states.push_back("s" + std::to_string(s));
    net.add_variable("v" + std::to_string(i), states);
  }
  for (VarId v = 0; v < net.size(); ++v) {
    std::vector<VarId> parents;
    for (VarId u = 0; u < v; ++u) parents.push_back(u);
    std::shuffle(parents.begin(), parents.end(), rng);
    parents.resize(std::min<std::size_t>(parents.size(), rng() % (spec.max_parents + 1)));
    std::sort(parents.begin(), parents.end());
    const std::uint32_t c = net.variable(v).cardinality();
    if (!parents.empty() && unif(rng) < spec.p_predicate) {
      std::vector<std::uint32_t> pc;
      for (VarId u : parents) pc.push_back(net.variable(u).cardinality());
      const std::uint64_t salt = rng();
      net.set_predicate(v, parents, [salt, c](std::span<const State> ps) {
        std::uint64_t h = salt;
        for (State s : ps) h = (h ^ (s + 0x9e3779b97f4a7c15ULL)) * 0xbf58476d1ce4e5b9ULL;
        return static_cast<State>((h >> 29) % c);
      });
      continue;
    }
    std::size_t rows = 1;
    for (VarId u : parents) rows *= net.variable(u).cardinality();
    std::vector<double> table(rows * c);
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < c; ++k) {
        double x = unif(rng) < spec.p_zero_entry ? 0.0 : 0.05 + unif(rng);
        table[r * c + k] = x;
        s += x;
      }
      if (s == 0.0) {
        table[r * c + rng() % c] = 1.0;
        s = 1.0;
      }
      for (std::uint32_t k = 0; k < c; ++k) table[r * c + k] /= s;
    }
    net.set_cpt(v, parents, std::move(table));
  }
  for (VarId v = 0; v < net.size(); ++v) {
    const double u = unif(rng);
    const std::uint32_t c = net.variable(v).cardinality();
    if (u < spec.p_hard) {
      net.set_evidence(v, static_cast<State>(rng() % c));
    } else if (u < spec.p_hard + spec.p_virtual) {
      std::vector<double> lik(c);
      for (auto& l : lik) l = unif(rng) < 0.15 ? 0.0 : unif(rng);
      lik[rng() % c] = 1.0;
      net.set_virtual_evidence(v, lik);
    }
  }
  return net;
}

}  // namespace intentdbn::testing
