#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "intentdbn/bn/errors.hpp"
#include "intentdbn/bn/inference.hpp"
#include "random_net.hpp"

using namespace intentdbn;

namespace {

bn::Network sprinkler() {
  bn::Network net;
  const auto rain = net.add_variable("rain", {"no", "yes"});
  const auto spr = net.add_variable("sprinkler", {"off", "on"});
  const auto wet = net.add_variable("wet", {"dry", "wet"});
  net.set_cpt(rain, {}, {0.8, 0.2});
  net.set_cpt(spr, {rain}, {0.6, 0.4, 0.99, 0.01});
  net.set_cpt(wet, {rain, spr}, {1.0, 0.0, 0.1, 0.9, 0.2, 0.8, 0.01, 0.99});
  return net;
}

double max_diff(const bn::Distribution& a, const bn::Distribution& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) m = std::max(m, std::abs(a.p[i] - b.p[i]));
  return m;
}

}  // namespace

TEST_CASE("factor layout puts the last scope variable fastest") {
  const auto f = bn::Factor::dense({0, 1}, {2, 3}, {1, 2, 3, 4, 5, 6});
  const bn::State a[] = {1, 2};
  CHECK(f.at(a) == 6.0);
  const auto r = f.reduce(0, 1);
  CHECK(r.table() == std::vector<double>{4, 5, 6});
  const auto s = bn::sum_out(f, 1);
  CHECK(s.table() == std::vector<double>{6, 15});
  CHECK(bn::total(f) == 21.0);
}

TEST_CASE("factor product over disjoint scopes") {
  const auto a = bn::Factor::unary(0, {1, 2}, bn::FactorKind::kIntermediate);
  const auto b = bn::Factor::unary(1, {3, 5}, bn::FactorKind::kIntermediate);
  const auto p = bn::multiply(a, b);
  CHECK(p.scope() == std::vector<bn::VarId>{0, 1});
  CHECK(p.table() == std::vector<double>{3, 5, 6, 10});
}

TEST_CASE("predicate factor materializes to an indicator table") {
  const auto f = bn::Factor::predicate({0, 1}, {2, 2}, 2, 2,
                                       [](std::span<const bn::State> p) { return p[0] & p[1]; });
  CHECK_FALSE(f.is_dense());
  const auto d = f.to_dense();
  CHECK(d.table() == std::vector<double>{1, 0, 1, 0, 1, 0, 0, 1});
}

TEST_CASE("sprinkler posterior matches enumeration") {
  auto net = sprinkler();
  net.set_evidence(net.id("wet"), 1);
  const auto p = bn::posterior(net, net.id("rain"));
  const auto o = bn::joint_enumerate_oracle(net, net.id("rain"));
  CHECK(max_diff(p, o) < 1e-12);
  // P(rain | wet) by hand.
  const double pw_r = 0.99 * 0.8 + 0.01 * 0.99;
  const double pw_nr = 0.6 * 0.0 + 0.4 * 0.9;
  const double expect = 0.2 * pw_r / (0.2 * pw_r + 0.8 * pw_nr);
  CHECK(p[1] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("log evidence equals the log marginal of the evidence") {
  auto net = sprinkler();
  net.set_evidence(net.id("wet"), 0);
  const double pd = 0.8 * (0.6 * 1.0 + 0.4 * 0.1) + 0.2 * (0.99 * 0.2 + 0.01 * 0.01);
  CHECK(bn::log_evidence(net) == doctest::Approx(std::log(pd)).epsilon(1e-12));
}

TEST_CASE("virtual evidence of ones is a no-op") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    auto net = testing::random_network(rng, {.max_vars = 8, .p_hard = 0.0, .p_virtual = 0.0});
    const bn::VarId v = static_cast<bn::VarId>(rng() % net.size());
    const auto before = bn::posteriors(net, std::vector<bn::VarId>{0});
    net.set_virtual_evidence(v, std::vector<double>(net.variable(v).cardinality(), 1.0));
    const auto after = bn::posteriors(net, std::vector<bn::VarId>{0});
    CHECK(max_diff(before[0], after[0]) < 1e-12);
  }
}

TEST_CASE("elimination ordering does not change the posteriors") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const auto net = testing::random_network(rng, {.max_vars = 9});
    std::vector<bn::VarId> q;
    for (bn::VarId v = 0; v < net.size(); ++v) q.push_back(v);
    std::vector<bn::Distribution> ref;
    try {
      ref = bn::posteriors(net, q, {.ordering = bn::Ordering::kNatural});
    } catch (const bn::ContradictionError&) {
      CHECK_THROWS_AS(bn::posteriors(net, q, {.ordering = bn::Ordering::kMinFill}), bn::ContradictionError);
      continue;
    }
    for (auto o : {bn::Ordering::kMinFill, bn::Ordering::kMinDegree}) {
      bn::InferenceOptions opts;
      opts.ordering = o;
      const auto d = bn::posteriors(net, q, opts);
      for (std::size_t i = 0; i < q.size(); ++i) CHECK(max_diff(d[i], ref[i]) < 1e-10);
    }
    bn::InferenceOptions plain;
    plain.simplify = false;
    const auto d = bn::posteriors(net, q, plain);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(max_diff(d[i], ref[i]) < 1e-10);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("contradictory evidence throws") {
  bn::Network net;
  const auto a = net.add_variable("a", {"f", "t"});
  const auto b = net.add_variable("b", {"f", "t"});
  net.set_cpt(a, {}, {0.5, 0.5});
  net.set_predicate(b, {a}, [](std::span<const bn::State> p) { return p[0]; });
  net.set_evidence(a, 0);
  net.set_evidence(b, 1);
  CHECK_THROWS_AS(bn::posterior(net, a), bn::ContradictionError);
}

TEST_CASE("structural and evidence errors") {
  bn::Network net;
  const auto a = net.add_variable("a", {"f", "t"});
  CHECK_THROWS_AS(net.validate(), bn::StructuralError);
  CHECK_THROWS_AS(net.set_cpt(a, {}, {0.5}), bn::StructuralError);
  net.set_cpt(a, {}, {0.5, 0.5});
  CHECK_THROWS_AS(net.set_evidence(a, 2), bn::InvalidEvidenceError);
  CHECK_THROWS_AS(net.set_virtual_evidence(a, {0.0, 0.0}), bn::InvalidEvidenceError);
  CHECK_NOTHROW(net.validate());
}
