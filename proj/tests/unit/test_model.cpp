#include <cmath>
#include <stdexcept>
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "intentdbn/bn/errors.hpp"
#include "intentdbn/bn/inference.hpp"
#include "intentdbn/model/discretization.hpp"
#include "intentdbn/model/intention_dbn.hpp"
#include "intentdbn/model/predicates.hpp"
#include "intentdbn/model/priors.hpp"

using namespace intentdbn;
using model::NodeKind;

TEST_CASE("real_to_bin") {
  const model::Discretization d{10, 1500.0};
  CHECK(model::real_to_bin(0.0, d) == 0);
  CHECK(model::real_to_bin(149.9, d) == 0);
  CHECK(model::real_to_bin(150.0, d) == 1);
  CHECK(model::real_to_bin(1500.0, d) == 9);
  CHECK(model::real_to_bin(1600.0, d) == 9);
  CHECK(model::real_to_bin(INFINITY, d) == 9);
  CHECK_THROWS_AS(model::real_to_bin(-1.0, d), std::invalid_argument);
  CHECK_THROWS_AS(model::real_to_bin(NAN, d), std::invalid_argument);
}

TEST_CASE("truncated normal discretization") {
  const auto sym = model::discretize_truncnorm(5.0, 2.0, 0.0, 10.0, 2);
  CHECK(sym[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sym[1] == doctest::Approx(0.5).epsilon(1e-12));
  const auto at = model::discretize_truncnorm(model::IntentionPriors{}.at, 10);
  CHECK(std::accumulate(at.begin(), at.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto low = model::discretize_truncnorm(-2500.0, 100.0, 0.0, 1000.0, 10);
  CHECK(low[0] > 0.999);
  CHECK_THROWS_AS(model::discretize_truncnorm(-5000.0, 100.0, 0.0, 1000.0, 10), std::invalid_argument);
}

TEST_CASE("situation prior") {
  const auto p = model::intention_cs_prior(geo::Situation::kHo);
  CHECK(p[2] == doctest::Approx(0.92));
  for (int i : {0, 1, 3, 4}) CHECK(p[i] == doctest::Approx(0.02));
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
  const auto q = model::intention_cs_prior(geo::Situation::kCrSs);
  CHECK(std::max_element(q.begin(), q.end()) - q.begin() == 4);
}

TEST_CASE("model node truth examples") {
  const bn::State sd[] = {9, 3, 9, 2};
  CHECK(model::model_node_truth(model::node_spec(NodeKind::kSD), sd));
  const bn::State sd_eq[] = {3, 3, 9, 2};
  CHECK_FALSE(model::model_node_truth(model::node_spec(NodeKind::kSD), sd_eq));
  // I_P similar, I_CS crossing port side: stand-on.
  const bn::State r[] = {1, 3};
  CHECK_FALSE(model::model_node_truth(model::node_spec(NodeKind::kR), r));
  const auto c = model::node_spec(NodeKind::kC, 2);
  const bn::State all_c[] = {1, 1, 0}, only_u[] = {0, 0, 1}, none[] = {1, 0, 0};
  CHECK(model::model_node_truth(c, all_c));
  CHECK(model::model_node_truth(c, only_u));
  CHECK_FALSE(model::model_node_truth(c, none));
  const auto sdg = model::node_spec(NodeKind::kSDG);
  for (bn::State a : {0u, 1u}) {
    for (bn::State b : {0u, 1u}) {
      const bn::State x[] = {a, b};
      CHECK(model::model_node_truth(sdg, x) == (a == 1 && b == 1));
    }
  }
  const bn::State short_x[] = {1};
  CHECK_THROWS_AS(model::model_node_truth(sdg, short_x), bn::StructuralError);
}

TEST_CASE("intention network node counts and acyclicity") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t s = 1; s <= 8; ++s) {
      const auto dbn = model::build_intention_dbn(n, {}, {}, s);
      CHECK(dbn.net.size() == model::expected_node_count(n, s));
      CHECK(dbn.intent.all().size() == 10 + 2 * n);
      CHECK(dbn.net.topological_order().size() == dbn.net.size());
      CHECK_NOTHROW(dbn.net.validate());
    }
  }
  const auto one = model::build_intention_dbn(1, {}, {}, 1);
  CHECK(one.intent.all().size() == 12);
  const auto two = model::build_intention_dbn(2, {}, {}, 1);
  const auto& c = two.slices.front().c;
  std::vector<std::string> parents;
  for (auto p : two.net.parents(c)) parents.push_back(two.net.variable(p).name);
  CHECK(parents.size() == 3);
  CHECK(std::find(parents.begin(), parents.end(), "I_U") != parents.end());
}

TEST_CASE("adding a slice keeps the intention nodes") {
  auto dbn = model::build_intention_dbn(1, {}, {}, 1);
  const auto before = dbn.net.size();
  dbn.add_slice();
  CHECK(dbn.net.size() == before + 16 + 23);
  CHECK(dbn.intent.all().size() == 12);
  CHECK(dbn.slices.size() == 2);
}

TEST_CASE("intention posteriors without evidence equal the priors") {
  const model::IntentionPriors pri;
  const auto dbn = model::build_intention_dbn(1, pri, {}, 1);
  const auto d = bn::posterior(dbn.net, dbn.intent.sd);
  const auto ref = model::discretize_truncnorm(pri.sd, 10);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(d[i] == doctest::Approx(ref[i]).epsilon(1e-10));
  CHECK(bn::posterior(dbn.net, dbn.intent.u)[1] == doctest::Approx(pri.u_true));
}

TEST_CASE("prior validation") {
  model::IntentionPriors p;
  CHECK_NOTHROW(p.validate());
  p.sd.sigma = 0.0;
  CHECK_THROWS(p.validate());
}
