#include "intentdbn/bn/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "intentdbn/bn/errors.hpp"

namespace intentdbn::bn {

namespace {

constexpr std::size_t kSplitMaxEntries = 4096;
constexpr std::size_t kSplitMaxVars = 12;
constexpr std::size_t kExactFillDegree = 48;
constexpr std::size_t kCutsetCandidates = 12;
constexpr std::uint32_t kCutsetMaxCard = 4;
constexpr double kRankTol = 1e-12;

struct Item {
  Factor f;
  bool settled = false;
};

struct Problem {
  const Network* net = nullptr;
  std::vector<Item> items;
  std::vector<std::optional<State>> fixed;
  std::vector<char> is_query;
  double log_scale = 0.0;
};

struct Result {
  double log_mass = 0.0;
  std::vector<std::vector<double>> marginals;
};

[[noreturn]] void contradiction(const Problem& p, const std::string& where) {
  (void)p;
  throw ContradictionError("evidence has zero joint probability (" + where + ")");
}

std::string scope_names(const Network& net, const std::vector<VarId>& scope) {
  std::string s;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i) s += ",";
    s += net.variable(scope[i]).name;
  }
  return s.empty() ? std::string("scalar") : s;
}

std::vector<std::size_t> strides_of(const std::vector<std::uint32_t>& cards) {
  std::vector<std::size_t> s(cards.size());
  std::size_t acc = 1;
  for (std::size_t i = cards.size(); i-- > 0;) {
    s[i] = acc;
    acc *= cards[i];
  }
  return s;
}

bool advance(std::vector<State>& digits, const std::vector<std::uint32_t>& cards) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < cards[i]) return true;
    digits[i] = 0;
  }
  return false;
}

// Rank-1 factorization across one bipartition of the scope, recursively.
bool try_split(const Factor& f, std::vector<Factor>& parts) {
  const auto& scope = f.scope();
  const auto& cards = f.cards();
  const std::size_t k = scope.size();
  if (k < 2 || k > kSplitMaxVars) return false;
  const auto& t = f.table();
  const std::size_t amax = static_cast<std::size_t>(std::max_element(t.begin(), t.end()) - t.begin());
  const double m = t[amax];
  if (!(m > 0.0)) return false;
  std::vector<State> star(k);
  {
    std::size_t rem = amax;
    for (std::size_t i = k; i-- > 0;) {
      star[i] = static_cast<State>(rem % cards[i]);
      rem /= cards[i];
    }
  }

  for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
    std::vector<VarId> s_vars, t_vars;
    std::vector<std::uint32_t> s_cards, t_cards;
    std::vector<char> in_s(k);
    for (std::size_t i = 0; i < k; ++i) {
      in_s[i] = (i + 1 < k) && ((mask >> i) & 1u);
      (in_s[i] ? s_vars : t_vars).push_back(scope[i]);
      (in_s[i] ? s_cards : t_cards).push_back(cards[i]);
    }
    std::size_t ns = 1, nt = 1;
    for (auto c : s_cards) ns *= c;
    for (auto c : t_cards) nt *= c;
    std::vector<double> u(ns), v(nt);

    auto sweep = [&](auto&& visit) {
      std::vector<State> d(k, 0);
      std::size_t idx = 0;
      do {
        std::size_t si = 0, ti = 0;
        bool s_star = true, t_star = true;
        for (std::size_t i = 0; i < k; ++i) {
          if (in_s[i]) {
            si = si * cards[i] + d[i];
            s_star = s_star && d[i] == star[i];
          } else {
            ti = ti * cards[i] + d[i];
            t_star = t_star && d[i] == star[i];
          }
        }
        if (!visit(idx, si, ti, s_star, t_star)) return false;
        ++idx;
      } while (advance(d, cards));
      return true;
    };

    sweep([&](std::size_t idx, std::size_t si, std::size_t ti, bool s_star, bool t_star) {
      if (t_star) u[si] = t[idx];
      if (s_star) v[ti] = t[idx] / m;
      return true;
    });
    const bool ok = sweep([&](std::size_t idx, std::size_t si, std::size_t ti, bool, bool) {
      return std::abs(t[idx] - u[si] * v[ti]) <= kRankTol * m;
    });
    if (!ok) continue;

    Factor a = Factor::dense_unchecked(std::move(s_vars), std::move(s_cards), std::move(u));
    Factor b = Factor::dense_unchecked(std::move(t_vars), std::move(t_cards), std::move(v));
    if (!try_split(a, parts)) parts.push_back(std::move(a));
    if (!try_split(b, parts)) parts.push_back(std::move(b));
    return true;
  }
  return false;
}

void fix_variable(Problem& p, VarId var, State state) {
  p.fixed[var] = state;
  for (auto& it : p.items) {
    if (it.f.contains(var)) {
      it.f = it.f.reduce(var, state);
      it.settled = false;
    }
  }
}

// Evidence reduction, constant folding, deterministic propagation,
// separable splitting and barren pruning until nothing changes.
void simplify(Problem& p, bool structural) {
  const Network& net = *p.net;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < p.items.size();) {
      Item& it = p.items[i];
      if (it.settled) {
        ++i;
        continue;
      }
      const Factor& f = it.f;
      if (f.scope().empty()) {
        const double v = total(f);
        if (!(v > 0.0)) contradiction(p, "factor reduced to zero by evidence");
        p.log_scale += std::log(v);
        p.items.erase(p.items.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        continue;
      }
      if (!structural || f.size() > kSplitMaxEntries || (f.child() && f.scope().size() > 1)) {
        it.settled = true;
        ++i;
        continue;
      }
      Factor d = f.to_dense();
      const auto& t = d.table();
      const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
      if (!(*mx > 0.0)) contradiction(p, "all-zero factor over " + scope_names(net, d.scope()));
      if (*mn == *mx) {
        p.log_scale += std::log(*mx);
        p.items.erase(p.items.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        continue;
      }
      if (d.scope().size() == 1) {
        std::size_t nz = 0, at = 0;
        for (std::size_t s = 0; s < t.size(); ++s) {
          if (t[s] > 0.0) {
            ++nz;
            at = s;
          }
        }
        if (nz == 1) {
          const VarId var = d.scope()[0];
          p.log_scale += std::log(t[at]);
          p.items.erase(p.items.begin() + static_cast<std::ptrdiff_t>(i));
          fix_variable(p, var, static_cast<State>(at));
          changed = true;
          i = 0;
          continue;
        }
        it.f = std::move(d);
        it.settled = true;
        ++i;
        continue;
      }
      std::vector<Factor> parts;
      if (try_split(d, parts)) {
        p.items.erase(p.items.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto& part : parts) p.items.push_back(Item{std::move(part), false});
        changed = true;
        continue;
      }
      it.settled = true;
      ++i;
    }

    // Barren CPTs: child unobserved, not queried and referenced nowhere else.
    std::vector<std::uint32_t> uses(net.size(), 0);
    for (const auto& it : p.items) {
      for (VarId v : it.f.scope()) ++uses[v];
    }
    for (std::size_t i = 0; i < p.items.size();) {
      const auto c = p.items[i].f.child();
      if (c && !p.is_query[*c] && uses[*c] == 1) {
        for (VarId v : p.items[i].f.scope()) --uses[v];
        p.items.erase(p.items.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        continue;
      }
      ++i;
    }
  }
}

struct Plan {
  std::vector<VarId> order;
  double max_cluster = 1.0;
  std::vector<VarId> widest;  // variables of the largest cluster
};

Plan plan_elimination(const Problem& p, Ordering ordering) {
  const Network& net = *p.net;
  std::vector<VarId> vars;
  std::vector<int> local(net.size(), -1);
  for (const auto& it : p.items) {
    for (VarId v : it.f.scope()) {
      if (local[v] < 0) {
        local[v] = static_cast<int>(vars.size());
        vars.push_back(v);
      }
    }
  }
  const std::size_t n = vars.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    auto& la = adj[a];
    auto pos = std::lower_bound(la.begin(), la.end(), b);
    if (pos != la.end() && *pos == b) return false;
    la.insert(pos, b);
    return true;
  };
  auto linked = [&](std::uint32_t a, std::uint32_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  for (const auto& it : p.items) {
    const auto& sc = it.f.scope();
    for (std::size_t i = 0; i < sc.size(); ++i) {
      for (std::size_t j = 0; j < sc.size(); ++j) {
        if (i != j) link(static_cast<std::uint32_t>(local[sc[i]]), static_cast<std::uint32_t>(local[sc[j]]));
      }
    }
  }
  auto card = [&](std::uint32_t l) { return static_cast<double>(net.variable(vars[l]).cardinality()); };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  struct Score {
    double primary, secondary;
    VarId id;
    bool operator<(const Score& o) const {
      if (primary != o.primary) return primary < o.primary;
      if (secondary != o.secondary) return secondary < o.secondary;
      return id < o.id;
    }
  };
  auto score_of = [&](std::uint32_t l) -> Score {
    const auto& nb = adj[l];
    switch (ordering) {
      case Ordering::kNatural:
        return {0.0, 0.0, vars[l]};
      case Ordering::kMinDegree:
        return {static_cast<double>(nb.size()), 0.0, vars[l]};
      case Ordering::kMinFill:
        break;
    }
    if (nb.size() > kExactFillDegree) return {kInf, static_cast<double>(nb.size()), vars[l]};
    double fill = 0.0;
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (!linked(nb[a], nb[b])) fill += 1.0;
      }
    }
    return {fill, 0.0, vars[l]};
  };

  std::vector<char> alive(n, 1);
  std::vector<Score> scores(n);
  for (std::uint32_t l = 0; l < n; ++l) scores[l] = score_of(l);

  Plan plan;
  std::size_t remaining = 0;
  for (std::uint32_t l = 0; l < n; ++l) remaining += p.is_query[vars[l]] ? 0 : 1;
  std::vector<char> dirty(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> added;
  for (; remaining > 0; --remaining) {
    std::optional<std::uint32_t> best;
    for (std::uint32_t l = 0; l < n; ++l) {
      if (!alive[l] || p.is_query[vars[l]]) continue;
      if (!best || scores[l] < scores[*best]) best = l;
    }
    const std::uint32_t v = *best;
    const auto nb = adj[v];
    double cluster = card(v);
    for (auto w : nb) cluster *= card(w);
    if (cluster > plan.max_cluster) {
      plan.max_cluster = cluster;
      plan.widest.assign({vars[v]});
      for (auto w : nb) plan.widest.push_back(vars[w]);
    }
    plan.order.push_back(vars[v]);
    alive[v] = 0;
    for (auto w : nb) {
      auto& lw = adj[w];
      lw.erase(std::lower_bound(lw.begin(), lw.end(), v));
    }
    added.clear();
    for (std::size_t a = 0; a < nb.size(); ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (link(nb[a], nb[b])) {
          link(nb[b], nb[a]);
          added.emplace_back(nb[a], nb[b]);
        }
      }
    }
    if (ordering == Ordering::kNatural) continue;
    for (auto w : nb) dirty[w] = 1;
    // A fill count changes only for the endpoints' common neighbors of a new edge.
    if (ordering == Ordering::kMinFill) {
      for (auto [a, b] : added) {
        const auto& la = adj[a];
        const auto& lb = adj[b];
        std::size_t i = 0, j = 0;
        while (i < la.size() && j < lb.size()) {
          if (la[i] < lb[j]) {
            ++i;
          } else if (lb[j] < la[i]) {
            ++j;
          } else {
            dirty[la[i]] = 1;
            ++i;
            ++j;
          }
        }
      }
    }
    for (std::uint32_t l = 0; l < n; ++l) {
      if (dirty[l]) {
        dirty[l] = 0;
        if (alive[l]) scores[l] = score_of(l);
      }
    }
  }

  // Joint tables over connected groups of the remaining query variables.
  std::vector<char> seen(n, 0);
  for (std::uint32_t l = 0; l < n; ++l) {
    if (!alive[l] || seen[l]) continue;
    std::vector<std::uint32_t> stack{l}, comp;
    seen[l] = 1;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (auto y : adj[x]) {
        if (alive[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    double size = 1.0;
    for (auto x : comp) size *= card(x);
    if (size > plan.max_cluster) {
      plan.max_cluster = size;
      plan.widest.clear();
      for (auto x : comp) plan.widest.push_back(vars[x]);
    }
  }
  return plan;
}

void rescale(Problem& p, Factor& f, const std::string& where) {
  auto& t = f.mutable_table();
  const double m = *std::max_element(t.begin(), t.end());
  if (!(m > 0.0)) contradiction(p, where);
  if (m != 1.0) {
    const double inv = 1.0 / m;
    for (double& x : t) x *= inv;
    p.log_scale += std::log(m);
  }
}

Factor product_of(std::vector<Factor>& fs, std::size_t cap) {
  std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.size() < b.size(); });
  Factor acc = fs.front().is_dense() ? std::move(fs.front()) : fs.front().to_dense();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    double est = static_cast<double>(acc.size());
    for (std::size_t j = 0; j < fs[i].scope().size(); ++j) {
      if (!acc.contains(fs[i].scope()[j])) est *= fs[i].cards()[j];
    }
    if (est > static_cast<double>(cap)) throw StructuralError("inference exceeds the factor size cap");
    acc = multiply(acc, fs[i]);
  }
  return acc;
}

Result run_elimination(Problem& p, const Plan& plan, std::span<const VarId> queries, std::size_t cap) {
  const Network& net = *p.net;
  std::vector<Factor> fs;
  fs.reserve(p.items.size());
  for (auto& it : p.items) fs.push_back(std::move(it.f));
  p.items.clear();

  for (VarId v : plan.order) {
    std::vector<Factor> bucket;
    for (std::size_t i = 0; i < fs.size();) {
      if (fs[i].contains(v)) {
        bucket.push_back(std::move(fs[i]));
        fs[i] = std::move(fs.back());
        fs.pop_back();
      } else {
        ++i;
      }
    }
    if (bucket.empty()) continue;
    Factor g = sum_out(product_of(bucket, cap), v);
    rescale(p, g, "mass vanished while eliminating '" + net.variable(v).name + "'");
    if (g.scope().empty()) {
      p.log_scale += std::log(g.table()[0]);
    } else {
      fs.push_back(std::move(g));
    }
  }

  // Group the remaining factors (query variables only) into connected components.
  std::vector<VarId> parent(net.size());
  std::iota(parent.begin(), parent.end(), VarId{0});
  auto find = [&](VarId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& f : fs) {
    for (std::size_t i = 1; i < f.scope().size(); ++i) parent[find(f.scope()[i])] = find(f.scope()[0]);
  }
  std::vector<std::vector<double>> marg(net.size());
  std::vector<char> done(fs.size(), 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (done[i]) continue;
    const VarId root = find(fs[i].scope()[0]);
    std::vector<Factor> comp;
    for (std::size_t j = i; j < fs.size(); ++j) {
      if (!done[j] && find(fs[j].scope()[0]) == root) {
        done[j] = 1;
        comp.push_back(std::move(fs[j]));
      }
    }
    Factor joint = product_of(comp, cap);
    const auto& t = joint.table();
    const auto& sc = joint.scope();
    const auto& cd = joint.cards();
    std::vector<std::vector<double>> acc(sc.size());
    for (std::size_t k = 0; k < sc.size(); ++k) acc[k].assign(cd[k], 0.0);
    std::vector<State> d(sc.size(), 0);
    double z = 0.0;
    std::size_t idx = 0;
    do {
      const double x = t[idx++];
      if (x != 0.0) {
        z += x;
        for (std::size_t k = 0; k < sc.size(); ++k) acc[k][d[k]] += x;
      }
    } while (advance(d, cd));
    if (!(z > 0.0)) contradiction(p, "zero mass over " + scope_names(net, sc));
    p.log_scale += std::log(z);
    for (std::size_t k = 0; k < sc.size(); ++k) {
      for (double& x : acc[k]) x /= z;
      marg[sc[k]] = std::move(acc[k]);
    }
  }

  Result r;
  r.log_mass = p.log_scale;
  for (VarId q : queries) {
    const std::uint32_t c = net.variable(q).cardinality();
    if (p.fixed[q]) {
      std::vector<double> one(c, 0.0);
      one[*p.fixed[q]] = 1.0;
      r.marginals.push_back(std::move(one));
    } else if (!marg[q].empty()) {
      r.marginals.push_back(marg[q]);
    } else {
      r.marginals.emplace_back(c, 1.0 / c);
    }
  }
  return r;
}

Result solve(Problem p, std::span<const VarId> queries, const InferenceOptions& opts, std::size_t depth) {
  simplify(p, opts.simplify);
  Plan plan = plan_elimination(p, opts.ordering);
  const double budget = static_cast<double>(opts.budget_entries);

  if (plan.max_cluster > budget && depth < opts.max_cutset) {
    // Candidate conditioning variables: low-cardinality members of the widest cluster.
    std::vector<VarId> cands;
    for (VarId v : plan.widest) {
      if (!p.fixed[v] && p.net->variable(v).cardinality() <= kCutsetMaxCard) cands.push_back(v);
    }
    std::sort(cands.begin(), cands.end());
    if (cands.size() > kCutsetCandidates) cands.resize(kCutsetCandidates);

    std::optional<VarId> best;
    double best_cost = plan.max_cluster;
    for (VarId v : cands) {
      double cost = 0.0;
      for (State s = 0; s < p.net->variable(v).cardinality(); ++s) {
        Problem q = p;
        try {
          fix_variable(q, v, s);
          simplify(q, opts.simplify);
          cost = std::max(cost, plan_elimination(q, opts.ordering).max_cluster);
        } catch (const ContradictionError&) {
        }
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = v;
      }
    }

    if (best) {
      std::vector<Result> branches;
      std::optional<ContradictionError> last;
      for (State s = 0; s < p.net->variable(*best).cardinality(); ++s) {
        Problem q = p;
        try {
          fix_variable(q, *best, s);
          branches.push_back(solve(std::move(q), queries, opts, depth + 1));
        } catch (const ContradictionError& e) {
          last = e;
        }
      }
      if (branches.empty()) throw *last;
      double mx = -std::numeric_limits<double>::infinity();
      for (const auto& b : branches) mx = std::max(mx, b.log_mass);
      Result r;
      double wsum = 0.0;
      r.marginals.resize(queries.size());
      for (std::size_t k = 0; k < queries.size(); ++k) {
        r.marginals[k].assign(p.net->variable(queries[k]).cardinality(), 0.0);
      }
      for (const auto& b : branches) {
        const double w = std::exp(b.log_mass - mx);
        wsum += w;
        for (std::size_t k = 0; k < queries.size(); ++k) {
          for (std::size_t s = 0; s < r.marginals[k].size(); ++s) r.marginals[k][s] += w * b.marginals[k][s];
        }
      }
      for (auto& m : r.marginals) {
        for (double& x : m) x /= wsum;
      }
      r.log_mass = mx + std::log(wsum);
      return r;
    }
  }
  return run_elimination(p, plan, queries, opts.cap_entries);
}

Problem build_problem(const Network& net, std::span<const VarId> queries) {
  const std::size_t n = net.size();
  Problem p;
  p.net = &net;
  p.fixed.assign(n, std::nullopt);
  p.is_query.assign(n, 0);
  for (VarId q : queries) {
    if (q >= n) throw StructuralError("query variable id out of range");
    p.is_query[q] = 1;
  }

  // Ancestral closure of queries and evidence.
  std::vector<char> relevant(n, 0);
  std::vector<VarId> stack;
  for (VarId v = 0; v < n; ++v) {
    if (p.is_query[v] || !std::holds_alternative<std::monostate>(net.evidence(v))) {
      relevant[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    for (VarId u : net.parents(v)) {
      if (!relevant[u]) {
        relevant[u] = 1;
        stack.push_back(u);
      }
    }
  }
  for (VarId v = 0; v < n; ++v) {
    if (!relevant[v]) continue;
    p.items.push_back(Item{net.cpt(v), false});
    if (const auto* lik = std::get_if<std::vector<double>>(&net.evidence(v))) {
      p.items.push_back(Item{Factor::unary(v, *lik, FactorKind::kVirtualEvidence), false});
    }
  }
  for (VarId v = 0; v < n; ++v) {
    if (!relevant[v]) continue;
    if (const auto* s = std::get_if<State>(&net.evidence(v))) fix_variable(p, v, *s);
  }
  return p;
}

}  // namespace

std::vector<Distribution> posteriors(const Network& net, std::span<const VarId> queries,
                                     const InferenceOptions& opts) {
  Result r = solve(build_problem(net, queries), queries, opts, 0);
  std::vector<Distribution> out;
  out.reserve(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) out.push_back(Distribution{queries[k], std::move(r.marginals[k])});
  return out;
}

Distribution posterior(const Network& net, VarId query, const InferenceOptions& opts) {
  const VarId q[] = {query};
  return std::move(posteriors(net, q, opts).front());
}

double log_evidence(const Network& net, const InferenceOptions& opts) {
  return solve(build_problem(net, {}), {}, opts, 0).log_mass;
}

std::vector<Distribution> joint_enumerate_all(const Network& net, std::size_t cap) {
  const std::size_t n = net.size();
  double joint = 1.0;
  std::vector<std::uint32_t> cards(n);
  for (VarId v = 0; v < n; ++v) {
    cards[v] = net.variable(v).cardinality();
    joint *= cards[v];
  }
  if (joint > static_cast<double>(cap)) throw StructuralError("joint enumeration exceeds the configured cap");

  struct Table {
    std::vector<VarId> scope;
    std::vector<std::size_t> strides;
    std::vector<double> values;
  };
  std::vector<Table> tables;
  for (VarId v = 0; v < n; ++v) {
    Factor f = net.cpt(v).to_dense();
    Table t{f.scope(), strides_of(f.cards()), f.table()};
    const auto& e = net.evidence(v);
    if (const auto* s = std::get_if<State>(&e)) {
      std::vector<double> ind(cards[v], 0.0);
      ind[*s] = 1.0;
      tables.push_back(Table{{v}, {1}, std::move(ind)});
    } else if (const auto* lik = std::get_if<std::vector<double>>(&e)) {
      tables.push_back(Table{{v}, {1}, *lik});
    }
    tables.push_back(std::move(t));
  }

  std::vector<std::vector<double>> acc(n);
  for (VarId v = 0; v < n; ++v) acc[v].assign(cards[v], 0.0);
  std::vector<State> x(n, 0);
  double z = 0.0;
  do {
    double w = 1.0;
    for (const auto& t : tables) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < t.scope.size(); ++i) idx += t.strides[i] * x[t.scope[i]];
      w *= t.values[idx];
      if (w == 0.0) break;
    }
    if (w == 0.0) continue;
    z += w;
    for (VarId v = 0; v < n; ++v) acc[v][x[v]] += w;
  } while (advance(x, cards));

  if (!(z > 0.0)) throw ContradictionError("evidence has zero joint probability (enumeration)");
  std::vector<Distribution> out;
  for (VarId v = 0; v < n; ++v) {
    for (double& a : acc[v]) a /= z;
    out.push_back(Distribution{v, std::move(acc[v])});
  }
  return out;
}

Distribution joint_enumerate_oracle(const Network& net, VarId query, std::size_t cap) {
  if (query >= net.size()) throw StructuralError("query variable id out of range");
  return std::move(joint_enumerate_all(net, cap)[query]);
}

}  // namespace intentdbn::bn
