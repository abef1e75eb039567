#include "intentdbn/bn/network.hpp"

#include <cmath>
#include <sstream>

#include "intentdbn/bn/errors.hpp"

namespace intentdbn::bn {

VarId Network::add_variable(std::string name, std::vector<std::string> states) {
  if (states.size() < 2) throw StructuralError("variable '" + name + "' needs at least two states");
  if (find(name)) throw StructuralError("duplicate variable name '" + name + "'");
  vars_.push_back(Variable{std::move(name), std::move(states)});
  parents_.emplace_back();
  cpts_.emplace_back();
  evidence_.emplace_back();
  return static_cast<VarId>(vars_.size() - 1);
}

void Network::set_cpt(VarId child, std::vector<VarId> parents, std::vector<double> table) {
  std::vector<VarId> scope = parents;
  scope.push_back(child);
  std::vector<std::uint32_t> cards;
  for (VarId v : scope) cards.push_back(variable(v).cardinality());
  Factor f = Factor::dense(scope, cards, std::move(table), FactorKind::kCpt);
  f.set_child(child);
  parents_.at(child) = std::move(parents);
  cpts_.at(child) = std::move(f);
}

void Network::set_predicate(VarId child, std::vector<VarId> parents, Factor::Rule rule) {
  std::vector<std::uint32_t> cards;
  for (VarId v : parents) cards.push_back(variable(v).cardinality());
  cpts_.at(child) = Factor::predicate(parents, std::move(cards), child, variable(child).cardinality(),
                                      std::move(rule));
  parents_.at(child) = std::move(parents);
}

void Network::set_evidence(VarId var, State state) {
  if (state >= variable(var).cardinality()) {
    std::ostringstream os;
    os << "evidence state " << state << " out of range for '" << variable(var).name << "'";
    throw InvalidEvidenceError(os.str());
  }
  evidence_.at(var) = state;
}

void Network::set_virtual_evidence(VarId var, std::vector<double> likelihood) {
  const auto& v = variable(var);
  if (likelihood.size() != v.cardinality()) {
    throw InvalidEvidenceError("likelihood length does not match cardinality of '" + v.name + "'");
  }
  double mx = 0.0;
  for (double l : likelihood) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidEvidenceError("likelihood entries must be finite and >= 0");
    mx = std::max(mx, l);
  }
  if (mx <= 0.0) throw InvalidEvidenceError("all-zero likelihood for '" + v.name + "'");
  evidence_.at(var) = std::move(likelihood);
}

void Network::clear_evidence(VarId var) { evidence_.at(var) = std::monostate{}; }

void Network::clear_all_evidence() {
  for (auto& e : evidence_) e = std::monostate{};
}

std::optional<VarId> Network::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

VarId Network::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw StructuralError("unknown variable '" + std::string(name) + "'");
}

const Factor& Network::cpt(VarId v) const {
  const auto& f = cpts_.at(v);
  if (!f) throw StructuralError("variable '" + variable(v).name + "' has no CPT");
  return *f;
}

std::vector<VarId> Network::topological_order() const {
  const std::size_t n = vars_.size();
  std::vector<std::vector<VarId>> children(n);
  std::vector<std::size_t> indeg(n, 0);
  for (VarId v = 0; v < n; ++v) {
    for (VarId p : parents_[v]) {
      children[p].push_back(v);
      ++indeg[v];
    }
  }
  std::vector<VarId> order;
  order.reserve(n);
  for (VarId v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (VarId c : children[order[head]]) {
      if (--indeg[c] == 0) order.push_back(c);
    }
  }
  if (order.size() != n) throw StructuralError("network graph contains a cycle");
  return order;
}

void Network::validate() const {
  for (VarId v = 0; v < vars_.size(); ++v) {
    const Factor& f = cpt(v);
    if (f.kind() == FactorKind::kPredicate) continue;
    const std::uint32_t c = variable(v).cardinality();
    const auto& t = f.table();
    for (std::size_t row = 0; row < t.size() / c; ++row) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < c; ++k) s += t[row * c + k];
      if (std::abs(s - 1.0) > 1e-9) {
        throw StructuralError("CPT of '" + variable(v).name + "' is not normalized over the child");
      }
    }
  }
  (void)topological_order();
}

}  // namespace intentdbn::bn
