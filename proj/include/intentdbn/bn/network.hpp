#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "intentdbn/bn/factor.hpp"

namespace intentdbn::bn {

struct Variable {
  std::string name;
  std::vector<std::string> states;

  std::uint32_t cardinality() const noexcept { return static_cast<std::uint32_t>(states.size()); }
};

/// Hard state index or likelihood vector.
using Evidence = std::variant<std::monostate, State, std::vector<double>>;

/// Marginal of one variable.
struct Distribution {
  VarId var = 0;
  std::vector<double> p;

  double operator[](std::size_t i) const { return p[i]; }
};

/// Directed network of discrete variables, one CPT per variable, plus the
/// current evidence. Single writer: evidence mutation and queries must be
/// serialized by the caller. Copies are independent.
class Network {
 public:
  VarId add_variable(std::string name, std::vector<std::string> states);

  /// Dense CPT; `table` is laid out parents-major with the child fastest.
  void set_cpt(VarId child, std::vector<VarId> parents, std::vector<double> table);
  /// Deterministic CPT backed by a rule over the parent states.
  void set_predicate(VarId child, std::vector<VarId> parents, Factor::Rule rule);

  void set_evidence(VarId var, State state);
  void set_virtual_evidence(VarId var, std::vector<double> likelihood);
  void clear_evidence(VarId var);
  void clear_all_evidence();

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& variable(VarId v) const { return vars_.at(v); }
  std::optional<VarId> find(std::string_view name) const;
  VarId id(std::string_view name) const;
  const std::vector<VarId>& parents(VarId v) const { return parents_.at(v); }
  const Factor& cpt(VarId v) const;
  bool has_cpt(VarId v) const { return cpts_.at(v).has_value(); }
  const Evidence& evidence(VarId v) const { return evidence_.at(v); }

  /// Every variable has a CPT, the graph is acyclic and dense CPTs are
  /// normalized over the child. Throws StructuralError otherwise.
  void validate() const;

  /// Parents-before-children ordering (throws on a cycle).
  std::vector<VarId> topological_order() const;

 private:
  std::vector<Variable> vars_;
  std::vector<std::vector<VarId>> parents_;
  std::vector<std::optional<Factor>> cpts_;
  std::vector<Evidence> evidence_;
};

}  // namespace intentdbn::bn
