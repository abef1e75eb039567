#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace intentdbn::bn {

using VarId = std::uint32_t;
using State = std::uint32_t;

enum class FactorKind { kCpt, kEvidence, kVirtualEvidence, kPredicate, kIntermediate };

/// Non-negative table over the cross product of its scope's states.
///
/// Layout is row-major: the first scope variable varies slowest and the last
/// fastest. CPTs therefore list their parents first and the child last.
///
/// A predicate-backed factor stores a deterministic rule mapping a parent
/// assignment to the child state. Its table (1 where rule(parents) == child,
/// 0 elsewhere) is only produced on `to_dense()`; evidence reduction keeps
/// it lazy by binding states instead of copying rows.
class Factor {
 public:
  using Rule = std::function<State(std::span<const State> parents)>;

  /// Scalar factor with value 1.
  Factor();

  static Factor dense(std::vector<VarId> scope, std::vector<std::uint32_t> cards,
                      std::vector<double> table, FactorKind kind = FactorKind::kIntermediate);
  /// No validation; for results of factor arithmetic.
  static Factor dense_unchecked(std::vector<VarId> scope, std::vector<std::uint32_t> cards,
                                std::vector<double> table);
  static Factor scalar(double value);
  static Factor unary(VarId var, std::vector<double> values, FactorKind kind);
  /// Deterministic CPT: scope = parents..., child.
  static Factor predicate(std::vector<VarId> parents, std::vector<std::uint32_t> parent_cards,
                          VarId child, std::uint32_t child_card, Rule rule);

  const std::vector<VarId>& scope() const noexcept { return scope_; }
  const std::vector<std::uint32_t>& cards() const noexcept { return cards_; }
  FactorKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept;
  bool is_dense() const noexcept { return lazy_ == nullptr; }
  bool contains(VarId v) const noexcept;
  std::optional<std::size_t> position(VarId v) const noexcept;

  /// Variable whose conditional distribution this factor encodes, while that
  /// variable is still in scope and unreduced (sums to one over it).
  std::optional<VarId> child() const noexcept { return child_; }
  void set_child(VarId v);
  void clear_child() noexcept { child_.reset(); }

  /// Dense table (requires is_dense()).
  const std::vector<double>& table() const;
  std::vector<double>& mutable_table();

  /// Entry at a full assignment in scope order; works for lazy factors.
  double at(std::span<const State> assignment) const;

  /// Materialized copy (identity for dense factors).
  Factor to_dense() const;

  /// Fix `var` to `state` and drop it from the scope.
  Factor reduce(VarId var, State state) const;

 private:
  struct Lazy;

  std::vector<VarId> scope_;
  std::vector<std::uint32_t> cards_;
  std::vector<double> table_;
  FactorKind kind_ = FactorKind::kIntermediate;
  std::optional<VarId> child_;
  std::shared_ptr<const Lazy> lazy_;
};

/// Pointwise product over the union of scopes (sorted by variable id).
Factor multiply(const Factor& a, const Factor& b);
/// Sum `var` out of `f`.
Factor sum_out(const Factor& f, VarId var);
/// Entry-wise sum of all table values.
double total(const Factor& f);

}  // namespace intentdbn::bn
