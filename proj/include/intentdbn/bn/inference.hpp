#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "intentdbn/bn/network.hpp"

namespace intentdbn::bn {

enum class Ordering { kMinFill, kMinDegree, kNatural };

struct InferenceOptions {
  Ordering ordering = Ordering::kMinFill;
  /// Largest intermediate factor accepted before conditioning on a cutset variable.
  std::size_t budget_entries = std::size_t{1} << 23;
  /// Hard limit; exceeding it throws StructuralError.
  std::size_t cap_entries = std::size_t{1} << 26;
  std::size_t max_cutset = 6;
  /// Separable-factor splitting and deterministic propagation.
  bool simplify = true;
};

/// Exact marginals of each query given the network's evidence.
/// Throws ContradictionError when the evidence has zero probability.
std::vector<Distribution> posteriors(const Network& net, std::span<const VarId> queries,
                                     const InferenceOptions& opts = {});

Distribution posterior(const Network& net, VarId query, const InferenceOptions& opts = {});

/// Natural log of the probability of the current evidence.
double log_evidence(const Network& net, const InferenceOptions& opts = {});

/// Marginal by summing the full joint. For tests and self-checks only.
Distribution joint_enumerate_oracle(const Network& net, VarId query, std::size_t cap = 10'000'000);
/// Every variable's marginal from one pass over the joint.
std::vector<Distribution> joint_enumerate_all(const Network& net, std::size_t cap = 10'000'000);

}  // namespace intentdbn::bn
