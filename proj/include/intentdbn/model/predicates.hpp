#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "intentdbn/bn/factor.hpp"

namespace intentdbn::model {

/// Model node families. Every node is binary with state 1 = true
/// (for R, state 1 = GW and 0 = SO).
enum class NodeKind : std::uint8_t {
  kSD, kP, kCOTen, kCOTing, kCHO, kCCRSS, kCCRPS, kNAVM, kCNAVM, kR, kGS, kCEM, kSOC,
  kSDGS, kSDGF, kSDG, kGWC, kCCOLAVM, kCi, kC, kSA, kPA
};

/// Parent role names in the order the predicate expects them.
struct ModelNodeSpec {
  NodeKind kind = NodeKind::kSD;
  std::vector<std::string> parents;
  /// SOC: other ships contributing (R_j, CEM_j, P_j) triples; C: ship count.
  std::size_t fan_in = 0;
};

ModelNodeSpec node_spec(NodeKind kind, std::size_t fan_in = 0);
const char* node_name(NodeKind kind);

/// Truth value of the node for a full parent assignment in spec order.
/// Throws bn::StructuralError when the assignment length is wrong.
bool model_node_truth(const ModelNodeSpec& spec, std::span<const bn::State> parents);

/// Child-state rule for a predicate factor.
bn::Factor::Rule node_rule(const ModelNodeSpec& spec);

}  // namespace intentdbn::model
