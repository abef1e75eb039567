#include "intentdbn/bn/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "intentdbn/bn/errors.hpp"
#include "intentdbn/simd/kernels.hpp"

namespace intentdbn::bn {

struct Factor::Lazy {
  struct Core {
    std::vector<VarId> vars;  // parents..., child
    std::vector<std::uint32_t> cards;
    Rule rule;
  };
  std::shared_ptr<const Core> core;
  std::vector<std::optional<State>> bound;  // one per core var
};

namespace {

std::size_t product(const std::vector<std::uint32_t>& cards) {
  std::size_t n = 1;
  for (auto c : cards) n *= c;
  return n;
}

// Advances a mixed-radix counter; returns false after the last assignment.
bool advance(std::vector<State>& digits, const std::vector<std::uint32_t>& cards) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < cards[i]) return true;
    digits[i] = 0;
  }
  return false;
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

}  // namespace

Factor::Factor() : table_{1.0} {}

Factor Factor::dense(std::vector<VarId> scope, std::vector<std::uint32_t> cards,
                     std::vector<double> table, FactorKind kind) {
  if (scope.size() != cards.size()) throw StructuralError("factor scope/cardinality length mismatch");
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (cards[i] == 0) throw StructuralError("factor variable with zero cardinality");
    for (std::size_t j = i + 1; j < scope.size(); ++j) {
      if (scope[i] == scope[j]) throw StructuralError("duplicate variable in factor scope");
    }
  }
  if (table.size() != product(cards)) {
    std::ostringstream os;
    os << "factor table has " << table.size() << " entries, scope requires " << product(cards);
    throw StructuralError(os.str());
  }
  for (double v : table) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw StructuralError("factor entries must be finite and non-negative");
  }
  Factor f;
  f.scope_ = std::move(scope);
  f.cards_ = std::move(cards);
  f.table_ = std::move(table);
  f.kind_ = kind;
  return f;
}

Factor Factor::dense_unchecked(std::vector<VarId> scope, std::vector<std::uint32_t> cards,
                               std::vector<double> table) {
  Factor f;
  f.scope_ = std::move(scope);
  f.cards_ = std::move(cards);
  f.table_ = std::move(table);
  return f;
}

Factor Factor::scalar(double value) {
  Factor f;
  f.table_ = {value};
  return f;
}

Factor Factor::unary(VarId var, std::vector<double> values, FactorKind kind) {
  const auto n = static_cast<std::uint32_t>(values.size());
  return dense({var}, {n}, std::move(values), kind);
}

Factor Factor::predicate(std::vector<VarId> parents, std::vector<std::uint32_t> parent_cards,
                         VarId child, std::uint32_t child_card, Rule rule) {
  if (parents.size() != parent_cards.size()) throw StructuralError("predicate parent/cardinality length mismatch");
  if (!rule) throw StructuralError("predicate factor without a rule");
  auto core = std::make_shared<Lazy::Core>();
  core->vars = std::move(parents);
  core->vars.push_back(child);
  core->cards = std::move(parent_cards);
  core->cards.push_back(child_card);
  core->rule = std::move(rule);
  for (std::size_t i = 0; i < core->vars.size(); ++i) {
    for (std::size_t j = i + 1; j < core->vars.size(); ++j) {
      if (core->vars[i] == core->vars[j]) throw StructuralError("duplicate variable in predicate scope");
    }
  }

  Factor f;
  f.table_.clear();
  f.scope_ = core->vars;
  f.cards_ = core->cards;
  f.kind_ = FactorKind::kPredicate;
  f.child_ = child;
  auto lazy = std::make_shared<Lazy>();
  lazy->bound.assign(core->vars.size(), std::nullopt);
  lazy->core = std::move(core);
  f.lazy_ = std::move(lazy);
  return f;
}

void Factor::set_child(VarId v) {
  if (!contains(v)) throw StructuralError("set_child: variable not in factor scope");
  child_ = v;
}

std::size_t Factor::size() const noexcept { return product(cards_); }

bool Factor::contains(VarId v) const noexcept {
  return std::find(scope_.begin(), scope_.end(), v) != scope_.end();
}

std::optional<std::size_t> Factor::position(VarId v) const noexcept {
  auto it = std::find(scope_.begin(), scope_.end(), v);
  if (it == scope_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - scope_.begin());
}

const std::vector<double>& Factor::table() const {
  if (lazy_) throw StructuralError("table() on a lazy factor; call to_dense() first");
  return table_;
}

std::vector<double>& Factor::mutable_table() {
  if (lazy_) throw StructuralError("mutable_table() on a lazy factor");
  return table_;
}

double Factor::at(std::span<const State> assignment) const {
  if (assignment.size() != scope_.size()) throw StructuralError("assignment length does not match factor scope");
  if (!lazy_) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i) idx = idx * cards_[i] + assignment[i];
    return table_[idx];
  }
  const auto& core = *lazy_->core;
  std::vector<State> full(core.vars.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    full[i] = lazy_->bound[i] ? *lazy_->bound[i] : assignment[k++];
  }
  const State child_state = full.back();
  const State predicted = core.rule(std::span<const State>(full.data(), full.size() - 1));
  return predicted == child_state ? 1.0 : 0.0;
}

Factor Factor::to_dense() const {
  if (!lazy_) return *this;
  const auto& core = *lazy_->core;
  const std::size_t nvars = core.vars.size();
  const bool child_free = !lazy_->bound.back().has_value();

  Factor out;
  out.scope_ = scope_;
  out.cards_ = cards_;
  out.kind_ = kind_;
  out.child_ = child_;
  out.table_.assign(size(), 0.0);

  // Enumerate the free parents; when the child is free it is the fastest axis.
  std::vector<std::uint32_t> free_parent_cards;
  std::vector<std::size_t> free_parent_pos;
  for (std::size_t i = 0; i + 1 < nvars; ++i) {
    if (!lazy_->bound[i]) {
      free_parent_cards.push_back(core.cards[i]);
      free_parent_pos.push_back(i);
    }
  }
  std::vector<State> parents(nvars - 1);
  for (std::size_t i = 0; i + 1 < nvars; ++i) {
    if (lazy_->bound[i]) parents[i] = *lazy_->bound[i];
  }
  std::vector<State> digits(free_parent_cards.size(), 0);
  const std::uint32_t child_card = core.cards.back();
  std::size_t row = 0;
  do {
    for (std::size_t j = 0; j < digits.size(); ++j) parents[free_parent_pos[j]] = digits[j];
    const State predicted = core.rule(parents);
    if (predicted >= child_card) throw StructuralError("predicate rule returned an out-of-range child state");
    if (child_free) {
      out.table_[row * child_card + predicted] = 1.0;
    } else {
      out.table_[row] = predicted == *lazy_->bound.back() ? 1.0 : 0.0;
    }
    ++row;
  } while (advance(digits, free_parent_cards));
  return out;
}

Factor Factor::reduce(VarId var, State state) const {
  const auto pos = position(var);
  if (!pos) throw StructuralError("reduce: variable not in factor scope");
  if (state >= cards_[*pos]) throw InvalidEvidenceError("reduce: state index out of range");

  Factor out;
  out.kind_ = kind_;
  out.child_ = (child_ && *child_ == var) ? std::nullopt : child_;
  out.scope_ = scope_;
  out.cards_ = cards_;
  out.scope_.erase(out.scope_.begin() + static_cast<std::ptrdiff_t>(*pos));
  out.cards_.erase(out.cards_.begin() + static_cast<std::ptrdiff_t>(*pos));

  if (lazy_) {
    auto lazy = std::make_shared<Lazy>(*lazy_);
    const auto& core = *lazy->core;
    for (std::size_t i = 0; i < core.vars.size(); ++i) {
      if (core.vars[i] == var) lazy->bound[i] = state;
    }
    out.lazy_ = std::move(lazy);
    out.table_.clear();
    return out;
  }

  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < *pos; ++i) outer *= cards_[i];
  for (std::size_t i = *pos + 1; i < cards_.size(); ++i) inner *= cards_[i];
  const std::size_t c = cards_[*pos];
  out.table_.resize(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* src = table_.data() + (o * c + state) * inner;
    std::copy(src, src + inner, out.table_.data() + o * inner);
  }
  return out;
}

Factor multiply(const Factor& a_in, const Factor& b_in) {
  std::optional<Factor> a_tmp, b_tmp;
  if (!a_in.is_dense()) a_tmp = a_in.to_dense();
  if (!b_in.is_dense()) b_tmp = b_in.to_dense();
  const Factor& a = a_tmp ? *a_tmp : a_in;
  const Factor& b = b_tmp ? *b_tmp : b_in;

  // Result scope: sorted union.
  std::vector<std::pair<VarId, std::uint32_t>> vars;
  for (std::size_t i = 0; i < a.scope().size(); ++i) vars.emplace_back(a.scope()[i], a.cards()[i]);
  for (std::size_t i = 0; i < b.scope().size(); ++i) {
    auto it = std::find_if(vars.begin(), vars.end(), [&](auto& p) { return p.first == b.scope()[i]; });
    if (it == vars.end()) {
      vars.emplace_back(b.scope()[i], b.cards()[i]);
    } else if (it->second != b.cards()[i]) {
      throw StructuralError("multiply: cardinality mismatch for a shared variable");
    }
  }
  std::sort(vars.begin(), vars.end());
  const std::size_t r = vars.size();
  std::vector<VarId> scope(r);
  std::vector<std::uint32_t> cards(r);
  for (std::size_t i = 0; i < r; ++i) {
    scope[i] = vars[i].first;
    cards[i] = vars[i].second;
  }

  const auto sa_own = strides_of(a.cards());
  const auto sb_own = strides_of(b.cards());
  std::vector<std::size_t> sa(r, 0), sb(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (auto p = a.position(scope[i])) sa[i] = sa_own[*p];
    if (auto p = b.position(scope[i])) sb[i] = sb_own[*p];
  }

  // Longest suffix over which both operands are either dense-contiguous or absent.
  std::size_t split = r;
  std::size_t block = 1;
  {
    std::size_t expect_a = 1, expect_b = 1;
    bool a_in_suffix = false, a_out_suffix = false, b_in_suffix = false, b_out_suffix = false;
    for (std::size_t i = r; i-- > 0;) {
      const bool a_has = a.position(scope[i]).has_value();
      const bool b_has = b.position(scope[i]).has_value();
      const bool a_ok = a_has ? (!a_out_suffix && sa[i] == expect_a) : !a_in_suffix;
      const bool b_ok = b_has ? (!b_out_suffix && sb[i] == expect_b) : !b_in_suffix;
      if (!a_ok || !b_ok) break;
      if (a_has) { a_in_suffix = true; expect_a *= cards[i]; } else { a_out_suffix = true; }
      if (b_has) { b_in_suffix = true; expect_b *= cards[i]; } else { b_out_suffix = true; }
      split = i;
      block *= cards[i];
    }
  }
  // Operand "contiguous in block" flags are determined by the first suffix variable.
  const bool a_block = split < r && a.position(scope[split]).has_value();
  const bool b_block = split < r && b.position(scope[split]).has_value();

  std::vector<double> out(std::accumulate(cards.begin(), cards.end(), std::size_t{1},
                                          [](std::size_t x, std::uint32_t c) { return x * c; }));
  const auto& kt = simd::kernels();
  const double* pa = a.table().data();
  const double* pb = b.table().data();

  std::vector<State> digits(split, 0);
  std::vector<std::uint32_t> outer_cards(cards.begin(), cards.begin() + static_cast<std::ptrdiff_t>(split));
  std::size_t ia = 0, ib = 0, dst = 0;
  while (true) {
    if (a_block && b_block && block < 8) {
      for (std::size_t k = 0; k < block; ++k) out[dst + k] = pa[ia + k] * pb[ib + k];
    } else if (a_block && b_block) {
      kt.mul(out.data() + dst, pa + ia, pb + ib, block);
    } else if (a_block) {
      kt.scale(out.data() + dst, pa + ia, pb[ib], block);
    } else if (b_block) {
      kt.scale(out.data() + dst, pb + ib, pa[ia], block);
    } else {
      out[dst] = pa[ia] * pb[ib];
    }
    dst += block;
    // odometer over the outer variables with incremental offsets
    std::size_t i = split;
    bool more = false;
    while (i-- > 0) {
      if (++digits[i] < outer_cards[i]) {
        ia += sa[i];
        ib += sb[i];
        more = true;
        break;
      }
      ia -= sa[i] * (outer_cards[i] - 1);
      ib -= sb[i] * (outer_cards[i] - 1);
      digits[i] = 0;
    }
    if (!more) break;
  }
  return Factor::dense_unchecked(std::move(scope), std::move(cards), std::move(out));
}

Factor sum_out(const Factor& f_in, VarId var) {
  std::optional<Factor> tmp;
  if (!f_in.is_dense()) tmp = f_in.to_dense();
  const Factor& f = tmp ? *tmp : f_in;
  const auto pos = f.position(var);
  if (!pos) throw StructuralError("sum_out: variable not in factor scope");
  const auto& cards = f.cards();
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < *pos; ++i) outer *= cards[i];
  for (std::size_t i = *pos + 1; i < cards.size(); ++i) inner *= cards[i];
  const std::size_t c = cards[*pos];

  std::vector<VarId> scope = f.scope();
  std::vector<std::uint32_t> out_cards = cards;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(*pos));
  out_cards.erase(out_cards.begin() + static_cast<std::ptrdiff_t>(*pos));

  const auto& kt = simd::kernels();
  const double* src = f.table().data();
  std::vector<double> out(outer * inner, 0.0);
  if (inner == 1) {
    for (std::size_t o = 0; o < outer; ++o) out[o] = kt.sum(src + o * c, c);
  } else {
    for (std::size_t o = 0; o < outer; ++o) {
      double* dst = out.data() + o * inner;
      for (std::size_t k = 0; k < c; ++k) kt.add(dst, src + (o * c + k) * inner, inner);
    }
  }
  return Factor::dense_unchecked(std::move(scope), std::move(out_cards), std::move(out));
}

double total(const Factor& f) {
  if (f.is_dense()) return simd::kernels().sum(f.table().data(), f.table().size());
  const Factor d = f.to_dense();
  return simd::kernels().sum(d.table().data(), d.table().size());
}

}  // namespace intentdbn::bn
