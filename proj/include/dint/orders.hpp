#pragma once

// Term orders on (homogenised) Weyl algebra monomials and position-over-term
// orders on free modules.

#include <algorithm>
#include <compare>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dint/signature.hpp"

namespace dint {

enum class TieBreak { grevlex, lex };

inline TieBreak parse_tie_break(const std::string& s) {
  if (s == "grevlex") return TieBreak::grevlex;
  if (s == "lex") return TieBreak::lex;
  throw std::invalid_argument("unknown tie-break '" + s + "' (expected grevlex or lex)");
}

/// Weight comparison (optional), then total degree including h, then the
/// tie-break over the slot sequence x_1..x_n, d_1..d_n, h.
class TermOrder {
 public:
  TermOrder() = default;

  static TermOrder graded(TieBreak tb = TieBreak::grevlex) {
    TermOrder o;
    o.tie_ = tb;
    return o;
  }

  /// The order <_(-w,w): x_i weighs -w_i, d_i weighs w_i, h weighs 0.
  static TermOrder weyl_weight(std::span<const long> w, TieBreak tb = TieBreak::grevlex) {
    if (w.size() > kMaxVars) throw std::invalid_argument("weight vector too long");
    TermOrder o;
    o.tie_ = tb;
    o.weighted_ = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      o.weight_[i] = -w[i];
      o.weight_[kDerivSlot + i] = w[i];
    }
    return o;
  }

  /// Arbitrary slot weights (x weights then d weights).
  static TermOrder weighted(std::span<const long> x_weights, std::span<const long> d_weights,
                            TieBreak tb = TieBreak::grevlex) {
    TermOrder o;
    o.tie_ = tb;
    o.weighted_ = true;
    for (std::size_t i = 0; i < x_weights.size(); ++i) o.weight_[i] = x_weights[i];
    for (std::size_t i = 0; i < d_weights.size(); ++i) o.weight_[kDerivSlot + i] = d_weights[i];
    return o;
  }

  TieBreak tie_break() const { return tie_; }
  bool is_weighted() const { return weighted_; }

  /// Buchberger in D terminates directly only when no slot has negative
  /// weight; otherwise the computation has to go through D^(h).
  bool is_well_order() const {
    return std::all_of(weight_.begin(), weight_.end(), [](long v) { return v >= 0; });
  }

  long weight(const Monomial& m) const {
    if (!weighted_) return 0;
    long s = 0;
    for (std::size_t i = 0; i < kSlots; ++i) s += weight_[i] * m.e[i];
    return s;
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (weighted_) {
      if (auto c = weight(a) <=> weight(b); c != 0) return c;
    }
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (tie_ == TieBreak::grevlex) {
      for (std::size_t i = kSlots; i-- > 0;) {
        if (a.e[i] != b.e[i]) return b.e[i] <=> a.e[i];
      }
    } else {
      for (std::size_t i = 0; i < kSlots; ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] <=> b.e[i];
      }
    }
    return std::strong_ordering::equal;
  }

 private:
  bool weighted_ = false;
  TieBreak tie_ = TieBreak::grevlex;
  std::array<long, kSlots> weight_{};
};

/// Position-over-term order on (D')^r.  Positions are the monomials x^alpha
/// (alpha over the integration variables); index 0 is x^0 and is minimal.
class ModuleOrder {
 public:
  using Position = std::vector<std::uint32_t>;

  ModuleOrder(TermOrder base, std::vector<Position> positions, std::span<const long> w)
      : base_(base), positions_(std::move(positions)) {
    auto weight = [&](const Position& a) {
      long s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += (i < w.size() ? w[i] : 1) * static_cast<long>(a[i]);
      return s;
    };
    std::stable_sort(positions_.begin(), positions_.end(), [&](const Position& a, const Position& b) {
      const long wa = weight(a), wb = weight(b);
      if (wa != wb) return wa < wb;
      return a < b;
    });
    if (positions_.empty() || std::any_of(positions_.front().begin(), positions_.front().end(),
                                          [](auto v) { return v != 0; }))
      throw std::invalid_argument("module order needs the position x^0");
  }

  const TermOrder& base() const { return base_; }
  const std::vector<Position>& positions() const { return positions_; }
  std::size_t rank() const { return positions_.size(); }

  std::size_t index_of(const Position& alpha) const {
    auto it = std::find(positions_.begin(), positions_.end(), alpha);
    if (it == positions_.end()) throw std::out_of_range("unknown module position");
    return static_cast<std::size_t>(it - positions_.begin());
  }

  std::strong_ordering compare(const Position& p1, const Monomial& t1, const Position& p2,
                               const Monomial& t2) const {
    if (auto c = index_of(p1) <=> index_of(p2); c != 0) return c;
    return base_.compare(t1, t2);
  }

 private:
  TermOrder base_;
  std::vector<Position> positions_;
};

/// Comparison used inside the engine: position index first (POT), then the
/// term order.  For ideals every position is 0.
inline std::strong_ordering compare_pot(const TermOrder& order, const Monomial& a, const Monomial& b) {
  if (a.pos != b.pos) return a.pos <=> b.pos;
  return order.compare(a, b);
}

}  // namespace dint
