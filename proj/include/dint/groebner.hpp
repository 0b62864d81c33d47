#pragma once

// Buchberger's algorithm for left ideals of the Weyl algebra and for left
// submodules of free modules over it, with optional cofactor tracking.
//
// Orders with a negative slot weight are handled in the homogenised algebra
// D^(h) (d_i x_i = x_i d_i + h^2) and dehomogenised afterwards.  Leading
// exponents multiply commutatively, so the chain criterion applies; the
// product criterion does not ([x, d] != 0) and is never used.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dint/coeff.hpp"
#include "dint/orders.hpp"
#include "dint/weyl.hpp"

namespace dint {

class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("computation cancelled") {}
};

using CancelToken = const std::atomic<bool>*;

namespace gb {

template <Field K>
struct Term {
  Monomial m;
  K c;
};

// Sorted descending under the context order, no zero coefficients.
template <Field K>
using Poly = std::vector<Term<K>>;

struct Context {
  TermOrder order;
  bool homogenized = false;
  CancelToken cancel = nullptr;

  std::strong_ordering cmp(const Monomial& a, const Monomial& b) const { return compare_pot(order, a, b); }
  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
  void poll() const {
    if (cancel && cancel->load(std::memory_order_relaxed)) throw Cancelled();
  }
};

template <Field K>
void canonicalize(Poly<K>& p, const Context& ctx) {
  std::sort(p.begin(), p.end(), [&](const Term<K>& a, const Term<K>& b) { return ctx.greater(a.m, b.m); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (out > 0 && p[out - 1].m == p[i].m) {
      p[out - 1].c = p[out - 1].c + p[i].c;
      continue;
    }
    if (out > 0 && coeff_traits<K>::is_zero(p[out - 1].c)) --out;
    if (out != i) p[out] = std::move(p[i]);
    ++out;
  }
  if (out > 0 && coeff_traits<K>::is_zero(p[out - 1].c)) --out;
  p.erase(p.begin() + static_cast<std::ptrdiff_t>(out), p.end());
}

inline bool has_derivative(const Monomial& t) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (t.d(i)) return true;
  return false;
}

/// c * t * g, where t is a monomial x^a d^b (its position is ignored).
template <Field K>
Poly<K> mul_term(const Monomial& t, const K& c, const Poly<K>& g, const Context& ctx) {
  Poly<K> out;
  out.reserve(g.size());
  Monomial tt = t;
  tt.pos = 0;
  const bool has_d = has_derivative(tt);
  bool reorder = false;
  for (const auto& term : g) {
    const K cc = c * term.c;
    if (!has_d) {
      out.push_back({exponent_sum(tt, term.m), cc});
      continue;
    }
    int emitted = 0;
    weyl_monomial_product(tt, term.m, ctx.homogenized, [&](const Monomial& r, const Integer& f) {
      out.push_back({r, f == 1 ? cc : K(cc * coeff_traits<K>::from_integer(f))});
      ++emitted;
    });
    if (emitted > 1) reorder = true;
  }
  if (reorder) canonicalize(out, ctx);
  return out;
}

/// a * f[from..] + g, both sorted.
template <Field K>
Poly<K> axpy(const K& a, const Poly<K>& f, std::size_t from, const Poly<K>& g, const Context& ctx) {
  const bool unit = coeff_traits<K>::is_one(a);
  Poly<K> r;
  r.reserve(f.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < f.size() || j < g.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == f.size()) c = std::strong_ordering::less;
    else if (j == g.size()) c = std::strong_ordering::greater;
    else c = ctx.cmp(f[i].m, g[j].m);
    if (c > 0) {
      r.push_back({f[i].m, unit ? f[i].c : K(a * f[i].c)});
      ++i;
    } else if (c < 0) {
      r.push_back(g[j]);
      ++j;
    } else {
      K s = unit ? K(f[i].c + g[j].c) : K(a * f[i].c + g[j].c);
      if (!coeff_traits<K>::is_zero(s)) r.push_back({f[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

template <Field K>
void scale(Poly<K>& p, const K& c) {
  if (coeff_traits<K>::is_one(c)) return;
  for (auto& t : p) t.c = t.c * c;
}

template <Field K>
Poly<K> to_poly(const WeylElement<K>& a, const Context& ctx, std::uint32_t pos = 0) {
  Poly<K> p;
  p.reserve(a.size());
  std::uint64_t top = 0;
  for (const auto& [m, c] : a.terms()) top = std::max(top, m.degree());
  for (const auto& [m, c] : a.terms()) {
    Monomial t = m;
    t.pos = pos;
    if (ctx.homogenized) t.h() = static_cast<std::uint16_t>(t.h() + top - m.degree());
    p.push_back({t, c});
  }
  canonicalize(p, ctx);
  return p;
}

// Dehomogenises (h = 1) and drops positions.
template <Field K>
WeylElement<K> from_poly(const Poly<K>& p, const SignaturePtr& sig) {
  WeylElement<K> r(sig);
  for (const auto& t : p) {
    Monomial m = t.m;
    m.pos = 0;
    m.h() = 0;
    r.add_term(m, t.c);
  }
  return r;
}

template <Field K>
class Engine {
 public:
  struct Element {
    Poly<K> poly;
    std::vector<Poly<K>> cof;
    std::uint64_t sugar = 0;
    bool active = true;
  };

  Engine(Context ctx, std::size_t ninputs, bool track) : ctx_(ctx), ninputs_(ninputs), track_(track) {}

  void run(const std::vector<Poly<K>>& inputs) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < inputs.size(); ++k)
      if (!inputs[k].empty()) idx.push_back(k);
    // Low sugar first so that early reducers are small.
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto sa = sugar_of(inputs[a]), sb = sugar_of(inputs[b]);
      if (sa != sb) return sa < sb;
      return ctx_.cmp(inputs[a].front().m, inputs[b].front().m) < 0;
    });
    for (std::size_t k : idx) {
      Element e;
      e.poly = inputs[k];
      e.sugar = sugar_of(e.poly);
      if (track_) {
        e.cof.assign(ninputs_, {});
        e.cof[k].push_back({Monomial{}, coeff_traits<K>::one()});
      }
      if (top_reduce(e)) insert(std::move(e));
    }
    while (!pairs_.empty()) {
      ctx_.poll();
      const std::size_t best = select_pair();
      const Pair p = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      Element s = spoly(p);
      ++spairs_;
      if (top_reduce(s)) {
        // Full reduction keeps coefficient growth of later S-polynomials in check.
        reduce_tail(s, active(), -1);
        make_primitive(s);
        insert(std::move(s));
      }
    }
  }

  /// The reduced basis, sorted ascending by leading monomial.
  std::vector<Element> result() {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k].active) act.push_back(k);
    std::sort(act.begin(), act.end(), [&](std::size_t a, std::size_t b) {
      return ctx_.cmp(basis_[a].poly.front().m, basis_[b].poly.front().m) < 0;
    });
    for (std::size_t k : act) tail_reduce(k, act);
    std::vector<Element> out;
    out.reserve(act.size());
    for (std::size_t k : act) {
      make_primitive(basis_[k]);
      out.push_back(basis_[k]);
    }
    return out;
  }

  std::size_t spairs_processed() const { return spairs_; }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t sugar;
  };

  Context ctx_;
  std::size_t ninputs_;
  bool track_;
  std::vector<Element> basis_;
  std::vector<Pair> pairs_;
  std::size_t spairs_ = 0;
  // Position 0 is minimal, so once 1*e_0 is in the basis every element led there reduces to zero.
  bool origin_unit_ = false;

  static std::uint64_t sugar_of(const Poly<K>& p) {
    std::uint64_t s = 0;
    for (const auto& t : p) s = std::max(s, t.m.degree());
    return s;
  }

  void make_primitive(Element& e) const {
    const K f = field_ops<K>::primitive_factor(e.poly, [](const Term<K>& t) -> const K& { return t.c; });
    if (coeff_traits<K>::is_one(f)) return;
    scale(e.poly, f);
    for (auto& c : e.cof) scale(c, f);
  }

  // e := a*e - b*t*g
  void combine(Element& e, const K& a, const K& b, const Monomial& t, const Element& g, std::size_t from) {
    const K nb = -b;
    e.poly = axpy(a, e.poly, from, mul_term(t, nb, g.poly, ctx_), ctx_);
    if (track_)
      for (std::size_t k = 0; k < ninputs_; ++k) {
        if (e.cof[k].empty() && g.cof[k].empty()) continue;
        e.cof[k] = axpy(a, e.cof[k], 0, mul_term(t, nb, g.cof[k], ctx_), ctx_);
      }
    e.sugar = std::max(e.sugar, t.degree() + g.sugar);
  }

  long find_reducer(const Monomial& m, long skip = -1) const {
    long best = -1;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const auto& g = basis_[k];
      if (!g.active || static_cast<long>(k) == skip) continue;
      const Monomial& lm = g.poly.front().m;
      if (lm.pos != m.pos || !divides(lm, m)) continue;
      if (best < 0 || g.poly.size() < basis_[static_cast<std::size_t>(best)].poly.size()) best = static_cast<long>(k);
    }
    return best;
  }

  bool top_reduce(Element& e) {
    if (origin_unit_ && !e.poly.empty() && e.poly.front().m.pos == 0) return false;
    std::size_t steps = 0;
    while (!e.poly.empty()) {
      ctx_.poll();
      const Monomial lm = e.poly.front().m;
      const long r = find_reducer(lm);
      if (r < 0) break;
      const Element& g = basis_[static_cast<std::size_t>(r)];
      const Monomial t = exponent_quotient(lm, g.poly.front().m);
      auto [a, b] = field_ops<K>::cancel_multipliers(e.poly.front().c, g.poly.front().c);
      combine(e, a, b, t, g, 0);
      if (++steps % 16 == 0) make_primitive(e);
    }
    if (e.poly.empty()) return false;
    make_primitive(e);
    return true;
  }

  // Reduces every non-leading term of e by the candidates (other than `skip`).
  void reduce_tail(Element& e, const std::vector<std::size_t>& cands, long skip) {
    std::size_t i = 1, steps = 0;
    while (i < e.poly.size()) {
      ctx_.poll();
      const Monomial m = e.poly[i].m;
      long r = -1;
      for (std::size_t j : cands) {
        if (static_cast<long>(j) == skip) continue;
        const Monomial& lm = basis_[j].poly.front().m;
        if (lm.pos == m.pos && divides(lm, m) &&
            (r < 0 || basis_[j].poly.size() < basis_[static_cast<std::size_t>(r)].poly.size()))
          r = static_cast<long>(j);
      }
      if (r < 0) {
        ++i;
        continue;
      }
      const Element& g = basis_[static_cast<std::size_t>(r)];
      const Monomial t = exponent_quotient(m, g.poly.front().m);
      auto [a, b] = field_ops<K>::cancel_multipliers(e.poly[i].c, g.poly.front().c);
      // Keep the already reduced head [0, i) and rebuild the tail.
      Poly<K> head(e.poly.begin(), e.poly.begin() + static_cast<std::ptrdiff_t>(i));
      scale(head, a);
      Element tail;
      tail.poly = std::move(e.poly);
      tail.sugar = e.sugar;
      tail.cof = std::move(e.cof);
      combine(tail, a, b, t, g, i);
      head.insert(head.end(), std::make_move_iterator(tail.poly.begin()), std::make_move_iterator(tail.poly.end()));
      e.poly = std::move(head);
      e.cof = std::move(tail.cof);
      e.sugar = tail.sugar;
      if (++steps % 16 == 0) make_primitive(e);
    }
  }

  void tail_reduce(std::size_t k, const std::vector<std::size_t>& act) { reduce_tail(basis_[k], act, static_cast<long>(k)); }

  std::vector<std::size_t> active() const {
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k].active) act.push_back(k);
    return act;
  }

  Element spoly(const Pair& p) {
    const Element& f = basis_[p.i];
    const Element& g = basis_[p.j];
    const Monomial tf = exponent_quotient(p.lcm, f.poly.front().m);
    const Monomial tg = exponent_quotient(p.lcm, g.poly.front().m);
    auto [a, b] = field_ops<K>::cancel_multipliers(f.poly.front().c, g.poly.front().c);
    Element s;
    s.poly = mul_term(tf, a, f.poly, ctx_);
    s.sugar = tf.degree() + f.sugar;
    if (track_) {
      s.cof.resize(ninputs_);
      for (std::size_t k = 0; k < ninputs_; ++k)
        if (!f.cof[k].empty()) s.cof[k] = mul_term(tf, a, f.cof[k], ctx_);
    }
    combine(s, coeff_traits<K>::one(), b, tg, g, 0);
    return s;
  }

  std::size_t select_pair() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      if (ctx_.cmp(a.lcm, b.lcm) < 0) best = k;
    }
    return best;
  }

  std::uint64_t pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
    const auto& a = basis_[i];
    const auto& b = basis_[j];
    return std::max(a.sugar + l.degree() - a.poly.front().m.degree(), b.sugar + l.degree() - b.poly.front().m.degree());
  }

  // Gebauer-Moeller update without the product criterion.
  void insert(Element e) {
    const std::size_t h = basis_.size();
    const Monomial lh = e.poly.front().m;
    if (lh.pos == 0 && lh == Monomial{}) {
      origin_unit_ = true;
      std::erase_if(pairs_, [](const Pair& p) { return p.lcm.pos == 0; });
    }
    basis_.push_back(std::move(e));

    std::vector<Pair> cand;
    for (std::size_t i = 0; i < h; ++i) {
      if (!basis_[i].active) continue;
      const Monomial& li = basis_[i].poly.front().m;
      if (li.pos != lh.pos) continue;
      Monomial l = exponent_lcm(li, lh);
      cand.push_back({i, h, l, pair_sugar(i, h, l)});
    }
    // M: drop pairs whose lcm is a proper multiple of another candidate lcm.
    // F: of candidates with equal lcm keep one.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < cand.size() && !drop; ++b) {
        if (a == b) continue;
        if (divides(cand[b].lcm, cand[a].lcm) && !(cand[b].lcm == cand[a].lcm)) drop = true;
        else if (b < a && cand[b].lcm == cand[a].lcm) drop = true;
      }
      if (!drop) kept.push_back(cand[a]);
    }
    // B: old pairs made redundant by the chain through h.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.lcm.pos != lh.pos || !divides(lh, p.lcm)) return false;
      const Monomial li = exponent_lcm(basis_[p.i].poly.front().m, lh);
      const Monomial lj = exponent_lcm(basis_[p.j].poly.front().m, lh);
      return !(li == p.lcm) && !(lj == p.lcm);
    });
    pairs_.insert(pairs_.end(), kept.begin(), kept.end());
    for (std::size_t i = 0; i < h; ++i) {
      if (!basis_[i].active) continue;
      const Monomial& li = basis_[i].poly.front().m;
      if (li.pos == lh.pos && divides(lh, li)) basis_[i].active = false;
    }
  }
};

}  // namespace gb

/// A Groebner basis together with basis[j] = sum_k transform[j][k] * input[k].
template <Field K>
struct CofactorGB {
  std::vector<WeylElement<K>> input;
  std::vector<WeylElement<K>> basis;
  std::vector<std::vector<WeylElement<K>>> transform;
  TermOrder order;
  bool homogenized = false;
};

namespace detail {

template <Field K>
SignaturePtr common_signature(const std::vector<WeylElement<K>>& gens) {
  SignaturePtr sig;
  for (const auto& g : gens) {
    if (!g.signature()) continue;
    if (!sig) sig = g.signature();
    else if (!same_signature(sig, g.signature())) throw SignatureMismatch();
  }
  return sig;
}

}  // namespace detail

/// Groebner basis of the left ideal generated by gens.  Orders that are not
/// well-orders are computed in D^(h) and dehomogenised.
template <Field K>
CofactorGB<K> buchberger(const std::vector<WeylElement<K>>& gens, const TermOrder& order, bool track_cofactors = false,
                         CancelToken cancel = nullptr) {
  const SignaturePtr sig = detail::common_signature(gens);
  gb::Context ctx{order, !order.is_well_order(), cancel};
  std::vector<gb::Poly<K>> inputs;
  inputs.reserve(gens.size());
  for (const auto& g : gens) inputs.push_back(gb::to_poly(g, ctx));
  gb::Engine<K> engine(ctx, gens.size(), track_cofactors);
  engine.run(inputs);
  CofactorGB<K> out;
  out.input = gens;
  out.order = order;
  out.homogenized = ctx.homogenized;
  for (auto& e : engine.result()) {
    out.basis.push_back(gb::from_poly(e.poly, sig));
    if (track_cofactors) {
      std::vector<WeylElement<K>> row;
      for (const auto& c : e.cof) row.push_back(gb::from_poly(c, sig));
      out.transform.push_back(std::move(row));
    }
  }
  return out;
}

template <Field K>
struct NormalForm {
  WeylElement<K> remainder;
  std::vector<WeylElement<K>> quotients;
};

/// Full reduction with field division: f = sum quotients[k] * G[k] + remainder.
/// Requires a well-order.
template <Field K>
NormalForm<K> normal_form(const WeylElement<K>& f, const std::vector<WeylElement<K>>& G,
                          const TermOrder& order = TermOrder::graded(), CancelToken cancel = nullptr) {
  if (!order.is_well_order()) throw std::invalid_argument("normal_form needs a well-order");
  gb::Context ctx{order, false, cancel};
  const SignaturePtr sig = f.signature();
  std::vector<gb::Poly<K>> polys;
  for (const auto& g : G) polys.push_back(gb::to_poly(g, ctx));
  NormalForm<K> nf;
  nf.remainder = WeylElement<K>(sig);
  nf.quotients.assign(G.size(), WeylElement<K>(sig));
  gb::Poly<K> p = gb::to_poly(f, ctx);
  std::size_t i = 0;
  while (i < p.size()) {
    ctx.poll();
    const Monomial m = p[i].m;
    long r = -1;
    for (std::size_t k = 0; k < polys.size() && r < 0; ++k)
      if (!polys[k].empty() && polys[k].front().m.pos == m.pos && divides(polys[k].front().m, m)) r = static_cast<long>(k);
    if (r < 0) {
      nf.remainder.add_term(m, p[i].c);
      ++i;
      continue;
    }
    const auto& g = polys[static_cast<std::size_t>(r)];
    const Monomial t = exponent_quotient(m, g.front().m);
    const K q = p[i].c / g.front().c;
    nf.quotients[static_cast<std::size_t>(r)].add_term(t, q);
    p = gb::axpy(coeff_traits<K>::one(), p, i, gb::mul_term(t, K(-q), g, ctx), ctx);
    i = 0;
  }
  return nf;
}

template <Field K>
bool reduces_to_zero(const WeylElement<K>& f, const CofactorGB<K>& gb, CancelToken cancel = nullptr) {
  return normal_form(f, gb.basis, gb.order, cancel).remainder.is_zero();
}

template <Field K>
bool is_member(const WeylElement<K>& f, const std::vector<WeylElement<K>>& gens,
               const TermOrder& order = TermOrder::graded(), CancelToken cancel = nullptr) {
  return reduces_to_zero(f, buchberger(gens, order, false, cancel), cancel);
}

/// Mutual membership of generators.
template <Field K>
bool ideal_equal(const std::vector<WeylElement<K>>& a, const std::vector<WeylElement<K>>& b,
                 const TermOrder& order = TermOrder::graded(), CancelToken cancel = nullptr) {
  const auto ga = buchberger(a, order, false, cancel);
  const auto gbb = buchberger(b, order, false, cancel);
  for (const auto& f : b)
    if (!reduces_to_zero(f, ga, cancel)) return false;
  for (const auto& f : a)
    if (!reduces_to_zero(f, gbb, cancel)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Free modules.

template <Field K>
struct FreeModuleElement {
  using Position = ModuleOrder::Position;

  SignaturePtr signature;
  std::map<Position, WeylElement<K>> components;

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  void add(const Position& p, const WeylElement<K>& a) {
    if (a.is_zero()) return;
    auto [it, inserted] = components.try_emplace(p, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) components.erase(it);
    }
  }

  WeylElement<K> component(const Position& p) const {
    auto it = components.find(p);
    return it == components.end() ? WeylElement<K>(signature) : it->second;
  }

  /// True when every nonzero component sits at the position x^0.
  bool supported_on_origin() const {
    for (const auto& [p, a] : components)
      if (!a.is_zero() && std::any_of(p.begin(), p.end(), [](auto v) { return v != 0; })) return false;
    return true;
  }
};

template <Field K>
struct ModuleGB {
  std::vector<FreeModuleElement<K>> input;
  std::vector<FreeModuleElement<K>> basis;
  std::vector<std::vector<WeylElement<K>>> transform;
};

/// Groebner basis of a left submodule of a free module, POT order.
template <Field K>
ModuleGB<K> module_buchberger(const std::vector<FreeModuleElement<K>>& gens, const ModuleOrder& order,
                              bool track_cofactors = false, CancelToken cancel = nullptr) {
  if (!order.base().is_well_order()) throw std::invalid_argument("module Groebner bases need a well-ordered base order");
  SignaturePtr sig;
  for (const auto& g : gens)
    if (g.signature) sig = g.signature;
  gb::Context ctx{order.base(), false, cancel};
  std::vector<gb::Poly<K>> inputs;
  for (const auto& g : gens) {
    gb::Poly<K> p;
    for (const auto& [pos, a] : g.components) {
      const auto idx = static_cast<std::uint32_t>(order.index_of(pos));
      for (const auto& [m, c] : a.terms()) {
        Monomial t = m;
        t.pos = idx;
        p.push_back({t, c});
      }
    }
    gb::canonicalize(p, ctx);
    inputs.push_back(std::move(p));
  }
  gb::Engine<K> engine(ctx, gens.size(), track_cofactors);
  engine.run(inputs);
  ModuleGB<K> out;
  out.input = gens;
  for (auto& e : engine.result()) {
    FreeModuleElement<K> v;
    v.signature = sig;
    std::map<std::uint32_t, gb::Poly<K>> parts;
    for (const auto& t : e.poly) parts[t.m.pos].push_back(t);
    for (const auto& [idx, part] : parts) v.add(order.positions()[idx], gb::from_poly(part, sig));
    out.basis.push_back(std::move(v));
    if (track_cofactors) {
      std::vector<WeylElement<K>> row;
      for (const auto& c : e.cof) row.push_back(gb::from_poly(c, sig));
      out.transform.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace dint
