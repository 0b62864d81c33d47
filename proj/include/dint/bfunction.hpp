#pragma once

// Generic b-functions with respect to a weight vector, integer roots with
// genericity assumptions on parameters, and a holonomicity test.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dint/coeff.hpp"
#include "dint/groebner.hpp"
#include "dint/weyl.hpp"

namespace dint {

/// Raised when a computation cannot finish (degree cap, non-holonomic input).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBFunctionDegreeCap = 64;

/// b(s) over Q(params).  Factors live in Q[s, params] with s as variable 0.
struct BFunction {
  std::vector<FieldElem> coeffs;  // ascending powers of s, monic
  std::vector<std::string> params;
  std::vector<std::pair<ParamPoly, unsigned>> factors;
  std::vector<Integer> integer_roots;  // all integer roots of the parameter-free part
  std::vector<Integer> nonneg_integer_roots;
  std::optional<Integer> s0;
  std::vector<std::string> assumptions;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  std::vector<std::string> factor_names() const {
    std::vector<std::string> v{"s"};
    v.insert(v.end(), params.begin(), params.end());
    return v;
  }

  std::string factor_string(std::size_t k) const { return factors.at(k).first.to_string(factor_names()); }

  std::string to_string() const {
    std::string out;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      if (coeffs[j].is_zero()) continue;
      std::string mono = j == 0 ? "" : detail::power_string("s", static_cast<std::uint32_t>(j));
      detail::append_term(out, coeffs[j].to_string(params), coeffs[j].num().size() > 1 || !coeffs[j].is_polynomial(),
                          mono);
    }
    return out.empty() ? "0" : out;
  }
};

namespace detail {

// Moves every variable index up by `shift`.
inline ParamPoly shift_vars(const ParamPoly& p, std::size_t shift) {
  std::vector<ParamPoly::Term> terms;
  for (const auto& [e, c] : p.terms()) {
    Exponents ne(shift, 0);
    ne.insert(ne.end(), e.begin(), e.end());
    terms.emplace_back(std::move(ne), c);
  }
  return ParamPoly::from_terms(std::move(terms));
}

// Integer coefficients (ascending) of a primitive univariate polynomial in var 0.
inline std::vector<Integer> integer_coeffs(const ParamPoly& p) {
  std::vector<Integer> c(p.degree(0) + 1, 0);
  for (const auto& [e, q] : p.terms()) {
    if (e.size() > 1) throw std::logic_error("expected a univariate polynomial");
    if (q.get_den() != 1) throw std::logic_error("expected integral coefficients");
    c[exp_at(e, 0)] = q.get_num();
  }
  return c;
}

inline Integer eval_int(const std::vector<Integer>& c, const Integer& x) {
  Integer r = 0;
  for (std::size_t j = c.size(); j-- > 0;) r = r * x + c[j];
  return r;
}

// Synthetic division by (s - r), assumed exact.
inline std::vector<Integer> deflate(const std::vector<Integer>& c, const Integer& r) {
  std::vector<Integer> q(c.size() - 1);
  Integer carry = 0;
  for (std::size_t j = c.size(); j-- > 1;) {
    carry = carry * r + c[j];
    q[j - 1] = carry;
  }
  return q;
}

inline ParamPoly from_integer_coeffs(const std::vector<Integer>& c) {
  std::vector<ParamPoly::Term> terms;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) terms.emplace_back(j == 0 ? Exponents{} : Exponents{static_cast<std::uint32_t>(j)}, Rational(c[j]));
  return ParamPoly::from_terms(std::move(terms));
}

// Candidate integer roots: divisors of the constant term when that is cheap,
// otherwise every integer within the Cauchy bound.
inline std::vector<Integer> root_candidates(const std::vector<Integer>& c) {
  std::vector<Integer> out;
  const Integer a0 = abs(c.front());
  if (a0 <= Integer("1000000000000")) {
    for (Integer d = 1; d * d <= a0; ++d) {
      if (a0 % d != 0) continue;
      const Integer e = a0 / d;
      for (const Integer& v : {d, e}) {
        out.push_back(v);
        out.push_back(-v);
      }
    }
  } else {
    const Integer lead = abs(c.back());
    Integer bound = 0;
    for (const auto& v : c) bound = std::max(bound, Integer(abs(v) / lead));
    bound += 1;
    if (bound > 10000000) throw ComputationError("b-function coefficients too large for integer root search");
    for (Integer v = -bound; v <= bound; ++v) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Fills factors, roots, s0 and assumptions from bf.coeffs.
inline void integer_roots(BFunction& bf) {
  if (bf.coeffs.empty() || std::all_of(bf.coeffs.begin(), bf.coeffs.end(), [](const auto& c) { return c.is_zero(); }))
    throw std::invalid_argument("integer_roots of the zero polynomial");
  bf.factors.clear();
  bf.integer_roots.clear();
  bf.nonneg_integer_roots.clear();
  bf.assumptions.clear();
  bf.s0.reset();

  // Clear denominators: P(s, params) with s as variable 0.
  ParamPoly den = ParamPoly::constant(Rational(1));
  for (const auto& c : bf.coeffs)
    if (!c.is_zero() && !c.den().is_one()) den = divide_exact(den * c.den(), poly_gcd(den, c.den()));
  ParamPoly P;
  for (std::size_t j = 0; j < bf.coeffs.size(); ++j) {
    const auto& c = bf.coeffs[j];
    if (c.is_zero()) continue;
    const ParamPoly cj = c.den().is_one() ? c.num() * den : c.num() * divide_exact(den, c.den());
    P += detail::shift_vars(cj, 1) * ParamPoly::monomial(Exponents{static_cast<std::uint32_t>(j)}, Rational(1));
  }
  // Content with respect to s.
  {
    ParamPoly content;
    for (const auto& c : detail::to_univariate(P, 0)) content = poly_gcd(content, c);
    P = normalize_primitive(divide_exact(P, content));
  }

  // b0: the parameter-free part, gcd of the slices by parameter monomial.
  std::map<Exponents, std::vector<ParamPoly::Term>> slices;
  for (const auto& [e, c] : P.terms()) {
    Exponents key(e.begin() + std::min<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(e.size())), e.end());
    slices[key].emplace_back(Exponents{detail::exp_at(e, 0)}, c);
  }
  ParamPoly b0;
  for (auto& [key, terms] : slices) b0 = poly_gcd(b0, ParamPoly::from_terms(std::move(terms)));
  const ParamPoly b1 = normalize_primitive(divide_exact(P, b0));

  // Integer roots of b0 with multiplicities.
  std::vector<Integer> c = detail::integer_coeffs(b0);
  std::vector<std::pair<Integer, unsigned>> roots;
  if (c.size() > 1) {
    unsigned zero_mult = 0;
    while (c.size() > 1 && c.front() == 0) {
      c.erase(c.begin());
      ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(Integer(0), zero_mult);
  }
  if (c.size() > 1) {
    for (const Integer& r : detail::root_candidates(c)) {
      unsigned mult = 0;
      while (c.size() > 1 && detail::eval_int(c, r) == 0) {
        c = detail::deflate(c, r);
        ++mult;
      }
      if (mult) roots.emplace_back(r, mult);
    }
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& [r, mult] : roots) {
    bf.factors.emplace_back(
        ParamPoly::from_terms({{Exponents{1}, Rational(1)}, {Exponents{}, Rational(-r)}}), mult);
    bf.integer_roots.push_back(r);
    if (r >= 0) bf.nonneg_integer_roots.push_back(r);
  }
  if (c.size() > 1) bf.factors.emplace_back(normalize_primitive(detail::from_integer_coeffs(c)), 1);

  if (b1.degree(0) > 0) {
    bf.factors.emplace_back(b1, 1);
    std::vector<std::string> names{"s"};
    names.insert(names.end(), bf.params.begin(), bf.params.end());
    if (b1.degree(0) == 1) {
      const auto u = detail::to_univariate(b1, 0);
      // Root rho = -u0/u1, with the parameters back at index 0.
      auto unshift = [](const ParamPoly& p) {
        std::vector<ParamPoly::Term> terms;
        for (const auto& [e, q] : p.terms()) terms.emplace_back(Exponents(e.begin() + (e.empty() ? 0 : 1), e.end()), q);
        return ParamPoly::from_terms(std::move(terms));
      };
      const FieldElem rho(-unshift(u[0]), unshift(u[1]));
      std::string r = rho.to_string(bf.params);
      bf.assumptions.push_back(r + " is not a non-negative integer");
    } else {
      bf.assumptions.push_back("no root of " + b1.to_string(names) + " is a non-negative integer");
    }
  }
  if (!bf.nonneg_integer_roots.empty()) bf.s0 = bf.nonneg_integer_roots.back();
}

namespace detail {

inline std::vector<long> full_weight(std::span<const long> w, std::size_t n) {
  std::vector<long> full(n, 0);
  for (std::size_t i = 0; i < w.size() && i < n; ++i) full[i] = w[i];
  return full;
}

// Dense-on-demand Gaussian elimination: rows keyed by their largest monomial.
template <Field K>
struct Echelon {
  struct Row {
    std::map<Monomial, K> v;
    std::vector<K> comb;
  };
  std::map<Monomial, Row> rows;

  // Reduces (v, comb); returns true when v became zero.
  bool reduce(std::map<Monomial, K>& v, std::vector<K>& comb) const {
    while (!v.empty()) {
      auto lead = std::prev(v.end());
      auto it = rows.find(lead->first);
      if (it == rows.end()) return false;
      const Row& r = it->second;
      const K f = lead->second / std::prev(r.v.end())->second;
      for (const auto& [m, c] : r.v) {
        auto [pos, inserted] = v.try_emplace(m, K(-(f * c)));
        if (!inserted) {
          pos->second = pos->second - f * c;
          if (coeff_traits<K>::is_zero(pos->second)) v.erase(pos);
        }
      }
      comb.resize(std::max(comb.size(), r.comb.size()), coeff_traits<K>::zero());
      for (std::size_t j = 0; j < r.comb.size(); ++j) comb[j] = comb[j] - f * r.comb[j];
    }
    return true;
  }
};

}  // namespace detail

/// b-function from a Groebner basis G of the ideal with respect to (-w,w).
template <Field K>
BFunction generic_bfunction_from_gb(const std::vector<WeylElement<K>>& G, std::span<const long> w,
                                    const SignaturePtr& sig, TieBreak tb = TieBreak::grevlex,
                                    CancelToken cancel = nullptr) {
  const auto wf = detail::full_weight(w, sig->n());
  std::vector<WeylElement<K>> inits;
  for (const auto& g : G)
    if (!g.is_zero()) inits.push_back(initial_form(g, wf));
  const TermOrder graded = TermOrder::graded(tb);
  const auto init_gb = buchberger(inits, graded, false, cancel);

  WeylElement<K> theta(sig);
  for (std::size_t i = 0; i < wf.size(); ++i) {
    if (wf[i] == 0) continue;
    Monomial m;
    m.x(i) = 1;
    m.d(i) = 1;
    theta.add_term(m, coeff_traits<K>::from_integer(Integer(wf[i])));
  }

  BFunction bf;
  bf.params = sig->params;
  detail::Echelon<K> ech;
  WeylElement<K> power = WeylElement<K>::constant(sig, coeff_traits<K>::one());
  for (std::size_t k = 0; k <= kBFunctionDegreeCap; ++k) {
    if (cancel && cancel->load()) throw Cancelled();
    if (k > 0) power = theta * power;
    power = normal_form(power, init_gb.basis, graded, cancel).remainder;
    std::map<Monomial, K> v(power.terms().begin(), power.terms().end());
    std::vector<K> comb(k + 1, coeff_traits<K>::zero());
    comb[k] = coeff_traits<K>::one();
    if (ech.reduce(v, comb)) {
      const K lead = comb[k];
      for (std::size_t j = 0; j <= k; ++j) bf.coeffs.push_back(field_ops<K>::to_field_elem(comb[j] / lead));
      integer_roots(bf);
      return bf;
    }
    const Monomial pivot = std::prev(v.end())->first;
    ech.rows.emplace(pivot, typename detail::Echelon<K>::Row{std::move(v), std::move(comb)});
  }
  throw ComputationError("b-function degree exceeds " + std::to_string(kBFunctionDegreeCap) +
                         "; the input may not be holonomic");
}

/// The generic b-function of the ideal generated by gens w.r.t. (-w,w).
template <Field K>
BFunction generic_bfunction(const std::vector<WeylElement<K>>& gens, std::span<const long> w,
                            TieBreak tb = TieBreak::grevlex, CancelToken cancel = nullptr) {
  const SignaturePtr sig = detail::common_signature(gens);
  if (!sig) throw std::invalid_argument("generic_bfunction needs at least one nonzero generator");
  const auto wf = detail::full_weight(w, sig->n());
  const auto G = buchberger(gens, TermOrder::weyl_weight(wf, tb), false, cancel);
  return generic_bfunction_from_gb(G.basis, w, sig, tb, cancel);
}

struct HolonomyReport {
  bool holonomic = false;
  std::size_t dimension = 0;
  bool unit_ideal = false;
};

/// Dimension of the graded ideal under the total-degree filtration on (x, d).
template <Field K>
HolonomyReport is_holonomic(const std::vector<WeylElement<K>>& gens, TieBreak tb = TieBreak::grevlex,
                            CancelToken cancel = nullptr) {
  const SignaturePtr sig = detail::common_signature(gens);
  if (!sig) throw std::invalid_argument("is_holonomic needs at least one nonzero generator");
  const std::size_t n = sig->n();
  const auto G = buchberger(gens, TermOrder::graded(tb), false, cancel);
  HolonomyReport rep;
  std::vector<std::uint32_t> supports;
  for (const auto& g : G.basis) {
    if (g.is_zero()) continue;
    const Monomial lm = g.leading(TermOrder::graded(tb)).first;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lm.x(i)) mask |= 1u << i;
      if (lm.d(i)) mask |= 1u << (n + i);
    }
    if (mask == 0) rep.unit_ideal = true;
    supports.push_back(mask);
  }
  if (rep.unit_ideal) return rep;
  // Largest coordinate subset containing no leading support.
  const std::uint32_t full = (1u << (2 * n)) - 1;
  for (std::uint32_t s = 0; s <= full; ++s) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(s));
    if (size <= rep.dimension) continue;
    bool ok = true;
    for (auto sup : supports)
      if ((sup & ~s) == 0) {
        ok = false;
        break;
      }
    if (ok) rep.dimension = size;
  }
  rep.holonomic = rep.dimension == n;
  return rep;
}

}  // namespace dint
