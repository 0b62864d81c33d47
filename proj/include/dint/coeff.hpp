#pragma once

// Exact coefficients: rationals, polynomials in the declared parameters, and
// the normalised fraction field Q(a_1, ..., a_p).

#include <concepts>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dint/poly.hpp"

namespace dint {

using ParamPoly = MPoly<Rational>;

namespace detail {

inline Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace detail

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational rational_content(const ParamPoly& p) {
  if (p.is_zero()) return Rational(1);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    num_gcd = detail::gcd_int(num_gcd, c.get_num());
    den_lcm = detail::lcm_int(den_lcm, c.get_den());
  }
  Rational r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

/// Integral, content-free, positive leading coefficient under graded lex.
inline ParamPoly normalize_primitive(const ParamPoly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (sgn(p.leading().second) < 0) c = -c;
  return p.scaled(Rational(1) / c);
}

/// Exact multivariate division; throws ArithmeticError if b does not divide a.
inline ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) throw ArithmeticError("division by zero polynomial");
  if (b.is_constant()) return a.scaled(Rational(1) / b.leading().second);
  const auto& [lb_e, lb_c] = b.leading();
  std::vector<ParamPoly::Term> quotient;
  ParamPoly r = a;
  while (!r.is_zero()) {
    const auto& [lr_e, lr_c] = r.leading();
    if (!detail::divides(lb_e, lr_e)) throw ArithmeticError("inexact polynomial division");
    ParamPoly t = ParamPoly::monomial(detail::sub_exponents(lr_e, lb_e), lr_c / lb_c);
    quotient.emplace_back(t.leading());
    r -= t * b;
  }
  return ParamPoly::from_terms(std::move(quotient));
}

namespace detail {

// Polynomial viewed as univariate in `var` with ParamPoly coefficients
// (which do not involve `var`).  Index = degree.
using Univariate = std::vector<ParamPoly>;

inline Univariate to_univariate(const ParamPoly& p, std::size_t var) {
  Univariate u(p.degree(var) + 1);
  std::vector<std::vector<ParamPoly::Term>> buckets(u.size());
  for (const auto& [e, c] : p.terms()) {
    const auto k = exp_at(e, var);
    Exponents ne = e;
    if (k > 0) {
      ne[var] = 0;
      trim(ne);
    }
    buckets[k].emplace_back(std::move(ne), c);
  }
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = ParamPoly::from_terms(std::move(buckets[k]));
  return u;
}

inline ParamPoly from_univariate(const Univariate& u, std::size_t var) {
  ParamPoly r;
  ParamPoly x = ParamPoly::variable(var);
  ParamPoly xk = ParamPoly::constant(Rational(1));
  for (const auto& c : u) {
    if (!c.is_zero()) r += c * xk;
    xk = xk * x;
  }
  return r;
}

inline void strip(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// Smallest variable index occurring in a or b, or -1 if both are constants.
inline long main_variable(const ParamPoly& a, const ParamPoly& b) {
  const std::size_t n = std::max(a.num_vars(), b.num_vars());
  for (std::size_t v = 0; v < n; ++v)
    if (a.degree(v) > 0 || b.degree(v) > 0) return static_cast<long>(v);
  return -1;
}

inline ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b);

inline ParamPoly content_of(const Univariate& u) {
  ParamPoly g;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_primitive(c) : gcd_rec(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline Univariate divide_coeffs(const Univariate& u, const ParamPoly& d) {
  Univariate r(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) r[k] = divide_exact(u[k], d);
  return r;
}

// Pseudo-remainder of a by b (deg a >= deg b), both in (Q[rest])[var].
inline Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const std::size_t db = b.size() - 1;
  const ParamPoly& lb = b.back();
  strip(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const ParamPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    strip(a);
  }
  return a;
}

inline ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  const long v = main_variable(a, b);
  if (v < 0) return ParamPoly::constant(Rational(1));
  const auto var = static_cast<std::size_t>(v);
  Univariate ua = to_univariate(a, var), ub = to_univariate(b, var);
  const ParamPoly ca = content_of(ua), cb = content_of(ub);
  const ParamPoly c = gcd_rec(ca, cb);
  ua = divide_coeffs(ua, ca);
  ub = divide_coeffs(ub, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (!ub.empty() && ub.size() > 1) {
    Univariate r = pseudo_remainder(ua, ub);
    ua = std::move(ub);
    if (r.empty()) {
      ub.clear();
      break;
    }
    ub = divide_coeffs(r, content_of(r));
  }
  // ub nonempty here means the last remainder was a nonzero constant in var.
  if (!ub.empty()) return normalize_primitive(c);
  return normalize_primitive(from_univariate(ua, var) * c);
}

}  // namespace detail

/// Greatest common divisor, integral primitive with positive leading
/// coefficient; gcd(0, b) is the normalised b and gcd(0, 0) = 0.
inline ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) {
  return detail::gcd_rec(a, b);
}

/// Element of Q(a_1, ..., a_p) in canonical form: gcd(num, den) = 1 and den
/// integral primitive with positive leading coefficient.
class FieldElem {
 public:
  FieldElem() : den_(ParamPoly::constant(Rational(1))) {}
  FieldElem(long v) : num_(ParamPoly::constant(Rational(v))), den_(ParamPoly::constant(Rational(1))) {}
  FieldElem(const Rational& q) : num_(ParamPoly::constant(q)), den_(ParamPoly::constant(Rational(1))) {}
  FieldElem(ParamPoly p) : num_(std::move(p)), den_(ParamPoly::constant(Rational(1))) {}
  FieldElem(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static FieldElem parameter(std::size_t index) { return FieldElem(ParamPoly::variable(index)); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_term(); }

  FieldElem operator-() const { return raw(-num_, den_); }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ + b.num_, a.den_);
    if (a.den_ == b.den_) return FieldElem(a.num_ + b.num_, a.den_);
    return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero() || b.is_zero()) return FieldElem();
    if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, a.den_);
    if (a.num_.is_constant() && a.den_.is_one()) return raw(b.num_.scaled(a.num_.leading().second), b.den_);
    if (b.num_.is_constant() && b.den_.is_one()) return raw(a.num_.scaled(b.num_.leading().second), a.den_);
    return FieldElem(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero");
    if (b.num_.is_constant() && b.den_.is_one())
      return raw(a.num_.scaled(Rational(1) / b.num_.leading().second), a.den_);
    return FieldElem(a.num_ * b.den_, a.den_ * b.num_);
  }

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  FieldElem inverse() const { return FieldElem(1) / *this; }

  std::string to_string(std::span<const std::string> params) const {
    if (den_.is_one()) return num_.to_string(params);
    const std::string n = num_.to_string(params);
    std::string d = den_.to_string(params);
    const bool bare = den_.size() == 1 && d.find_first_of("*^") == std::string::npos;
    if (!bare) d = "(" + d + ")";
    return (num_.size() > 1 ? "(" + n + ")" : n) + "/" + d;
  }

 private:
  ParamPoly num_, den_;

  // Trusted constructor: caller guarantees canonical form.
  static FieldElem raw(ParamPoly num, ParamPoly den) {
    FieldElem r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    if (r.num_.is_zero()) r.den_ = ParamPoly::constant(Rational(1));
    return r;
  }

  void canonicalize() {
    if (den_.is_zero()) throw ArithmeticError("zero denominator");
    if (num_.is_zero()) {
      den_ = ParamPoly::constant(Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      const ParamPoly g = poly_gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
      }
    }
    // Make den integral primitive with positive leading coefficient.
    Rational c = rational_content(den_);
    if (sgn(den_.leading().second) < 0) c = -c;
    den_ = den_.scaled(Rational(1) / c);
    num_ = num_.scaled(Rational(1) / c);
  }
};

enum class FieldOp { add, sub, mul, div };

inline FieldElem field_arith(FieldOp op, const FieldElem& a, const FieldElem& b) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
  }
  throw std::invalid_argument("unknown field operation");
}

template <>
struct coeff_traits<FieldElem> {
  static FieldElem zero() { return FieldElem(); }
  static FieldElem one() { return FieldElem(1); }
  static FieldElem from_integer(const Integer& z) { return FieldElem(Rational(z)); }
  static bool is_zero(const FieldElem& a) { return a.is_zero(); }
  static bool is_one(const FieldElem& a) { return a.is_constant() && a.constant_value() == 1; }
  static bool is_sum(const FieldElem& a) { return a.is_polynomial() && a.num().size() > 1; }
  static std::string to_string(const FieldElem& a, std::span<const std::string> params = {}) {
    return a.to_string(params);
  }
};

// ---------------------------------------------------------------------------
// Field concept and the extra operations the Groebner engine relies on.

template <class K>
concept Field = requires(const K& a, const K& b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { coeff_traits<K>::is_zero(a) } -> std::convertible_to<bool>;
};

template <class K>
struct field_ops;

template <>
struct field_ops<Rational> {
  using K = Rational;

  static bool is_integral(const K& a) { return a.get_den() == 1; }

  // Multiplier making every coefficient an integer, with gcd 1 and the first
  // coefficient positive.
  template <class Range, class Proj>
  static K primitive_factor(const Range& range, Proj proj) {
    Integer num_gcd = 0, den_lcm = 1;
    bool first = true, negative = false;
    for (const auto& item : range) {
      const K& c = proj(item);
      if (sgn(c) == 0) continue;
      if (first) {
        negative = sgn(c) < 0;
        first = false;
      }
      num_gcd = detail::gcd_int(num_gcd, c.get_num());
      den_lcm = detail::lcm_int(den_lcm, c.get_den());
    }
    if (first) return K(1);
    K f(den_lcm, num_gcd);
    f.canonicalize();
    return negative ? K(-f) : f;
  }

  // (a, b) with a * lcf == b * lcg, kept small.
  static std::pair<K, K> cancel_multipliers(const K& lcf, const K& lcg) {
    if (is_integral(lcf) && is_integral(lcg)) {
      const Integer g = detail::gcd_int(lcf.get_num(), lcg.get_num());
      return {K(Integer(lcg.get_num() / g)), K(Integer(lcf.get_num() / g))};
    }
    return {K(1), K(lcf / lcg)};
  }

  static FieldElem to_field_elem(const K& a) { return FieldElem(a); }

  static K from_param_poly(const ParamPoly& p) {
    if (!p.is_constant()) throw std::invalid_argument("parameters are not declared in this context");
    return p.constant_term();
  }

  // Leading rational coefficient, used for sign normalisation.
  static Rational leading_rational(const K& a) { return a; }
};

template <>
struct field_ops<FieldElem> {
  using K = FieldElem;

  template <class Range, class Proj>
  static K primitive_factor(const Range& range, Proj proj) {
    ParamPoly den_lcm = ParamPoly::constant(Rational(1));
    const FieldElem* first = nullptr;
    for (const auto& item : range) {
      const K& c = proj(item);
      if (c.is_zero()) continue;
      if (!first) first = &c;
      if (!c.den().is_one()) {
        const ParamPoly g = poly_gcd(den_lcm, c.den());
        den_lcm = divide_exact(den_lcm * c.den(), g);
      }
    }
    if (!first) return K(1);
    ParamPoly num_gcd;
    for (const auto& item : range) {
      const K& c = proj(item);
      if (c.is_zero()) continue;
      const ParamPoly scaled = c.den().is_one() ? c.num() * den_lcm : c.num() * divide_exact(den_lcm, c.den());
      num_gcd = num_gcd.is_zero() ? normalize_primitive(scaled) : poly_gcd(num_gcd, scaled);
    }
    // num_gcd is primitive; rational content of the scaled list still has to go.
    Rational content = 0;
    Integer cnum = 0, cden = 1;
    for (const auto& item : range) {
      const K& c = proj(item);
      if (c.is_zero()) continue;
      ParamPoly scaled = c.den().is_one() ? c.num() * den_lcm : c.num() * divide_exact(den_lcm, c.den());
      scaled = divide_exact(scaled, num_gcd);
      const Rational rc = rational_content(scaled);
      cnum = detail::gcd_int(cnum, rc.get_num());
      cden = detail::lcm_int(cden, rc.get_den());
    }
    content = Rational(cnum, cden);
    content.canonicalize();
    K f(den_lcm, num_gcd.scaled(content));
    if (sgn(leading_rational(*first * f)) < 0) f = -f;
    return f;
  }

  static std::pair<K, K> cancel_multipliers(const K& lcf, const K& lcg) {
    if (lcf.is_polynomial() && lcg.is_polynomial()) {
      if (lcf.is_constant() && lcg.is_constant()) {
        auto [a, b] = field_ops<Rational>::cancel_multipliers(lcf.constant_value(), lcg.constant_value());
        return {K(a), K(b)};
      }
      const ParamPoly g = poly_gcd(lcf.num(), lcg.num());
      return {K(divide_exact(lcg.num(), g)), K(divide_exact(lcf.num(), g))};
    }
    return {K(1), lcf / lcg};
  }

  static FieldElem to_field_elem(const K& a) { return a; }
  static K from_param_poly(const ParamPoly& p) { return K(p); }
  static Rational leading_rational(const K& a) { return a.is_zero() ? Rational(0) : a.num().leading().second; }
};

}  // namespace dint
