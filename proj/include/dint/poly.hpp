#pragma once

// Sparse commutative multivariate polynomials with exact coefficients.
//
// Exponent vectors are stored with trailing zeros trimmed, so a constant has
// an empty exponent vector regardless of how many variables the caller has in
// mind.  Terms are kept sorted descending under graded lex.

#include <algorithm>
#include <cstdint>
#include <gmpxx.h>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dint {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised on division by zero and on inexact divisions that were required to
/// be exact.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Exponents = std::vector<std::uint32_t>;

/// Coefficient behaviour needed by the generic containers.  Specialised for
/// Rational here and for FieldElem in coeff.hpp.
template <class C>
struct coeff_traits;

template <>
struct coeff_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_integer(const Integer& z) { return Rational(z); }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_one(const Rational& a) { return a == 1; }
  static bool is_sum(const Rational&) { return false; }
  static std::string to_string(const Rational& a, std::span<const std::string> = {}) {
    return a.get_str();
  }
};

namespace detail {

inline void trim(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

inline std::uint32_t exp_at(const Exponents& e, std::size_t i) {
  return i < e.size() ? e[i] : 0u;
}

inline std::uint64_t degree_of(const Exponents& e) {
  std::uint64_t d = 0;
  for (auto v : e) d += v;
  return d;
}

// >0 when a is larger under graded lex (x_0 > x_1 > ...).
inline int grlex_compare(const Exponents& a, const Exponents& b) {
  const auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const auto ea = exp_at(a, i), eb = exp_at(b, i);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

inline Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exp_at(a, i) + exp_at(b, i);
  return r;
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > exp_at(b, i)) return false;
  return true;
}

inline Exponents sub_exponents(const Exponents& b, const Exponents& a) {
  Exponents r(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - exp_at(a, i);
  trim(r);
  return r;
}

// Appends `coeff * mono` to an infix sum, handling unit and negative
// coefficients.  `coeff_is_sum` requests parentheses around the coefficient.
inline void append_term(std::string& out, std::string coeff, bool coeff_is_sum,
                        const std::string& mono) {
  std::string term;
  if (mono.empty()) {
    term = std::move(coeff);
  } else if (coeff == "1") {
    term = mono;
  } else if (coeff == "-1") {
    term = "-" + mono;
  } else if (coeff_is_sum) {
    term = "(" + coeff + ")*" + mono;
  } else {
    term = coeff + "*" + mono;
  }
  if (out.empty()) {
    out = std::move(term);
  } else if (!term.empty() && term.front() == '-') {
    out += term;
  } else {
    out += "+" + term;
  }
}

inline std::string power_string(const std::string& name, std::uint32_t e) {
  if (e == 1) return name;
  return name + "^" + std::to_string(e);
}

}  // namespace detail

template <class C>
class MPoly {
 public:
  using Coeff = C;
  using Term = std::pair<Exponents, C>;
  using traits = coeff_traits<C>;

  MPoly() = default;

  static MPoly constant(C c) {
    MPoly p;
    if (!traits::is_zero(c)) p.terms_.emplace_back(Exponents{}, std::move(c));
    return p;
  }

  static MPoly variable(std::size_t index) {
    Exponents e(index + 1, 0);
    e[index] = 1;
    MPoly p;
    p.terms_.emplace_back(std::move(e), traits::one());
    return p;
  }

  static MPoly monomial(Exponents e, C c) {
    detail::trim(e);
    MPoly p;
    if (!traits::is_zero(c)) p.terms_.emplace_back(std::move(e), std::move(c));
    return p;
  }

  // Builds from an arbitrary term list: sorts, merges, drops zeros.
  static MPoly from_terms(std::vector<Term> terms) {
    MPoly p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }
  bool is_one() const { return is_constant() && !terms_.empty() && traits::is_one(terms_[0].second); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Term& leading() const {
    if (terms_.empty()) throw ArithmeticError("leading term of zero polynomial");
    return terms_.front();
  }

  C constant_term() const {
    if (!terms_.empty() && terms_.back().first.empty()) return terms_.back().second;
    return traits::zero();
  }

  std::uint32_t degree(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, detail::exp_at(e, var));
    return d;
  }

  std::uint64_t total_degree() const {
    return terms_.empty() ? 0 : detail::degree_of(terms_.front().first);
  }

  // One past the largest variable index that occurs.
  std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& t : terms_) n = std::max(n, t.first.size());
    return n;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.emplace_back(detail::add_exponents(ea, eb), ca * cb);
    return from_terms(std::move(out));
  }

  MPoly scaled(const C& c) const {
    if (traits::is_zero(c)) return {};
    MPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second * c;
    return r;
  }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(unsigned k) const {
    MPoly r = constant(traits::one());
    MPoly base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  MPoly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& [e, c] : terms_) {
      const auto k = detail::exp_at(e, var);
      if (k == 0) continue;
      Exponents ne = e;
      ne[var] -= 1;
      detail::trim(ne);
      out.emplace_back(std::move(ne), c * traits::from_integer(Integer(k)));
    }
    return from_terms(std::move(out));
  }

  // Replaces variable `var` by the constant `value`.
  MPoly substitute(std::size_t var, const C& value) const {
    std::vector<Term> out;
    for (const auto& [e, c] : terms_) {
      const auto k = detail::exp_at(e, var);
      Exponents ne = e;
      C nc = c;
      if (k > 0) {
        ne[var] = 0;
        detail::trim(ne);
        for (std::uint32_t i = 0; i < k; ++i) nc = nc * value;
      }
      out.emplace_back(std::move(ne), std::move(nc));
    }
    return from_terms(std::move(out));
  }

  // Replaces variable `var` by the polynomial `value`.
  MPoly compose(std::size_t var, const MPoly& value) const {
    MPoly result;
    for (const auto& [e, c] : terms_) {
      const auto k = detail::exp_at(e, var);
      Exponents ne = e;
      if (k > 0) {
        ne[var] = 0;
        detail::trim(ne);
      }
      result += monomial(std::move(ne), c) * value.pow(k);
    }
    return result;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename MPoly<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.emplace_back(e, f(c));
    return MPoly<D>::from_terms(std::move(out));
  }

  std::string to_string(std::span<const std::string> var_names,
                        std::span<const std::string> coeff_names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        const std::string name = i < var_names.size() ? var_names[i] : "_" + std::to_string(i);
        mono += detail::power_string(name, e[i]);
      }
      detail::append_term(out, traits::to_string(c, coeff_names), traits::is_sum(c), mono);
    }
    return out;
  }

 private:
  std::vector<Term> terms_;

  void canonicalize() {
    for (auto& t : terms_) detail::trim(t.first);
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return detail::grlex_compare(a.first, b.first) > 0;
    });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first) {
        merged.back().second = merged.back().second + t.second;
      } else {
        if (!merged.empty() && traits::is_zero(merged.back().second)) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && traits::is_zero(merged.back().second)) merged.pop_back();
    terms_ = std::move(merged);
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    MPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == a.terms_.size()) cmp = -1;
      else if (j == b.terms_.size()) cmp = 1;
      else cmp = detail::grlex_compare(a.terms_[i].first, b.terms_[j].first);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.emplace_back(t.first, subtract ? C(-t.second) : t.second);
      } else {
        C c = subtract ? C(a.terms_[i].second - b.terms_[j].second)
                       : C(a.terms_[i].second + b.terms_[j].second);
        if (!traits::is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }
};

}  // namespace dint
