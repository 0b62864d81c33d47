#pragma once

// The Weyl algebra D = K<x_1..x_n, d_1..d_n> with d_i x_i = x_i d_i + 1.
// Elements are stored in normal order (all x's left of all d's).

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dint/coeff.hpp"
#include "dint/orders.hpp"
#include "dint/signature.hpp"

namespace dint {

namespace detail {

// C(b,k) * C(c,k) * k!, the coefficient of x^{c-k} d^{b-k} in d^b x^c.
inline Integer reorder_factor(unsigned b, unsigned c, unsigned k) {
  Integer r, t;
  mpz_bin_uiui(r.get_mpz_t(), b, k);
  mpz_bin_uiui(t.get_mpz_t(), c, k);
  r *= t;
  mpz_fac_ui(t.get_mpz_t(), k);
  return r * t;
}

}  // namespace detail

/// Normal-ordered product of two monomials: calls emit(monomial, factor) for
/// each term of (x^A d^B) * (x^C d^D).  In the homogenised algebra every
/// commutator step contributes h^2.  The result keeps b's position.
template <class Emit>
void weyl_monomial_product(const Monomial& a, const Monomial& b, bool homogenized, Emit&& emit) {
  std::array<unsigned, kMaxVars> kmax{};
  bool trivial = true;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    kmax[i] = std::min<unsigned>(a.d(i), b.x(i));
    if (kmax[i]) trivial = false;
  }
  Monomial base = exponent_sum(a, b);
  if (trivial) {
    emit(base, Integer(1));
    return;
  }
  std::array<unsigned, kMaxVars> k{};
  while (true) {
    Monomial t = base;
    Integer factor = 1;
    unsigned total = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (k[i] == 0) continue;
      t.x(i) = static_cast<std::uint16_t>(t.x(i) - k[i]);
      t.d(i) = static_cast<std::uint16_t>(t.d(i) - k[i]);
      factor *= detail::reorder_factor(a.d(i), b.x(i), k[i]);
      total += k[i];
    }
    if (homogenized) t.h() = static_cast<std::uint16_t>(t.h() + 2 * total);
    emit(t, factor);
    std::size_t i = 0;
    for (; i < kMaxVars; ++i) {
      if (k[i] < kmax[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
    if (i == kMaxVars) break;
  }
}

class SignatureMismatch : public std::invalid_argument {
 public:
  SignatureMismatch() : std::invalid_argument("operands belong to different algebra signatures") {}
};

enum class FourierDirection { forward, inverse };

template <Field K>
class WeylElement {
 public:
  using Coeff = K;
  using Terms = std::map<Monomial, K>;
  using traits = coeff_traits<K>;

  WeylElement() = default;
  explicit WeylElement(SignaturePtr sig) : sig_(std::move(sig)) {}

  static WeylElement constant(SignaturePtr sig, const K& c) { return monomial(std::move(sig), Monomial{}, c); }

  static WeylElement monomial(SignaturePtr sig, const Monomial& m, const K& c) {
    WeylElement r(std::move(sig));
    if (!traits::is_zero(c)) r.terms_.emplace(m, c);
    return r;
  }

  static WeylElement x(SignaturePtr sig, std::size_t i) { return monomial(sig, mono_x(i), traits::one()); }
  static WeylElement d(SignaturePtr sig, std::size_t i) { return monomial(sig, mono_d(i), traits::one()); }

  const SignaturePtr& signature() const { return sig_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * m to this element.
  void add_term(const Monomial& m, const K& c) {
    if (traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  WeylElement operator-() const {
    WeylElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  WeylElement& operator+=(const WeylElement& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  WeylElement& operator-=(const WeylElement& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }

  WeylElement scaled(const K& c) const {
    if (traits::is_zero(c)) return WeylElement(sig_);
    WeylElement r = *this;
    for (auto& [m, v] : r.terms_) v = v * c;
    return r;
  }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
    a.check(b);
    WeylElement r(a.sig_ ? a.sig_ : b.sig_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        const K c = ca * cb;
        weyl_monomial_product(ma, mb, false, [&](const Monomial& t, const Integer& f) {
          r.add_term(t, f == 1 ? c : K(c * traits::from_integer(f)));
        });
      }
    return r;
  }

  WeylElement& operator*=(const WeylElement& o) { return *this = *this * o; }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_;
  }

  WeylElement pow(unsigned k) const {
    WeylElement r = constant(sig_, traits::one());
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Terms sorted descending by `order`.
  std::vector<std::pair<Monomial, K>> sorted_terms(const TermOrder& order = TermOrder::graded()) const {
    std::vector<std::pair<Monomial, K>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return order.compare(a.first, b.first) > 0; });
    return v;
  }

  std::pair<Monomial, K> leading(const TermOrder& order = TermOrder::graded()) const {
    if (terms_.empty()) throw std::invalid_argument("leading term of zero operator");
    auto it = std::max_element(terms_.begin(), terms_.end(), [&](const auto& a, const auto& b) {
      return order.compare(a.first, b.first) < 0;
    });
    return *it;
  }

  /// True when no variable or derivative of index < m occurs.
  bool in_subalgebra(std::size_t m) const {
    for (const auto& [mono, c] : terms_)
      for (std::size_t i = 0; i < m; ++i)
        if (mono.x(i) || mono.d(i)) return false;
    return true;
  }

  std::string to_string(const TermOrder& order = TermOrder::graded()) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : sorted_terms(order))
      detail::append_term(out, traits::to_string(c, params()), traits::is_sum(c), monomial_string(m));
    return out;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    auto put = [&](const std::string& name, unsigned e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += detail::power_string(name, e);
    };
    const std::size_t n = sig_ ? sig_->n() : 0;
    for (std::size_t i = 0; i < n; ++i) put(sig_->vars[i], m.x(i));
    for (std::size_t i = 0; i < n; ++i) put(sig_->derivative_name(i), m.d(i));
    put("h", m.h());
    return s;
  }

  template <Field L, class F>
  WeylElement<L> map_coeffs(F&& f) const {
    WeylElement<L> r(sig_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

 private:
  SignaturePtr sig_;
  Terms terms_;

  std::span<const std::string> params() const {
    return sig_ ? std::span<const std::string>(sig_->params) : std::span<const std::string>();
  }

  void check(const WeylElement& o) const {
    if (sig_ && o.sig_ && !same_signature(sig_, o.sig_)) throw SignatureMismatch();
  }
};

template <Field K>
WeylElement<K> multiply(const WeylElement<K>& a, const WeylElement<K>& b) {
  return a * b;
}

/// The Fourier transform: x_i -> -d_i, d_i -> x_i for i < m (forward), and
/// its inverse x_i -> d_i, d_i -> -x_i; identity on the remaining variables.
template <Field K>
WeylElement<K> fourier(const WeylElement<K>& a, FourierDirection dir) {
  const auto& sig = a.signature();
  const std::size_t m = sig ? sig->m : 0;
  WeylElement<K> r(sig);
  for (const auto& [mono, c] : a.terms()) {
    // Image of x^alpha d^beta is (+-d)^alpha (+-x)^beta on the first m slots.
    Monomial left, right;
    unsigned sign_exp = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (i < m) {
        left.d(i) = mono.x(i);
        right.x(i) = mono.d(i);
        sign_exp += dir == FourierDirection::forward ? mono.x(i) : mono.d(i);
      } else {
        left.x(i) = mono.x(i);
        right.d(i) = mono.d(i);
      }
    }
    const K cc = sign_exp % 2 ? K(-c) : c;
    weyl_monomial_product(left, right, false, [&](const Monomial& t, const Integer& f) {
      r.add_term(t, f == 1 ? cc : K(cc * coeff_traits<K>::from_integer(f)));
    });
  }
  return r;
}

/// Drops every term containing one of x_1..x_m.
template <Field K>
WeylElement<K> specialize_to_zero(const WeylElement<K>& a) {
  const std::size_t m = a.signature() ? a.signature()->m : 0;
  WeylElement<K> r(a.signature());
  for (const auto& [mono, c] : a.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < m; ++i) keep = keep && mono.x(i) == 0;
    if (keep) r.add_term(mono, c);
  }
  return r;
}

inline long weight_of(const Monomial& mono, std::span<const long> w) {
  long s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (static_cast<long>(mono.d(i)) - mono.x(i));
  return s;
}

/// ord_(-w,w): the largest (-w,w)-weight among the terms.
template <Field K>
long w_order(const WeylElement<K>& a, std::span<const long> w) {
  if (a.is_zero()) throw std::invalid_argument("w_order of the zero operator");
  long best = 0;
  bool first = true;
  for (const auto& [mono, c] : a.terms()) {
    const long v = weight_of(mono, w);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

/// in_(-w,w): the sum of the terms attaining w_order.
template <Field K>
WeylElement<K> initial_form(const WeylElement<K>& a, std::span<const long> w) {
  const long top = w_order(a, w);
  WeylElement<K> r(a.signature());
  for (const auto& [mono, c] : a.terms())
    if (weight_of(mono, w) == top) r.add_term(mono, c);
  return r;
}

/// Substitutes x_i -> x_i + c (d_i unchanged).
template <Field K>
WeylElement<K> translate(const WeylElement<K>& a, std::size_t i, const K& c) {
  WeylElement<K> r(a.signature());
  for (const auto& [mono, coef] : a.terms()) {
    const unsigned e = mono.x(i);
    K cpow = coeff_traits<K>::one();
    // (x + c)^e = sum_k C(e,k) c^(e-k) x^k, walked from k = e downwards.
    for (unsigned j = 0; j <= e; ++j) {
      const unsigned k = e - j;
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), e, k);
      Monomial t = mono;
      t.x(i) = static_cast<std::uint16_t>(k);
      r.add_term(t, coef * cpow * coeff_traits<K>::from_integer(binom));
      cpow = cpow * c;
    }
  }
  return r;
}

}  // namespace dint
