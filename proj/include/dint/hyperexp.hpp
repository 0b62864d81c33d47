#pragma once

// Functions num / base^power * exp(expo) with polynomial num, base and expo
// in the x-variables.  The class is closed under the Weyl algebra action.

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dint/coeff.hpp"
#include "dint/weyl.hpp"

namespace dint {

/// Raised when an operation would leave the hyperexponential class.
class NotHyperexponential : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial in the x-variables of sig, read as an element of D.
template <Field K>
WeylElement<K> from_commutative(const MPoly<K>& p, const SignaturePtr& sig) {
  WeylElement<K> r(sig);
  for (const auto& [e, c] : p.terms()) {
    if (e.size() > sig->n()) throw std::invalid_argument("polynomial uses more variables than the signature has");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.x(i) = static_cast<std::uint16_t>(e[i]);
    r.add_term(m, c);
  }
  return r;
}

template <Field K>
class HyperexpFunction {
 public:
  using Poly = MPoly<K>;

  HyperexpFunction() : base_(Poly::constant(coeff_traits<K>::one())) {}

  HyperexpFunction(Poly num, Poly base, unsigned power, Poly expo)
      : num_(std::move(num)), base_(std::move(base)), power_(power), expo_(std::move(expo)) {
    normalize();
  }

  static HyperexpFunction polynomial(Poly p) { return HyperexpFunction(std::move(p), one_poly(), 0, Poly()); }
  static HyperexpFunction exp(Poly g) { return HyperexpFunction(one_poly(), one_poly(), 0, std::move(g)); }
  static HyperexpFunction constant(const K& c) { return polynomial(Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& base() const { return base_; }
  unsigned power() const { return power_; }
  const Poly& expo() const { return expo_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return power_ == 0 && expo_.is_zero(); }

  HyperexpFunction derivative(std::size_t var) const {
    if (is_zero()) return *this;
    const Poly dn = num_.derivative(var) + num_ * expo_.derivative(var);
    const Poly db = power_ == 0 ? Poly() : base_.derivative(var);
    if (db.is_zero()) return HyperexpFunction(dn, base_, power_, expo_);
    const Poly k = Poly::constant(coeff_traits<K>::from_integer(Integer(power_)));
    return HyperexpFunction(dn * base_ - k * num_ * db, base_, power_ + 1, expo_);
  }

  HyperexpFunction times(const Poly& p) const { return HyperexpFunction(num_ * p, base_, power_, expo_); }

  HyperexpFunction operator-() const { return HyperexpFunction(-num_, base_, power_, expo_); }

  friend HyperexpFunction operator+(const HyperexpFunction& a, const HyperexpFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!(a.expo_ == b.expo_))
      throw NotHyperexponential("sum of terms with different exponential factors");
    if (a.power_ == 0 || b.power_ == 0 || a.base_ == b.base_) {
      const Poly& base = a.power_ == 0 ? b.base_ : a.base_;
      const unsigned k = std::max(a.power_, b.power_);
      const Poly na = a.num_ * base.pow(k - a.power_);
      const Poly nb = b.num_ * base.pow(k - b.power_);
      return HyperexpFunction(na + nb, base, k, a.expo_);
    }
    const Poly da = a.base_.pow(a.power_), dbb = b.base_.pow(b.power_);
    return HyperexpFunction(a.num_ * dbb + b.num_ * da, da * dbb, 1, a.expo_);
  }

  friend HyperexpFunction operator-(const HyperexpFunction& a, const HyperexpFunction& b) { return a + (-b); }

  friend HyperexpFunction operator*(const HyperexpFunction& a, const HyperexpFunction& b) {
    const Poly num = a.num_ * b.num_;
    const Poly expo = a.expo_ + b.expo_;
    if (a.power_ == 0) return HyperexpFunction(num, b.base_, b.power_, expo);
    if (b.power_ == 0) return HyperexpFunction(num, a.base_, a.power_, expo);
    if (a.base_ == b.base_) return HyperexpFunction(num, a.base_, a.power_ + b.power_, expo);
    return HyperexpFunction(num, a.base_.pow(a.power_) * b.base_.pow(b.power_), 1, expo);
  }

  friend HyperexpFunction operator/(const HyperexpFunction& a, const HyperexpFunction& b) {
    if (b.is_zero()) throw ArithmeticError("division by the zero function");
    // a / b = a * base_b^k / num_b * exp(-expo_b)
    HyperexpFunction inv(b.base_.pow(b.power_), b.num_, 1, -b.expo_);
    return a * inv;
  }

  HyperexpFunction pow(long k) const {
    if (k < 0) {
      if (is_zero()) throw ArithmeticError("negative power of the zero function");
      return constant(coeff_traits<K>::one()) / pow(-k);
    }
    HyperexpFunction r = constant(coeff_traits<K>::one());
    for (long i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Replaces x_var by a constant.  A vanishing denominator raises
  /// ArithmeticError.
  HyperexpFunction substitute(std::size_t var, const K& value) const {
    const Poly b = base_.substitute(var, value);
    if (power_ > 0 && b.is_zero()) throw ArithmeticError("the function has a pole at this point");
    return HyperexpFunction(num_.substitute(var, value), b, power_, expo_.substitute(var, value));
  }

  friend bool operator==(const HyperexpFunction& a, const HyperexpFunction& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (!(a.expo_ == b.expo_)) return false;
    return a.num_ * b.base_.pow(b.power_) == b.num_ * a.base_.pow(a.power_);
  }

  std::string to_string(std::span<const std::string> vars, std::span<const std::string> params = {}) const {
    if (is_zero()) return "0";
    std::string s = num_.to_string(vars, params);
    if (power_ > 0) {
      if (num_.size() > 1) s = "(" + s + ")";
      std::string d = base_.to_string(vars, params);
      if (base_.size() > 1 || power_ > 1) d = "(" + d + ")";
      s += "/" + d;
      if (power_ > 1) s += "^" + std::to_string(power_);
    }
    if (!expo_.is_zero()) {
      const std::string e = "exp(" + expo_.to_string(vars, params) + ")";
      if (num_.is_one() && power_ == 0) return e;
      if (num_.size() > 1 && power_ == 0) s = "(" + s + ")";
      s += "*" + e;
    }
    return s;
  }

 private:
  Poly num_, base_ = one_poly();
  unsigned power_ = 0;
  Poly expo_;

  static Poly one_poly() { return Poly::constant(coeff_traits<K>::one()); }

  void normalize() {
    if (num_.is_zero()) {
      base_ = one_poly();
      power_ = 0;
      expo_ = Poly();
      return;
    }
    if (power_ > 0 && base_.is_zero()) throw ArithmeticError("zero denominator");
    if (power_ == 0 || base_.is_constant()) {
      if (power_ > 0) {
        const K inv = coeff_traits<K>::one() / base_.constant_term();
        K f = coeff_traits<K>::one();
        for (unsigned i = 0; i < power_; ++i) f = f * inv;
        num_ = num_.scaled(f);
      }
      base_ = one_poly();
      power_ = 0;
    }
  }
};

/// op . f.  Derivatives of f are memoised across the terms of op.
template <Field K>
HyperexpFunction<K> apply(const WeylElement<K>& op, const HyperexpFunction<K>& f) {
  using H = HyperexpFunction<K>;
  using Key = std::array<std::uint16_t, kMaxVars>;
  std::map<Key, H> memo;
  memo.emplace(Key{}, f);
  std::function<const H&(const Key&)> deriv = [&](const Key& k) -> const H& {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::size_t i = 0;
    while (k[i] == 0) ++i;
    Key prev = k;
    --prev[i];
    H d = deriv(prev).derivative(i);
    return memo.emplace(k, std::move(d)).first->second;
  };
  H result;
  for (const auto& [m, c] : op.terms()) {
    if (m.h() != 0) throw std::invalid_argument("cannot apply a homogenised operator");
    Key k{};
    Exponents xs;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      k[i] = m.d(i);
      if (m.x(i)) {
        xs.resize(i + 1, 0);
        xs[i] = m.x(i);
      }
    }
    const H& d = deriv(k);
    if (d.is_zero()) continue;
    result = result + d.times(MPoly<K>::monomial(xs, c));
  }
  return result;
}

}  // namespace dint
