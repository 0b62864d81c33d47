#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dint {

inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::size_t kSlots = 2 * kMaxVars + 1;
inline constexpr std::size_t kDerivSlot = kMaxVars;   // first derivative slot
inline constexpr std::size_t kHomogSlot = 2 * kMaxVars;

/// Variable layout of D = K<x_1..x_n, d_1..d_n>: the first m variables are
/// integrated (or restricted) away, the rest span D'.
struct AlgebraSignature {
  std::vector<std::string> vars;
  std::size_t m = 0;
  std::vector<std::string> params;

  std::size_t n() const { return vars.size(); }
  std::string derivative_name(std::size_t i) const { return "d" + vars.at(i); }

  friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;
};

using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

inline SignaturePtr make_signature(std::vector<std::string> vars, std::size_t m,
                                   std::vector<std::string> params = {}) {
  if (vars.empty()) throw std::invalid_argument("at least one variable is required");
  if (vars.size() > kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables are supported");
  if (m > vars.size()) throw std::invalid_argument("more integration variables than variables");
  std::vector<std::string> all = vars;
  for (const auto& v : vars) all.push_back("d" + v);
  all.insert(all.end(), params.begin(), params.end());
  for (const auto& name : all) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
  }
  std::vector<std::string> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
    throw std::invalid_argument("name collision: '" + *it + "'");
  return std::make_shared<const AlgebraSignature>(AlgebraSignature{std::move(vars), m, std::move(params)});
}

inline bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Exponent vector of x^a d^b h^c, optionally tagged with a free-module
/// position.  Slots: x at [0, kMaxVars), d at [kMaxVars, 2 kMaxVars), h last.
struct Monomial {
  std::uint32_t pos = 0;
  std::array<std::uint16_t, kSlots> e{};

  std::uint16_t x(std::size_t i) const { return e[i]; }
  std::uint16_t d(std::size_t i) const { return e[kDerivSlot + i]; }
  std::uint16_t h() const { return e[kHomogSlot]; }
  std::uint16_t& x(std::size_t i) { return e[i]; }
  std::uint16_t& d(std::size_t i) { return e[kDerivSlot + i]; }
  std::uint16_t& h() { return e[kHomogSlot]; }

  std::uint64_t degree() const {
    std::uint64_t s = 0;
    for (auto v : e) s += v;
    return s;
  }

  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial mono_x(std::size_t i, std::uint16_t k = 1) {
  Monomial m;
  m.x(i) = k;
  return m;
}

inline Monomial mono_d(std::size_t i, std::uint16_t k = 1) {
  Monomial m;
  m.d(i) = k;
  return m;
}

// Commutative exponent arithmetic; positions are not combined.
inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kSlots; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial exponent_sum(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.pos = b.pos;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

inline Monomial exponent_lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.pos = a.pos;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

// b / a, assuming divides(a, b); the result carries position 0.
inline Monomial exponent_quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
  return r;
}

}  // namespace dint
