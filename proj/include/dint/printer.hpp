#pragma once

// Recursive printing in the style of Risa/Asir output: the most
// significant indeterminate is factored out last, e.g.
// "(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a".
//
// Significance: derivatives, then variables, then parameters; inside each
// class names follow a fixed alphabet (x y z u v w p q r s t a b c ...).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dint/bfunction.hpp"
#include "dint/coeff.hpp"
#include "dint/weyl.hpp"

namespace dint {

namespace detail {

inline std::size_t name_rank(const std::string& name) {
  static const std::string order = "xyzuvwpqrstabcdefghijklmno";
  if (name.size() == 1) {
    const auto k = order.find(name[0]);
    if (k != std::string::npos) return k;
  }
  return order.size();
}

struct RecTerm {
  std::vector<std::uint32_t> e;  // exponent per atom, most significant first
  Rational c;
};

inline std::size_t count_groups(const std::vector<RecTerm>& terms) {
  for (std::size_t a = 0; !terms.empty() && a < terms.front().e.size(); ++a) {
    std::vector<std::uint32_t> seen;
    for (const auto& t : terms) seen.push_back(t.e[a]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    if (seen.size() > 1 || seen.front() != 0) return seen.size();
  }
  return 1;
}

inline void append_sum(std::string& out, const std::string& term) {
  if (out.empty()) out = term;
  else if (!term.empty() && term.front() == '-') out += term;
  else out += "+" + term;
}

inline std::string print_rec(const std::vector<RecTerm>& terms, const std::vector<std::string>& atoms) {
  std::size_t main = atoms.size();
  for (std::size_t a = 0; a < atoms.size() && main == atoms.size(); ++a)
    for (const auto& t : terms)
      if (t.e[a]) {
        main = a;
        break;
      }
  if (main == atoms.size()) {
    Rational s = 0;
    for (const auto& t : terms) s += t.c;
    return s.get_str();
  }
  std::map<std::uint32_t, std::vector<RecTerm>, std::greater<>> groups;
  for (auto t : terms) {
    const auto k = t.e[main];
    t.e[main] = 0;
    groups[k].push_back(std::move(t));
  }
  std::string out;
  for (const auto& [k, sub] : groups) {
    const std::string c = print_rec(sub, atoms);
    if (k == 0) {
      append_sum(out, c);
      continue;
    }
    const std::string mono = power_string(atoms[main], k);
    if (c == "1") append_sum(out, mono);
    else if (c == "-1") append_sum(out, "-" + mono);
    else append_sum(out, (count_groups(sub) >= 2 ? "(" + c + ")" : c) + "*" + mono);
  }
  return out;
}

}  // namespace detail

/// Asir-style rendering of an operator.
template <Field K>
std::string asir_string(const WeylElement<K>& a) {
  if (a.is_zero()) return "0";
  const auto& sig = a.signature();
  const std::size_t n = sig->n(), p = sig->params.size();
  // Slot layout: x_0..x_{n-1}, d_0..d_{n-1}, params.
  std::vector<std::string> slot_names;
  for (std::size_t i = 0; i < n; ++i) slot_names.push_back(sig->vars[i]);
  for (std::size_t i = 0; i < n; ++i) slot_names.push_back(sig->derivative_name(i));
  for (const auto& q : sig->params) slot_names.push_back(q);
  std::vector<std::size_t> slots(slot_names.size());
  for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = k;
  auto cls = [&](std::size_t k) { return k < n ? 1 : k < 2 * n ? 0 : 2; };
  auto base = [&](std::size_t k) { return k < n ? sig->vars[k] : k < 2 * n ? sig->vars[k - n] : slot_names[k]; };
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t u, std::size_t v) {
    if (cls(u) != cls(v)) return cls(u) < cls(v);
    return detail::name_rank(base(u)) < detail::name_rank(base(v));
  });
  std::vector<std::string> atoms;
  std::vector<std::size_t> where(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    atoms.push_back(slot_names[slots[k]]);
    where[slots[k]] = k;
  }

  // Common denominator for coefficients that are not polynomials.
  ParamPoly den = ParamPoly::constant(Rational(1));
  for (const auto& [m, c] : a.terms()) {
    const FieldElem f = field_ops<K>::to_field_elem(c);
    if (!f.den().is_one()) den = divide_exact(den * f.den(), poly_gcd(den, f.den()));
  }
  std::vector<detail::RecTerm> terms;
  for (const auto& [m, c] : a.terms()) {
    const FieldElem f = field_ops<K>::to_field_elem(c);
    const ParamPoly num = f.den().is_one() ? f.num() * den : f.num() * divide_exact(den, f.den());
    for (const auto& [pe, q] : num.terms()) {
      detail::RecTerm t{std::vector<std::uint32_t>(atoms.size(), 0), q};
      for (std::size_t i = 0; i < n; ++i) {
        t.e[where[i]] = m.x(i);
        t.e[where[n + i]] = m.d(i);
      }
      for (std::size_t j = 0; j < p; ++j) t.e[where[2 * n + j]] = detail::exp_at(pe, j);
      terms.push_back(std::move(t));
    }
  }
  std::string s = detail::print_rec(terms, atoms);
  if (!den.is_one()) s = "(" + s + ")/(" + den.to_string(sig->params) + ")";
  return s;
}

/// "[[1,1],[s,1],[s-9,1]]"
inline std::string asir_factor_list(const BFunction& bf) {
  std::string s = "[[1,1]";
  for (std::size_t k = 0; k < bf.factors.size(); ++k)
    s += ",[" + bf.factor_string(k) + "," + std::to_string(bf.factors[k].second) + "]";
  return s + "]";
}

}  // namespace dint
