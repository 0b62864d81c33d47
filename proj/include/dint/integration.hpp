#pragma once

// Integration and restriction ideals with inhomogeneous parts, the
// exponential annihilator, and boundary terms for definite integrals.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dint/bfunction.hpp"
#include "dint/groebner.hpp"
#include "dint/hyperexp.hpp"
#include "dint/weyl.hpp"

namespace dint {

struct PipelineOptions {
  TieBreak tie_break = TieBreak::grevlex;
  bool inhomo = false;
  CancelToken cancel = nullptr;
  // Called after each stage with its label and wall time in seconds.
  std::function<void(std::string_view, double)> on_stage;
};

template <Field K>
struct IntegrationResult {
  SignaturePtr signature;
  std::vector<WeylElement<K>> generators;
  // inhomo[j] lists (i, p_ij) for i = 0..m-1.
  std::vector<std::vector<std::pair<std::size_t, WeylElement<K>>>> inhomo;
  std::optional<BFunction> bf;
  std::size_t basis_size = 0;
  std::vector<std::string> assumptions;
  bool zero_ideal = false;
  bool has_inhomo = false;
};

namespace detail {

class StageTimer {
 public:
  explicit StageTimer(const PipelineOptions& opt) : opt_(opt), start_(std::chrono::steady_clock::now()) {}
  void done(std::string_view label) {
    const auto now = std::chrono::steady_clock::now();
    if (opt_.on_stage) opt_.on_stage(label, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  const PipelineOptions& opt_;
  std::chrono::steady_clock::time_point start_;
};

using Multi = std::vector<std::uint32_t>;

// All alpha in N^m with sum w_i alpha_i <= bound, in lex order.
inline std::vector<Multi> weight_box(std::span<const long> w, long bound) {
  std::vector<Multi> out;
  if (bound < 0) return out;
  Multi a(w.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == w.size()) {
      out.push_back(a);
      return;
    }
    for (long k = 0; k * w[i] <= left; ++k) {
      a[i] = static_cast<std::uint32_t>(k);
      rec(i + 1, left - k * w[i]);
    }
    a[i] = 0;
  };
  rec(0, bound);
  return out;
}

inline long weight_dot(std::span<const long> w, const Multi& a) {
  long s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * static_cast<long>(a[i]);
  return s;
}

template <Field K>
void validate_weight(const SignaturePtr& sig, std::span<const long> w) {
  if (w.size() != sig->m) throw std::invalid_argument("weight vector must have one entry per integration variable");
  for (long v : w)
    if (v < 1) throw std::invalid_argument("weights must be positive integers");
}

// Restriction-module pipeline shared by integration and restriction.  With
// `fourier_side`, ideal is F(I) and inhomogeneous parts are recovered.
template <Field K>
IntegrationResult<K> restriction_pipeline(const std::vector<WeylElement<K>>& ideal, const SignaturePtr& sig,
                                          std::span<const long> w, bool fourier_side, const PipelineOptions& opt) {
  IntegrationResult<K> res;
  res.signature = sig;
  const std::size_t m = sig->m;
  const auto wf = full_weight(w, sig->n());
  StageTimer timer(opt);

  const auto G = buchberger(ideal, TermOrder::weyl_weight(wf, opt.tie_break), false, opt.cancel);
  timer.done("weyl_gr");
  BFunction bf = generic_bfunction_from_gb(G.basis, w, sig, opt.tie_break, opt.cancel);
  timer.done("generic_bfct");
  res.assumptions = bf.assumptions;
  res.bf = bf;
  if (!bf.s0) {
    res.zero_ideal = true;
    res.has_inhomo = opt.inhomo && fourier_side;
    return res;
  }
  if (*bf.s0 > 100000) throw ComputationError("s0 is too large to enumerate the restriction basis");
  const long s0 = bf.s0->get_si();
  const auto positions = weight_box(w, s0);
  res.basis_size = positions.size();

  // Module generators and, on the Fourier side, the parts U_{k,i}.
  std::vector<FreeModuleElement<K>> gens;
  std::vector<std::vector<WeylElement<K>>> parts;  // parts[k][i]
  for (const auto& h : G.basis) {
    if (h.is_zero()) continue;
    const long mi = w_order(h, wf);
    for (const auto& beta : weight_box(w, s0 - mi)) {
      if (opt.cancel && opt.cancel->load()) throw Cancelled();
      Monomial db;
      for (std::size_t i = 0; i < m; ++i) db.d(i) = static_cast<std::uint16_t>(beta[i]);
      const WeylElement<K> ht = WeylElement<K>::monomial(sig, db, coeff_traits<K>::one()) * h;
      FreeModuleElement<K> v;
      v.signature = sig;
      std::vector<WeylElement<K>> tails(m, WeylElement<K>(sig));
      std::map<Multi, WeylElement<K>> comps;
      for (const auto& [mono, c] : ht.terms()) {
        std::size_t first_x = m;
        for (std::size_t i = 0; i < m && first_x == m; ++i)
          if (mono.x(i)) first_x = i;
        if (first_x < m) {
          Monomial rest = mono;
          --rest.x(first_x);
          tails[first_x].add_term(rest, c);
          continue;
        }
        Multi alpha(m);
        Monomial rest = mono;
        unsigned total = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha[i] = mono.d(i);
          total += mono.d(i);
          rest.d(i) = 0;
        }
        if (weight_dot(w, alpha) > s0) throw std::logic_error("restricted operator leaves the basis B_{s0}");
        const bool negate = fourier_side && total % 2 == 1;
        auto [it, inserted] = comps.try_emplace(alpha, WeylElement<K>(sig));
        it->second.add_term(rest, negate ? K(-c) : c);
      }
      for (auto& [alpha, a] : comps) v.add(alpha, a);
      if (v.is_zero()) continue;
      gens.push_back(std::move(v));
      if (fourier_side && opt.inhomo) {
        std::vector<WeylElement<K>> u(m);
        for (std::size_t i = 0; i < m; ++i) u[i] = -fourier(tails[i], FourierDirection::inverse);
        parts.push_back(std::move(u));
      }
    }
  }
  timer.done("fctr(BF) + base");

  std::vector<Multi> pos_list = positions;
  ModuleOrder order(TermOrder::graded(opt.tie_break), pos_list, w);
  const bool track = fourier_side && opt.inhomo;
  const auto M = module_buchberger(gens, order, track, opt.cancel);
  res.has_inhomo = track;
  for (std::size_t j = 0; j < M.basis.size(); ++j) {
    const auto& v = M.basis[j];
    if (!v.supported_on_origin()) continue;
    WeylElement<K> g = v.component(Multi(m, 0));
    std::vector<std::pair<std::size_t, WeylElement<K>>> row;
    if (track) {
      for (std::size_t i = 0; i < m; ++i) {
        WeylElement<K> p(sig);
        for (std::size_t k = 0; k < gens.size(); ++k)
          if (!M.transform[j][k].is_zero() && !parts[k][i].is_zero()) p += M.transform[j][k] * parts[k][i];
        row.emplace_back(i, std::move(p));
      }
    }
    // Content-free generator with positive leading rational; p_ij follow.
    const auto sorted = g.sorted_terms(TermOrder::graded(opt.tie_break));
    const K f = field_ops<K>::primitive_factor(sorted, [](const auto& t) -> const K& { return t.second; });
    g = g.scaled(f);
    for (auto& [i, p] : row) p = p.scaled(f);
    res.generators.push_back(std::move(g));
    if (track) res.inhomo.push_back(std::move(row));
  }
  timer.done("integration_ideal_internal");
  return res;
}

}  // namespace detail

/// Generators of (I + d_1 D + ... + d_m D) intersected with D', optionally
/// with parts p_ij such that g_j - sum_i d_i p_ij lies in I.
template <Field K>
IntegrationResult<K> integration_ideal(const std::vector<WeylElement<K>>& gens, std::span<const long> w,
                                       const PipelineOptions& opt = {}) {
  const SignaturePtr sig = detail::common_signature(gens);
  if (!sig) throw std::invalid_argument("integration_ideal needs at least one nonzero generator");
  if (sig->m == 0) {
    IntegrationResult<K> res;
    res.signature = sig;
    for (const auto& g : gens)
      if (!g.is_zero()) res.generators.push_back(g);
    res.has_inhomo = opt.inhomo;
    res.inhomo.assign(res.generators.size(), {});
    return res;
  }
  detail::validate_weight<K>(sig, w);
  std::vector<WeylElement<K>> fi;
  for (const auto& g : gens) fi.push_back(fourier(g, FourierDirection::forward));
  return detail::restriction_pipeline(fi, sig, w, true, opt);
}

/// Generators of the restriction of I to x_i = point[i] (i < m).
template <Field K>
IntegrationResult<K> restriction_ideal(const std::vector<WeylElement<K>>& gens, std::span<const long> w,
                                       const std::vector<K>& point, const PipelineOptions& opt = {}) {
  const SignaturePtr sig = detail::common_signature(gens);
  if (!sig) throw std::invalid_argument("restriction_ideal needs at least one nonzero generator");
  if (sig->m == 0) return integration_ideal(gens, w, opt);
  detail::validate_weight<K>(sig, w);
  if (point.size() != sig->m) throw std::invalid_argument("restriction point must assign every restricted variable");
  std::vector<WeylElement<K>> moved;
  for (auto g : gens) {
    for (std::size_t i = 0; i < sig->m; ++i)
      if (!coeff_traits<K>::is_zero(point[i])) g = translate(g, i, point[i]);
    moved.push_back(std::move(g));
  }
  PipelineOptions o = opt;
  o.inhomo = false;
  return detail::restriction_pipeline(moved, sig, w, false, o);
}

/// {d_i - dg/dx_i}: the annihilator of exp(g).
template <Field K>
std::vector<WeylElement<K>> exp_annihilator(const MPoly<K>& g, const SignaturePtr& sig) {
  std::vector<WeylElement<K>> out;
  for (std::size_t i = 0; i < sig->n(); ++i)
    out.push_back(WeylElement<K>::d(sig, i) - from_commutative(g.derivative(i), sig));
  return out;
}

/// g_j - sum_i d_i p_ij for generator j.
template <Field K>
WeylElement<K> certificate(const IntegrationResult<K>& r, std::size_t j) {
  WeylElement<K> c = r.generators.at(j);
  if (j < r.inhomo.size())
    for (const auto& [i, p] : r.inhomo[j]) c -= WeylElement<K>::d(r.signature, i) * p;
  return c;
}

/// Every g_j - sum_i d_i p_ij reduces to zero modulo a Groebner basis of I.
template <Field K>
bool verify_inhomo(const IntegrationResult<K>& r, const std::vector<WeylElement<K>>& gens,
                   TieBreak tb = TieBreak::grevlex, CancelToken cancel = nullptr) {
  if (!r.has_inhomo) return false;
  const auto G = buchberger(gens, TermOrder::graded(tb), false, cancel);
  for (std::size_t j = 0; j < r.generators.size(); ++j)
    if (!reduces_to_zero(certificate(r, j), G, cancel)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Boundary terms.

template <Field K>
struct Endpoint {
  enum class Kind { finite, plus_infinity, minus_infinity, symbolic };
  Kind kind = Kind::finite;
  K value{};
  std::string name;  // for symbolic endpoints
  bool decays = false;  // the integrand terms vanish here (infinite endpoints)

  static Endpoint at(const K& v) { return {Kind::finite, v, {}, false}; }
  static Endpoint infinity(bool positive, bool decays) {
    return {positive ? Kind::plus_infinity : Kind::minus_infinity, K{}, {}, decays};
  }
  static Endpoint symbol(std::string n) { return {Kind::symbolic, K{}, std::move(n), false}; }

  std::string label(std::span<const std::string> params) const {
    switch (kind) {
      case Kind::finite: return coeff_traits<K>::to_string(value, params);
      case Kind::plus_infinity: return "inf";
      case Kind::minus_infinity: return "-inf";
      case Kind::symbolic: return name;
    }
    return {};
  }
};

template <Field K>
struct Limits {
  Endpoint<K> lower, upper;
};

template <Field K>
struct BoundaryTerm {
  std::size_t var = 0;
  std::string expression;                  // [p_i . f] between the limits
  std::optional<HyperexpFunction<K>> value;  // upper minus lower, when evaluable
};

template <Field K>
struct BoundaryLine {
  std::string lhs;
  std::vector<BoundaryTerm<K>> terms;
  std::optional<HyperexpFunction<K>> value;
  std::string text;
};

template <Field K>
struct BoundaryReport {
  std::vector<BoundaryLine<K>> lines;
  bool zero_ideal = false;
};

namespace detail {

template <Field K>
std::optional<HyperexpFunction<K>> evaluate_at(const HyperexpFunction<K>& q, std::size_t var, const Endpoint<K>& e) {
  using Kind = typename Endpoint<K>::Kind;
  if (e.kind == Kind::finite) {
    try {
      return q.substitute(var, e.value);
    } catch (const ArithmeticError&) {
      return std::nullopt;
    }
  }
  if ((e.kind == Kind::plus_infinity || e.kind == Kind::minus_infinity) && e.decays) return HyperexpFunction<K>();
  return std::nullopt;
}

}  // namespace detail

/// For each generator g_j: g_j . A = sum_i [p_ij . f] between the limits of x_i.
/// Without an integrand (f = nullopt) the terms stay unevaluated.
template <Field K>
BoundaryReport<K> boundary_report(const IntegrationResult<K>& r, const std::optional<HyperexpFunction<K>>& f,
                                  const std::vector<Limits<K>>& limits) {
  if (!r.has_inhomo) throw std::invalid_argument("boundary_report needs inhomogeneous parts");
  const auto& sig = r.signature;
  if (limits.size() != sig->m) throw std::invalid_argument("one pair of limits per integration variable is required");
  BoundaryReport<K> rep;
  rep.zero_ideal = r.zero_ideal;
  const std::vector<std::string> xs(sig->vars.begin(), sig->vars.end());
  for (std::size_t j = 0; j < r.generators.size(); ++j) {
    BoundaryLine<K> line;
    line.lhs = "(" + r.generators[j].to_string() + ")*A";
    bool all_known = true;
    HyperexpFunction<K> total;
    for (const auto& [i, p] : r.inhomo[j]) {
      BoundaryTerm<K> term;
      term.var = i;
      const auto& lim = limits[i];
      const std::string& v = sig->vars[i];
      std::string others;
      for (std::size_t k = 0; k < sig->m; ++k)
        if (k != i) others += " d" + sig->vars[k];
      std::optional<HyperexpFunction<K>> q;
      if (f) q = apply(p, *f);
      const std::string body =
          q ? q->to_string(xs, sig->params) : "(" + p.to_string() + ")*f";
      term.expression = "[" + body + "]_{" + v + "=" + lim.lower.label(sig->params) + "}^{" + v + "=" +
                        lim.upper.label(sig->params) + "}";
      if (!others.empty()) term.expression = "int (" + term.expression + ")" + others;
      if (q) {
        const auto up = detail::evaluate_at(*q, i, lim.upper);
        const auto lo = detail::evaluate_at(*q, i, lim.lower);
        if (up && lo) {
          try {
            HyperexpFunction<K> val = *up - *lo;
            // Under further integrals only a vanishing term is known in closed form.
            if (others.empty() || val.is_zero()) term.value = val;
          } catch (const NotHyperexponential&) {
            // Endpoint values with different exponential factors: keep the exact difference as text.
            if (others.empty())
              term.expression += " = " + up->to_string(xs, sig->params) + " - (" + lo->to_string(xs, sig->params) + ")";
          }
        }
      }
      if (term.value && all_known) {
        try {
          total = total + *term.value;
        } catch (const NotHyperexponential&) {
          all_known = false;
        }
      } else {
        all_known = false;
      }
      line.terms.push_back(std::move(term));
    }
    std::string rhs;
    for (const auto& t : line.terms) rhs += (rhs.empty() ? "" : " + ") + t.expression;
    if (rhs.empty()) rhs = "0";
    if (all_known) {
      line.value = total;
      rhs += " = " + total.to_string(xs, sig->params);
    }
    line.text = line.lhs + " = " + rhs;
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

}  // namespace dint
