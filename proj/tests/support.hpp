#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <string>
#include <vector>

#include "dint/dint.hpp"

namespace dint::testing {

using Q = Rational;
using W = WeylElement<Q>;
using WF = WeylElement<FieldElem>;

inline W op(const SignaturePtr& sig, const std::string& s) { return parse_operator<Q>(s, sig); }
inline WF opf(const SignaturePtr& sig, const std::string& s) { return parse_operator<FieldElem>(s, sig); }

inline std::vector<W> ops(const SignaturePtr& sig, std::initializer_list<const char*> srcs) {
  std::vector<W> out;
  for (const char* s : srcs) out.push_back(op(sig, s));
  return out;
}

inline std::vector<WF> opsf(const SignaturePtr& sig, std::initializer_list<const char*> srcs) {
  std::vector<WF> out;
  for (const char* s : srcs) out.push_back(opf(sig, s));
  return out;
}

// Raises a cancel flag once the given time has passed, unless destroyed first.
class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds limit)
      : watcher_([this, limit] {
          std::unique_lock lock(mutex_);
          if (!cv_.wait_for(lock, limit, [this] { return done_; })) stop_ = true;
        }) {}
  ~Deadline() {
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_all();
    watcher_.join();
  }
  CancelToken token() const { return &stop_; }

 private:
  std::atomic<bool> stop_{false};
  std::mutex mutex_;
  std::condition_variable cv_;
  bool done_ = false;
  std::thread watcher_;
};

// Random operator with small integer coefficients.
inline W random_op(std::mt19937& rng, const SignaturePtr& sig, unsigned max_deg, unsigned terms) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, static_cast<int>(max_deg));
  std::uniform_int_distribution<std::size_t> slot(0, 2 * sig->n() - 1);
  W a(sig);
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      const auto s = slot(rng);
      if (s < sig->n()) ++m.x(s);
      else ++m.d(s - sig->n());
    }
    a.add_term(m, Q(coef(rng)));
  }
  return a;
}

inline MPoly<Q> random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, unsigned terms) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, static_cast<int>(max_deg));
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  MPoly<Q> p;
  for (unsigned k = 0; k < terms; ++k) {
    Exponents e(nvars, 0);
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) ++e[var(rng)];
    p += MPoly<Q>::monomial(e, Q(coef(rng)));
  }
  return p;
}

// Same ideal up to a nonzero scalar: compares generator sets by mutual membership.
template <Field K>
bool same_ideal(const std::vector<WeylElement<K>>& a, const std::vector<WeylElement<K>>& b) {
  return ideal_equal(a, b);
}

// a == c*b for some nonzero rational c.
inline bool proportional(const W& a, const W& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto [ma, ca] = a.leading();
  const auto [mb, cb] = b.leading();
  if (!(ma == mb)) return false;
  return a == b.scaled(ca / cb);
}

using ME = FreeModuleElement<Q>;
using Pos = ModuleOrder::Position;


inline ME module_times(const W& a, const ME& v) {
  ME out{v.signature, {}};
  for (const auto& [p, c] : v.components) out.add(p, a * c);
  return out;
}

inline ME module_sum(const ME& a, const ME& b) {
  ME out = a;
  for (const auto& [p, c] : b.components) out.add(p, c);
  return out;
}

inline bool module_equal(const ME& a, const ME& b) {
  ME d = a;
  for (const auto& [p, c] : b.components) d.add(p, -c);
  return d.is_zero();
}

// Degree-bounded oracle for (sum D*g_k) intersected with the origin component:
// span all monomial multiples up to total degree `bound`, then row-reduce with the
// non-origin coordinates eliminated first.
inline std::vector<W> elimination_oracle(const std::vector<ME>& gens, unsigned bound) {
  const auto& sig = gens.front().signature;
  using Key = std::pair<Pos, Monomial>;
  auto key_less = [](const Key& a, const Key& b) {
    const bool ao = std::all_of(a.first.begin(), a.first.end(), [](auto v) { return v == 0; });
    const bool bo = std::all_of(b.first.begin(), b.first.end(), [](auto v) { return v == 0; });
    if (ao != bo) return bo;  // non-origin coordinates first
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  };
  using Row = std::map<Key, Q, decltype(key_less)>;
  std::vector<Row> rows;
  const std::size_t n = sig->n();
  std::vector<Monomial> multipliers{Monomial{}};
  for (unsigned d = 1; d <= bound; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : multipliers) {
      if (m.degree() != d - 1) continue;
      for (std::size_t i = 0; i < n; ++i) {
        Monomial a = m;
        ++a.x(i);
        next.push_back(a);
        Monomial b = m;
        ++b.d(i);
        next.push_back(b);
      }
    }
    multipliers.insert(multipliers.end(), next.begin(), next.end());
  }
  std::sort(multipliers.begin(), multipliers.end());
  multipliers.erase(std::unique(multipliers.begin(), multipliers.end()), multipliers.end());
  for (const auto& g : gens)
    for (const auto& m : multipliers) {
      const ME v = module_times(W::monomial(sig, m, Q(1)), g);
      Row r(key_less);
      for (const auto& [p, c] : v.components)
        for (const auto& [mono, q] : c.terms()) r[{p, mono}] = q;
      if (!r.empty()) rows.push_back(std::move(r));
    }
  // Gaussian elimination with the smallest key as pivot. Each stored row lacks the
  // pivots of the rows before it, so one ordered pass fully reduces a new row.
  std::vector<Row> echelon;
  for (auto r : rows) {
    for (const auto& e : echelon) {
      const auto& pivot = *e.begin();
      auto it = r.find(pivot.first);
      if (it == r.end()) continue;
      const Q f = it->second / pivot.second;
      for (const auto& [k, q] : e) {
        Q& slot = r[k];
        slot -= f * q;
        if (slot == 0) r.erase(k);
      }
    }
    if (!r.empty()) echelon.push_back(std::move(r));
  }
  std::vector<W> out;
  for (const auto& r : echelon) {
    if (r.empty()) continue;
    const auto& lead = r.begin()->first.first;
    if (std::any_of(lead.begin(), lead.end(), [](auto v) { return v != 0; })) continue;
    W a(sig);
    for (const auto& [k, q] : r) a.add_term(k.second, q);
    out.push_back(a);
  }
  return out;
}

}  // namespace dint::testing
