#include <gtest/gtest.h>

#include "support.hpp"

using namespace dint;
using namespace dint::testing;

namespace {

const SignaturePtr kTX = make_signature({"t", "x"}, 1);
const std::vector<long> kW{1};

PipelineOptions with_inhomo() {
  PipelineOptions o;
  o.inhomo = true;
  return o;
}

// g_j - sum_i d_i p_ij, built directly from the result.
template <Field K>
WeylElement<K> residual(const IntegrationResult<K>& r, std::size_t j) {
  WeylElement<K> c = r.generators[j];
  for (const auto& [i, p] : r.inhomo[j]) c -= WeylElement<K>::d(r.signature, i) * p;
  return c;
}

}  // namespace

TEST(ExpAnnihilator, Examples) {
  const auto g = parse_polynomial<Q>("-t-x*t^3", kTX);
  const auto ann = exp_annihilator(g, kTX);
  ASSERT_EQ(ann.size(), 2u);
  EXPECT_EQ(ann[0], op(kTX, "dt+1+3*x*t^2"));
  EXPECT_EQ(ann[1], op(kTX, "dx+t^3"));
  const auto ann2 = exp_annihilator(parse_polynomial<Q>("(-t^3+t)*x", kTX), kTX);
  EXPECT_EQ(ann2[0], op(kTX, "dt-(-3*t^2+1)*x"));
  EXPECT_EQ(ann2[1], op(kTX, "dx-(-t^3+t)"));
  const auto ann0 = exp_annihilator(MPoly<Q>(), kTX);
  EXPECT_EQ(ann0[0], op(kTX, "dt"));
  EXPECT_EQ(ann0[1], op(kTX, "dx"));
}

TEST(Integration, ExpCubicMatchesKnownOperator) {
  const auto I = ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  ASSERT_TRUE(r.bf);
  EXPECT_EQ(r.bf->to_string(), "s");
  EXPECT_EQ(*r.bf->s0, 0);
  EXPECT_EQ(r.basis_size, 1u);
  ASSERT_EQ(r.generators.size(), 1u);
  EXPECT_EQ(r.generators[0], op(kTX, "27*x^3*dx^2+54*x^2*dx+6*x+1"));
  ASSERT_EQ(r.inhomo[0].size(), 1u);
  EXPECT_EQ(r.inhomo[0][0].first, 0u);
  EXPECT_EQ(r.inhomo[0][0].second, op(kTX, "-dt^2-3*dt-3"));
  EXPECT_TRUE(verify_inhomo(r, I));
  // Functional check, independent of any Groebner basis.
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  EXPECT_TRUE(apply(residual(r, 0), f).is_zero());
}

TEST(Integration, TamperedPartFailsVerification) {
  const auto I = ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"});
  auto r = integration_ideal(I, kW, with_inhomo());
  r.inhomo[0][0].second += op(kTX, "1");
  EXPECT_FALSE(verify_inhomo(r, I));
}

TEST(Integration, IncompleteBetaGivesGaussOperator) {
  const auto s = make_signature({"t", "x"}, 1, {"a", "b", "c"});
  const auto I = opsf(s, {"(-x^2+x)*dx^2+((-t+1)*dt+(-a-b-1)*x+c-1)*dx-b*a", "(-t+1)*x*dx+(t^2-t)*dt+(-c+2)*t+b-1",
                          "(t*x-1)*dx+a*t"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  ASSERT_EQ(r.generators.size(), 1u);
  EXPECT_TRUE(ideal_equal(r.generators, opsf(s, {"(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a"})));
  EXPECT_EQ(r.assumptions, (std::vector<std::string>{"a-c+1 is not a non-negative integer"}));
  EXPECT_TRUE(verify_inhomo(r, I));
  // Pairing the Gauss operator with the part (t-1)*dx also certifies.
  const WF P = opf(s, "(-x^2+x)*dx^2+((-a-b-1)*x+c)*dx-b*a");
  EXPECT_TRUE(is_member(P - opf(s, "dt") * opf(s, "(t-1)*dx"), I));
}

TEST(Integration, CubicExponential) {
  const auto I = exp_annihilator(parse_polynomial<Q>("(-t^3+t)*x", kTX), kTX);
  const auto r = integration_ideal(I, kW, with_inhomo());
  EXPECT_EQ(*r.bf->s0, 2);
  EXPECT_EQ(r.basis_size, 3u);
  EXPECT_TRUE(ideal_equal(r.generators, ops(kTX, {"-27*x^2*dx^2-27*x*dx+4*x^2+3"})));
  EXPECT_TRUE(verify_inhomo(r, I));
  const auto f = parse_integrand<Q>("exp((-t^3+t)*x)", kTX);
  for (std::size_t j = 0; j < r.generators.size(); ++j) EXPECT_TRUE(apply(residual(r, j), f).is_zero());
}

TEST(Integration, GaussianIsConstantInX) {
  const auto r = integration_ideal(ops(kTX, {"dt+2*t", "dx"}), kW);
  ASSERT_FALSE(r.zero_ideal);
  EXPECT_TRUE(ideal_equal(r.generators, ops(kTX, {"dx"})));
}

TEST(Integration, ExponentialDecayTakesZeroPath) {
  // 1 = (dt+1) - dt lies in I + dt*D, so the integration module vanishes.
  const auto r = integration_ideal(ops(kTX, {"dt+1", "dx"}), kW);
  ASSERT_TRUE(r.bf);
  EXPECT_FALSE(r.bf->s0);
  EXPECT_TRUE(r.zero_ideal);
  EXPECT_TRUE(r.generators.empty());
}

TEST(Integration, NoIntegrationVariablesReturnsInput) {
  const auto s = make_signature({"x"}, 0);
  const std::vector<long> none;
  const auto I = ops(s, {"dx-1"});
  const auto r = integration_ideal(I, none);
  EXPECT_EQ(r.generators, I);
  EXPECT_FALSE(r.bf);
}

TEST(Integration, AllVariablesIntegrated) {
  const auto s = make_signature({"t"}, 1);
  const auto r = integration_ideal(ops(s, {"dt+2*t"}), kW, with_inhomo());
  ASSERT_FALSE(r.zero_ideal);
  // D' = K and the integral is a nonzero constant: no relation survives.
  EXPECT_TRUE(r.generators.empty());
  EXPECT_EQ(r.basis_size, 1u);
}

TEST(Integration, GeneratorsLiveInSubring) {
  const auto s = make_signature({"t", "x", "y"}, 1);
  const auto I = ops(s, {"dx-t*dy", "dt-(x+10*t^9)*dy", "t*dt+9*x*dx+10*y*dy+10"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  EXPECT_EQ(*r.bf->s0, 9);
  EXPECT_EQ(r.basis_size, 10u);
  for (const auto& g : r.generators) {
    for (const auto& [m, c] : g.terms()) {
      EXPECT_EQ(m.x(0), 0);
      EXPECT_EQ(m.d(0), 0);
    }
  }
  EXPECT_TRUE(verify_inhomo(r, I));
  EXPECT_TRUE(ideal_equal(r.generators, ops(s, {"9*x*dx+10*y*dy+9", "-10*dx^9-x*dy^9", "-9*dx^10+y*dy^10+9*dy^9"})));
}

TEST(Integration, RandomExponentialsAreCertified) {
  std::mt19937 rng(61);
  int done = 0;
  for (int k = 0; done < 12; ++k) {
    auto g = random_poly(rng, 2, 3, 3);
    if (g.degree(0) < 2) continue;  // keep t essential so the integral is non-trivial
    const auto I = exp_annihilator(g, kTX);
    const auto r = integration_ideal(I, kW, with_inhomo());
    if (r.zero_ideal) continue;
    const HyperexpFunction<Q> f = HyperexpFunction<Q>::exp(g);
    ASSERT_TRUE(verify_inhomo(r, I)) << g.to_string(std::vector<std::string>{"t", "x"});
    for (std::size_t j = 0; j < r.generators.size(); ++j) ASSERT_TRUE(apply(residual(r, j), f).is_zero());
    ++done;
  }
}

TEST(Restriction, ExponentialProductAtOrigin) {
  const std::vector<Q> point{Q(0)};
  const auto r = restriction_ideal(ops(kTX, {"dt-x", "dx-t"}), kW, point);
  EXPECT_TRUE(ideal_equal(r.generators, ops(kTX, {"dx"})));
}

TEST(Restriction, ConstantRestrictsToConstant) {
  const auto s = make_signature({"t"}, 1);
  const std::vector<Q> point{Q(5)};
  const auto r = restriction_ideal(ops(s, {"dt"}), kW, point);
  EXPECT_FALSE(r.zero_ideal);
  EXPECT_TRUE(r.generators.empty());
  EXPECT_EQ(r.basis_size, 1u);
}

TEST(Restriction, TranslationProperty) {
  const auto I = ops(kTX, {"dt-x", "dx-t"});
  const std::vector<Q> at3{Q(3)}, at0{Q(0)};
  std::vector<W> shifted;
  for (const auto& g : I) shifted.push_back(translate(g, 0, Q(3)));
  const auto a = restriction_ideal(I, kW, at3), b = restriction_ideal(shifted, kW, at0);
  EXPECT_TRUE(ideal_equal(a.generators, b.generators));
  // f(3, x) = exp(3x)
  EXPECT_TRUE(ideal_equal(a.generators, ops(kTX, {"dx-3"})));
}

TEST(Boundary, ExpCubicEvaluatesToOne) {
  const auto I = ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  const std::vector<Limits<Q>> lim{{Endpoint<Q>::at(Q(0)), Endpoint<Q>::infinity(true, true)}};
  const auto rep = boundary_report(r, std::optional(f), lim);
  ASSERT_EQ(rep.lines.size(), 1u);
  ASSERT_TRUE(rep.lines[0].value);
  EXPECT_EQ(*rep.lines[0].value, HyperexpFunction<Q>::constant(Q(1)));
}

TEST(Boundary, NoDecayStaysSymbolic) {
  const auto I = ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  const std::vector<Limits<Q>> lim{{Endpoint<Q>::at(Q(0)), Endpoint<Q>::infinity(true, false)}};
  const auto rep = boundary_report(r, std::optional(f), lim);
  EXPECT_FALSE(rep.lines[0].value);
  EXPECT_NE(rep.lines[0].text.find("inf"), std::string::npos);
}

TEST(Boundary, FiniteLimits) {
  // P*int_0^1 f = [p*f]_0^1. The endpoint values carry exp(-1-x) and exp(0), so the
  // difference is reported exactly but not merged into one closed form.
  const auto I = ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  const std::vector<Limits<Q>> lim{{Endpoint<Q>::at(Q(0)), Endpoint<Q>::at(Q(1))}};
  const auto rep = boundary_report(r, std::optional(f), lim);
  EXPECT_FALSE(rep.lines[0].value);
  const auto p = apply(r.inhomo[0][0].second, f);
  const std::vector<std::string> xs{"t", "x"};
  const std::string& text = rep.lines[0].terms[0].expression;
  EXPECT_NE(text.find(p.substitute(0, Q(1)).to_string(xs, {})), std::string::npos) << text;
  EXPECT_NE(text.find("- (" + p.substitute(0, Q(0)).to_string(xs, {}) + ")"), std::string::npos) << text;
}

TEST(Boundary, SymbolicIntegrand) {
  const auto s = make_signature({"t", "x"}, 1, {"a", "b", "c"});
  const auto I = opsf(s, {"(-x^2+x)*dx^2+((-t+1)*dt+(-a-b-1)*x+c-1)*dx-b*a", "(-t+1)*x*dx+(t^2-t)*dt+(-c+2)*t+b-1",
                          "(t*x-1)*dx+a*t"});
  const auto r = integration_ideal(I, kW, with_inhomo());
  const std::vector<Limits<FieldElem>> lim{{Endpoint<FieldElem>::symbol("p"), Endpoint<FieldElem>::symbol("q")}};
  const auto rep = boundary_report(r, std::optional<HyperexpFunction<FieldElem>>{}, lim);
  ASSERT_EQ(rep.lines.size(), 1u);
  EXPECT_FALSE(rep.lines[0].value);
  EXPECT_NE(rep.lines[0].text.find("_{t=p}^{t=q}"), std::string::npos) << rep.lines[0].text;
}

TEST(Boundary, RequiresInhomogeneousParts) {
  const auto r = integration_ideal(ops(kTX, {"dt+1+3*x*t^2", "dx+t^3"}), kW);
  const std::vector<Limits<Q>> lim{{Endpoint<Q>::at(Q(0)), Endpoint<Q>::at(Q(1))}};
  EXPECT_THROW(boundary_report(r, std::optional<HyperexpFunction<Q>>{}, lim), std::invalid_argument);
}
