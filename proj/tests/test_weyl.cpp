#include <gtest/gtest.h>

#include "support.hpp"

using namespace dint;
using namespace dint::testing;

namespace {

// Left multiplication by one generator, using only d_i x_i = x_i d_i + 1.
W left_by_x(std::size_t i, const W& b) {
  W out(b.signature());
  for (const auto& [m, c] : b.terms()) {
    Monomial t = m;
    ++t.x(i);
    out.add_term(t, c);
  }
  return out;
}

W left_by_d(std::size_t i, const W& b) {
  W out(b.signature());
  for (const auto& [m, c] : b.terms()) {
    Monomial t = m;
    ++t.d(i);
    out.add_term(t, c);
    if (m.x(i)) {
      Monomial u = m;
      --u.x(i);
      out.add_term(u, c * Q(m.x(i)));
    }
  }
  return out;
}

// a*b by expanding each term of a into generators and applying them right to left.
W brute_product(const W& a, const W& b) {
  W out(a.signature());
  const std::size_t n = a.signature()->n();
  for (const auto& [m, c] : a.terms()) {
    W acc = b.scaled(c);
    for (std::size_t i = n; i-- > 0;)
      for (unsigned k = 0; k < m.d(i); ++k) acc = left_by_d(i, acc);
    for (std::size_t i = n; i-- > 0;)
      for (unsigned k = 0; k < m.x(i); ++k) acc = left_by_x(i, acc);
    out += acc;
  }
  return out;
}

const SignaturePtr kTX = make_signature({"t", "x"}, 1);

}  // namespace

TEST(Multiply, CanonicalCommutator) {
  const auto s = make_signature({"x"}, 1);
  EXPECT_EQ(op(s, "dx") * op(s, "x"), op(s, "x*dx+1"));
}

TEST(Multiply, SecondOrderFormula) {
  const auto s = make_signature({"x"}, 1);
  EXPECT_EQ(op(s, "dx^2") * op(s, "x"), op(s, "x*dx^2+2*dx"));
}

TEST(Multiply, CommutatorMatchesBruteForce) {
  const W A = op(kTX, "dt+1+3*x*t^2"), B = op(kTX, "dx+t^3");
  const W lhs = A * B - B * A;
  EXPECT_EQ(lhs, brute_product(A, B) - brute_product(B, A));
  // [A,B] = 3t^2 - 3t^2 = 0: the generators commute since f = exp(g) is a common solution.
  EXPECT_TRUE(lhs.is_zero());
}

TEST(Multiply, SignatureMismatchThrows) {
  const auto s1 = make_signature({"x"}, 0), s2 = make_signature({"y"}, 0);
  EXPECT_THROW(op(s1, "x") * op(s2, "y"), SignatureMismatch);
  EXPECT_THROW(op(s1, "x") + op(s2, "y"), SignatureMismatch);
}

TEST(Multiply, AgreesWithBruteForceOnRandomPairs) {
  std::mt19937 rng(21);
  const auto s = make_signature({"x", "y", "z"}, 1);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, s, 3, 3), b = random_op(rng, s, 3, 3);
    ASSERT_EQ(a * b, brute_product(a, b));
  }
}

TEST(Multiply, AssociativeAndDistributive) {
  std::mt19937 rng(22);
  const auto s = make_signature({"x", "y", "z"}, 2);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, s, 3, 3), b = random_op(rng, s, 3, 3), c = random_op(rng, s, 3, 3);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(Fourier, ProductOfGenerators) {
  const auto s = make_signature({"x"}, 1);
  EXPECT_EQ(fourier(op(s, "x*dx"), FourierDirection::forward), op(s, "-x*dx-1"));
}

TEST(Fourier, IdentityAboveM) {
  const auto s = make_signature({"x1", "x2"}, 1);
  EXPECT_EQ(fourier(op(s, "x2"), FourierDirection::forward), op(s, "x2"));
  EXPECT_EQ(fourier(op(s, "x1"), FourierDirection::forward), op(s, "-dx1"));
  EXPECT_EQ(fourier(op(s, "dx1"), FourierDirection::forward), op(s, "x1"));
}

TEST(Fourier, OrderFourOnGenerators) {
  const auto s = make_signature({"x1", "x2"}, 2);
  for (const char* g : {"x1", "dx1", "x2", "dx2"}) {
    W a = op(s, g);
    for (int k = 0; k < 4; ++k) a = fourier(a, FourierDirection::forward);
    EXPECT_EQ(a, op(s, g)) << g;
  }
}

TEST(Fourier, HomomorphismAndInverse) {
  std::mt19937 rng(23);
  const auto s = make_signature({"x", "y", "z"}, 2);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, s, 3, 3), b = random_op(rng, s, 3, 3);
    const W fa = fourier(a, FourierDirection::forward), fb = fourier(b, FourierDirection::forward);
    ASSERT_EQ(fourier(a * b, FourierDirection::forward), fa * fb);
    ASSERT_EQ(fourier(fa, FourierDirection::inverse), a);
    ASSERT_EQ(fourier(a * b, FourierDirection::inverse),
              fourier(a, FourierDirection::inverse) * fourier(b, FourierDirection::inverse));
  }
}

TEST(Specialize, DropsTermsWithIntegrationX) {
  const auto s = make_signature({"x1", "x2"}, 1);
  EXPECT_EQ(specialize_to_zero(op(s, "x1*dx1+dx1+x2")), op(s, "dx1+x2"));
  EXPECT_EQ(specialize_to_zero(op(s, "dx1-x2*dx1")), op(s, "dx1-x2*dx1"));
  EXPECT_TRUE(specialize_to_zero(op(s, "x1+x1^2*dx2")).is_zero());
}

TEST(Specialize, SplitsIntoLeftDivisibleRemainder) {
  std::mt19937 rng(24);
  const auto s = make_signature({"x", "y", "z"}, 2);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, s, 3, 4);
    const W z = specialize_to_zero(a), rest = a - z;
    ASSERT_EQ(z + rest, a);
    for (const auto& [m, c] : rest.terms()) ASSERT_TRUE(m.x(0) > 0 || m.x(1) > 0);
    for (const auto& [m, c] : z.terms()) ASSERT_TRUE(m.x(0) == 0 && m.x(1) == 0);
  }
}

TEST(WOrder, Examples) {
  const std::vector<long> w{1, 0};
  EXPECT_EQ(w_order(op(kTX, "dt-x"), w), 1);
  EXPECT_EQ(w_order(op(kTX, "dx-t"), w), 0);
  EXPECT_EQ(w_order(op(kTX, "t*dt"), std::vector<long>{3, 5}), 0);
  EXPECT_THROW(w_order(W(kTX), w), std::invalid_argument);
}

TEST(InitialForm, Examples) {
  const std::vector<long> w{1, 0};
  EXPECT_EQ(initial_form(op(kTX, "dt-x"), w), op(kTX, "dt"));
  EXPECT_EQ(initial_form(op(kTX, "t*dt+x"), w), op(kTX, "t*dt+x"));
  EXPECT_EQ(initial_form(op(kTX, "x*t*dt+dt"), w), op(kTX, "dt"));
}

TEST(InitialForm, SubadditiveAndMultiplicative) {
  std::mt19937 rng(25);
  const auto s = make_signature({"x", "y"}, 2);
  const std::vector<long> w{1, 2, 0, 0};
  int checked = 0;
  while (checked < 200) {
    const W a = random_op(rng, s, 3, 3), b = random_op(rng, s, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    const W ab = a * b;
    const W rhs = initial_form(a, w) * initial_form(b, w);
    ASSERT_FALSE(ab.is_zero());
    ASSERT_LE(w_order(ab, w), w_order(a, w) + w_order(b, w));
    if (!rhs.is_zero()) {
      ASSERT_EQ(w_order(ab, w), w_order(a, w) + w_order(b, w));
      ASSERT_EQ(initial_form(ab, w), rhs);
    }
    ++checked;
  }
}

TEST(Translate, Examples) {
  const auto s = make_signature({"t"}, 1);
  EXPECT_EQ(translate(op(s, "dt-1"), 0, Q(5)), op(s, "dt-1"));
  EXPECT_EQ(translate(op(s, "t*dt"), 0, Q(1)), op(s, "t*dt+dt"));
}

TEST(Translate, InversePairAndHomomorphism) {
  std::mt19937 rng(26);
  const auto s = make_signature({"x", "y"}, 1);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, s, 3, 3), b = random_op(rng, s, 3, 3);
    ASSERT_EQ(translate(translate(a, 0, Q(3, 2)), 0, Q(-3, 2)), a);
    ASSERT_EQ(translate(a * b, 1, Q(2)), translate(a, 1, Q(2)) * translate(b, 1, Q(2)));
  }
}

TEST(Apply, ExpCubicSecondOrderPart) {
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  const auto got = apply(op(kTX, "dt^2+3*dt+3"), f);
  const auto want = parse_integrand<Q>("(-6*x*t+(1+3*x*t^2)^2-3-9*x*t^2+3)*exp(-t-x*t^3)", kTX);
  EXPECT_EQ(got, want);
}

TEST(Apply, IdentityOperator) {
  const auto f = parse_integrand<Q>("x/(t+1)*exp(t*x)", kTX);
  EXPECT_EQ(apply(op(kTX, "1"), f), f);
}

TEST(Apply, AnnihilatorsKillTheirFunction) {
  const auto f = parse_integrand<Q>("exp(-t-x*t^3)", kTX);
  EXPECT_TRUE(apply(op(kTX, "dt+1+3*x*t^2"), f).is_zero());
  EXPECT_TRUE(apply(op(kTX, "dx+t^3"), f).is_zero());
  const auto s = make_signature({"t", "x", "y"}, 1);
  const auto g = parse_integrand<Q>("1/(x*t+y+t^10)", s);
  for (const char* a : {"dx-t*dy", "dt-(x+10*t^9)*dy", "t*dt+9*x*dx+10*y*dy+10"})
    EXPECT_TRUE(apply(op(s, a), g).is_zero()) << a;
}

TEST(Apply, ModuleAction) {
  std::mt19937 rng(27);
  for (int k = 0; k < 200; ++k) {
    const W a = random_op(rng, kTX, 2, 3), b = random_op(rng, kTX, 2, 3);
    auto num = random_poly(rng, 2, 2, 2);
    if (num.is_zero()) num = MPoly<Q>::constant(Q(1));
    const auto base = MPoly<Q>::variable(0) + MPoly<Q>::variable(1).scaled(Q(k % 3 + 1)) + MPoly<Q>::constant(Q(1));
    const HyperexpFunction<Q> f(num, base, static_cast<unsigned>(k % 3), random_poly(rng, 2, 2, 2));
    ASSERT_EQ(apply(a * b, f), apply(a, apply(b, f)));
    ASSERT_EQ(apply(a + b, f), apply(a, f) + apply(b, f));
  }
}

TEST(Hyperexp, SubstituteAtPoleThrows) {
  const auto f = parse_integrand<Q>("1/t", kTX);
  EXPECT_THROW(f.substitute(0, Q(0)), ArithmeticError);
  EXPECT_EQ(f.substitute(0, Q(2)), HyperexpFunction<Q>::constant(Q(1, 2)));
}

TEST(Printing, GradedDescendingWithDerivativeNames) {
  EXPECT_EQ(op(kTX, "1+x*t^2*3+dt").to_string(), "3*t^2*x+dt+1");
  EXPECT_EQ(op(kTX, "dt*t").to_string(), "t*dt+1");
}
