#include <gtest/gtest.h>

#include <random>

#include "kst/rational_expr.hpp"
#include "oracle.hpp"

namespace kst {
namespace {

using testing::eval;
using testing::random_poly;
using testing::sample_point;

TEST(LaurentPoly, CanonicalText) {
  const std::size_t d = 2;
  LaurentPoly f = LaurentPoly::x(d, 0) + LaurentPoly(d, 1);
  f += LaurentPoly::monomial({2, -1, -1}, Rational(-3, 2));
  EXPECT_EQ(to_string(f), "-3/2*x1^2*x2^-1*q^-1 + 1*x1^1 + 1");
  EXPECT_EQ(to_string(LaurentPoly(3)), "0");
  EXPECT_EQ(to_string(-LaurentPoly::q(0, 2)), "-1*q^2");
}

TEST(LaurentPoly, ParseRoundTrip) {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    const LaurentPoly f = random_poly(rng, 3);
    EXPECT_EQ(parse_laurent(to_string(f), 3), f);
  }
  EXPECT_EQ(parse_laurent("x1*q - x2^-2", 2), LaurentPoly::x(2, 0) * LaurentPoly::q(2) - LaurentPoly::x(2, 1, -2));
  EXPECT_THROW(parse_laurent("x1 +", 1), ParseError);
  EXPECT_THROW(parse_laurent("x3", 2), ParseError);
}

TEST(LaurentPoly, NoZeroCoefficientsStored) {
  const std::size_t d = 1;
  LaurentPoly f = LaurentPoly::x(d, 0) - LaurentPoly::x(d, 0);
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.size(), 0u);
  EXPECT_THROW(LaurentPoly(1) + LaurentPoly(2), VarCountMismatch);
}

TEST(LaurentPoly, RingAxiomsOnRandomInputs) {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    const LaurentPoly a = random_poly(rng, 2), b = random_poly(rng, 2), c = random_poly(rng, 2);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    const auto p = sample_point(2, t % 3);
    EXPECT_EQ(eval(a * b, p), eval(a, p) * eval(b, p));
  }
}

TEST(ExactDivide, RecoversFactors) {
  std::mt19937 rng(3);
  for (int t = 0; t < 60; ++t) {
    const LaurentPoly a = random_poly(rng, 2), b = random_poly(rng, 2);
    if (b.is_zero()) continue;
    EXPECT_EQ(exact_divide(a * b, b), a);
  }
  const std::size_t d = 2;
  const auto x1 = LaurentPoly::x(d, 0), x2 = LaurentPoly::x(d, 1), q = LaurentPoly::q(d);
  EXPECT_EQ(exact_divide(x1 * x1 - q * q * x2 * x2, x1 - q * x2), x1 + q * x2);
  EXPECT_THROW(exact_divide(x1 + x2, x1 - x2), NotDivisible);
  EXPECT_THROW(exact_divide(LaurentPoly(d, 1), x1 + LaurentPoly(d, 1)), NotDivisible);
  EXPECT_EQ(exact_divide(x1, LaurentPoly::x(d, 0, -3)), x1.pow(4));
}

TEST(QNumbers, Definitions) {
  const auto q = LaurentPoly::q(0);
  const auto qi = LaurentPoly::q(0, -1);
  EXPECT_EQ(q_integer(2), q + qi);
  EXPECT_EQ(q_integer(-3), -q_integer(3));
  EXPECT_TRUE(q_integer(0).is_zero());
  for (int k = -5; k <= 5; ++k) {
    EXPECT_EQ(q_integer(k) * (q - qi), LaurentPoly::q(0, k) - LaurentPoly::q(0, -k));
  }
  // [m]! at q = 1 is m!
  EXPECT_EQ(q_factorial(4).at_q_one(), LaurentPoly(0, 24));
  EXPECT_EQ(q_factorial(0), LaurentPoly(0, 1));
}

TEST(Permutations, ActionIsCompatibleWithComposition) {
  std::mt19937 rng(5);
  const LaurentPoly f = random_poly(rng, 3, 6);
  const Permutation s{1, 2, 0}, t{0, 2, 1};
  EXPECT_EQ(permute_variables(permute_variables(f, t), s), permute_variables(f, compose(s, t)));
  EXPECT_EQ(permute_variables(LaurentPoly::x(3, 0), s), LaurentPoly::x(3, 1));
  EXPECT_THROW(permute_variables(f, Permutation{0, 0, 1}), InvalidArgument);
}

TEST(RationalExpr, ReductionPreservesValue) {
  const std::size_t d = 3;
  const auto x1 = LaurentPoly::x(d, 0), x2 = LaurentPoly::x(d, 1), x3 = LaurentPoly::x(d, 2);
  const RationalExpr::Factor fs[] = {{0, 1}, {2, 1}};
  const RationalExpr e((x1 - x2) * (x3 + x1), fs);
  const RationalExpr r = e.reduced();
  EXPECT_EQ(r.denominator().size(), 1u);
  const auto p = sample_point(d);
  const Rational lhs = eval(e.numerator(), p) / ((p[0] - p[1]) * (p[1] - p[2]));
  const Rational rhs = eval(r.numerator(), p) / (p[1] - p[2]);
  EXPECT_EQ(lhs, rhs);
  EXPECT_THROW(e.to_laurent(), ResidualDenominator);
  EXPECT_THROW(RationalExpr(x1).divide_by_difference(1, 1), InvalidArgument);
}

TEST(RationalExpr, SumOverCommonDenominator) {
  const std::size_t d = 2;
  const auto x1 = LaurentPoly::x(d, 0), x2 = LaurentPoly::x(d, 1);
  const RationalExpr::Factor f12[] = {{0, 1}}, f21[] = {{1, 0}};
  // x1/(x1 - x2) + x2/(x2 - x1) = 1
  const std::vector<RationalExpr> terms{RationalExpr(x1, f12), RationalExpr(x2, f21)};
  EXPECT_EQ(sum(terms).to_laurent(), LaurentPoly(d, 1));
}

}  // namespace
}  // namespace kst
