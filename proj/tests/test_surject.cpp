#include <gtest/gtest.h>

#include "kst/surject.hpp"
#include "kst/witness_json.hpp"

namespace kst {
namespace {

constexpr auto kRat = KernelConvention::kRatio;
constexpr auto kSplit = KernelConvention::kSplitFactor;

std::vector<std::vector<int>> dominant(int a, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int top) -> void {
    if (static_cast<int>(cur.size()) == a) {
      out.push_back(cur);
      return;
    }
    for (int x = top; x >= lo; --x) {
      cur.push_back(x);
      self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, hi);
  return out;
}

TEST(AlphaNorm, Examples) {
  EXPECT_EQ(alpha_norm({2, 0}), 4);
  EXPECT_EQ(alpha_norm({1, 1, 0}), 2);
  EXPECT_EQ(alpha_norm({3, 3}), 0);
  EXPECT_EQ(alpha_norm({1, -1, -1}), 4);
  EXPECT_THROW(alpha_norm({}), InvalidArgument);
}

TEST(ExpressPower, ProducesTheMonomialExactly) {
  const KernelConvention conv = kRat;
    for (const auto& v : {Composition({0, 0}), Composition({1, 0}), Composition({0, 2}), Composition({1, 1})})
      for (int a = 1; a <= 3; ++a)
        for (int k = -2; k <= 2; ++k) {
          SurjectionBuilder b(1, conv);
          const KClass c = b.evaluate(b.express_power(k, a, v));
          const std::size_t d = static_cast<std::size_t>(v.d() + a);
          Exponents e(d + 1, 0);
          for (int s = 0; s < a; ++s) e[static_cast<std::size_t>(v.partial_sum(1) + s)] = k;
          EXPECT_EQ(*c.support(), e_matrix(1, 2, v, a));
          EXPECT_EQ(c.element(), LaurentPoly::monomial(e)) << v.to_string() << " a=" << a << " k=" << k;
        }
}

TEST(Express, SmallExamples) {
  const std::size_t d = 2;
  SurjectionBuilder b(1, kRat);
  EXPECT_EQ(b.evaluate(b.express({1, 0}, Composition({0, 0}))).element(), LaurentPoly::x(d, 0) + LaurentPoly::x(d, 1));
  EXPECT_EQ(b.evaluate(b.express({2, 0}, Composition({0, 0}))).element(),
            LaurentPoly::x(d, 0, 2) + LaurentPoly::x(d, 1, 2));
  EXPECT_TRUE(b.norms_strictly_decrease());
}

TEST(Express, ConstantAlphaUsesThePowerDirectly) {
  SurjectionBuilder b(1, kRat);
  const WitnessPtr w = b.express({1, 1, 1}, Composition({1, 0}));
  const auto* scale = std::get_if<ScaleNode>(&w->node);
  ASSERT_NE(scale, nullptr);
  EXPECT_EQ(scale->coeff, 6);
  EXPECT_TRUE(b.steps().empty());
}

TEST(Express, SoundForSmallAlpha) {
  const KernelConvention conv = kRat;
    for (int a = 1; a <= 3; ++a)
      for (const auto& alpha : dominant(a, -2, 2))
        for (const auto& v : {Composition({0, 0}), Composition({1, 1})}) {
          const WitnessReport r = verify_witness(alpha, v, 1, conv);
          EXPECT_TRUE(r.pass) << to_string(conv) << " " << ::testing::PrintToString(alpha);
          ASSERT_TRUE(r.unit);
          EXPECT_EQ(*r.unit, LaurentPoly(r.evaluated.var_count(), 1));
        }
}

TEST(Express, ThreeBlocksSecondIndex) {
  for (const auto& alpha : std::vector<std::vector<int>>{{1, 0}, {2, -1}, {1, 0, 0}}) {
    const WitnessReport r = verify_witness(alpha, Composition({1, 0, 1}), 2, kRat);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.evaluated, r.target);
  }
}

TEST(Express, ShiftCovariance) {
  for (const auto& alpha : dominant(2, -1, 1)) {
    const Composition v({1, 0});
    const std::size_t d = 3;
    std::vector<int> shifted = alpha;
    for (int& x : shifted) x += 2;
    const auto base = verify_witness(alpha, v, 1, kRat);
    const auto up = verify_witness(shifted, v, 1, kRat);
    EXPECT_EQ(up.evaluated, LaurentPoly::x(d, 1, 2) * LaurentPoly::x(d, 2, 2) * base.evaluated);
  }
}

// Squares of single steps under the split-factor kernel are not divisible
// by [2]!, so the top divided power leaf cannot be formed.
TEST(ExpressPower, SplitFactorKernelIsNotIntegral) {
  SurjectionBuilder b(1, kSplit);
  EXPECT_THROW(b.express_power(0, 2, Composition({0, 0})), NotDivisible);
}

TEST(Express, Errors) {
  SurjectionBuilder b(1, kRat);
  EXPECT_THROW(b.express({0, 1}, Composition({0, 0})), NonDominant);
  EXPECT_THROW(b.express({}, Composition({0, 0})), InvalidArgument);
  EXPECT_THROW(b.express({1}, Composition({0})), InvalidArgument);
  SurjectionBuilder t(1, KernelConvention::kRatioTransposed);
  EXPECT_THROW(t.express({1, 0}, Composition({0, 0})), InvalidArgument);
}

TEST(E6, LeadingCoefficientAndRemainders) {
  for (int a = 1; a <= 4; ++a)
    for (const auto& alpha : dominant(a, -1, 2)) {
      const E6Report r = verify_e6(alpha);
      EXPECT_TRUE(r.laurent);
      EXPECT_TRUE(r.pass) << ::testing::PrintToString(alpha);
      const int s = r.s;
      EXPECT_EQ(r.expected, factorial(a - s) * stabilizer_size(alpha));
    }
  const E6Report r = verify_e6({1, 1, 0}, 2);
  EXPECT_EQ(r.leading, 2);
  EXPECT_TRUE(r.remainder_norms.empty() || r.remainder_norms.front().second < 2);
  EXPECT_THROW(verify_e6({1, 1, 0}, 1), InvalidArgument);
  EXPECT_THROW(verify_e6({0, 1}), NonDominant);
}

TEST(E6, FullSumIsShuffleTimesBlockFactorials) {
  for (const auto& alpha : std::vector<std::vector<int>>{{1, 0}, {2, 0, 0}, {1, 1, 0}, {2, 1, 0}}) {
    const std::size_t a = alpha.size();
    const std::size_t s = static_cast<std::size_t>(std::count(alpha.begin(), alpha.end(), alpha.front()));
    const IndexSet I = index_range(0, s), J = index_range(s, a - s);
    const std::vector<int> head(alpha.begin(), alpha.begin() + static_cast<long>(s)),
        tail(alpha.begin() + static_cast<long>(s), alpha.end());
    RationalExpr e = kernel_expr(a, I, J, kSplit);
    e *= block_monomial(a, I, head) * symmetrize_full(block_monomial(a, J, tail), J);
    const LaurentPoly shuffled = shuffle_symmetrize(e, I, J);
    EXPECT_EQ(verify_e6(alpha).value,
              factorial(static_cast<int>(s)) * factorial(static_cast<int>(a - s)) * shuffled);
  }
}

TEST(WitnessJson, RoundTrip) {
  WitnessPtr w;
  const WitnessReport r = verify_witness({2, 0, -1}, Composition({1, 1}), 1, kRat, &w);
  ASSERT_TRUE(r.pass);
  const auto j = witness_to_json(w);
  const WitnessPtr back = witness_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(witness_to_json(back), j);
  EXPECT_EQ(evaluate_witness(back, kRat).element(), r.evaluated);
  EXPECT_THROW(witness_from_json(nlohmann::json::parse(R"({"root":0,"nodes":[{"id":1,"kind":"add"}]})")),
               ParseError);
}

}  // namespace
}  // namespace kst
