#include <gtest/gtest.h>

#include "kst/matcomb.hpp"

namespace kst {
namespace {

TEST(EnumerateMatrices, SmallCases) {
  const auto ms = enumerate_matrices(Composition({1, 1}), Composition({1, 1}));
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].to_string(), "[[0,1],[1,0]]");
  EXPECT_EQ(ms[1].to_string(), "[[1,0],[0,1]]");

  const auto forced = enumerate_matrices(Composition({2, 0}), Composition({1, 1}));
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_EQ(forced[0].to_string(), "[[1,1],[0,0]]");

  EXPECT_EQ(enumerate_matrices(Composition({1, 1, 1}), Composition({1, 1, 1})).size(), 6u);
  EXPECT_THROW(enumerate_matrices(Composition({1, 1}), Composition({1, 0})), SumMismatch);
}

TEST(EnumerateMatrices, MarginsDistinctAndSorted) {
  const Composition v({2, 1, 1}), w({1, 2, 1});
  const auto ms = enumerate_matrices(v, w);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    EXPECT_EQ(ms[k].row_sums(), v);
    EXPECT_EQ(ms[k].col_sums(), w);
    if (k) {
      EXPECT_LT(ms[k - 1].entries(), ms[k].entries());
    }
  }
}

TEST(EMatrix, Examples) {
  EXPECT_EQ(e_matrix(1, 2, Composition({1, 0}), 1).to_string(), "[[1,1],[0,0]]");
  EXPECT_EQ(e_matrix(2, 1, Composition({0, 1}), 2).to_string(), "[[0,0],[2,1]]");
  EXPECT_THROW(e_matrix(1, 2, Composition({1, 0}), 0), InvalidArgument);
  EXPECT_THROW(e_matrix(1, 1, Composition({1, 0}), 1), InvalidArgument);
  EXPECT_THROW(e_matrix(1, 3, Composition({1, 0}), 1), InvalidArgument);
}

TEST(EMatrix, MarginsForEveryShape) {
  for (std::size_t n = 2; n <= 3; ++n)
    for (int d = 0; d <= 3; ++d)
      for (const auto& v : compositions(d, n))
        for (std::size_t i = 1; i <= n; ++i)
          for (std::size_t j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int a = 1; a <= 2; ++a) {
              const CompMatrix m = e_matrix(i, j, v, a);
              EXPECT_EQ(m.row_sums(), v.plus_unit(i, a));
              EXPECT_EQ(m.col_sums(), v.plus_unit(j, a));
              const auto shape = off_diagonal_shape(m);
              ASSERT_TRUE(shape);
              EXPECT_EQ(shape->i, i);
              EXPECT_EQ(shape->j, j);
              EXPECT_EQ(shape->a, a);
              EXPECT_EQ(shape->v, v);
            }
          }
}

TEST(RefinementBlocks, ColumnMajor) {
  // E_12((1,2); 1) = [[1,1],[0,2]]: blocks a11=1, a21=0, a12=1, a22=2.
  const CompMatrix m = e_matrix(1, 2, Composition({1, 2}), 1);
  EXPECT_EQ(m.refinement(), Composition({1, 0, 1, 2}));
  EXPECT_EQ(m.entry_block(1, 2), (IndexSet{1}));
  EXPECT_EQ(m.entry_block(2, 2), (IndexSet{2, 3}));
}

TEST(DoubleCosets, Examples) {
  EXPECT_EQ(double_coset_count(Composition({1, 1}), Composition({1, 1})), 2u);
  EXPECT_EQ(double_coset_count(Composition({2, 0}), Composition({1, 1})), 1u);
  for (int d = 0; d <= 7; ++d) EXPECT_EQ(double_coset_count(Composition({d}), Composition({d})), 1u);
  EXPECT_THROW(double_coset_count(Composition({8}), Composition({8})), TooLarge);
}

TEST(DoubleCosets, MatchMatrixCountsUpToFour) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int d = 0; d <= 4; ++d)
      for (const auto& v : compositions(d, n))
        for (const auto& w : compositions(d, n))
          EXPECT_EQ(enumerate_matrices(v, w).size(), double_coset_count(v, w)) << v.to_string() << " " << w.to_string();
}

}  // namespace
}  // namespace kst
