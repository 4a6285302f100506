#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kst/blocksym.hpp"
#include "kst/matcomb.hpp"
#include "kst/rational_expr.hpp"

namespace kst {

// An element of K^G(Z_A) = R^(A): a support matrix A and an element that is
// symmetric in every block of the refinement of A. The zero class may have
// no support.
class KClass {
 public:
  static KClass zero(std::size_t var_count) { return KClass(var_count); }

  KClass(CompMatrix support, LaurentPoly element) : support_(std::move(support)), element_(std::move(element)) {
    if (static_cast<std::size_t>(support_->d()) != element_.var_count()) {
      throw VarCountMismatch("KClass: support and element disagree on d");
    }
    if (!is_block_symmetric(element_, BlockStructure(support_->refinement()))) {
      throw NotSymmetric("KClass: element is not symmetric in the blocks of " + support_->to_string());
    }
  }

  bool is_zero() const { return element_.is_zero(); }
  std::size_t var_count() const { return element_.var_count(); }
  const std::optional<CompMatrix>& support() const { return support_; }
  const LaurentPoly& element() const { return element_; }

  // Multiply the element by something symmetric in every block, e.g. a
  // scalar in Q[q^{+-1}].
  KClass scaled(const LaurentPoly& s) const {
    if (!support_) return *this;
    return KClass(*support_, s * element_);
  }

  friend KClass operator+(const KClass& a, const KClass& b) {
    if (!a.support_) return b;
    if (!b.support_) return a;
    if (!(*a.support_ == *b.support_)) throw IncompatibleSupports("KClass sum: supports differ");
    return KClass(*a.support_, a.element_ + b.element_);
  }

  friend bool operator==(const KClass& a, const KClass& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero() && a.var_count() == b.var_count();
    return a.support_ == b.support_ && a.element_ == b.element_;
  }

  std::string to_string() const {
    return "{" + (support_ ? support_->to_string() : std::string("null")) + ", " + kst::to_string(element_) + "}";
  }

 private:
  explicit KClass(std::size_t d) : element_(d) {}

  std::optional<CompMatrix> support_;
  LaurentPoly element_;
};

// Candidate kernels for composing adjacent E-type classes; i runs over the
// right factor's block I, j over the left factor's block J.
//   kRatio:              (1 - q^2 x_j/x_i) / (1 - x_i/x_j)
//   kRatioTransposed:    (1 - q^2 x_i/x_j) / (1 - x_j/x_i)
//   kSplitFactor:           (x_i - q^2 x_j) / (x_i - x_j)
//   kSplitFactorTransposed: (x_j - q^2 x_i) / (x_j - x_i)
enum class KernelConvention { kRatio, kRatioTransposed, kSplitFactor, kSplitFactorTransposed };

inline std::string to_string(KernelConvention c) {
  switch (c) {
    case KernelConvention::kRatio: return "ratio";
    case KernelConvention::kRatioTransposed: return "ratio-transposed";
    case KernelConvention::kSplitFactor: return "split-factor";
    case KernelConvention::kSplitFactorTransposed: return "split-factor-transposed";
  }
  return "?";
}

inline std::vector<KernelConvention> all_kernel_conventions() {
  return {KernelConvention::kRatio, KernelConvention::kRatioTransposed, KernelConvention::kSplitFactor,
          KernelConvention::kSplitFactorTransposed};
}

inline KernelConvention parse_kernel_convention(std::string_view s) {
  for (auto c : all_kernel_conventions())
    if (to_string(c) == s) return c;
  throw ParseError("unknown kernel convention '" + std::string(s) + "'");
}

inline RationalExpr kernel_factor(std::size_t d, std::size_t i, std::size_t j, KernelConvention conv) {
  const LaurentPoly q2 = LaurentPoly::q(d, 2);
  auto xi = LaurentPoly::x(d, i), xj = LaurentPoly::x(d, j);
  switch (conv) {
    case KernelConvention::kRatio: {
      // x_j (x_i - q^2 x_j) / (x_i (x_j - x_i))
      const RationalExpr::Factor f{j, i};
      return RationalExpr(LaurentPoly::x(d, j) * LaurentPoly::x(d, i, -1) * (xi - q2 * xj), {&f, 1});
    }
    case KernelConvention::kRatioTransposed: {
      const RationalExpr::Factor f{i, j};
      return RationalExpr(LaurentPoly::x(d, i) * LaurentPoly::x(d, j, -1) * (xj - q2 * xi), {&f, 1});
    }
    case KernelConvention::kSplitFactor: {
      const RationalExpr::Factor f{i, j};
      return RationalExpr(xi - q2 * xj, {&f, 1});
    }
    case KernelConvention::kSplitFactorTransposed: {
      const RationalExpr::Factor f{j, i};
      return RationalExpr(xj - q2 * xi, {&f, 1});
    }
  }
  throw InvalidArgument("kernel_factor: unknown convention");
}

// prod_{i in I, j in J} kernel(i, j)
inline RationalExpr kernel_expr(std::size_t d, const IndexSet& I, const IndexSet& J, KernelConvention conv) {
  RationalExpr out(LaurentPoly(d, 1));
  for (std::size_t i : I)
    for (std::size_t j : J) out *= kernel_factor(d, i, j, conv);
  return out;
}

// Diagonal action from the left: c_diag on diag(w), w the row composition of
// c's support.
inline KClass convolve_diag(const KClass& c_diag, const KClass& c) {
  c_diag.element().check_same(c.element());
  if (c_diag.support() && !c_diag.support()->is_diagonal()) {
    throw IncompatibleSupports("convolve_diag: left class is not diagonal");
  }
  if (c_diag.is_zero() || c.is_zero()) return KClass::zero(c.var_count());
  if (!(c_diag.support()->row_sums() == c.support()->row_sums())) {
    throw IncompatibleSupports("convolve_diag: diagonal weight differs from the row composition");
  }
  return KClass(*c.support(), c_diag.element() * c.element());
}

// Diagonal action from the right: c_diag on diag(w), w the column
// composition of c's support.
inline KClass convolve_diag_right(const KClass& c, const KClass& c_diag) {
  c_diag.element().check_same(c.element());
  if (c_diag.support() && !c_diag.support()->is_diagonal()) {
    throw IncompatibleSupports("convolve_diag_right: right class is not diagonal");
  }
  if (c_diag.is_zero() || c.is_zero()) return KClass::zero(c.var_count());
  if (!(c_diag.support()->row_sums() == c.support()->col_sums())) {
    throw IncompatibleSupports("convolve_diag_right: diagonal weight differs from the column composition");
  }
  return KClass(*c.support(), c.element() * c_diag.element());
}

// c1 * c2 for c1, c2 supported on E_{i,i+1}(.; b) and E_{i,i+1}(.; b') (or
// both on E_{i+1,i}) with col(c1) = row(c2). The result lives on the merged
// support with a = b + b'; its element is the shuffle symmetrization of
// f g prod kernel(i, j), i in the block of c2, j in the block of c1.
inline KClass convolve_estep(const KClass& c1, const KClass& c2, KernelConvention conv) {
  c1.element().check_same(c2.element());
  const std::size_t d = c1.var_count();
  if (!c1.support() || !c2.support()) return KClass::zero(d);
  const auto s1 = off_diagonal_shape(*c1.support());
  const auto s2 = off_diagonal_shape(*c2.support());
  if (!s1 || !s2 || s1->i != s2->i || s1->j != s2->j) {
    throw NotComposable("convolve_estep: supports are not of the same E_{i,i+-1} type");
  }
  const std::size_t r = s1->i, c = s1->j;
  if (r + 1 != c && c + 1 != r) throw NotComposable("convolve_estep: blocks are not adjacent");
  if (!(c1.support()->col_sums() == c2.support()->row_sums())) {
    throw NotComposable("convolve_estep: column composition of the left factor differs from the row "
                        "composition of the right factor");
  }
  const int a = s1->a + s2->a;
  std::vector<int> w = c1.support()->row_sums().parts();
  w[r - 1] -= a;
  if (w[r - 1] < 0) throw NotComposable("convolve_estep: merged support would have a negative entry");
  const CompMatrix merged = e_matrix(r, c, Composition(w), a);
  if (!(merged.col_sums() == c2.support()->col_sums())) {
    throw NotComposable("convolve_estep: merged support has the wrong column composition");
  }
  if (c1.is_zero() || c2.is_zero()) return KClass(merged, LaurentPoly(d));

  const IndexSet J = c1.support()->entry_block(r, c);
  const IndexSet I = c2.support()->entry_block(r, c);
  IndexSet both = I;
  both.insert(both.end(), J.begin(), J.end());
  std::sort(both.begin(), both.end());
  if (both != merged.entry_block(r, c)) {
    throw NotComposable("convolve_estep: the two blocks do not fill the merged block");
  }
  RationalExpr e = kernel_expr(d, I, J, conv);
  e *= c1.element() * c2.element();
  return KClass(merged, shuffle_symmetrize(e, I, J));
}

}  // namespace kst
