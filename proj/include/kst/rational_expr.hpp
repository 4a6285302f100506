#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "kst/laurent_poly.hpp"

namespace kst {

// numerator / prod (x_i - x_j), with the denominator kept as a multiset of
// difference factors. Factors are normalized to i < j, the sign moved into
// the numerator.
class RationalExpr {
 public:
  using Factor = std::pair<std::size_t, std::size_t>;
  using FactorCounts = std::map<Factor, int>;

  RationalExpr() = default;
  explicit RationalExpr(LaurentPoly numerator) : num_(std::move(numerator)) {}
  RationalExpr(LaurentPoly numerator, std::span<const Factor> factors) : num_(std::move(numerator)) {
    for (const auto& [i, j] : factors) divide_by_difference(i, j);
  }

  const LaurentPoly& numerator() const { return num_; }
  const FactorCounts& denominator() const { return den_; }
  std::size_t var_count() const { return num_.var_count(); }
  bool is_polynomial() const { return den_.empty(); }

  // Multiplies the represented value by 1 / (x_i - x_j).
  RationalExpr& divide_by_difference(std::size_t i, std::size_t j) {
    if (i == j) throw InvalidArgument("difference factor needs i != j");
    if (i >= var_count() || j >= var_count()) throw InvalidArgument("difference factor index out of range");
    if (i > j) {
      std::swap(i, j);
      num_ *= Rational(-1);
    }
    ++den_[{i, j}];
    return *this;
  }

  RationalExpr& operator*=(const LaurentPoly& p) {
    num_ *= p;
    return *this;
  }
  RationalExpr& operator*=(const RationalExpr& o) {
    num_ *= o.num_;
    for (const auto& [f, c] : o.den_) den_[f] += c;
    return *this;
  }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }

  RationalExpr permuted(const Permutation& sigma) const {
    RationalExpr r(permute_variables(num_, sigma));
    for (const auto& [f, c] : den_) {
      for (int k = 0; k < c; ++k) r.divide_by_difference(sigma[f.first], sigma[f.second]);
    }
    return r;
  }

  // Cancels every factor that exactly divides the numerator.
  RationalExpr reduced() const {
    RationalExpr r(num_);
    for (const auto& [f, c] : den_) {
      const LaurentPoly diff = difference(f);
      int left = c;
      while (left > 0) {
        auto h = try_divide(r.num_, diff);
        if (!h) break;
        r.num_ = std::move(*h);
        --left;
      }
      if (left > 0) r.den_[f] = left;
    }
    return r;
  }

  // The value as a Laurent polynomial; ResidualDenominator otherwise. The
  // factors are pairwise non-associate irreducibles, so dividing them out one
  // at a time succeeds iff their product divides the numerator.
  LaurentPoly to_laurent() const {
    LaurentPoly acc = num_;
    for (const auto& [f, c] : den_) {
      const LaurentPoly diff = difference(f);
      for (int k = 0; k < c; ++k) {
        auto h = try_divide(acc, diff);
        if (!h) {
          throw ResidualDenominator("factor (x" + std::to_string(f.first + 1) + " - x" +
                                    std::to_string(f.second + 1) + ") does not cancel");
        }
        acc = std::move(*h);
      }
    }
    return acc;
  }

  LaurentPoly difference(const Factor& f) const {
    return LaurentPoly::x(var_count(), f.first) - LaurentPoly::x(var_count(), f.second);
  }

 private:
  LaurentPoly num_;
  FactorCounts den_;
};

// Sum over a common denominator (the multiset union of the summands').
inline RationalExpr sum(std::span<const RationalExpr> terms) {
  if (terms.empty()) return RationalExpr();
  const std::size_t d = terms.front().var_count();
  RationalExpr::FactorCounts common;
  for (const auto& t : terms) {
    if (t.var_count() != d) throw VarCountMismatch("sum of rational expressions");
    for (const auto& [f, c] : t.denominator()) common[f] = std::max(common[f], c);
  }
  LaurentPoly num(d);
  for (const auto& t : terms) {
    LaurentPoly n = t.numerator();
    for (const auto& [f, c] : common) {
      auto it = t.denominator().find(f);
      const int have = it == t.denominator().end() ? 0 : it->second;
      if (c > have) n *= t.difference(f).pow(static_cast<unsigned>(c - have));
    }
    num += n;
  }
  RationalExpr r(std::move(num));
  for (const auto& [f, c] : common) {
    for (int k = 0; k < c; ++k) r.divide_by_difference(f.first, f.second);
  }
  return r;
}

inline LaurentPoly to_laurent(const RationalExpr& e) { return e.to_laurent(); }

}  // namespace kst
