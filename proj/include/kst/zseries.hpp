#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kst/blocksym.hpp"
#include "kst/laurent_poly.hpp"

namespace kst {

// Expansion variable: z^{-1} (around z = infinity, the K^{+} series) or z
// (around z = 0, the K^{-} series).
enum class Direction { kInverseZ, kZ };

inline std::string to_string(Direction dir) { return dir == Direction::kInverseZ ? "z^-1" : "z"; }

// c_0 + c_1 t + ... + c_N t^N with t = z^{-1} or z.
class TruncatedSeries {
 public:
  TruncatedSeries(Direction dir, std::vector<LaurentPoly> coeffs) : dir_(dir), c_(std::move(coeffs)) {
    if (c_.empty()) throw InvalidArgument("TruncatedSeries: need at least c_0");
    for (const auto& x : c_) c_.front().check_same(x);
  }
  static TruncatedSeries constant(Direction dir, std::size_t var_count, std::size_t order, const Rational& c) {
    std::vector<LaurentPoly> cs(order + 1, LaurentPoly(var_count));
    cs[0] = LaurentPoly(var_count, c);
    return TruncatedSeries(dir, std::move(cs));
  }

  Direction direction() const { return dir_; }
  std::size_t order() const { return c_.size() - 1; }
  std::size_t var_count() const { return c_.front().var_count(); }
  const std::vector<LaurentPoly>& coeffs() const { return c_; }
  const LaurentPoly& operator[](std::size_t k) const { return c_.at(k); }

  TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) throw InvalidArgument("truncated: order exceeds the known terms");
    return TruncatedSeries(dir_, {c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1});
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<LaurentPoly> r;
    for (std::size_t k = 0; k <= n; ++k) r.push_back(a.c_[k] + b.c_[k]);
    return TruncatedSeries(a.dir_, std::move(r));
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<LaurentPoly> r(n + 1, LaurentPoly(a.var_count()));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    return TruncatedSeries(a.dir_, std::move(r));
  }
  friend TruncatedSeries operator*(const LaurentPoly& s, TruncatedSeries a) {
    for (auto& c : a.c_) c = s * c;
    return a;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.dir_ == b.dir_ && a.c_ == b.c_;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    if (dir_ != o.dir_) throw InvalidArgument("series expanded in different directions");
    c_.front().check_same(o.c_.front());
  }

  Direction dir_;
  std::vector<LaurentPoly> c_;
};

// log(s) after normalizing the constant term to 1:
// log(1 + u) = sum_k (-1)^{k+1} u^k / k through the series order.
inline TruncatedSeries series_log(const TruncatedSeries& s) {
  const LaurentPoly& c0 = s[0];
  if (c0.is_zero()) throw ZeroConstantTerm("series_log: zero constant term");
  const std::size_t n = s.order(), d = s.var_count();
  std::vector<LaurentPoly> u(n + 1, LaurentPoly(d));
  for (std::size_t k = 1; k <= n; ++k) u[k] = exact_divide(s[k], c0);
  const TruncatedSeries useries(s.direction(), u);

  std::vector<LaurentPoly> zero(n + 1, LaurentPoly(d));
  TruncatedSeries acc(s.direction(), zero);
  TruncatedSeries power = useries;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational w = Rational(k % 2 ? 1 : -1, static_cast<unsigned long>(k));
    acc = acc + LaurentPoly(d, w) * power;
    power = power * useries;
  }
  return acc;
}

// exp of a series with zero constant term.
inline TruncatedSeries series_exp(const TruncatedSeries& s) {
  if (!s[0].is_zero()) throw InvalidArgument("series_exp: constant term must vanish");
  const std::size_t n = s.order(), d = s.var_count();
  TruncatedSeries acc = TruncatedSeries::constant(s.direction(), d, n, 1);
  TruncatedSeries power = acc;
  Rational fact = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * s;
    fact *= static_cast<unsigned long>(k);
    acc = acc + LaurentPoly(d, 1 / fact) * power;
  }
  return acc;
}

// Readings of the index split in the Cartan product and the H closed form.
//
// split:    the split index s is v̄_{j-1} (kBefore) or v̄_j (kAt).
// boundary: the variable x_s joins the first product, the second one, or
//           neither. The printed product has it in the second.
enum class SplitPosition { kBefore, kAt };
enum class BoundaryPlacement { kFirst, kSecond, kNeither };

struct IndexVariant {
  SplitPosition split = SplitPosition::kAt;
  BoundaryPlacement boundary = BoundaryPlacement::kSecond;

  std::string name() const {
    std::string s = split == SplitPosition::kBefore ? "split=vbar[j-1]" : "split=vbar[j]";
    switch (boundary) {
      case BoundaryPlacement::kFirst: return s + ",boundary=first";
      case BoundaryPlacement::kSecond: return s + ",boundary=second";
      case BoundaryPlacement::kNeither: return s + ",boundary=neither";
    }
    return s;
  }
  friend bool operator==(const IndexVariant&, const IndexVariant&) = default;

  static std::vector<IndexVariant> all() {
    std::vector<IndexVariant> out;
    for (auto sp : {SplitPosition::kBefore, SplitPosition::kAt})
      for (auto b : {BoundaryPlacement::kFirst, BoundaryPlacement::kSecond, BoundaryPlacement::kNeither})
        out.push_back({sp, b});
    return out;
  }
};

// Prefactor of the log in the H definition: sign * (q - q^-1)^power.
struct NormVariant {
  int sign = 1;
  int power = 1;

  std::string name() const {
    return std::string(sign > 0 ? "+" : "-") + "(q-q^-1)^" + (power > 0 ? "1" : "-1");
  }
  friend bool operator==(const NormVariant&, const NormVariant&) = default;

  static std::vector<NormVariant> all() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }
};

// 1-based split index s for block j of v under the variant.
inline int split_index(const Composition& v, std::size_t j, const IndexVariant& iv) {
  if (j < 1 || j > v.n()) throw InvalidArgument("block index out of range");
  return iv.split == SplitPosition::kBefore ? v.partial_sum(j - 1) : v.partial_sum(j);
}

struct CartanIndexSets {
  IndexSet first;   // factors (q^2 z - x_m) / (q z - q x_m)
  IndexSet second;  // factors (z - q^2 x_m) / (q z - q x_m)
};

inline CartanIndexSets cartan_index_sets(const Composition& v, std::size_t j, const IndexVariant& iv) {
  const int s = split_index(v, j, iv), d = v.d();
  CartanIndexSets out;
  for (int m = 1; m < s; ++m) out.first.push_back(static_cast<std::size_t>(m - 1));
  if (s >= 1 && iv.boundary == BoundaryPlacement::kFirst) out.first.push_back(static_cast<std::size_t>(s - 1));
  if (s >= 1 && iv.boundary == BoundaryPlacement::kSecond) out.second.push_back(static_cast<std::size_t>(s - 1));
  for (int m = std::max(s + 1, 1); m <= d; ++m) out.second.push_back(static_cast<std::size_t>(m - 1));
  return out;
}

// (a z + b x_m) / (c z + e x_m) with a, b, c, e in Q[q^{+-1}], c and e units,
// expanded through order N: around infinity as (1/c)(a + b u) sum (-e u/c)^k
// with u = x_m / z, around zero as (1/e)(b + a w) sum (-c w/e)^k with
// w = z / x_m.
inline TruncatedSeries linear_fraction_series(std::size_t d, std::size_t m, const LaurentPoly& a,
                                              const LaurentPoly& b, const LaurentPoly& c,
                                              const LaurentPoly& e, Direction dir, std::size_t order) {
  const LaurentPoly one(d, 1);
  const bool at_infinity = dir == Direction::kInverseZ;
  const LaurentPoly lead = exact_divide(one, at_infinity ? c : e);
  const LaurentPoly ratio = exact_divide(-(at_infinity ? e : c), at_infinity ? c : e);
  const LaurentPoly var = LaurentPoly::x(d, m, at_infinity ? 1 : -1);
  std::vector<LaurentPoly> geo(order + 1, LaurentPoly(d));
  LaurentPoly term = one;
  for (std::size_t k = 0; k <= order; ++k) {
    geo[k] = term;
    term = term * ratio * var;
  }
  std::vector<LaurentPoly> numer(order + 1, LaurentPoly(d));
  numer[0] = lead * (at_infinity ? a : b);
  if (order >= 1) numer[1] = lead * (at_infinity ? b : a) * var;
  return TruncatedSeries(dir, numer) * TruncatedSeries(dir, geo);
}

inline TruncatedSeries first_cartan_factor(std::size_t d, std::size_t m, Direction dir, std::size_t order) {
  return linear_fraction_series(d, m, LaurentPoly::q(d, 2), LaurentPoly(d, -1), LaurentPoly::q(d, 1),
                                -LaurentPoly::q(d, 1), dir, order);
}

inline TruncatedSeries second_cartan_factor(std::size_t d, std::size_t m, Direction dir, std::size_t order) {
  return linear_fraction_series(d, m, LaurentPoly(d, 1), -LaurentPoly::q(d, 2), LaurentPoly::q(d, 1),
                                -LaurentPoly::q(d, 1), dir, order);
}

// prod_{m in first} (q^2 z - x_m)/(q z - q x_m) * prod_{m in second}
// (z - q^2 x_m)/(q z - q x_m) on the weight piece v, through order N.
inline TruncatedSeries cartan_series(const Composition& v, std::size_t j, Direction dir, std::size_t order,
                                     const IndexVariant& iv) {
  if (order < 1) throw InvalidArgument("cartan_series: order must be at least 1");
  const std::size_t d = static_cast<std::size_t>(v.d());
  const CartanIndexSets sets = cartan_index_sets(v, j, iv);
  TruncatedSeries acc = TruncatedSeries::constant(dir, d, order, 1);
  for (std::size_t m : sets.first) acc = acc * first_cartan_factor(d, m, dir, order);
  for (std::size_t m : sets.second) acc = acc * second_cartan_factor(d, m, dir, order);
  return acc;
}

// The exponent c when the constant term is exactly q^c.
inline std::optional<int> constant_q_exponent(const TruncatedSeries& s) {
  const LaurentPoly& c0 = s[0];
  if (!c0.is_monomial() || c0.lead().second != 1) return std::nullopt;
  const Exponents& e = c0.lead().first;
  for (std::size_t k = 0; k + 1 < e.size(); ++k)
    if (e[k] != 0) return std::nullopt;
  return e.back();
}

// Image of H_{j,r} / [r] on the weight piece v: the t^{|r|} coefficient of
// log(cartan series) (t = z^-1 for r > 0, z for r < 0), times the norm
// prefactor, divided exactly by [r]. NotDivisible escapes unchanged.
inline LaurentPoly h_image(const Composition& v, std::size_t j, int r, const IndexVariant& iv,
                           const NormVariant& nv) {
  if (r == 0) throw InvalidArgument("h_image: r must be nonzero");
  const std::size_t d = static_cast<std::size_t>(v.d());
  const std::size_t order = static_cast<std::size_t>(r < 0 ? -r : r);
  const Direction dir = r > 0 ? Direction::kInverseZ : Direction::kZ;
  const TruncatedSeries logs = series_log(cartan_series(v, j, dir, order, iv));
  const LaurentPoly qdiff = LaurentPoly::q(d, 1) - LaurentPoly::q(d, -1);
  LaurentPoly numer = Rational(nv.sign) * logs[order];
  LaurentPoly denom = q_integer(r, d);
  if (nv.power > 0) {
    numer *= qdiff;
  } else {
    denom *= qdiff;
  }
  return exact_divide(numer, denom);
}

// -(1/|r|) (q^{-r} sum_{l in first} x_l^r + q^r sum_{l in second} x_l^r),
// the displayed closed form with the index sets of the variant. With the
// boundary kNeither the index s itself is omitted, as printed.
inline LaurentPoly h_closed(const Composition& v, std::size_t j, int r, const IndexVariant& iv) {
  if (r == 0) throw InvalidArgument("h_closed: r must be nonzero");
  const std::size_t d = static_cast<std::size_t>(v.d());
  const CartanIndexSets sets = cartan_index_sets(v, j, iv);
  const Rational w(-1, static_cast<unsigned long>(r < 0 ? -r : r));
  LaurentPoly out(d);
  for (const auto* set : {&sets.first, &sets.second}) {
    for (std::size_t l : *set) {
      Exponents e(d + 1, 0);
      e[l] = r;
      e[d] = set == &sets.first ? -r : r;
      out.add_term(e, w);
    }
  }
  return out;
}

// Every coefficient's denominator divides r.
inline bool denominators_divide(const LaurentPoly& f, int r) {
  const mpz_class rr = r < 0 ? -r : r;
  for (const auto& [e, c] : f.terms()) {
    if (!mpz_divisible_p(rr.get_mpz_t(), c.get_den().get_mpz_t())) return false;
  }
  return true;
}

}  // namespace kst
