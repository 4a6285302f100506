#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kst/kconv.hpp"
#include "kst/zseries.hpp"

namespace kst {

enum class GeneratorKind { kE, kF };

inline std::string to_string(GeneratorKind k) { return k == GeneratorKind::kE ? "E" : "F"; }

// E_{i,k} pi_weight or F_{i,k} pi_weight.
struct GeneratorLabel {
  GeneratorKind kind = GeneratorKind::kE;
  std::size_t i = 1;
  int k = 0;
  Composition weight;
};

namespace detail {

inline void check_label(const GeneratorLabel& g) {
  if (g.i < 1 || g.i + 1 > g.weight.n()) throw InvalidArgument("generator index i must lie in 1..n-1");
}

inline LaurentPoly minus_q_power(std::size_t d, int e) {
  return LaurentPoly::q(d, e) * Rational(e % 2 == 0 ? 1 : -1);
}

// The class [E_{i,v,k}] or [F_{i,v,k}] without the (-q)-power prefactor,
// where v = weight - e_{i+1} (E) or weight - e_i (F). With mid = v̄_i
// (0-based), the E element is x_mid^k prod_{t < mid} x_t / x_mid and the F
// element is x_mid^k prod_{t > mid} x_t / x_mid.
inline std::optional<KClass> bare_generator(const GeneratorLabel& g) {
  check_label(g);
  const std::size_t d = static_cast<std::size_t>(g.weight.d());
  const bool is_e = g.kind == GeneratorKind::kE;
  const std::size_t lowered = is_e ? g.i + 1 : g.i;
  if (g.weight.part(lowered) < 1) return std::nullopt;
  const Composition v = g.weight.plus_unit(lowered, -1);
  const CompMatrix support = is_e ? e_matrix(g.i, g.i + 1, v, 1) : e_matrix(g.i + 1, g.i, v, 1);
  const std::size_t mid = static_cast<std::size_t>(v.partial_sum(g.i));
  Exponents e(d + 1, 0);
  int others = 0;
  for (std::size_t t = 0; t < d; ++t) {
    if (t == mid || (is_e ? t > mid : t < mid)) continue;
    e[t] = 1;
    ++others;
  }
  e[mid] = g.k - others;
  return KClass(support, LaurentPoly::monomial(std::move(e)));
}

// (-q)^{-v_i} for E, (-q)^{1-v_i} for F.
inline int generator_prefactor_exponent(const GeneratorLabel& g) {
  const bool is_e = g.kind == GeneratorKind::kE;
  const Composition v = g.weight.plus_unit(is_e ? g.i + 1 : g.i, -1);
  return (is_e ? 0 : 1) - v.part(g.i);
}

// Weight of the l-th factor from the right in X^m pi_weight.
inline Composition chain_weight(const GeneratorLabel& g, int l) {
  const bool is_e = g.kind == GeneratorKind::kE;
  std::vector<int> p = g.weight.parts();
  p[g.i - 1] += is_e ? l : -l;
  p[g.i] += is_e ? -l : l;
  return Composition(std::move(p));
}

inline bool power_nonzero(const GeneratorLabel& g, int m) {
  return g.weight.part(g.kind == GeneratorKind::kE ? g.i + 1 : g.i) >= m;
}

}  // namespace detail

// Image of a single generator on its weight piece, prefactor included; the
// zero class when the weight has the wrong shape.
inline KClass phi_generator(const GeneratorLabel& g) {
  const std::size_t d = static_cast<std::size_t>(g.weight.d());
  const auto bare = detail::bare_generator(g);
  if (!bare) return KClass::zero(d);
  return bare->scaled(detail::minus_q_power(d, detail::generator_prefactor_exponent(g)));
}

// Ordered convolution product of the m bare single-step classes making up
// X^m pi_weight, leftmost factor first; no prefactors, no division.
inline KClass bare_power(const GeneratorLabel& g, int m, KernelConvention conv) {
  if (m < 1) throw InvalidArgument("power must be positive");
  detail::check_label(g);
  const std::size_t d = static_cast<std::size_t>(g.weight.d());
  if (!detail::power_nonzero(g, m)) return KClass::zero(d);
  GeneratorLabel step = g;
  step.weight = detail::chain_weight(g, m - 1);
  KClass acc = *detail::bare_generator(step);
  for (int l = m - 2; l >= 0; --l) {
    step.weight = detail::chain_weight(g, l);
    acc = convolve_estep(acc, *detail::bare_generator(step), conv);
  }
  return acc;
}

// Product of the m prefactors of X^m pi_weight.
inline LaurentPoly power_prefactor(const GeneratorLabel& g, int m) {
  const std::size_t d = static_cast<std::size_t>(g.weight.d());
  int e = 0;
  GeneratorLabel step = g;
  for (int l = 0; l < m; ++l) {
    step.weight = detail::chain_weight(g, l);
    e += detail::generator_prefactor_exponent(step);
  }
  return detail::minus_q_power(d, e);
}

// Image of X^{(m)} pi_weight = X^m pi_weight / [m]!. Throws NotDivisible when
// the product is not divisible by [m]! in the Laurent ring.
inline KClass phi_divided_power(const GeneratorLabel& g, int m, KernelConvention conv) {
  const KClass bare = bare_power(g, m, conv);
  if (!bare.support()) return bare;
  const std::size_t d = bare.var_count();
  LaurentPoly el = exact_divide(bare.element(), q_factorial(m, d));
  return KClass(*bare.support(), power_prefactor(g, m) * el);
}

// Is f = c q^e with c = +-1?
inline bool is_unit(const LaurentPoly& f) {
  if (!f.is_monomial()) return false;
  const auto& [e, c] = f.lead();
  if (c != 1 && c != -1) return false;
  for (std::size_t t = 0; t + 1 < e.size(); ++t)
    if (e[t] != 0) return false;
  return true;
}

struct E05Report {
  GeneratorKind kind = GeneratorKind::kE;
  Composition v;  // the composition of d - 1 labelling the leftmost factor
  int m = 1;
  int k = 0;
  KernelConvention convention = KernelConvention::kRatio;
  LaurentPoly lhs{0};
  LaurentPoly rhs{0};
  std::optional<LaurentPoly> ratio;
  bool unit = false;
};

// Closed form q^{m(m-1)/2} [m]! prod_{y in Y} y^k prod_{t in T} x_t^m / prod Y
// for n = 2; for E, Y = positions v_1 - m + 1 .. v_1 and T the positions
// below; for F the mirror image.
inline LaurentPoly e05_closed_form(GeneratorKind kind, const Composition& v, int m, int k) {
  if (v.n() != 2) throw InvalidArgument("e05 closed form is stated for n = 2");
  const int d = v.d() + 1;
  const bool is_e = kind == GeneratorKind::kE;
  const int active = is_e ? v.part(1) : v.part(2);
  if (m < 1 || m > active + 1) throw InvalidArgument("e05 closed form needs 1 <= m <= v_1 + 1 (mirrored for F)");
  const int y_first = is_e ? v.part(1) - m + 1 : v.part(1);
  Exponents e(static_cast<std::size_t>(d) + 1, 0);
  int t_count = 0;
  for (int t = 0; t < d; ++t) {
    const bool in_y = t >= y_first && t < y_first + m;
    const bool in_t = is_e ? t < y_first : t >= y_first + m;
    if (in_y) e[static_cast<std::size_t>(t)] += k;
    if (in_t) {
      e[static_cast<std::size_t>(t)] += m;
      ++t_count;
    }
  }
  for (int t = y_first; t < y_first + m; ++t) e[static_cast<std::size_t>(t)] -= t_count;
  const std::size_t dd = static_cast<std::size_t>(d);
  return LaurentPoly::q(dd, m * (m - 1) / 2) * q_factorial(m, dd) * LaurentPoly::monomial(std::move(e));
}

// Label whose m-th power has leftmost factor supported on E_12(v; 1) (E) or
// E_21(v; 1) (F).
inline GeneratorLabel e05_label(GeneratorKind kind, const Composition& v, int m, int k) {
  GeneratorLabel g{kind, 1, k, {}};
  if (kind == GeneratorKind::kE) {
    g.weight = Composition({v.part(1) - m + 1, v.part(2) + m});
  } else {
    g.weight = Composition({v.part(1) + m, v.part(2) - m + 1});
  }
  return g;
}

inline E05Report verify_e05(GeneratorKind kind, const Composition& v, int m, int k, KernelConvention conv) {
  E05Report rep;
  rep.kind = kind;
  rep.v = v;
  rep.m = m;
  rep.k = k;
  rep.convention = conv;
  rep.rhs = e05_closed_form(kind, v, m, k);
  rep.lhs = bare_power(e05_label(kind, v, m, k), m, conv).element();
  rep.ratio = try_divide(rep.lhs, rep.rhs);
  rep.unit = rep.ratio && is_unit(*rep.ratio);
  return rep;
}

// (-1)^a q^{a(a-1+v_i)} y_1^l ... y_a^l prod_{t <= v̄_i} x_t^a / (y_1 ... y_a)
// with y_s = x_{s + v̄_i}: the displayed top divided power on E_{i,i+1}(v; a).
inline LaurentPoly top_divided_power_formula(std::size_t i, int l, int a, const Composition& v) {
  const std::size_t d = static_cast<std::size_t>(v.d() + a);
  const int vb = v.partial_sum(i);
  Exponents e(d + 1, 0);
  for (int t = 0; t < vb; ++t) e[static_cast<std::size_t>(t)] = a;
  for (int s = 0; s < a; ++s) e[static_cast<std::size_t>(vb + s)] = l - vb;
  e[d] = a * (a - 1 + v.part(i));
  return LaurentPoly::monomial(std::move(e), a % 2 ? -1 : 1);
}

// Label of E_{i,l}^{(a)} pi_{v + a e_{i+1}}, the top divided power landing on
// E_{i,i+1}(v; a).
inline GeneratorLabel top_divided_power_label(std::size_t i, int l, int a, const Composition& v) {
  return GeneratorLabel{GeneratorKind::kE, i, l, v.plus_unit(i + 1, a)};
}

struct WeightCheck {
  Composition v;
  std::size_t j = 1;
  std::optional<int> exponent;
  int expected = 0;
  bool pass = false;
};

// Is the constant term of the Cartan series on the weight piece v equal to
// q^{v_j}?
inline WeightCheck weight_constant_check(const Composition& v, std::size_t j, const IndexVariant& iv) {
  WeightCheck w{v, j, std::nullopt, v.part(j), false};
  w.exponent = constant_q_exponent(cartan_series(v, j, Direction::kInverseZ, 1, iv));
  w.pass = w.exponent && *w.exponent == w.expected;
  return w;
}

}  // namespace kst
