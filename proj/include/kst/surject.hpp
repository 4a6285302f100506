#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "kst/drinfeld.hpp"

namespace kst {

// sum_t (alpha_t - min alpha)^2
inline long alpha_norm(const std::vector<int>& alpha) {
  if (alpha.empty()) throw InvalidArgument("alpha_norm: empty vector");
  const int lo = *std::min_element(alpha.begin(), alpha.end());
  long n = 0;
  for (int a : alpha) n += static_cast<long>(a - lo) * (a - lo);
  return n;
}

struct Witness;
using WitnessPtr = std::shared_ptr<const Witness>;

// A class on diag(weight).
struct DiagonalLeaf {
  Composition weight;
  LaurentPoly element{0};
};
// E_{i,l}^{(a)} pi_{v + a e_{i+1}}, landing on E_{i,i+1}(v; a).
struct DividedPowerLeaf {
  std::size_t i = 1;
  int l = 0;
  int a = 1;
  Composition v;
};
struct ConvolveNode {
  WitnessPtr left, right;
};
// coeff * q^q_power * child
struct ScaleNode {
  Rational coeff;
  int q_power = 0;
  WitnessPtr child;
};
struct AddNode {
  std::vector<WitnessPtr> children;
};

struct Witness {
  std::variant<DiagonalLeaf, DividedPowerLeaf, ConvolveNode, ScaleNode, AddNode> node;
};

inline WitnessPtr make_diagonal(Composition w, LaurentPoly element) {
  return std::make_shared<const Witness>(Witness{DiagonalLeaf{std::move(w), std::move(element)}});
}
inline WitnessPtr make_divided_power(std::size_t i, int l, int a, Composition v) {
  return std::make_shared<const Witness>(Witness{DividedPowerLeaf{i, l, a, std::move(v)}});
}
inline WitnessPtr make_convolve(WitnessPtr left, WitnessPtr right) {
  return std::make_shared<const Witness>(Witness{ConvolveNode{std::move(left), std::move(right)}});
}
inline WitnessPtr make_scale(Rational coeff, int q_power, WitnessPtr child) {
  return std::make_shared<const Witness>(Witness{ScaleNode{std::move(coeff), q_power, std::move(child)}});
}
inline WitnessPtr make_add(std::vector<WitnessPtr> children) {
  if (children.empty()) throw InvalidArgument("make_add: no children");
  return std::make_shared<const Witness>(Witness{AddNode{std::move(children)}});
}

// Interprets witnesses; shared subtrees are evaluated once per evaluator.
class WitnessEvaluator {
 public:
  explicit WitnessEvaluator(KernelConvention conv) : conv_(conv) {}

  KClass operator()(const WitnessPtr& w) {
    if (auto it = cache_.find(w.get()); it != cache_.end()) return it->second;
    KClass out = std::visit([&](const auto& node) { return eval(node); }, w->node);
    cache_.emplace(w.get(), out);
    keep_.push_back(w);
    return out;
  }

 private:
  KClass eval(const DiagonalLeaf& leaf) { return KClass(CompMatrix::diag(leaf.weight), leaf.element); }
  KClass eval(const DividedPowerLeaf& leaf) {
    return phi_divided_power(top_divided_power_label(leaf.i, leaf.l, leaf.a, leaf.v), leaf.a, conv_);
  }
  KClass eval(const ConvolveNode& node) {
    const KClass l = (*this)(node.left), r = (*this)(node.right);
    if (!l.support() || !r.support()) return KClass::zero(l.var_count());
    if (l.support()->is_diagonal() && r.support()->is_diagonal()) {
      if (!(l.support()->col_sums() == r.support()->row_sums())) {
        throw IncompatibleSupports("convolve: diagonal weights differ");
      }
      return KClass(*l.support(), l.element() * r.element());
    }
    if (l.support()->is_diagonal()) return convolve_diag(l, r);
    if (r.support()->is_diagonal()) return convolve_diag_right(l, r);
    return convolve_estep(l, r, conv_);
  }
  KClass eval(const ScaleNode& node) {
    const KClass c = (*this)(node.child);
    if (node.coeff == 0) return KClass::zero(c.var_count());
    return c.scaled(LaurentPoly::q(c.var_count(), node.q_power) * node.coeff);
  }
  KClass eval(const AddNode& node) {
    KClass acc = (*this)(node.children.front());
    for (std::size_t k = 1; k < node.children.size(); ++k) acc = acc + (*this)(node.children[k]);
    return acc;
  }

  KernelConvention conv_;
  std::map<const Witness*, KClass> cache_;
  std::vector<WitnessPtr> keep_;
};

inline KClass evaluate_witness(const WitnessPtr& w, KernelConvention conv) { return WitnessEvaluator(conv)(w); }

// Full symmetrization S(y^alpha) over the block y_s = x_{v̄_i + s}.
inline LaurentPoly full_symmetric(std::size_t d, const IndexSet& block, const std::vector<int>& alpha) {
  return stabilizer_size(alpha) * monomial_symmetric(d, block, alpha);
}

// Builds witnesses for S(y^alpha) on E_{i,i+1}(v; a), following the
// induction on the norm. Results are memoized per (alpha, v).
class SurjectionBuilder {
 public:
  SurjectionBuilder(std::size_t i, KernelConvention conv) : i_(i), conv_(conv), eval_(conv) {}

  // Every (parent norm, child norm) pair of an express -> express call.
  struct Step {
    long parent_norm = 0;
    long child_norm = 0;
  };

  std::size_t block_index() const { return i_; }
  KernelConvention convention() const { return conv_; }
  const std::vector<Step>& steps() const { return steps_; }
  bool norms_strictly_decrease() const {
    return std::all_of(steps_.begin(), steps_.end(), [](const Step& s) { return s.child_norm < s.parent_norm; });
  }
  KClass evaluate(const WitnessPtr& w) { return eval_(w); }

  // Witness for the class with element (y_1 ... y_a)^k on E_{i,i+1}(v; a):
  // a top divided power times a diagonal monomial corrector acting from the
  // right, rescaled by the inverse of its unit.
  WitnessPtr express_power(int k, int a, const Composition& v) {
    check_block(v);
    if (a < 1) throw InvalidArgument("express_power: a must be positive");
    const std::size_t d = static_cast<std::size_t>(v.d() + a);
    const std::size_t y0 = static_cast<std::size_t>(v.partial_sum(i_));
    const auto probe = leading_monomial(make_divided_power(i_, 0, a, v));
    const int l = k - probe.first[y0];
    const WitnessPtr top = make_divided_power(i_, l, a, v);
    const auto [e, c] = leading_monomial(top);
    Exponents corr(d + 1, 0);
    for (std::size_t t = 0; t < d; ++t) {
      if (t >= y0 && t < y0 + static_cast<std::size_t>(a)) continue;
      corr[t] = -e[t];
    }
    const WitnessPtr fixed = make_convolve(top, make_diagonal(v.plus_unit(i_ + 1, a), LaurentPoly::monomial(corr)));
    return make_scale(1 / c, -e[d], fixed);
  }

  // Witness for S(y^alpha) on E_{i,i+1}(v; a), a = |alpha|, alpha weakly
  // decreasing.
  WitnessPtr express(const std::vector<int>& alpha, const Composition& v) {
    check_block(v);
    if (alpha.empty()) throw InvalidArgument("express: empty alpha");
    if (!is_dominant(alpha)) throw NonDominant("express: alpha must be weakly decreasing");
    const auto key = std::make_pair(alpha, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int a = static_cast<int>(alpha.size());
    const std::size_t d = static_cast<std::size_t>(v.d() + a);
    const IndexSet y = index_range(static_cast<std::size_t>(v.partial_sum(i_)), alpha.size());
    const long h = alpha_norm(alpha);
    WitnessPtr out;
    if (h == 0) {
      out = make_scale(factorial(a), 0, express_power(alpha.front(), a, v));
    } else {
      const int s = static_cast<int>(std::count(alpha.begin(), alpha.end(), alpha.front()));
      const auto [shift_p, shift_q] = pq_shifts(s, a);
      std::vector<int> beta(alpha.begin() + s, alpha.end());
      for (int& b : beta) b += shift_p;
      steps_.push_back({h, alpha_norm(beta)});
      steps_.push_back({h, 0});
      const WitnessPtr p = express(beta, v.plus_unit(i_, s));
      const WitnessPtr q = express_power(alpha.front() + shift_q, s, v.plus_unit(i_ + 1, a - s));
      const WitnessPtr pq = make_convolve(p, q);
      const MonomialDecomposition dec = monomial_decompose(eval_(pq).element(), y);

      const auto lead = dec.find(alpha);
      if (lead == dec.end() || !lead->second.is_constant()) {
        throw InvalidArgument("express: leading coefficient is missing or not a rational constant");
      }
      const Rational c_alpha = lead->second.lead().second;
      std::vector<WitnessPtr> parts{pq};
      for (const auto& [gamma, coef] : dec) {
        if (gamma == alpha) continue;
        const long g = alpha_norm(gamma);
        steps_.push_back({h, g});
        if (g >= h) throw InvalidArgument("express: remainder term does not lower the norm");
        const WitnessPtr sub = express(gamma, v);
        const Rational stab = stabilizer_size(gamma);
        for (const auto& [e, c] : coef.terms()) {
          for (std::size_t t = 0; t < d; ++t) {
            if (e[t] != 0) throw InvalidArgument("express: remainder coefficient involves x variables");
          }
          parts.push_back(make_scale(-c / stab, e[d], sub));
        }
      }
      const WitnessPtr body = parts.size() == 1 ? pq : make_add(std::move(parts));
      out = make_scale(stabilizer_size(alpha) / c_alpha, 0, body);
    }
    memo_.emplace(key, out);
    return out;
  }

  // Exponent shifts (c_P, c_Q) applied to P = S'(y^beta) prod y_u^{c_P} and
  // Q = prod y_t^{alpha_1 + c_Q} so that P Q prod kernel equals
  // sign * y^{alpha'} S'(y^beta) prod (y_t - q^2 y_u) / (y_t - y_u).
  std::pair<int, int> pq_shifts(int s, int a) const {
    switch (conv_) {
      case KernelConvention::kRatio: return {-s, a - s};
      case KernelConvention::kSplitFactor: return {0, 0};
      default: break;
    }
    throw InvalidArgument("express: kernel " + to_string(conv_) + " is not a monomial multiple of the split factor");
  }

 private:
  void check_block(const Composition& v) const {
    if (i_ < 1 || i_ + 1 > v.n()) throw InvalidArgument("block index i must lie in 1..n-1");
  }

  std::pair<Exponents, Rational> leading_monomial(const WitnessPtr& w) {
    const KClass c = eval_(w);
    if (!c.element().is_monomial()) throw InvalidArgument("top divided power is not a monomial");
    return c.element().lead();
  }

  std::size_t i_;
  KernelConvention conv_;
  WitnessEvaluator eval_;
  std::map<std::pair<std::vector<int>, Composition>, WitnessPtr> memo_;
  std::vector<Step> steps_;
};

struct WitnessReport {
  std::vector<int> alpha;
  Composition v;
  std::size_t i = 1;
  LaurentPoly evaluated{0};
  LaurentPoly target{0};
  std::optional<LaurentPoly> unit;
  bool norms_decrease = false;
  bool pass = false;
};

// Builds and evaluates the witness for S(y^alpha) and compares with the
// target class.
inline WitnessReport verify_witness(const std::vector<int>& alpha, const Composition& v, std::size_t i,
                                    KernelConvention conv, WitnessPtr* witness_out = nullptr) {
  SurjectionBuilder b(i, conv);
  const WitnessPtr w = b.express(alpha, v);
  if (witness_out) *witness_out = w;
  WitnessReport r;
  r.alpha = alpha;
  r.v = v;
  r.i = i;
  const std::size_t d = static_cast<std::size_t>(v.d()) + alpha.size();
  const KClass c = b.evaluate(w);
  r.evaluated = c.element();
  r.target = full_symmetric(d, index_range(static_cast<std::size_t>(v.partial_sum(i)), alpha.size()), alpha);
  const auto ratio = try_divide(r.evaluated, r.target);
  if (ratio && is_unit(*ratio)) r.unit = *ratio;
  r.norms_decrease = b.norms_strictly_decrease();
  const bool support_ok = c.support() && *c.support() == e_matrix(i, i + 1, v, static_cast<int>(alpha.size()));
  r.pass = support_ok && r.unit && r.norms_decrease;
  return r;
}

struct E6Report {
  std::vector<int> alpha;
  int s = 0;
  bool laurent = false;
  Rational leading{0};
  Rational expected{0};
  std::vector<std::pair<std::vector<int>, long>> remainder_norms;
  LaurentPoly value{0};
  bool pass = false;
};

// The right side S(y_1^{alpha_1} ... y_s^{alpha_s} S'(y^{alpha''})
// prod_{t <= s < u} (1 + (1 - q^2) y_u / (y_t - y_u))) summed over the full
// symmetric group on a variables, checked against (a-s)! S(y^alpha) + T.
inline E6Report verify_e6(const std::vector<int>& alpha, std::optional<int> s_in = std::nullopt) {
  if (alpha.empty()) throw InvalidArgument("verify_e6: empty alpha");
  if (!is_dominant(alpha)) throw NonDominant("verify_e6: alpha must be weakly decreasing");
  const int a = static_cast<int>(alpha.size());
  const int s = static_cast<int>(std::count(alpha.begin(), alpha.end(), alpha.front()));
  if (s_in && *s_in != s) throw InvalidArgument("verify_e6: s must be the multiplicity of the largest part");
  const std::size_t d = alpha.size();
  const IndexSet I = index_range(0, static_cast<std::size_t>(s));
  const IndexSet J = index_range(static_cast<std::size_t>(s), static_cast<std::size_t>(a - s));
  const IndexSet all = index_range(0, d);

  E6Report r;
  r.alpha = alpha;
  r.s = s;
  const std::vector<int> head(alpha.begin(), alpha.begin() + s), tail(alpha.begin() + s, alpha.end());
  LaurentPoly inner = block_monomial(d, I, head) * symmetrize_full(block_monomial(d, J, tail), J);
  RationalExpr e = kernel_expr(d, I, J, KernelConvention::kSplitFactor);
  e *= inner;
  std::vector<RationalExpr> terms;
  IndexSet images = all;
  do {
    terms.push_back(e.permuted(block_permutation(d, all, images)));
  } while (std::next_permutation(images.begin(), images.end()));
  try {
    r.value = sum(terms).to_laurent();
    r.laurent = true;
  } catch (const ResidualDenominator&) {
    return r;
  }
  const MonomialDecomposition dec = monomial_decompose(r.value, all);
  r.expected = factorial(a - s) * stabilizer_size(alpha);
  bool ok = true;
  const long h = alpha_norm(alpha);
  for (const auto& [gamma, coef] : dec) {
    if (gamma == alpha) {
      ok = ok && coef.is_constant();
      if (coef.is_constant()) r.leading = coef.lead().second;
      continue;
    }
    const long g = alpha_norm(gamma);
    r.remainder_norms.emplace_back(gamma, g);
    ok = ok && g < h;
  }
  r.pass = ok && r.leading == r.expected;
  return r;
}

}  // namespace kst
