#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "kst/drinfeld.hpp"

namespace kst {

// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
using UniPoly = std::vector<Rational>;

namespace detail {

inline void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Remainder of a modulo a monic g.
inline UniPoly uni_mod(UniPoly a, const UniPoly& g) {
  trim(a);
  const std::size_t n = g.size() - 1;
  while (a.size() > n) {
    const Rational lead = a.back();
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t k = 0; k <= n; ++k) a[shift + k] -= lead * g[k];
    trim(a);
  }
  return a;
}

// Exact quotient a / g for a monic g dividing a.
inline UniPoly uni_div_exact(UniPoly a, const UniPoly& g) {
  trim(a);
  const std::size_t n = g.size() - 1;
  if (a.size() < g.size()) throw NotDivisible("cyclotomic division");
  UniPoly quo(a.size() - n, Rational(0));
  while (a.size() > n) {
    const Rational lead = a.back();
    const std::size_t shift = a.size() - 1 - n;
    quo[shift] = lead;
    for (std::size_t k = 0; k <= n; ++k) a[shift + k] -= lead * g[k];
    trim(a);
  }
  if (!a.empty()) throw NotDivisible("cyclotomic division left a remainder");
  return quo;
}

}  // namespace detail

// Phi_m, from x^m - 1 divided by Phi_e for every proper divisor e of m.
inline const UniPoly& cyclotomic_polynomial(int m) {
  if (m < 1) throw InvalidArgument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, UniPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  UniPoly p(static_cast<std::size_t>(m) + 1, Rational(0));
  p[0] = -1;
  p.back() = 1;
  for (int e = 1; e < m; ++e)
    if (m % e == 0) p = detail::uni_div_exact(p, cyclotomic_polynomial(e));
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

inline int euler_phi(int m) { return static_cast<int>(cyclotomic_polynomial(m).size()) - 1; }

// An element of Q(zeta_m), zeta_m = exp(2 pi i / m), stored as coordinates
// on 1, zeta, ..., zeta^{phi(m)-1}.
class CyclotomicNumber {
 public:
  explicit CyclotomicNumber(int m, const Rational& c = 0) : m_(m), c_(static_cast<std::size_t>(euler_phi(m)), 0) {
    c_[0] = c;
  }
  static CyclotomicNumber zeta_power(int m, long e) {
    CyclotomicNumber z(m);
    long r = e % m;
    if (r < 0) r += m;
    UniPoly p(static_cast<std::size_t>(r) + 1, Rational(0));
    p.back() = 1;
    z.set(std::move(p));
    return z;
  }

  int order() const { return m_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
  }

  CyclotomicNumber& operator+=(const CyclotomicNumber& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    a.check(b);
    CyclotomicNumber r(a.m_);
    r.set(detail::uni_mul(a.c_, b.c_));
    return r;
  }
  friend CyclotomicNumber operator*(const Rational& s, CyclotomicNumber a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }

  std::string to_string() const {
    std::string out = "{\"order\":" + std::to_string(m_) + ",\"coords\":[";
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) out += ',';
      out += '"' + c_[k].get_str() + '"';
    }
    return out + "]}";
  }

 private:
  void check(const CyclotomicNumber& o) const {
    if (m_ != o.m_) throw InvalidArgument("cyclotomic numbers of different orders");
  }
  void set(UniPoly p) {
    p = detail::uni_mod(std::move(p), cyclotomic_polynomial(m_));
    std::fill(c_.begin(), c_.end(), Rational(0));
    for (std::size_t k = 0; k < p.size(); ++k) c_[k] = p[k];
  }

  int m_;
  std::vector<Rational> c_;
};

// Laurent polynomial in x_1..x_d over Q(zeta_m); keys are x exponents.
class CycloPoly {
 public:
  CycloPoly(std::size_t var_count, int m) : d_(var_count), m_(m) {}

  std::size_t var_count() const { return d_; }
  int order() const { return m_; }
  const std::map<Exponents, CyclotomicNumber>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exponents& e, const CyclotomicNumber& c) {
    if (e.size() != d_) throw VarCountMismatch("CycloPoly: exponent length");
    auto it = t_.find(e);
    if (it == t_.end()) {
      if (!c.is_zero()) t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  friend CycloPoly operator+(const CycloPoly& a, const CycloPoly& b) {
    a.check(b);
    CycloPoly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend CycloPoly operator*(const CycloPoly& a, const CycloPoly& b) {
    a.check(b);
    CycloPoly r(a.d_, a.m_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponents e(a.d_);
        for (std::size_t k = 0; k < a.d_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const CycloPoly& a, const CycloPoly& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.t_ == b.t_;
  }

 private:
  void check(const CycloPoly& o) const {
    if (d_ != o.d_ || m_ != o.m_) throw InvalidArgument("CycloPoly: incompatible operands");
  }

  std::size_t d_;
  int m_;
  std::map<Exponents, CyclotomicNumber> t_;
};

// q -> zeta_m.
inline CycloPoly specialize_at_root(const LaurentPoly& f, int m) {
  const std::size_t d = f.var_count();
  CycloPoly out(d, m);
  for (const auto& [e, c] : f.terms()) {
    out.add_term(Exponents(e.begin(), e.end() - 1), c * CyclotomicNumber::zeta_power(m, e[d]));
  }
  return out;
}

// [m]! vanishes at a primitive root of order r iff some k <= m has
// zeta^{2k} = 1 with zeta^2 != 1.
inline bool q_factorial_vanishes(int m, int root_order) {
  if (root_order <= 2) return false;
  for (int k = 1; k <= m; ++k)
    if ((2 * k) % root_order == 0) return true;
  return false;
}

struct RootOfUnityReport {
  GeneratorLabel label;
  int m_dp = 1;
  int m_root = 1;
  bool precondition = false;        // [m_dp]! specializes to 0
  bool naive_power_vanishes = false;  // the image of X^{m_dp} specializes to 0
  bool divided_power_nonzero = false;
  bool pass = false;
};

// At q = zeta_{m_root}: [m_dp]! becomes 0, hence so does the image of the
// plain power, while the divided-power image survives.
inline RootOfUnityReport divided_power_nonvanishing(std::size_t i, int k, const Composition& weight, int m_dp,
                                                    int m_root, KernelConvention conv) {
  RootOfUnityReport r;
  r.label = GeneratorLabel{GeneratorKind::kE, i, k, weight};
  r.m_dp = m_dp;
  r.m_root = m_root;
  r.precondition = specialize_at_root(q_factorial(m_dp), m_root).is_zero();
  if (!r.precondition) return r;
  const KClass naive = bare_power(r.label, m_dp, conv);
  r.naive_power_vanishes = specialize_at_root(naive.element(), m_root).is_zero();
  const KClass dp = phi_divided_power(r.label, m_dp, conv);
  r.divided_power_nonzero = !specialize_at_root(dp.element(), m_root).is_zero();
  r.pass = r.naive_power_vanishes && r.divided_power_nonzero;
  return r;
}

}  // namespace kst
