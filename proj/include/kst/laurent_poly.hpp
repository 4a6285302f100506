#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kst/error.hpp"

namespace kst {

using Rational = mpq_class;

// Exponent vector of a Laurent monomial: entries 0..d-1 belong to x_1..x_d,
// the last entry to q.
using Exponents = std::vector<int>;

// Element of Q[x_1^{+-1}, ..., x_d^{+-1}, q^{+-1}] in canonical form.
//
// Terms are kept in a map ordered lexicographically on the exponent vector
// (q last), largest first; no stored coefficient is zero. Two values are
// equal iff var_count and term maps agree.
//
// Variable indices in the C++ API are 0-based; the text format is 1-based
// (x1 is index 0).
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational, std::greater<Exponents>>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t var_count) : var_count_(var_count) {}
  LaurentPoly(std::size_t var_count, const Rational& c) : var_count_(var_count) {
    if (c != 0) terms_.emplace(Exponents(var_count + 1, 0), c);
  }

  static LaurentPoly monomial(Exponents e, const Rational& c = 1) {
    if (e.empty()) throw InvalidArgument("monomial: exponent vector needs a q entry");
    LaurentPoly p(e.size() - 1);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }
  static LaurentPoly x(std::size_t var_count, std::size_t index, int power = 1) {
    if (index >= var_count) throw InvalidArgument("x: variable index out of range");
    Exponents e(var_count + 1, 0);
    e[index] = power;
    return monomial(std::move(e));
  }
  static LaurentPoly q(std::size_t var_count, int power = 1) {
    Exponents e(var_count + 1, 0);
    e[var_count] = power;
    return monomial(std::move(e));
  }

  std::size_t var_count() const { return var_count_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](int v) { return v == 0; }));
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::pair<const Exponents, Rational>& lead() const { return *terms_.begin(); }
  const std::pair<const Exponents, Rational>& trail() const { return *terms_.rbegin(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != var_count_ + 1) throw VarCountMismatch("add_term: exponent length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Smallest / largest exponent of variable `index` (index == var_count is q).
  int min_degree(std::size_t index) const {
    int m = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) m = std::min(m, e[index]);
    return m;
  }
  int max_degree(std::size_t index) const {
    int m = std::numeric_limits<int>::min();
    for (const auto& [e, c] : terms_) m = std::max(m, e[index]);
    return m;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly r(a.var_count_);
    Exponents e(a.var_count_ + 1);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.var_count_ == b.var_count_ && a.terms_ == b.terms_;
  }

  // Multiply by c * monomial(shift); keeps the term order, so no re-sorting.
  LaurentPoly shifted(const Exponents& shift, const Rational& c = 1) const {
    if (shift.size() != var_count_ + 1) throw VarCountMismatch("shifted: exponent length");
    LaurentPoly r(var_count_);
    if (c == 0) return r;
    Exponents e(var_count_ + 1);
    for (const auto& [ea, ca] : terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + shift[k];
      r.terms_.emplace_hint(r.terms_.end(), e, ca * c);
    }
    return r;
  }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r(var_count_, 1), base = *this;
    while (n) {
      if (n & 1u) r *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return r;
  }

  // Places x_i at x_{i+offset} in a ring with new_var_count variables.
  LaurentPoly embed(std::size_t new_var_count, std::size_t offset = 0) const {
    if (offset + var_count_ > new_var_count) throw InvalidArgument("embed: target ring too small");
    LaurentPoly r(new_var_count);
    Exponents e(new_var_count + 1, 0);
    for (const auto& [ea, ca] : terms_) {
      std::fill(e.begin(), e.end(), 0);
      for (std::size_t k = 0; k < var_count_; ++k) e[k + offset] = ea[k];
      e[new_var_count] = ea[var_count_];
      r.add_term(e, ca);
    }
    return r;
  }

  // q -> 1.
  LaurentPoly at_q_one() const {
    LaurentPoly r(var_count_);
    for (const auto& [e, c] : terms_) {
      Exponents x = e;
      x[var_count_] = 0;
      r.add_term(x, c);
    }
    return r;
  }

  void check_same(const LaurentPoly& o) const {
    if (var_count_ != o.var_count_) {
      throw VarCountMismatch("Laurent polynomials over " + std::to_string(var_count_) + " and " +
                             std::to_string(o.var_count_) + " variables");
    }
  }

 private:
  std::size_t var_count_ = 0;
  TermMap terms_;
};

// Quotient h with h * g == f, or nullopt when there is none.
//
// Leading-term reduction in the lex order. If h exists its exponents lie in
// the box [deg_min f - deg_min g, deg_max f - deg_max g] for every variable;
// a quotient term outside that box proves non-divisibility, and since the
// quotient terms strictly decrease inside a finite box the loop terminates.
inline std::optional<LaurentPoly> try_divide(const LaurentPoly& f, const LaurentPoly& g) {
  f.check_same(g);
  if (g.is_zero()) throw InvalidArgument("exact_divide: division by zero");
  const std::size_t width = f.var_count() + 1;
  LaurentPoly h(f.var_count());
  if (f.is_zero()) return h;

  std::vector<int> lo(width), hi(width);
  for (std::size_t k = 0; k < width; ++k) {
    lo[k] = f.min_degree(k) - g.min_degree(k);
    hi[k] = f.max_degree(k) - g.max_degree(k);
    if (lo[k] > hi[k]) return std::nullopt;
  }

  const auto& [glead, gcoef] = g.lead();
  LaurentPoly r = f;
  Exponents shift(width);
  while (!r.is_zero()) {
    const auto& [rlead, rcoef] = r.lead();
    for (std::size_t k = 0; k < width; ++k) {
      shift[k] = rlead[k] - glead[k];
      if (shift[k] < lo[k] || shift[k] > hi[k]) return std::nullopt;
    }
    Rational c = rcoef / gcoef;
    h.add_term(shift, c);
    r -= g.shifted(shift, c);
  }
  return h;
}

inline LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
  auto h = try_divide(f, g);
  if (!h) throw NotDivisible("exact_divide: divisor does not divide dividend");
  return std::move(*h);
}

// [k] = (q^k - q^-k) / (q - q^-1); [-k] = -[k].
inline LaurentPoly q_integer(int k, std::size_t var_count = 0) {
  LaurentPoly r(var_count);
  const int n = k < 0 ? -k : k;
  const Rational sign = k < 0 ? -1 : 1;
  for (int j = 0; j < n; ++j) {
    Exponents e(var_count + 1, 0);
    e[var_count] = n - 1 - 2 * j;
    r.add_term(e, sign);
  }
  return r;
}

inline LaurentPoly q_factorial(int m, std::size_t var_count = 0) {
  if (m < 0) throw InvalidArgument("q_factorial: negative argument");
  LaurentPoly r(var_count, 1);
  for (int k = 2; k <= m; ++k) r *= q_integer(k, var_count);
  return r;
}

// Permutation of variable indices, sigma[i] = image of i (0-based).
using Permutation = std::vector<std::size_t>;

inline bool is_bijection(const Permutation& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t s : sigma) {
    if (s >= sigma.size() || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

// x_i -> x_{sigma(i)}; a left action: act(f, s o t) == act(act(f, t), s).
inline LaurentPoly permute_variables(const LaurentPoly& f, const Permutation& sigma) {
  if (sigma.size() != f.var_count() || !is_bijection(sigma)) {
    throw InvalidArgument("permute_variables: not a bijection on the variables");
  }
  LaurentPoly r(f.var_count());
  Exponents e(f.var_count() + 1);
  for (const auto& [ea, c] : f.terms()) {
    for (std::size_t i = 0; i < sigma.size(); ++i) e[sigma[i]] = ea[i];
    e.back() = ea.back();
    r.add_term(e, c);
  }
  return r;
}

inline Permutation compose(const Permutation& s, const Permutation& t) {
  Permutation r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) r[i] = s[t[i]];
  return r;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Canonical text: `3/2*x1^2*x2^-1*q^-1 + 1`. Every term prints its
// coefficient; every nonzero exponent prints as `^e`; the zero polynomial is
// `0`.
inline std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  const std::size_t d = f.var_count();
  for (const auto& [e, c] : f.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Rational a = abs(c);
    out += a.get_str();
    for (std::size_t k = 0; k < d; ++k) {
      if (e[k] != 0) out += "*x" + std::to_string(k + 1) + "^" + std::to_string(e[k]);
    }
    if (e[d] != 0) out += "*q^" + std::to_string(e[d]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << to_string(f); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t var_count) : s_(text), d_(var_count) {}

  // Terms with their exponent vectors sized to the largest index seen.
  std::vector<std::pair<std::vector<std::pair<std::size_t, int>>, std::pair<int, Rational>>> terms;
  std::size_t max_index = 0;

  void parse() {
    skip_ws();
    if (at_end()) fail("empty input");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(sign);
      skip_ws();
    }
  }

 private:
  void parse_term(int sign) {
    Rational coef(sign);
    std::vector<std::pair<std::size_t, int>> xs;
    int qexp = 0;
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) fail("dangling factor");
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coef *= parse_rational();
      } else if (ch == 'x') {
        ++pos_;
        std::size_t idx = parse_unsigned();
        if (idx == 0) fail("variables are numbered from x1");
        if (d_ != npos && idx > d_) fail("variable x" + std::to_string(idx) + " out of range");
        max_index = std::max(max_index, idx);
        xs.emplace_back(idx - 1, parse_power());
      } else if (ch == 'q') {
        ++pos_;
        qexp += parse_power();
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    terms.push_back({std::move(xs), {qexp, coef}});
  }

  int parse_power() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    int sign = 1;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    return sign * static_cast<int>(parse_unsigned());
  }

  Rational parse_rational() {
    std::string num = digits();
    std::string den = "1";
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      den = digits();
    }
    const mpz_class n(num), dn(den);
    if (dn == 0) fail("zero denominator");
    Rational r(n, dn);
    r.canonicalize();
    return r;
  }

  std::size_t parse_unsigned() {
    std::string ds = digits();
    if (ds.size() > 9) fail("integer too large");
    return static_cast<std::size_t>(std::stoul(ds));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::string_view s_;
  std::size_t d_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the canonical text format; also accepts omitted coefficients and
// exponents (`x1*q` for `1*x1^1*q^1`). With var_count omitted the ring is the
// smallest one containing every variable mentioned.
inline LaurentPoly parse_laurent(std::string_view text,
                                 std::size_t var_count = detail::PolyParser::npos) {
  detail::PolyParser p(text, var_count);
  p.parse();
  const std::size_t d = var_count == detail::PolyParser::npos ? p.max_index : var_count;
  LaurentPoly f(d);
  for (const auto& [xs, qc] : p.terms) {
    Exponents e(d + 1, 0);
    for (const auto& [i, pw] : xs) e[i] += pw;
    e[d] = qc.first;
    f.add_term(e, qc.second);
  }
  return f;
}

}  // namespace kst
