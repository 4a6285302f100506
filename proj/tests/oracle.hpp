#pragma once

// Independent checks used by the tests: exact evaluation at rational points
// and a seeded random polynomial source.

#include <random>
#include <vector>

#include "kst/laurent_poly.hpp"

namespace kst::testing {

inline Rational rpow(const Rational& b, int e) {
  Rational r = 1;
  const Rational base = e < 0 ? Rational(1) / b : b;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= base;
  return r;
}

// f(x_1..x_d, q) at a point; point has d + 1 entries, q last.
inline Rational eval(const LaurentPoly& f, const std::vector<Rational>& point) {
  Rational acc = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational t = c;
    for (std::size_t k = 0; k < e.size(); ++k) t *= rpow(point[k], e[k]);
    acc += t;
  }
  return acc;
}

// Distinct, nonzero rational coordinates.
inline std::vector<Rational> sample_point(std::size_t d, int salt = 0) {
  std::vector<Rational> p;
  for (std::size_t k = 0; k <= d; ++k) {
    Rational r(static_cast<long>(2 + 3 * k + salt), static_cast<unsigned long>(5 + 2 * k));
    r.canonicalize();
    p.push_back(r);
  }
  return p;
}

inline LaurentPoly random_poly(std::mt19937& rng, std::size_t d, int max_terms = 4) {
  std::uniform_int_distribution<int> terms(0, max_terms), ex(-2, 2), num(-4, 4), den(1, 3);
  LaurentPoly f(d);
  const int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Exponents e(d + 1);
    for (auto& x : e) x = ex(rng);
    Rational c(num(rng), den(rng));
    c.canonicalize();
    f.add_term(e, c);
  }
  return f;
}

}  // namespace kst::testing
