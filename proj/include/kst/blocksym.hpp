#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kst/laurent_poly.hpp"
#include "kst/rational_expr.hpp"

namespace kst {

// A composition (v_1, ..., v_n) of d; parts may be zero. Block indices in
// this API are 1-based, as in the math.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p < 0) throw InvalidArgument("composition parts must be nonnegative");
    }
  }

  static Composition parse(std::string_view text) {
    std::vector<int> parts;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoi(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParseError("bad composition '" + s + "'");
      }
    }
    if (parts.empty()) throw ParseError("empty composition");
    return Composition(std::move(parts));
  }

  std::size_t n() const { return parts_.size(); }
  int d() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  const std::vector<int>& parts() const { return parts_; }
  int part(std::size_t i) const { return parts_.at(i - 1); }
  // v̄_i = v_1 + ... + v_i, with v̄_0 = 0.
  int partial_sum(std::size_t i) const {
    return std::accumulate(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(i), 0);
  }

  // v + c * e_i
  Composition plus_unit(std::size_t i, int c = 1) const {
    std::vector<int> p = parts_;
    p.at(i - 1) += c;
    return Composition(std::move(p));
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(parts_[k]);
    }
    return out;
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

// All compositions of d into n parts, lexicographically decreasing.
inline std::vector<Composition> compositions(int d, std::size_t n) {
  std::vector<Composition> out;
  if (n == 0) {
    if (d == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == n) {
      cur[k] = left;
      out.emplace_back(cur);
      return;
    }
    for (int p = left; p >= 0; --p) {
      cur[k] = p;
      self(self, k + 1, left - p);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Sorted 0-based variable indices.
using IndexSet = std::vector<std::size_t>;

inline IndexSet index_range(std::size_t first, std::size_t count) {
  IndexSet s(count);
  std::iota(s.begin(), s.end(), first);
  return s;
}

// Consecutive variable intervals induced by a composition: block i holds
// positions v̄_{i-1} .. v̄_i - 1 (0-based).
class BlockStructure {
 public:
  explicit BlockStructure(const Composition& v) {
    std::size_t start = 0;
    for (int p : v.parts()) {
      blocks_.push_back(index_range(start, static_cast<std::size_t>(p)));
      start += static_cast<std::size_t>(p);
    }
    var_count_ = start;
  }
  std::size_t size() const { return blocks_.size(); }
  std::size_t var_count() const { return var_count_; }
  const IndexSet& block(std::size_t i) const { return blocks_.at(i - 1); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }

 private:
  std::vector<IndexSet> blocks_;
  std::size_t var_count_ = 0;
};

// Permutation of all d variables that acts by `images` on `block` (images[k]
// is where block[k] goes) and fixes everything else.
inline Permutation block_permutation(std::size_t d, const IndexSet& block, const IndexSet& images) {
  Permutation p = identity_permutation(d);
  for (std::size_t k = 0; k < block.size(); ++k) p[block[k]] = images[k];
  return p;
}

// f invariant under every permutation of `block`; checked on adjacent
// transpositions, which generate.
inline bool is_symmetric_in(const LaurentPoly& f, const IndexSet& block) {
  for (std::size_t k = 0; k + 1 < block.size(); ++k) {
    Permutation p = identity_permutation(f.var_count());
    std::swap(p[block[k]], p[block[k + 1]]);
    if (!(permute_variables(f, p) == f)) return false;
  }
  return true;
}

inline bool is_block_symmetric(const LaurentPoly& f, const BlockStructure& blocks) {
  return std::all_of(blocks.blocks().begin(), blocks.blocks().end(),
                     [&](const IndexSet& b) { return is_symmetric_in(f, b); });
}

// Sum of w.f over the full symmetric group of `block` (not the orbit sum).
inline LaurentPoly symmetrize_full(const LaurentPoly& f, const IndexSet& block) {
  LaurentPoly out(f.var_count());
  IndexSet images = block;
  std::sort(images.begin(), images.end());
  do {
    out += permute_variables(f, block_permutation(f.var_count(), block, images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Minimal coset representatives of S_{I u J} / (S_I x S_J): for each choice
// of |I| positions in the sorted union (lexicographic), I fills those
// positions and J the rest, each in order.
inline std::vector<Permutation> shuffles(std::size_t d, const IndexSet& I, const IndexSet& J) {
  IndexSet all = I;
  all.insert(all.end(), J.begin(), J.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw OverlappingBlocks("shuffle blocks intersect");
  }
  const std::size_t n = all.size(), k = I.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::vector<Permutation> out;
  do {
    Permutation p = identity_permutation(d);
    std::size_t ii = 0, jj = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (pick[pos]) {
        p[I[ii++]] = all[pos];
      } else {
        p[J[jj++]] = all[pos];
      }
    }
    out.push_back(std::move(p));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// S_{I x J}^{I u J}: sum of e over the shuffles, as a Laurent polynomial.
inline LaurentPoly shuffle_symmetrize(const RationalExpr& e, const IndexSet& I, const IndexSet& J) {
  std::vector<RationalExpr> terms;
  for (const auto& p : shuffles(e.var_count(), I, J)) terms.push_back(e.permuted(p));
  return sum(terms).to_laurent();
}

inline Rational factorial(int n) {
  mpz_class r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return Rational(r);
}

// |Stab(alpha)| in the symmetric group on its positions.
inline Rational stabilizer_size(const std::vector<int>& alpha) {
  std::map<int, int> mult;
  for (int a : alpha) ++mult[a];
  Rational r = 1;
  for (const auto& [v, m] : mult) r *= factorial(m);
  return r;
}

inline bool is_dominant(const std::vector<int>& alpha) {
  return std::is_sorted(alpha.begin(), alpha.end(), std::greater<>());
}

// m_alpha: the orbit sum of y^alpha, y_k = x_{block[k]}, each distinct
// monomial once.
inline LaurentPoly monomial_symmetric(std::size_t d, const IndexSet& block, const std::vector<int>& alpha) {
  if (alpha.size() != block.size()) throw InvalidArgument("monomial_symmetric: size mismatch");
  LaurentPoly out(d);
  std::vector<int> a = alpha;
  std::sort(a.begin(), a.end());
  do {
    Exponents e(d + 1, 0);
    for (std::size_t k = 0; k < block.size(); ++k) e[block[k]] = a[k];
    out.add_term(e, 1);
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

// y^alpha with y_k = x_{block[k]}.
inline LaurentPoly block_monomial(std::size_t d, const IndexSet& block, const std::vector<int>& alpha) {
  Exponents e(d + 1, 0);
  for (std::size_t k = 0; k < block.size(); ++k) e[block[k]] = alpha.at(k);
  return LaurentPoly::monomial(std::move(e));
}

using MonomialDecomposition = std::map<std::vector<int>, LaurentPoly, std::greater<std::vector<int>>>;

// Coordinates of f in the basis m_alpha over the spectator ring (all other
// variables and q). Keys are weakly decreasing; coefficients have zero
// exponents on `block`.
inline MonomialDecomposition monomial_decompose(const LaurentPoly& f, const IndexSet& block) {
  const std::size_t d = f.var_count();
  MonomialDecomposition out;
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> alpha(block.size());
    for (std::size_t k = 0; k < block.size(); ++k) alpha[k] = e[block[k]];
    if (!is_dominant(alpha)) continue;
    Exponents rest = e;
    for (std::size_t b : block) rest[b] = 0;
    auto [it, inserted] = out.try_emplace(alpha, LaurentPoly(d));
    it->second.add_term(rest, c);
  }
  LaurentPoly back(d);
  for (const auto& [alpha, coef] : out) back += coef * monomial_symmetric(d, block, alpha);
  if (!(back == f)) throw NotSymmetric("monomial_decompose: input is not symmetric in the block");
  return out;
}

inline LaurentPoly reconstruct(const MonomialDecomposition& m, std::size_t d, const IndexSet& block) {
  LaurentPoly out(d);
  for (const auto& [alpha, coef] : m) out += coef * monomial_symmetric(d, block, alpha);
  return out;
}

}  // namespace kst
