#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kst/blocksym.hpp"

namespace kst {

// n x n matrix of nonnegative integers; an element of M(v, w) with v its row
// sums and w its column sums. Indices are 1-based.
class CompMatrix {
 public:
  CompMatrix() = default;
  CompMatrix(std::size_t n, std::vector<int> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n_ * n_) throw InvalidArgument("CompMatrix: need n*n entries");
    for (int x : a_) {
      if (x < 0) throw InvalidArgument("CompMatrix: entries must be nonnegative");
    }
  }

  static CompMatrix diag(const Composition& v) {
    CompMatrix m(v.n(), std::vector<int>(v.n() * v.n(), 0));
    for (std::size_t i = 1; i <= v.n(); ++i) m.at(i, i) = v.part(i);
    return m;
  }

  std::size_t n() const { return n_; }
  int at(std::size_t i, std::size_t j) const { return a_.at((i - 1) * n_ + (j - 1)); }
  int& at(std::size_t i, std::size_t j) { return a_.at((i - 1) * n_ + (j - 1)); }
  const std::vector<int>& entries() const { return a_; }

  Composition row_sums() const {
    std::vector<int> r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i] += a_[i * n_ + j];
    return Composition(std::move(r));
  }
  Composition col_sums() const {
    std::vector<int> c(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) c[j] += a_[i * n_ + j];
    return Composition(std::move(c));
  }
  int d() const { return std::accumulate(a_.begin(), a_.end(), 0); }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && a_[i * n_ + j] != 0) return false;
    return true;
  }

  // Refinement S^(A) = S^{a_11} x S^{a_21} x ... x S^{a_nn}: the entries in
  // column-major order give consecutive variable blocks.
  Composition refinement() const {
    std::vector<int> parts;
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) parts.push_back(a_[i * n_ + j]);
    return Composition(std::move(parts));
  }
  // 0-based variable positions of the block belonging to entry (i, j).
  IndexSet entry_block(std::size_t i, std::size_t j) const {
    std::size_t start = 0;
    for (std::size_t jj = 1; jj <= n_; ++jj)
      for (std::size_t ii = 1; ii <= n_; ++ii) {
        if (ii == i && jj == j) return index_range(start, static_cast<std::size_t>(at(i, j)));
        start += static_cast<std::size_t>(at(ii, jj));
      }
    throw InvalidArgument("entry_block: index out of range");
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) out += ',';
        out += std::to_string(a_[i * n_ + j]);
      }
      out += ']';
    }
    return out + "]";
  }

  friend bool operator==(const CompMatrix&, const CompMatrix&) = default;
  friend auto operator<=>(const CompMatrix&, const CompMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> a_;
};

// diag(v) + a E_ij.
struct OffDiagonalShape {
  std::size_t i = 0, j = 0;
  int a = 0;
  Composition v;
};

// The matrix as diag(v) + a E_ij with a single nonzero off-diagonal entry.
inline std::optional<OffDiagonalShape> off_diagonal_shape(const CompMatrix& m) {
  std::optional<OffDiagonalShape> found;
  std::vector<int> diag(m.n());
  for (std::size_t i = 1; i <= m.n(); ++i) {
    diag[i - 1] = m.at(i, i);
    for (std::size_t j = 1; j <= m.n(); ++j) {
      if (i == j || m.at(i, j) == 0) continue;
      if (found) return std::nullopt;
      found = OffDiagonalShape{i, j, m.at(i, j), {}};
    }
  }
  if (found) found->v = Composition(std::move(diag));
  return found;
}

// E_ij(v; a) = diag(v) + a E_ij, an element of M(v + a e_i, v + a e_j).
inline CompMatrix e_matrix(std::size_t i, std::size_t j, const Composition& v, int a) {
  if (i == j || i < 1 || j < 1 || i > v.n() || j > v.n()) throw InvalidArgument("e_matrix: bad indices");
  if (a <= 0) throw InvalidArgument("e_matrix: a must be positive (use CompMatrix::diag)");
  CompMatrix m = CompMatrix::diag(v);
  m.at(i, j) += a;
  return m;
}

// M(v, w), lexicographic on the row-major entries.
inline std::vector<CompMatrix> enumerate_matrices(const Composition& v, const Composition& w) {
  if (v.n() != w.n()) throw InvalidArgument("enumerate_matrices: compositions of different length");
  if (v.d() != w.d()) throw SumMismatch("enumerate_matrices: row and column totals differ");
  const std::size_t n = v.n();
  std::vector<CompMatrix> out;
  std::vector<int> a(n * n, 0), row_left(v.parts()), col_left(w.parts());
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == n * n) {
      out.emplace_back(n, a);
      return;
    }
    const std::size_t i = cell / n, j = cell % n;
    if (j == n - 1) {
      // last entry in the row is forced
      const int x = row_left[i];
      if (x > col_left[j]) return;
      if (i == n - 1 && x != col_left[j]) return;
      a[cell] = x;
      row_left[i] -= x;
      col_left[j] -= x;
      self(self, cell + 1);
      row_left[i] += x;
      col_left[j] += x;
      a[cell] = 0;
      return;
    }
    const int hi = std::min(row_left[i], col_left[j]);
    const int lo = i == n - 1 ? col_left[j] : 0;
    for (int x = lo; x <= hi; ++x) {
      if (i == n - 1 && x != col_left[j]) continue;
      a[cell] = x;
      row_left[i] -= x;
      col_left[j] -= x;
      self(self, cell + 1);
      row_left[i] += x;
      col_left[j] += x;
    }
    a[cell] = 0;
  };
  rec(rec, 0);
  return out;
}

// Number of (S^(v), S^(w)) double cosets in S^d by brute-force orbit
// partition of all d! permutations under left multiplication by S^(v) and
// right multiplication by S^(w) (adjacent transpositions inside each block
// generate). Factorial time; d <= 7.
inline std::size_t double_coset_count(const Composition& v, const Composition& w) {
  if (v.d() != w.d()) throw SumMismatch("double_coset_count: compositions of different totals");
  const int d = v.d();
  if (d > 7) throw TooLarge("double_coset_count: d > 7");

  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // perms are generated in lexicographic order, so the rank is a lookup.
  auto rank = [&](const std::vector<int>& x) {
    return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), x) - perms.begin());
  };

  std::vector<std::size_t> parent(perms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

  auto in_same_block = [](const Composition& c, int k) {
    // positions k, k+1 (0-based) in one block of c
    int start = 0;
    for (int part : c.parts()) {
      if (k >= start && k + 1 < start + part) return true;
      start += part;
    }
    return false;
  };

  for (std::size_t idx = 0; idx < perms.size(); ++idx) {
    const auto& s = perms[idx];
    for (int k = 0; k + 1 < d; ++k) {
      if (in_same_block(v, k)) {
        // left multiplication: swap the values k and k+1
        std::vector<int> t = s;
        for (int& x : t) {
          if (x == k) x = k + 1;
          else if (x == k + 1) x = k;
        }
        unite(idx, rank(t));
      }
      if (in_same_block(w, k)) {
        // right multiplication: swap positions k and k+1
        std::vector<int> t = s;
        std::swap(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k) + 1]);
        unite(idx, rank(t));
      }
    }
  }
  std::size_t count = 0;
  for (std::size_t idx = 0; idx < perms.size(); ++idx) count += find(idx) == idx;
  return count;
}

}  // namespace kst
