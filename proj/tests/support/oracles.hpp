#pragma once

// Slow, independent re-implementations used to cross-check the library.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khcover/khcover.hpp"

namespace khcover::oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense to_dense(const MatF2& m) {
  Dense a(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j) ? 1 : 0;
  return a;
}

/// Fraction-free elimination over the integers, reducing mod 2 at each step.
inline std::size_t naive_rank(Dense a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] % 2 == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] % 2 == 0) continue;
      const int piv = a[r][c], f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] * piv - a[r][j] * f) & 1;
    }
    ++r;
  }
  return r;
}

inline std::size_t naive_rank(const MatF2& m) { return naive_rank(to_dense(m)); }

/// Cofactor expansion; exponential, for tiny matrices only.
inline BigInt cofactor_det(const MatZ& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  BigInt s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    const BigInt t = a(0, j) * cofactor_det(a.without(0, j));
    s += (j % 2 ? -t : t);
  }
  return s;
}

/// Brute-force maximum of K' Q^{-1} K'^T over K' = K + 2Qv with |v_i| <= radius.
inline Rational box_max_square(const MatZ& Q, const IntVec& K, int radius) {
  const std::size_t b = Q.rows();
  const auto Qinv = rational_inverse(Q);
  std::vector<int> v(b, -radius);
  std::optional<Rational> best;
  for (;;) {
    IntVec k = K;
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) k[i] += 2 * Q(i, j) * v[j];
    const Rational s = square(Qinv, k);
    if (!best || s > *best) best = s;
    std::size_t i = 0;
    while (i < b && ++v[i] > radius) v[i++] = -radius;
    if (i == b) break;
  }
  return best ? *best : Rational(0);
}

/// Maximum square over characteristic covectors inside the box |K_i| <= |Q_ii|
/// that are equivalent to K: the finite search region for maximal vectors.
inline Rational char_box_max_square(const MatZ& Q, const IntVec& K) {
  const std::size_t b = Q.rows();
  CharClassLabels labels(Q);
  const IntVec target = labels.label(K);
  const auto Qinv = rational_inverse(Q);
  std::vector<long long> lim(b);
  for (std::size_t i = 0; i < b; ++i) lim[i] = static_cast<long long>(abs(Q(i, i)));
  IntVec k(b);
  std::vector<long long> cur(b);
  for (std::size_t i = 0; i < b; ++i) cur[i] = -lim[i];
  std::optional<Rational> best;
  for (;;) {
    for (std::size_t i = 0; i < b; ++i) k[i] = cur[i];
    if (labels.is_characteristic(k) && labels.label(k) == target) {
      const Rational s = square(Qinv, k);
      if (!best || s > *best) best = s;
    }
    std::size_t i = 0;
    while (i < b && ++cur[i] > lim[i]) cur[i] = -lim[i], ++i;
    if (i == b) break;
  }
  if (!best) throw std::logic_error("no class member in the box");
  return *best;
}

/// Circles of a state by explicit planar tracing over the face walk, as a
/// check on the union-find count.
inline int slot_walk_circles(const LinkDiagram& d, std::uint64_t mask) { return walk_circle_count(d, mask); }

/// Ranks of the homology of a bigraded complex by the naive eliminator.
inline std::map<Grading, std::size_t> naive_homology(const BigradedComplex& c) {
  std::map<Grading, std::size_t> out;
  for (auto& [g, k] : c.dims) {
    const auto [w, q] = g;
    std::size_t r = k - naive_rank(c.diff(w, q));
    if (w > 0) r -= naive_rank(c.diff(w - 1, q));
    if (r) out[{c.m_of(w), q}] = r;
  }
  return out;
}

}  // namespace khcover::oracle
