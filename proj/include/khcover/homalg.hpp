#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "khcover/errors.hpp"
#include "khcover/khovanov.hpp"
#include "khcover/linalg/matf2.hpp"
#include "khcover/parallel.hpp"

namespace khcover {

/// rank H of an ungraded complex (V, D) with D^2 = 0.
inline std::size_t total_homology_rank(const MatF2& D) {
  if (D.rows() != D.cols()) fail(ErrorKind::NotAComplex, "differential must be square");
  if (!(D * D).is_zero()) fail(ErrorKind::NotAComplex, "D^2 != 0");
  return D.cols() - 2 * rank_f2(D);
}

/// F2 complex with a decreasing filtration F_p = levels >= p. The basis is
/// ordered by level; D may only map level p into levels >= p.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(std::vector<std::size_t> level_dims, MatF2 D) : dims_(std::move(level_dims)), D_(std::move(D)) {
    off_.assign(dims_.size() + 1, 0);
    for (std::size_t p = 0; p < dims_.size(); ++p) off_[p + 1] = off_[p] + dims_[p];
    if (D_.rows() != off_.back() || D_.cols() != off_.back()) fail(ErrorKind::NotAComplex, "differential shape does not match levels");
    for (std::size_t p = 0; p < dims_.size(); ++p)
      if (!D_.block(0, off_[p], off_[p], off_[p + 1]).is_zero())
        fail(ErrorKind::NotAComplex, "differential lowers the filtration");
    if (!(D_ * D_).is_zero()) fail(ErrorKind::NotAComplex, "D^2 != 0");
  }

  /// Number of levels, P + 1.
  int levels() const { return static_cast<int>(dims_.size()); }
  const std::vector<std::size_t>& level_dims() const { return dims_; }
  std::size_t dim() const { return off_.empty() ? 0 : off_.back(); }
  std::size_t offset(int p) const { return off_[static_cast<std::size_t>(std::clamp(p, 0, levels()))]; }
  const MatF2& D() const { return D_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> off_;
  MatF2 D_;
};

namespace detail {

inline void check_cube_shaped(const BigradedComplex& c) {
  for (auto& [g, m] : c.d) {
    if (g.first < 0 || g.first >= c.ell || m.cols() != c.dim(g.first, g.second) || m.rows() != c.dim(g.first + 1, g.second))
      fail(ErrorKind::NotCubeShaped, "differential block does not raise the cube weight by one");
  }
  for (auto& [g, k] : c.dims)
    if (g.first < 0 || g.first > c.ell) fail(ErrorKind::NotCubeShaped, "cube weight out of range");
}

inline FilteredComplex flatten_grading(const BigradedComplex& c, const std::vector<int>& qs) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(c.ell) + 1, 0);
  // Basis order: level w, then quantum grading in the order given.
  std::vector<std::vector<std::size_t>> start(dims.size(), std::vector<std::size_t>(qs.size(), 0));
  std::size_t total = 0;
  for (int w = 0; w <= c.ell; ++w)
    for (std::size_t k = 0; k < qs.size(); ++k) {
      start[static_cast<std::size_t>(w)][k] = total;
      const std::size_t n = c.dim(w, qs[k]);
      dims[static_cast<std::size_t>(w)] += n;
      total += n;
    }
  MatF2 D(total, total);
  for (int w = 0; w < c.ell; ++w)
    for (std::size_t k = 0; k < qs.size(); ++k) {
      auto it = c.d.find({w, qs[k]});
      if (it == c.d.end()) continue;
      D.set_block(start[static_cast<std::size_t>(w) + 1][k], start[static_cast<std::size_t>(w)][k], it->second);
    }
  return FilteredComplex(std::move(dims), std::move(D));
}

inline std::vector<int> quantum_gradings(const BigradedComplex& c) {
  std::vector<int> qs;
  for (auto& [g, k] : c.dims) qs.push_back(g.second);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

}  // namespace detail

/// The cube as a filtered complex: filtration level = cube weight, ell + 1 levels.
inline FilteredComplex flatten_cube(const BigradedComplex& c) {
  detail::check_cube_shaped(c);
  return detail::flatten_grading(c, detail::quantum_gradings(c));
}

/// One filtered summand per quantum grading; their pages add up to the
/// pages of flatten_cube(c).
inline std::vector<FilteredComplex> flatten_cube_summands(const BigradedComplex& c) {
  detail::check_cube_shaped(c);
  std::vector<FilteredComplex> out;
  for (int q : detail::quantum_gradings(c)) out.push_back(detail::flatten_grading(c, {q}));
  return out;
}

struct PageTable {
  /// ranks[r - 1][p] = dim E^r_p, for r = 1 .. pages.
  std::vector<std::vector<std::size_t>> ranks;
  int stable_page = 1;
  std::size_t total_homology_rank = 0;

  std::size_t total(int r) const {
    const auto& row = ranks[static_cast<std::size_t>(r - 1)];
    return std::accumulate(row.begin(), row.end(), std::size_t{0});
  }
  int pages() const { return static_cast<int>(ranks.size()); }
};

namespace detail {

/// Columns spanning Z^r_p = {x in F_p : D x in F_{p+r}}, as n-dimensional
/// vectors. For p < 0, F_p = F_0 but the target level stays p + r.
inline MatF2 cycles(const FilteredComplex& f, int r, int p) {
  const std::size_t n = f.dim();
  const int lo = std::max(p, 0);
  if (lo >= f.levels()) return MatF2(n, 0);
  const int hi = std::min(p + r, f.levels());
  const std::size_t c0 = f.offset(lo);
  MatF2 basis;
  if (r <= 0 || hi <= lo) {
    basis = MatF2::identity(n - c0);
  } else {
    basis = nullspace(f.D().block(c0, f.offset(hi), c0, n));
  }
  MatF2 out(n, basis.cols());
  out.set_block(c0, 0, basis);
  return out;
}

inline std::size_t column_rank(const MatF2& m) { return m.cols() == 0 ? 0 : rank_f2(m.transpose()); }

}  // namespace detail

/// E^r_p = Z^r_p / (Z^{r-1}_{p+1} + D Z^{r-1}_{p-r+1}) for r = 1 .. r_max
/// (default: P + 2, one past the page where the sequence must have stabilized).
inline PageTable spectral_pages(const FilteredComplex& f, int r_max = 0) {
  const int P = f.levels() - 1;
  if (r_max <= 0) r_max = P + 2;
  PageTable t;
  t.total_homology_rank = total_homology_rank(f.D());
  for (int r = 1; r <= r_max; ++r) {
    // Once the total reaches rank H, every later d_r vanishes and the pages repeat.
    if (r > 1 && t.total(r - 1) == t.total_homology_rank) {
      t.ranks.push_back(t.ranks.back());
      continue;
    }
    std::vector<std::size_t> row(static_cast<std::size_t>(std::max(P + 1, 0)), 0);
    parallel_for(row.size(), [&](std::size_t pi) {
      const int p = static_cast<int>(pi);
      const MatF2 z = detail::cycles(f, r, p);
      const MatF2 zup = detail::cycles(f, r - 1, p + 1);
      const MatF2 bnd = f.D() * detail::cycles(f, r - 1, p - r + 1);
      row[pi] = detail::column_rank(z) - detail::column_rank(MatF2::hstack(zup, bnd));
    });
    t.ranks.push_back(std::move(row));
  }
  const std::size_t final_total = t.total(r_max);
  t.stable_page = r_max;
  while (t.stable_page > 1 && t.total(t.stable_page - 1) == final_total) --t.stable_page;
  return t;
}

/// Pages of a direct sum, computed summand by summand.
inline PageTable spectral_pages(const std::vector<FilteredComplex>& parts, int r_max = 0) {
  int levels = 0;
  for (auto& f : parts) levels = std::max(levels, f.levels());
  if (r_max <= 0) r_max = levels + 1;
  PageTable t;
  t.ranks.assign(static_cast<std::size_t>(r_max), std::vector<std::size_t>(static_cast<std::size_t>(levels), 0));
  for (auto& f : parts) {
    const PageTable s = spectral_pages(f, r_max);
    t.total_homology_rank += s.total_homology_rank;
    for (int r = 0; r < r_max; ++r)
      for (std::size_t p = 0; p < s.ranks[static_cast<std::size_t>(r)].size(); ++p)
        t.ranks[static_cast<std::size_t>(r)][p] += s.ranks[static_cast<std::size_t>(r)][p];
  }
  const std::size_t final_total = t.total(r_max);
  t.stable_page = r_max;
  while (t.stable_page > 1 && t.total(t.stable_page - 1) == final_total) --t.stable_page;
  return t;
}

// ---------------------------------------------------------------------------
// Mapping cones

/// Ungraded F2 complex.
struct ChainComplexF2 {
  MatF2 D;
  std::size_t dim() const { return D.cols(); }
};

inline ChainComplexF2 make_complex(MatF2 D) {
  if (D.rows() != D.cols() || !(D * D).is_zero()) fail(ErrorKind::NotAComplex, "D^2 != 0");
  return {std::move(D)};
}

inline bool is_chain_map(const MatF2& f, const ChainComplexF2& a, const ChainComplexF2& b) {
  return f.rows() == b.dim() && f.cols() == a.dim() && f * a.D == b.D * f;
}

/// rank of f_* : H(A) -> H(B) = dim(f(ker D_A) + im D_B) - rank D_B.
inline std::size_t induced_rank(const MatF2& f, const ChainComplexF2& a, const ChainComplexF2& b) {
  const MatF2 images = MatF2::hstack(f * nullspace(a.D), b.D);
  return detail::column_rank(images) - rank_f2(b.D);
}

/// Complex on a direct sum with block lower-triangular differential.
struct ConeComplex {
  std::vector<std::size_t> block_dims;
  MatF2 D;
  std::size_t homology_rank() const { return total_homology_rank(D); }
  ChainComplexF2 complex() const { return {D}; }
};

/// Cone of f: A1 -> A2 on A1 (+) A2 with differential [[D1, 0], [f, D2]].
inline ConeComplex mapping_cone(const ChainComplexF2& a1, const ChainComplexF2& a2, const MatF2& f) {
  if (!is_chain_map(f, a1, a2)) fail(ErrorKind::NotChainMap, "f does not commute with the differentials");
  const std::size_t n1 = a1.dim(), n2 = a2.dim();
  ConeComplex c;
  c.block_dims = {n1, n2};
  c.D = MatF2(n1 + n2, n1 + n2);
  c.D.set_block(0, 0, a1.D);
  c.D.set_block(n1, 0, f);
  c.D.set_block(n1, n1, a2.D);
  return c;
}

/// Iterated cone on A1 (+) A2 (+) A3 with differential
/// [[D1, 0, 0], [f1, D2, 0], [H1, f2, D3]]; requires D3 H1 + H1 D1 = f2 f1.
inline ConeComplex iterated_cone(const ChainComplexF2& a1, const ChainComplexF2& a2, const ChainComplexF2& a3,
                                 const MatF2& f1, const MatF2& f2, const MatF2& H1) {
  if (!is_chain_map(f1, a1, a2) || !is_chain_map(f2, a2, a3))
    fail(ErrorKind::NotChainMap, "iterated cone needs chain maps");
  if (H1.rows() != a3.dim() || H1.cols() != a1.dim() || !(a3.D * H1 + H1 * a1.D == f2 * f1))
    fail(ErrorKind::HypothesisFails, "H1 is not a null-homotopy of f2 f1");
  const std::size_t n1 = a1.dim(), n2 = a2.dim(), n3 = a3.dim();
  ConeComplex c;
  c.block_dims = {n1, n2, n3};
  c.D = MatF2(n1 + n2 + n3, n1 + n2 + n3);
  c.D.set_block(0, 0, a1.D);
  c.D.set_block(n1, 0, f1);
  c.D.set_block(n1, n1, a2.D);
  c.D.set_block(n1 + n2, 0, H1);
  c.D.set_block(n1 + n2, n1, f2);
  c.D.set_block(n1 + n2, n1 + n2, a3.D);
  if (!(c.D * c.D).is_zero()) throw std::logic_error("iterated cone differential does not square to zero");
  return c;
}

struct ConeLemmaReport {
  /// psi = f3 H1 + H2 f1 : A1 -> A4 induces an isomorphism on homology.
  bool psi_quasi_isomorphism = false;
  std::size_t cone_rank = 0;  // rank H(MCone(f2))
  std::size_t a4_rank = 0;    // rank H(A4)
};

/// Four complexes with maps f_i : A_i -> A_{i+1} and null-homotopies
/// H_i of f_{i+1} f_i. When psi is a quasi-isomorphism, MCone(f2) and A4
/// have equal homology rank.
inline ConeLemmaReport cone_lemma_check(const ChainComplexF2& a1, const ChainComplexF2& a2, const ChainComplexF2& a3,
                                        const ChainComplexF2& a4, const MatF2& f1, const MatF2& f2, const MatF2& f3,
                                        const MatF2& H1, const MatF2& H2) {
  iterated_cone(a1, a2, a3, f1, f2, H1);
  iterated_cone(a2, a3, a4, f2, f3, H2);
  const MatF2 psi = f3 * H1 + H2 * f1;
  if (!is_chain_map(psi, a1, a4)) throw std::logic_error("psi is not a chain map");
  ConeLemmaReport r;
  const std::size_t h1 = total_homology_rank(a1.D);
  r.a4_rank = total_homology_rank(a4.D);
  r.psi_quasi_isomorphism = h1 == r.a4_rank && induced_rank(psi, a1, a4) == h1;
  r.cone_rank = mapping_cone(a2, a3, f2).homology_rank();
  return r;
}

}  // namespace khcover
