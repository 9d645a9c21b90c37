#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "khcover/errors.hpp"

namespace khcover {

/// Dense matrix over the two-element field, rows bit-packed into 64-bit words.
class MatF2 {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kBits = 64;

  MatF2() = default;
  MatF2(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + kBits - 1) / kBits), data_(rows * wpr_, 0) {}

  static MatF2 zero(std::size_t rows, std::size_t cols) { return MatF2(rows, cols); }
  static MatF2 identity(std::size_t n) {
    MatF2 m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  template <class Rng>
  static MatF2 random(std::size_t rows, std::size_t cols, Rng& rng, double density = 0.5) {
    MatF2 m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (bit(rng)) m.set(i, j);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t i, std::size_t j) const { return (data_[i * wpr_ + j / kBits] >> (j % kBits)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v = true) {
    Word& w = data_[i * wpr_ + j / kBits];
    const Word mask = Word{1} << (j % kBits);
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) { data_[i * wpr_ + j / kBits] ^= Word{1} << (j % kBits); }

  Word* row(std::size_t i) { return data_.data() + i * wpr_; }
  const Word* row(std::size_t i) const { return data_.data() + i * wpr_; }

  /// row dst ^= row src
  void add_row(std::size_t dst, std::size_t src) {
    Word* d = row(dst);
    const Word* s = row(src);
    for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + wpr_, row(b));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
  }
  std::size_t count_ones() const {
    std::size_t n = 0;
    for (Word w : data_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  MatF2 transpose() const {
    MatF2 t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) t.set(j, i);
    return t;
  }

  friend MatF2 operator*(const MatF2& a, const MatF2& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("MatF2 multiply: shape mismatch");
    MatF2 c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Word* out = c.row(i);
      const Word* ar = a.row(i);
      for (std::size_t kw = 0; kw < a.wpr_; ++kw) {
        Word w = ar[kw];
        while (w) {
          const std::size_t k = kw * kBits + static_cast<std::size_t>(std::countr_zero(w));
          w &= w - 1;
          const Word* br = b.row(k);
          for (std::size_t t = 0; t < c.wpr_; ++t) out[t] ^= br[t];
        }
      }
    }
    return c;
  }

  friend MatF2 operator+(const MatF2& a, const MatF2& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("MatF2 add: shape mismatch");
    MatF2 c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] ^= b.data_[k];
    return c;
  }

  friend bool operator==(const MatF2& a, const MatF2& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Rows [r0, r1) x columns [c0, c1).
  MatF2 block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    MatF2 m(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j)
        if (get(i, j)) m.set(i - r0, j - c0);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const MatF2& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) set(r0 + i, c0 + j, b.get(i, j));
  }

  /// [a | b]
  static MatF2 hstack(const MatF2& a, const MatF2& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("MatF2 hstack: row mismatch");
    MatF2 m(a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
  }
  /// [a ; b]
  static MatF2 vstack(const MatF2& a, const MatF2& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("MatF2 vstack: column mismatch");
    MatF2 m(a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<Word> data_;
};

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref_inplace(MatF2& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.add_row(i, r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Row-echelon rank (forward elimination only).
inline std::size_t rank_f2(MatF2 m) {
  std::size_t r = 0;
  const std::size_t wpr = m.words_per_row();
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t wi = c / MatF2::kBits;
    const MatF2::Word mask = MatF2::Word{1} << (c % MatF2::kBits);
    std::size_t p = r;
    while (p < m.rows() && !(m.row(p)[wi] & mask)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const MatF2::Word* pr = m.row(r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      MatF2::Word* ri = m.row(i);
      if (ri[wi] & mask)
        for (std::size_t k = wi; k < wpr; ++k) ri[k] ^= pr[k];
    }
    ++r;
  }
  return r;
}

/// Columns form a basis of {x : m x = 0}.
inline MatF2 nullspace(const MatF2& a) {
  MatF2 m = a;
  auto pivots = rref_inplace(m);
  std::vector<char> is_pivot(a.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  MatF2 basis(a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis.set(f, k);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (m.get(r, f)) basis.set(pivots[r], k);
  }
  return basis;
}

/// Some x with a x = b (b a column vector as an n x 1 matrix), or false.
inline bool solve_f2(const MatF2& a, const MatF2& b, MatF2& x) {
  MatF2 aug = MatF2::hstack(a, b);
  auto pivots = rref_inplace(aug);
  x = MatF2(a.cols(), 1);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == a.cols()) return false;
    if (aug.get(r, a.cols())) x.set(pivots[r], 0);
  }
  return true;
}

/// Inverse of a square matrix; throws std::domain_error when singular.
inline MatF2 inverse(const MatF2& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("MatF2 inverse: not square");
  const std::size_t n = a.rows();
  MatF2 aug = MatF2::hstack(a, MatF2::identity(n));
  auto pivots = rref_inplace(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw std::domain_error("MatF2 inverse: singular");
  return aug.block(0, n, n, 2 * n);
}

/// Column-sparse matrix over F2: each column stores its sorted row indices.
class SparseMatF2 {
 public:
  SparseMatF2() = default;
  SparseMatF2(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

  static SparseMatF2 from_dense(const MatF2& m) {
    SparseMatF2 s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.get(i, j)) s.col_[j].push_back(static_cast<std::uint32_t>(i));
    return s;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& c : col_) n += c.size();
    return n;
  }

  /// Toggles entry (i,j); call normalize() after a batch of toggles.
  void toggle(std::size_t i, std::size_t j) { col_[j].push_back(static_cast<std::uint32_t>(i)); }
  void normalize() {
    for (auto& c : col_) {
      std::sort(c.begin(), c.end());
      std::vector<std::uint32_t> out;
      for (std::size_t k = 0; k < c.size();) {
        std::size_t e = k;
        while (e < c.size() && c[e] == c[k]) ++e;
        if ((e - k) % 2) out.push_back(c[k]);
        k = e;
      }
      c.swap(out);
    }
  }

  const std::vector<std::uint32_t>& column(std::size_t j) const { return col_[j]; }

  MatF2 to_dense() const {
    MatF2 m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (auto i : col_[j]) m.set(i, j);
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::uint32_t>> col_;
};

/// Rank by column reduction with lowest-one pivots (no fill-in heuristics).
inline std::size_t rank_f2(const SparseMatF2& a) {
  std::vector<std::vector<std::uint32_t>> cols;
  cols.reserve(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
  std::vector<std::ptrdiff_t> owner(a.rows(), -1);
  std::size_t rank = 0;
  std::vector<std::uint32_t> tmp;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& c = cols[j];
    while (!c.empty()) {
      const std::uint32_t low = c.back();
      if (owner[low] < 0) {
        owner[low] = static_cast<std::ptrdiff_t>(j);
        ++rank;
        break;
      }
      const auto& p = cols[static_cast<std::size_t>(owner[low])];
      tmp.clear();
      std::set_symmetric_difference(c.begin(), c.end(), p.begin(), p.end(), std::back_inserter(tmp));
      c.swap(tmp);
    }
  }
  return rank;
}

/// Sparse elimination pays off only for large, thin matrices.
inline constexpr double kSparseDensity = 0.05;
inline constexpr std::size_t kSparseMinDim = 4096;

inline bool prefer_sparse(std::size_t rows, std::size_t cols, std::size_t nnz) {
  if (rows <= kSparseMinDim || cols <= kSparseMinDim) return false;
  return static_cast<double>(nnz) < kSparseDensity * static_cast<double>(rows) * static_cast<double>(cols);
}

/// Rank choosing the dense or sparse engine by the threshold above.
inline std::size_t rank_auto(const SparseMatF2& a) {
  if (prefer_sparse(a.rows(), a.cols(), a.nnz())) return rank_f2(a);
  return rank_f2(a.to_dense());
}

/// dim ker(d_out) - rank(d_in) for C_prev --d_in--> C --d_out--> C_next.
inline std::size_t homology_rank(const MatF2& d_in, const MatF2& d_out) {
  if (d_in.rows() != d_out.cols()) fail(ErrorKind::NotAComplex, "differential shapes do not compose");
  if (!(d_out * d_in).is_zero()) fail(ErrorKind::NotAComplex, "d_out * d_in != 0");
  return d_out.cols() - rank_f2(d_out) - rank_f2(d_in);
}

}  // namespace khcover
