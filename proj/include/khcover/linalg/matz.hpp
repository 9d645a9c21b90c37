#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khcover/bigint.hpp"

namespace khcover {

/// Dense integer matrix with arbitrary-precision entries.
class MatZ {
 public:
  MatZ() = default;
  MatZ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatZ(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("MatZ: ragged initializer");
      for (auto v : r) data_.emplace_back(v);
    }
  }

  static MatZ identity(std::size_t n) {
    MatZ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  MatZ transpose() const {
    MatZ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  /// Rows/columns with the given indices removed (square principal minor when both lists agree).
  MatZ without(std::size_t row, std::size_t col) const {
    MatZ m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, r = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0, c = 0; j < cols_; ++j) {
        if (j == col) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

  MatZ leading(std::size_t k) const {
    MatZ m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  friend MatZ operator*(const MatZ& a, const MatZ& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("MatZ multiply: shape mismatch");
    MatZ c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend MatZ operator-(const MatZ& a) {
    MatZ c = a;
    for (auto& v : c.data_) v = -v;
    return c;
  }
  friend bool operator==(const MatZ& a, const MatZ& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

  // Elementary operations used by Smith normal form.
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
inline BigInt det(const MatZ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  MatZ m = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// A = U * D * V with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
  MatZ U, D, V;
  MatZ U_inv, V_inv;
  /// The min(rows, cols) diagonal entries of D, non-negative.
  std::vector<BigInt> invariant_factors;
};

inline SmithForm smith_normal_form(const MatZ& a) {
  const std::size_t m = a.rows(), n = a.cols();
  MatZ d = a;
  // d = L * a * R throughout; U = L^{-1}, V = R^{-1}.
  MatZ L = MatZ::identity(m), L_inv = MatZ::identity(m);
  MatZ R = MatZ::identity(n), R_inv = MatZ::identity(n);

  auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& c) {
    d.add_row_multiple(dst, src, c);
    L.add_row_multiple(dst, src, c);
    L_inv.add_col_multiple(src, dst, -c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& c) {
    d.add_col_multiple(dst, src, c);
    R.add_col_multiple(dst, src, c);
    R_inv.add_row_multiple(src, dst, -c);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    L.swap_rows(x, y);
    L_inv.swap_cols(x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    R.swap_cols(x, y);
    R_inv.swap_rows(x, y);
  };
  auto row_neg = [&](std::size_t x) {
    d.negate_row(x);
    L.negate_row(x);
    L_inv.negate_col(x);
  };

  const std::size_t k_max = std::min(m, n);
  for (std::size_t t = 0; t < k_max; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
      if (pi == m) break;
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_add(t, bad, 1);
    }
    if (d(t, t) < 0) row_neg(t);
  }

  SmithForm s;
  s.D = d;
  s.U = L_inv;
  s.U_inv = L;
  s.V = R_inv;
  s.V_inv = R;
  for (std::size_t t = 0; t < k_max; ++t) s.invariant_factors.push_back(d(t, t));
  return s;
}

}  // namespace khcover
