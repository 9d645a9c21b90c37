#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "khcover/bigint.hpp"
#include "khcover/errors.hpp"
#include "khcover/goeritz.hpp"
#include "khcover/linalg/matf2.hpp"
#include "khcover/linalg/matz.hpp"
#include "khcover/parallel.hpp"

namespace khcover {

using IntVec = std::vector<BigInt>;

struct CharClass {
  /// A representative maximizing K^2 within the class.
  IntVec K;
  /// Coordinates in the nontrivial cyclic factors of coker Q.
  IntVec label;
  Rational max_square;
  Rational d;
};

struct DTable {
  int b = 0;
  BigInt det;
  /// Smith invariant factors of Q, including ones.
  std::vector<BigInt> invariant_factors;
  /// The factors greater than one: the cyclic decomposition of coker Q.
  std::vector<BigInt> group;
  std::vector<CharClass> classes;
};

inline void require_negative_definite(const MatZ& Q) {
  if (Q.rows() != Q.cols() || !is_negative_definite(Q))
    fail(ErrorKind::IndefiniteForm, "form must be symmetric negative-definite");
}

/// Rational inverse by Gauss-Jordan elimination.
inline std::vector<std::vector<Rational>> rational_inverse(const MatZ& Q) {
  const std::size_t n = Q.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(Q(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular form");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

/// K Q^{-1} K^T.
inline Rational square(const std::vector<std::vector<Rational>>& Qinv, const IntVec& K) {
  Rational s = 0;
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < K.size(); ++j)
      if (K[j] != 0) row += Qinv[i][j] * Rational(K[j]);
    s += Rational(K[i]) * row;
  }
  return s;
}

/// Characteristic covectors modulo 2Q-translation, labeled by coker Q.
class CharClassLabels {
 public:
  explicit CharClassLabels(const MatZ& Q) : Q_(Q), snf_(smith_normal_form(Q)) {
    require_negative_definite(Q);
    const std::size_t b = Q.rows();
    // K_spin = Q v with Q v = diag(Q) (mod 2); its class is self-conjugate.
    MatF2 q2(b, b), rhs(b, 1);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) q2.set(i, j, Q(i, j) % 2 != 0);
      rhs.set(i, 0, Q(i, i) % 2 != 0);
    }
    MatF2 v;
    if (!solve_f2(q2, rhs, v)) throw std::logic_error("diagonal not in the column space mod 2");
    spin_.assign(b, 0);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j)
        if (v.get(j, 0)) spin_[i] += Q(i, j);
    for (std::size_t i = 0; i < b; ++i)
      if (snf_.invariant_factors[i] > 1) active_.push_back(i);
  }

  const SmithForm& smith() const { return snf_; }
  const IntVec& spin() const { return spin_; }
  std::vector<BigInt> group() const {
    std::vector<BigInt> g;
    for (auto i : active_) g.push_back(snf_.invariant_factors[i]);
    return g;
  }

  bool is_characteristic(const IntVec& K) const {
    for (std::size_t i = 0; i < K.size(); ++i)
      if ((K[i] - Q_(i, i)) % 2 != 0) return false;
    return true;
  }

  IntVec label(const IntVec& K) const {
    if (K.size() != Q_.rows() || !is_characteristic(K)) throw std::invalid_argument("not a characteristic covector");
    const std::size_t b = K.size();
    IntVec w(b);
    for (std::size_t i = 0; i < b; ++i) w[i] = (K[i] - spin_[i]) / 2;
    IntVec g;
    for (auto i : active_) {
      BigInt s = 0;
      for (std::size_t j = 0; j < b; ++j) s += snf_.U_inv(i, j) * w[j];
      const BigInt& f = snf_.invariant_factors[i];
      s %= f;
      if (s < 0) s += f;
      g.push_back(s);
    }
    return g;
  }

  IntVec representative(const IntVec& g) const {
    const std::size_t b = Q_.rows();
    IntVec K = spin_;
    for (std::size_t i = 0; i < b; ++i) {
      BigInt w = 0;
      for (std::size_t k = 0; k < active_.size(); ++k) w += snf_.U(i, active_[k]) * g[k];
      K[i] += 2 * w;
    }
    return K;
  }

  /// All labels, first factor most significant.
  std::vector<IntVec> all_labels() const {
    const auto grp = group();
    std::vector<IntVec> out;
    IntVec g(grp.size(), 0);
    for (;;) {
      out.push_back(g);
      std::size_t k = grp.size();
      while (k > 0) {
        --k;
        if (++g[k] < grp[k]) break;
        g[k] = 0;
        if (k == 0) return out;
      }
      if (grp.empty()) return out;
    }
  }

  IntVec conjugate(const IntVec& g) const {
    const auto grp = group();
    IntVec c(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) c[k] = g[k] == 0 ? BigInt(0) : grp[k] - g[k];
    return c;
  }

 private:
  MatZ Q_;
  SmithForm snf_;
  IntVec spin_;
  std::vector<std::size_t> active_;
};

/// K ~ K' iff K - K' = 2 Q v for an integer v.
inline bool equivalent(const MatZ& Q, const IntVec& K1, const IntVec& K2) {
  CharClassLabels labels(Q);
  return labels.label(K1) == labels.label(K2);
}

/// Representatives of all |det Q| classes, labeled, in label order.
inline std::vector<CharClass> enumerate_classes(const MatZ& Q) {
  CharClassLabels labels(Q);
  std::vector<CharClass> out;
  for (auto& g : labels.all_labels()) {
    CharClass c;
    c.label = g;
    c.K = labels.representative(g);
    out.push_back(std::move(c));
  }
  return out;
}

/// Labels of enumerate_classes(Q), in the same order. The spin class is the origin.
inline std::vector<IntVec> spinc_labels(const MatZ& Q) { return CharClassLabels(Q).all_labels(); }

struct MaxSquare {
  Rational value;
  IntVec K;
};

/// Maximum of K'Q^{-1}K'^T over K' = K + 2Qv. Writing A = -Q this is
/// -4 min_v (v - v*)^T A (v - v*) with v* = A^{-1}K/2, solved exactly by
/// enumerating lattice points in an ellipsoid (floating-point bounds with
/// slack, exact comparisons).
inline MaxSquare max_square(const MatZ& Q, const IntVec& K) {
  require_negative_definite(Q);
  const std::size_t b = Q.rows();
  if (b == 0) return {0, {}};
  const auto Qinv = rational_inverse(Q);
  // v* = A^{-1} K / 2 = -Q^{-1} K / 2
  std::vector<Rational> vstar(b);
  for (std::size_t i = 0; i < b; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < b; ++j) s += Qinv[i][j] * Rational(K[j]);
    vstar[i] = -s / 2;
  }
  auto exact_f = [&](const std::vector<long long>& v) {
    Rational f = 0;
    std::vector<Rational> dlt(b);
    for (std::size_t i = 0; i < b; ++i) dlt[i] = Rational(v[i]) - vstar[i];
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j)
        if (Q(i, j) != 0) f -= dlt[i] * Rational(Q(i, j)) * dlt[j];
    return f;
  };

  // Cholesky A = R^T R in long double.
  std::vector<std::vector<long double>> R(b, std::vector<long double>(b, 0));
  for (std::size_t j = 0; j < b; ++j) {
    long double s = -static_cast<long double>(Q(j, j));
    for (std::size_t k = 0; k < j; ++k) s -= R[k][j] * R[k][j];
    R[j][j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < b; ++i) {
      long double t = -static_cast<long double>(Q(j, i));
      for (std::size_t k = 0; k < j; ++k) t -= R[k][j] * R[k][i];
      R[j][i] = t / R[j][j];
    }
  }
  std::vector<long double> vs(b);
  for (std::size_t i = 0; i < b; ++i) vs[i] = static_cast<long double>(vstar[i]);

  std::vector<long long> best(b);
  for (std::size_t i = 0; i < b; ++i) best[i] = std::llround(vs[i]);
  Rational best_f = exact_f(best);
  long double bound = static_cast<long double>(best_f);
  auto slack = [](long double x) { return x * (1 + 1e-9L) + 1e-9L; };

  std::vector<long long> v(b);
  // Depth-first from the last coordinate.
  std::function<void(std::size_t, long double)> rec = [&](std::size_t level, long double partial) {
    const std::size_t i = level;
    long double shift = 0;
    for (std::size_t j = i + 1; j < b; ++j) shift += R[i][j] * (static_cast<long double>(v[j]) - vs[j]);
    const long double c = vs[i] - shift / R[i][i];
    const long double room = slack(bound) - partial;
    if (room < 0) return;
    const long double r = std::sqrt(room) / R[i][i];
    const long long lo = static_cast<long long>(std::ceil(c - r - 1e-12L));
    const long long hi = static_cast<long long>(std::floor(c + r + 1e-12L));
    for (long long x = lo; x <= hi; ++x) {
      v[i] = x;
      const long double t = R[i][i] * (static_cast<long double>(x) - c);
      const long double p = partial + t * t;
      if (p > slack(bound)) continue;
      if (i == 0) {
        const Rational f = exact_f(v);
        if (f < best_f) {
          best_f = f;
          best = v;
          bound = static_cast<long double>(best_f);
        }
      } else {
        rec(i - 1, p);
      }
    }
  };
  rec(b - 1, 0);

  MaxSquare out;
  out.value = -4 * best_f;
  out.K = K;
  // K' = K - 2 A v = K + 2 Q v
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) out.K[i] += 2 * Q(i, j) * best[j];
  return out;
}

inline DTable d_table(const MatZ& Q) {
  CharClassLabels labels(Q);
  DTable t;
  t.b = static_cast<int>(Q.rows());
  t.det = abs(det(Q));
  t.invariant_factors = labels.smith().invariant_factors;
  t.group = labels.group();
  for (auto& g : labels.all_labels()) {
    CharClass c;
    c.label = g;
    c.K = labels.representative(g);
    t.classes.push_back(std::move(c));
  }
  parallel_for(t.classes.size(), [&](std::size_t i) {
    auto& c = t.classes[i];
    auto m = max_square(Q, c.K);
    c.K = std::move(m.K);
    c.max_square = m.value;
    c.d = (m.value + t.b) / 4;
  });
  return t;
}

}  // namespace khcover
