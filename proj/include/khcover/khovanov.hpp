#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "khcover/budget.hpp"
#include "khcover/conventions.hpp"
#include "khcover/diagram.hpp"
#include "khcover/errors.hpp"
#include "khcover/laurent.hpp"
#include "khcover/linalg/matf2.hpp"
#include "khcover/parallel.hpp"

namespace khcover {

using Grading = std::pair<int, int>;

/// Exterior algebra on the circles of one resolution; basis monomials are
/// subsets of circles (bitmasks, ascending). Reduced spaces omit every
/// monomial containing the marked circle.
struct VertexSpace {
  std::vector<int> I;
  int num_circles = 0;
  bool reduced = false;
  int marked_circle = -1;
  std::vector<std::uint64_t> basis;
  std::vector<int> circle_of_arc;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline std::uint64_t state_mask(const LinkDiagram& d, const std::vector<int>& I) {
  if (static_cast<int>(I.size()) != d.size())
    fail(ErrorKind::LengthMismatch, "state length does not match the crossing count");
  std::uint64_t m = 0;
  for (std::size_t x = 0; x < I.size(); ++x) {
    if (I[x] != 0 && I[x] != 1) fail(ErrorKind::LengthMismatch, "state entries must be 0 or 1");
    if (I[x]) m |= std::uint64_t{1} << x;
  }
  return m;
}

inline VertexSpace make_vertex_space(const LinkDiagram& d, std::uint64_t mask, bool reduced) {
  if (reduced && !d.mark()) fail(ErrorKind::NoMark, "reduced complex needs a marked arc");
  if (d.size() > 62) fail(ErrorKind::BudgetExceeded, "too many crossings");
  VertexSpace v;
  v.reduced = reduced;
  v.I.resize(static_cast<std::size_t>(d.size()));
  for (int x = 0; x < d.size(); ++x) v.I[static_cast<std::size_t>(x)] = static_cast<int>((mask >> x) & 1u);
  v.circle_of_arc = state_circles(d, mask, &v.num_circles);
  if (v.num_circles > 30) fail(ErrorKind::BudgetExceeded, "too many resolution circles");
  if (reduced) v.marked_circle = v.circle_of_arc[static_cast<std::size_t>(*d.mark())];
  const std::uint64_t full = std::uint64_t{1} << v.num_circles;
  for (std::uint64_t s = 0; s < full; ++s)
    if (!reduced || !((s >> v.marked_circle) & 1u)) v.basis.push_back(s);
  return v;
}

/// Index of monomial s in the basis of v (ascending bitmasks, marked bit removed).
inline std::size_t basis_index(const VertexSpace& v, std::uint64_t s) {
  if (!v.reduced) return static_cast<std::size_t>(s);
  const std::uint64_t low = s & ((std::uint64_t{1} << v.marked_circle) - 1);
  const std::uint64_t high = s >> (v.marked_circle + 1);
  return static_cast<std::size_t>(low | (high << v.marked_circle));
}

/// Images of one basis monomial under the edge map; calls emit(target monomial).
template <class Emit>
void edge_images(const VertexSpace& src, const VertexSpace& dst, const LinkDiagram& d, std::uint64_t s, Emit&& emit) {
  // Circle j of src maps to img[j] of dst; for a split, img of the split
  // circle is t1 and t2 is the other piece.
  std::vector<int> img(static_cast<std::size_t>(src.num_circles), -1);
  std::vector<int> rep(static_cast<std::size_t>(src.num_circles), 0);
  for (int a = d.num_arcs(); a >= 1; --a) rep[static_cast<std::size_t>(src.circle_of_arc[static_cast<std::size_t>(a)])] = a;
  for (int j = 0; j < src.num_circles; ++j)
    img[static_cast<std::size_t>(j)] = dst.circle_of_arc[static_cast<std::size_t>(rep[static_cast<std::size_t>(j)])];

  auto keep = [&](std::uint64_t t) { return !dst.reduced || !((t >> dst.marked_circle) & 1u); };

  if (dst.num_circles == src.num_circles - 1) {
    std::uint64_t t = 0;
    for (int j = 0; j < src.num_circles; ++j) {
      if (!((s >> j) & 1u)) continue;
      const std::uint64_t bit = std::uint64_t{1} << img[static_cast<std::size_t>(j)];
      if (t & bit) return;  // S1 ^ S2 -> S' ^ S' = 0
      t |= bit;
    }
    if (keep(t)) emit(t);
    return;
  }
  if (dst.num_circles != src.num_circles + 1) throw std::logic_error("edge changes circle count by more than one");
  // Split: find the dst circle not hit by img.
  std::uint64_t hit = 0;
  for (int j = 0; j < src.num_circles; ++j) hit |= std::uint64_t{1} << img[static_cast<std::size_t>(j)];
  const int t2 = std::countr_zero(~hit);
  std::uint64_t lift = 0;
  for (int j = 0; j < src.num_circles; ++j)
    if ((s >> j) & 1u) lift |= std::uint64_t{1} << img[static_cast<std::size_t>(j)];
  // Find t1: the image of the circle that split, i.e. the dst circle sharing arcs with t2's src circle.
  int t1 = -1;
  for (int a = 1; a <= d.num_arcs(); ++a)
    if (dst.circle_of_arc[static_cast<std::size_t>(a)] == t2) {
      t1 = img[static_cast<std::size_t>(src.circle_of_arc[static_cast<std::size_t>(a)])];
      break;
    }
  // (t1 + t2) ^ lift
  for (int t : {t1, t2}) {
    const std::uint64_t bit = std::uint64_t{1} << t;
    if (lift & bit) continue;
    if (keep(lift | bit)) emit(lift | bit);
  }
}

}  // namespace detail

inline VertexSpace vertex_space(const LinkDiagram& d, const std::vector<int>& I, bool reduced) {
  return detail::make_vertex_space(d, detail::state_mask(d, I), reduced);
}

/// Edge map of the cube from state I to its immediate successor I2.
inline MatF2 edge_map(const LinkDiagram& d, const std::vector<int>& I, const std::vector<int>& I2, bool reduced) {
  const std::uint64_t a = detail::state_mask(d, I), b = detail::state_mask(d, I2);
  if ((a & b) != a || std::popcount(a ^ b) != 1) fail(ErrorKind::NotSuccessor, "states differ by more than one 0 -> 1 flip");
  const VertexSpace src = detail::make_vertex_space(d, a, reduced);
  const VertexSpace dst = detail::make_vertex_space(d, b, reduced);
  MatF2 m(dst.dim(), src.dim());
  for (std::size_t col = 0; col < src.dim(); ++col)
    detail::edge_images(src, dst, d, src.basis[col], [&](std::uint64_t t) { m.flip(detail::basis_index(dst, t), col); });
  return m;
}

/// Cube complex split by quantum grading. Chain groups are indexed by
/// (w, q): w the cube weight, q the Jones-compatible quantum grading, which
/// every edge map preserves.
struct BigradedComplex {
  int ell = 0;
  int n_plus = 0;
  int n_minus = 0;
  bool reduced = false;
  std::map<Grading, std::size_t> dims;
  /// d.at({w, q}) maps C(w, q) to C(w + 1, q).
  std::map<Grading, MatF2> d;

  /// Published homological grading.
  int m_of(int w) const { return conventions::m_sign * w + n_plus; }
  /// Internal quantum grading n = c - 2k - n_- + 2 n_+ (minus one when reduced);
  /// every edge map lowers (m, n) by (1, 1).
  int n_grading(int w, int q) const { return q - conventions::q_weight_sign * w + 4 * n_plus - 2 * n_minus; }

  std::size_t dim(int w, int q) const {
    auto it = dims.find({w, q});
    return it == dims.end() ? 0 : it->second;
  }
  /// Differential out of (w, q); an empty matrix of the right shape when absent.
  MatF2 diff(int w, int q) const {
    auto it = d.find({w, q});
    if (it != d.end()) return it->second;
    return MatF2(dim(w + 1, q), dim(w, q));
  }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (auto& [g, k] : dims) n += k;
    return n;
  }
};

inline int quantum_grading(int circles, int degree, int w, int n_plus, int n_minus, bool reduced) {
  return circles - 2 * degree + conventions::q_weight_sign * w + n_minus - 2 * n_plus - (reduced ? 1 : 0);
}

/// Bytes the assembled differential blocks would occupy.
inline std::size_t estimate_bytes(const std::map<Grading, std::size_t>& dims) {
  std::size_t bytes = 0;
  for (auto& [g, k] : dims) {
    auto it = dims.find({g.first + 1, g.second});
    if (it == dims.end()) continue;
    bytes += it->second * ((k + 63) / 64) * 8;
  }
  return bytes;
}

inline BigradedComplex assemble(const LinkDiagram& diag, bool reduced, std::size_t budget = budget_bytes()) {
  if (reduced && !diag.mark()) fail(ErrorKind::NoMark, "reduced complex needs a marked arc");
  const int ell = diag.size();
  if (ell > 24) fail(ErrorKind::BudgetExceeded, std::to_string(ell) + " crossings exceed the cube limit");
  const std::uint64_t states = std::uint64_t{1} << ell;
  const auto signs = crossing_signs(diag);

  BigradedComplex c;
  c.ell = ell;
  c.n_plus = signs.n_plus;
  c.n_minus = signs.n_minus;
  c.reduced = reduced;

  // Pass 1: circle counts only, to size the complex against the budget.
  std::vector<int> circles(states);
  parallel_for(states, [&](std::size_t s) {
    int k = 0;
    state_circles(diag, s, &k);
    circles[s] = k;
  });
  for (std::uint64_t s = 0; s < states; ++s) {
    const int w = std::popcount(s);
    const int k = circles[s] - (reduced ? 1 : 0);
    for (int deg = 0; deg <= k; ++deg) {
      std::size_t binom = 1;
      for (int t = 0; t < deg; ++t) binom = binom * static_cast<std::size_t>(k - t) / static_cast<std::size_t>(t + 1);
      c.dims[{w, quantum_grading(circles[s], deg, w, c.n_plus, c.n_minus, reduced)}] += binom;
    }
  }
  const std::size_t need = estimate_bytes(c.dims) + states * 64 * static_cast<std::size_t>(diag.num_arcs() + 8);
  if (need > budget)
    fail(ErrorKind::BudgetExceeded, "cube needs ~" + std::to_string(need >> 20) + " MB, budget is " +
                                        std::to_string(budget >> 20) + " MB");

  // Pass 2: vertex spaces and the position of each basis element in its block.
  std::vector<VertexSpace> vs(states);
  parallel_for(states, [&](std::size_t s) { vs[s] = detail::make_vertex_space(diag, s, reduced); });
  std::vector<std::vector<std::size_t>> slot(states);
  std::map<Grading, std::size_t> fill;
  for (int w = 0; w <= ell; ++w)
    for (std::uint64_t s = 0; s < states; ++s) {
      if (std::popcount(s) != w) continue;
      auto& v = vs[s];
      slot[s].resize(v.dim());
      for (std::size_t i = 0; i < v.dim(); ++i) {
        const int q = quantum_grading(v.num_circles, std::popcount(v.basis[i]), w, c.n_plus, c.n_minus, reduced);
        slot[s][i] = fill[{w, q}]++;
      }
    }

  // Pass 3: differential blocks. Each state's outgoing entries are collected
  // independently, then merged in state order.
  for (auto& [g, k] : c.dims)
    if (c.dims.count({g.first + 1, g.second})) c.d.emplace(g, MatF2(c.dims.at({g.first + 1, g.second}), k));
  struct Entry {
    int q;
    std::size_t row, col;
  };
  std::vector<std::vector<Entry>> entries(states);
  parallel_for(states, [&](std::size_t s) {
    const auto& src = vs[s];
    const int w = std::popcount(static_cast<std::uint64_t>(s));
    for (int x = 0; x < ell; ++x) {
      if ((s >> x) & 1u) continue;
      const std::uint64_t t = s | (std::uint64_t{1} << x);
      const auto& dst = vs[t];
      for (std::size_t i = 0; i < src.dim(); ++i) {
        const int q = quantum_grading(src.num_circles, std::popcount(src.basis[i]), w, c.n_plus, c.n_minus, reduced);
        detail::edge_images(src, dst, diag, src.basis[i], [&](std::uint64_t img) {
          entries[s].push_back({q, slot[t][detail::basis_index(dst, img)], slot[s][i]});
        });
      }
    }
  });
  for (std::uint64_t s = 0; s < states; ++s) {
    const int w = std::popcount(s);
    for (const auto& e : entries[s]) c.d.at({w, e.q}).flip(e.row, e.col);
    entries[s].clear();
    entries[s].shrink_to_fit();
  }

  // d o d = 0 in every grading.
  for (auto& [g, m] : c.d) {
    auto it = c.d.find({g.first + 1, g.second});
    if (it != c.d.end() && !(it->second * m).is_zero()) throw std::logic_error("assembled differential does not square to zero");
  }
  return c;
}

/// Homology ranks indexed by published gradings (m, q).
struct KhTable {
  bool reduced = false;
  std::map<Grading, std::size_t> ranks;
  std::size_t total_rank = 0;

  std::size_t rank(int m, int q) const {
    auto it = ranks.find({m, q});
    return it == ranks.end() ? 0 : it->second;
  }
  friend bool operator==(const KhTable& a, const KhTable& b) { return a.reduced == b.reduced && a.ranks == b.ranks; }
};

inline KhTable homology(const BigradedComplex& c) {
  std::vector<Grading> keys;
  for (auto& [g, m] : c.d) keys.push_back(g);
  std::vector<std::size_t> rk(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { rk[i] = rank_f2(c.d.at(keys[i])); });
  std::map<Grading, std::size_t> rank_out;
  for (std::size_t i = 0; i < keys.size(); ++i) rank_out[keys[i]] = rk[i];

  KhTable t;
  t.reduced = c.reduced;
  for (auto& [g, k] : c.dims) {
    const auto [w, q] = g;
    std::size_t r = k;
    if (auto it = rank_out.find({w, q}); it != rank_out.end()) r -= it->second;
    if (auto it = rank_out.find({w - 1, q}); it != rank_out.end()) r -= it->second;
    if (r == 0) continue;
    t.ranks[{c.m_of(w), q}] = r;
    t.total_rank += r;
  }
  return t;
}

inline Laurent graded_euler(const KhTable& t) {
  Laurent p;
  for (auto& [g, r] : t.ranks) p.add_term(g.second, (g.first % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(r));
  return p;
}

inline KhTable khovanov_homology(const LinkDiagram& d, bool reduced, std::size_t budget = budget_bytes()) {
  return homology(assemble(d, reduced, budget));
}

/// Circle count of a state by walking slots; independent of state_circles.
inline int walk_circle_count(const LinkDiagram& d, std::uint64_t mask) {
  std::vector<std::array<char, 4>> seen(static_cast<std::size_t>(d.size()), {0, 0, 0, 0});
  int count = static_cast<int>(d.loops().size());
  for (int x = 0; x < d.size(); ++x)
    for (int p = 0; p < 4; ++p) {
      if (seen[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)]) continue;
      ++count;
      Dart cur{x, p};
      while (!seen[static_cast<std::size_t>(cur.crossing)][static_cast<std::size_t>(cur.pos)]) {
        seen[static_cast<std::size_t>(cur.crossing)][static_cast<std::size_t>(cur.pos)] = 1;
        const Dart e = d.other_end(cur);
        seen[static_cast<std::size_t>(e.crossing)][static_cast<std::size_t>(e.pos)] = 1;
        const auto& pr = smoothing_pairing(static_cast<int>((mask >> e.crossing) & 1u));
        cur = Dart{e.crossing, pr[static_cast<std::size_t>(e.pos)]};
      }
    }
  return count;
}

inline constexpr int kOracleMaxCrossings = 20;

/// State-sum Jones polynomial:
/// (-1)^{n+} q^{n- - 2n+} sum_I (-q)^{w(I)} (q + 1/q)^{c(I)}.
inline Laurent kauffman_oracle(const LinkDiagram& d) {
  const int ell = d.size();
  if (ell > kOracleMaxCrossings) fail(ErrorKind::BudgetExceeded, "state sum limited to 20 crossings");
  const auto signs = crossing_signs(d);
  const int max_c = ell + static_cast<int>(d.loops().size()) + 2;
  std::vector<std::vector<std::int64_t>> count(static_cast<std::size_t>(ell) + 1,
                                               std::vector<std::int64_t>(static_cast<std::size_t>(max_c) + 1, 0));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << ell); ++s)
    ++count[static_cast<std::size_t>(std::popcount(s))][static_cast<std::size_t>(walk_circle_count(d, s))];
  const Laurent circle = Laurent::monomial(1) + Laurent::monomial(-1);
  Laurent sum;
  for (int w = 0; w <= ell; ++w)
    for (int c = 0; c <= max_c; ++c) {
      const std::int64_t n = count[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)];
      if (!n) continue;
      sum += Laurent::monomial(w, (w % 2 ? -1 : 1) * n) * circle.pow(static_cast<unsigned>(c));
    }
  return Laurent::monomial(signs.n_minus - 2 * signs.n_plus, signs.n_plus % 2 ? -1 : 1) * sum;
}

/// Reduced normalization: the state sum divided by the unknot value.
inline Laurent kauffman_oracle_reduced(const LinkDiagram& d) {
  return kauffman_oracle(d).divide_exact(Laurent::monomial(1) + Laurent::monomial(-1));
}

/// |J_red(i)|, which equals the determinant.
inline std::int64_t jones_determinant(const LinkDiagram& d) {
  auto [re, im] = kauffman_oracle_reduced(d).eval_at_i();
  const std::int64_t sq = re * re + im * im;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(sq))));
  while (r * r > sq) --r;
  while ((r + 1) * (r + 1) <= sq) ++r;
  if (r * r != sq) throw std::logic_error("|J(i)|^2 is not a perfect square");
  return r;
}

/// Reduced tables for several marked arcs agree rank-for-rank. Default
/// marks: the least arc of every component and the largest arc label.
inline bool mark_invariance_check(const LinkDiagram& d, std::vector<int> marks = {}, std::size_t budget = budget_bytes()) {
  if (marks.empty()) {
    for (const auto& comp : d.components()) marks.push_back(*std::min_element(comp.begin(), comp.end()));
    if (d.num_arcs() > 0) marks.push_back(d.num_arcs());
  }
  std::optional<KhTable> first;
  for (int a : marks) {
    KhTable t = khovanov_homology(d.with_mark(a), true, budget);
    if (!first) {
      first = t;
    } else if (!(t == *first)) {
      return false;
    }
  }
  return true;
}

}  // namespace khcover
