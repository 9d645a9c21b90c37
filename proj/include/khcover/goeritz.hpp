#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "khcover/bigint.hpp"
#include "khcover/conventions.hpp"
#include "khcover/diagram.hpp"
#include "khcover/errors.hpp"
#include "khcover/linalg/matz.hpp"

namespace khcover {

struct Checkerboard {
  FaceStructure faces;
  /// 1 = black, 0 = white, per face.
  std::vector<int> color;
};

/// Two-colors the faces. The faces at the A-corners of the first crossing
/// are black (see conventions::black_at_a_corners).
inline Checkerboard checkerboard(const LinkDiagram& d) {
  if (!is_connected(d)) fail(ErrorKind::Disconnected, "checkerboard coloring needs a connected diagram");
  Checkerboard cb;
  cb.faces = face_structure(d);
  const auto& fs = cb.faces;
  const std::size_t nf = fs.faces.size();
  std::vector<std::vector<int>> adj(nf);
  for (int a = 1; a <= d.num_arcs(); ++a) {
    const auto [f, g] = fs.arc_sides[static_cast<std::size_t>(a)];
    adj[static_cast<std::size_t>(f)].push_back(g);
    adj[static_cast<std::size_t>(g)].push_back(f);
  }
  int seed = 0;
  if (d.size() > 0) seed = fs.corner_face[0][conventions::black_at_a_corners ? 1 : 0];
  cb.color.assign(nf, -1);
  cb.color[static_cast<std::size_t>(seed)] = 1;
  std::deque<int> queue{seed};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int g : adj[static_cast<std::size_t>(f)]) {
      if (cb.color[static_cast<std::size_t>(g)] < 0) {
        cb.color[static_cast<std::size_t>(g)] = 1 - cb.color[static_cast<std::size_t>(f)];
        queue.push_back(g);
      } else if (cb.color[static_cast<std::size_t>(g)] == cb.color[static_cast<std::size_t>(f)]) {
        fail(ErrorKind::NonPlanar, "faces do not admit a checkerboard coloring");
      }
    }
  }
  return cb;
}

/// Planar multigraph: one vertex per black face, one edge per crossing.
struct BlackGraph {
  int num_vertices = 0;
  /// Edge x joins the black faces at two opposite corners of crossing x.
  std::vector<std::pair<int, int>> edges;
  /// Face index of each vertex.
  std::vector<int> vertex_face;
};

inline BlackGraph black_graph(const LinkDiagram& d) {
  const Checkerboard cb = checkerboard(d);
  if (!is_alternating(d)) fail(ErrorKind::NotAlternating, "black graph needs an alternating diagram");
  BlackGraph g;
  std::vector<int> vertex_of(cb.color.size(), -1);
  for (std::size_t f = 0; f < cb.color.size(); ++f)
    if (cb.color[f] == 1) {
      vertex_of[f] = g.num_vertices++;
      g.vertex_face.push_back(static_cast<int>(f));
    }
  const int k0 = conventions::black_at_a_corners ? 1 : 0;
  for (int x = 0; x < d.size(); ++x) {
    const int f0 = cb.faces.corner_face[static_cast<std::size_t>(x)][static_cast<std::size_t>(k0)];
    const int f1 = cb.faces.corner_face[static_cast<std::size_t>(x)][static_cast<std::size_t>(k0 + 2)];
    if (cb.color[static_cast<std::size_t>(f0)] != 1 || cb.color[static_cast<std::size_t>(f1)] != 1)
      throw std::logic_error("alternating diagram with inconsistent corner colors");
    g.edges.emplace_back(vertex_of[static_cast<std::size_t>(f0)], vertex_of[static_cast<std::size_t>(f1)]);
  }
  return g;
}

/// Laplacian with loops ignored.
inline MatZ laplacian(int n, const std::vector<std::pair<int, int>>& edges) {
  MatZ L(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    if (a == b) continue;
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    L(ua, ua) += 1;
    L(ub, ub) += 1;
    L(ua, ub) -= 1;
    L(ub, ua) -= 1;
  }
  return L;
}

/// Number of spanning trees (matrix-tree theorem).
inline BigInt det_matrix_tree(const BlackGraph& g) {
  if (g.num_vertices <= 1) return 1;
  return abs(det(laplacian(g.num_vertices, g.edges).without(0, 0)));
}

/// |det| of the reduced Goeritz matrix on the white faces; any connected diagram.
inline BigInt goeritz_determinant(const LinkDiagram& d) {
  const Checkerboard cb = checkerboard(d);
  std::vector<int> idx(cb.color.size(), -1);
  int n = 0;
  for (std::size_t f = 0; f < cb.color.size(); ++f)
    if (cb.color[f] == 0) idx[f] = n++;
  MatZ G(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int x = 0; x < d.size(); ++x) {
    const auto& cf = cb.faces.corner_face[static_cast<std::size_t>(x)];
    // eta = +1 when the white corners are the A-corners.
    const bool white_a = cb.color[static_cast<std::size_t>(cf[1])] == 0;
    const int eta = white_a ? 1 : -1;
    const int fa = white_a ? cf[1] : cf[0];
    const int fb = white_a ? cf[3] : cf[2];
    if (fa == fb) continue;
    const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(fa)]);
    const auto j = static_cast<std::size_t>(idx[static_cast<std::size_t>(fb)]);
    G(i, j) -= eta;
    G(j, i) -= eta;
    G(i, i) += eta;
    G(j, j) += eta;
  }
  if (n <= 1) return 1;
  return abs(det(G.without(0, 0)));
}

/// All leading principal minors of -Q are positive.
inline bool is_negative_definite(const MatZ& Q) {
  if (!Q.is_symmetric()) return false;
  const MatZ A = -Q;
  for (std::size_t k = 1; k <= A.rows(); ++k)
    if (det(A.leading(k)) <= 0) return false;
  return true;
}

struct GoeritzLattice {
  std::vector<int> tree_edges;
  /// e_1..e_b: the edges outside the tree.
  std::vector<int> extra_edges;
  /// +1 or -1: the orientation chosen on each extra edge.
  std::vector<int> orientation;
  /// Signed edge-incidence vector of each oriented circuit C_i.
  std::vector<std::vector<int>> circuits;
  /// Q(e_i, e_j) = -(signed overlap of C_i and C_j).
  MatZ Q;
  int b = 0;
};

/// Circuit lattice of a connected black graph. tree_seed < 0 selects the
/// breadth-first tree from vertex 0; otherwise a random spanning tree and
/// random edge orientations drawn from the seed.
inline GoeritzLattice build_lattice(const BlackGraph& g, int tree_seed = conventions::default_tree_seed) {
  const int n = g.num_vertices;
  const int m = static_cast<int>(g.edges.size());
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < m; ++e) {
    auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(a)].emplace_back(b, e);
    if (a != b) adj[static_cast<std::size_t>(b)].emplace_back(a, e);
  }

  std::vector<char> in_tree(static_cast<std::size_t>(m), 0);
  std::mt19937_64 rng(tree_seed < 0 ? 0u : static_cast<unsigned>(tree_seed));
  if (tree_seed < 0) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    if (n > 0) {
      seen[0] = 1;
      queue.push_back(0);
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (auto [v, e] : adj[static_cast<std::size_t>(u)])
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          in_tree[static_cast<std::size_t>(e)] = 1;
          queue.push_back(v);
        }
    }
  } else {
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (int e : order) {
      auto [a, b] = g.edges[static_cast<std::size_t>(e)];
      const int ra = find(a), rb = find(b);
      if (ra == rb) continue;
      parent[static_cast<std::size_t>(ra)] = rb;
      in_tree[static_cast<std::size_t>(e)] = 1;
    }
  }

  // Root the tree at vertex 0: parent vertex and edge of every vertex.
  std::vector<int> par(static_cast<std::size_t>(n), -1), par_edge(static_cast<std::size_t>(n), -1);
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    if (n > 0) {
      seen[0] = 1;
      queue.push_back(0);
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (auto [v, e] : adj[static_cast<std::size_t>(u)])
        if (in_tree[static_cast<std::size_t>(e)] && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          par[static_cast<std::size_t>(v)] = u;
          par_edge[static_cast<std::size_t>(v)] = e;
          queue.push_back(v);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != n) fail(ErrorKind::Disconnected, "black graph is not connected");
  }

  GoeritzLattice L;
  std::bernoulli_distribution flip(0.5);
  for (int e = 0; e < m; ++e) {
    if (in_tree[static_cast<std::size_t>(e)]) {
      L.tree_edges.push_back(e);
      continue;
    }
    const int sign = tree_seed >= 0 && flip(rng) ? -1 : 1;
    auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    std::vector<int> vec(static_cast<std::size_t>(m), 0);
    vec[static_cast<std::size_t>(e)] += 1;  // a -> b along e
    // then b -> root, then root -> a
    auto walk_to_root = [&](int v, int s) {
      while (par[static_cast<std::size_t>(v)] >= 0) {
        const int te = par_edge[static_cast<std::size_t>(v)];
        const int up = par[static_cast<std::size_t>(v)];
        const bool along = g.edges[static_cast<std::size_t>(te)] == std::make_pair(v, up);
        vec[static_cast<std::size_t>(te)] += s * (along ? 1 : -1);
        v = up;
      }
    };
    walk_to_root(b, 1);
    walk_to_root(a, -1);
    for (int& c : vec) c *= sign;
    L.extra_edges.push_back(e);
    L.orientation.push_back(sign);
    L.circuits.push_back(std::move(vec));
  }
  L.b = static_cast<int>(L.extra_edges.size());
  L.Q = MatZ(static_cast<std::size_t>(L.b), static_cast<std::size_t>(L.b));
  for (int i = 0; i < L.b; ++i)
    for (int j = 0; j < L.b; ++j) {
      long long dot = 0;
      for (int e = 0; e < m; ++e)
        dot += static_cast<long long>(L.circuits[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]) *
               L.circuits[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
      L.Q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = -dot;
    }
  if (!is_negative_definite(L.Q)) fail(ErrorKind::IndefiniteForm, "circuit lattice form is not negative-definite");
  return L;
}

/// Determinant of a link diagram: 0 for a disconnected diagram (split link).
inline BigInt link_determinant(const LinkDiagram& d) {
  if (!is_connected(d)) return 0;
  return goeritz_determinant(d);
}

/// det(L) = det(L_0) + det(L_1) at crossing x of a connected alternating diagram.
inline bool det_additivity_check(const LinkDiagram& d, int x) {
  const BigInt whole = det_matrix_tree(black_graph(d));
  const LinkDiagram r0 = smooth_crossing(d, x, 0), r1 = smooth_crossing(d, x, 1);
  if (!is_connected(r0) || !is_connected(r1))
    fail(ErrorKind::DisconnectedResolution, "a resolution at crossing " + std::to_string(x) + " is disconnected");
  auto child_det = [](const LinkDiagram& r) {
    return is_alternating(r) ? det_matrix_tree(black_graph(r)) : goeritz_determinant(r);
  };
  return whole == child_det(r0) + child_det(r1);
}

}  // namespace khcover
