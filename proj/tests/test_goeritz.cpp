#include <gtest/gtest.h>

#include <algorithm>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/reference.hpp"

using namespace khcover;
using reference::sorted_d;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::MalformedCode;
}

// Square knot: trefoil # mirror trefoil as an alternating 3-braid.
LinkDiagram square_knot() { return gen::braid_closure(3, {1, 1, 1, -2, -2, -2}, "square"); }

LinkDiagram borromean() { return gen::braid_closure(3, {1, -2, 1, -2, 1, -2}, "borromean"); }

}  // namespace

TEST(Checkerboard, UnknotTwoFacesOneBlack) {
  const Checkerboard cb = checkerboard(parse_pd("O1"));
  ASSERT_EQ(cb.color.size(), 2u);
  EXPECT_EQ(cb.color[0] + cb.color[1], 1);
}

TEST(Checkerboard, AdjacentFacesDiffer) {
  for (const auto& d : gen::corpus()) {
    if (!is_connected(d)) continue;
    const Checkerboard cb = checkerboard(d);
    for (int a = 1; a <= d.num_arcs(); ++a) {
      const auto [f, g] = cb.faces.arc_sides[static_cast<std::size_t>(a)];
      EXPECT_NE(cb.color[static_cast<std::size_t>(f)], cb.color[static_cast<std::size_t>(g)]) << d.name();
    }
  }
}

TEST(Checkerboard, BlackAtACorners) {
  for (const auto& d : gen::alternating_corpus()) {
    const Checkerboard cb = checkerboard(d);
    for (int x = 0; x < d.size(); ++x) {
      const auto& cf = cb.faces.corner_face[static_cast<std::size_t>(x)];
      EXPECT_EQ(cb.color[static_cast<std::size_t>(cf[1])], 1) << d.name();
      EXPECT_EQ(cb.color[static_cast<std::size_t>(cf[3])], 1) << d.name();
      EXPECT_EQ(cb.color[static_cast<std::size_t>(cf[0])], 0) << d.name();
    }
  }
}

TEST(BlackGraph, SpanningTreeCounts) {
  EXPECT_EQ(det_matrix_tree(black_graph(gen::load("trefoil"))), 3);
  const BlackGraph h = black_graph(gen::load("hopf"));
  EXPECT_EQ(h.edges.size(), 2u);
  EXPECT_EQ(det_matrix_tree(h), 2);
  // Hopf: one graph of the pair is a double edge, the other a 2-cycle.
  EXPECT_EQ(h.num_vertices, 2);
  const BlackGraph sq = black_graph(square_knot());
  EXPECT_EQ(det_matrix_tree(sq), 9);
  EXPECT_EQ(goeritz_determinant(square_knot()), 9);
  EXPECT_EQ(det_matrix_tree(black_graph(borromean())), 16);
}

TEST(BlackGraph, EdgeAndVertexCounts) {
  for (const auto& d : gen::alternating_corpus()) {
    const BlackGraph g = black_graph(d);
    EXPECT_EQ(static_cast<int>(g.edges.size()), d.size());
    const auto cb = checkerboard(d);
    EXPECT_EQ(g.num_vertices, static_cast<int>(std::count(cb.color.begin(), cb.color.end(), 1)));
  }
}

TEST(BlackGraph, Errors) {
  EXPECT_EQ(kind_of([] { black_graph(gen::load("nine47")); }), ErrorKind::NotAlternating);
  EXPECT_EQ(kind_of([] { black_graph(gen::load("t35")); }), ErrorKind::NotAlternating);
  EXPECT_EQ(kind_of([] { checkerboard(parse_pd("X[1,1,2,2];O3")); }), ErrorKind::Disconnected);
}

TEST(GoeritzDeterminant, KnownValues) {
  EXPECT_EQ(goeritz_determinant(parse_pd("O1")), 1);
  EXPECT_EQ(goeritz_determinant(parse_pd("X[1,1,2,2]")), 1);
  EXPECT_EQ(goeritz_determinant(gen::load("nine47")), 27);
  EXPECT_EQ(goeritz_determinant(gen::load("t35")), 1);
  EXPECT_EQ(goeritz_determinant(gen::load("nine40")), 75);
  EXPECT_EQ(link_determinant(parse_pd("O1;O2")), 0);
}

TEST(GoeritzDeterminant, MirrorInvariantAndMatchesJones) {
  for (const auto& d : gen::corpus()) {
    if (!is_connected(d)) continue;
    EXPECT_EQ(goeritz_determinant(d), goeritz_determinant(mirror(d))) << d.name();
    EXPECT_EQ(goeritz_determinant(d), BigInt(jones_determinant(d))) << d.name();
  }
}

TEST(Lattice, Hopf) {
  const GoeritzLattice L = build_lattice(black_graph(gen::load("hopf")));
  ASSERT_EQ(L.b, 1);
  EXPECT_EQ(L.Q, (MatZ{{-2}}));
}

TEST(Lattice, Trefoil) {
  const GoeritzLattice L = build_lattice(black_graph(gen::load("trefoil")));
  EXPECT_GE(L.b, 1);
  EXPECT_EQ(abs(det(L.Q)), 3);
  EXPECT_TRUE(is_negative_definite(L.Q));
  EXPECT_EQ(L.extra_edges.size(), static_cast<std::size_t>(L.b));
  EXPECT_EQ(L.tree_edges.size() + L.extra_edges.size(), 3u);
}

TEST(Lattice, NineFortySmithForm) {
  const GoeritzLattice L = build_lattice(black_graph(gen::load("nine40")));
  const SmithForm s = smith_normal_form(L.Q);
  std::vector<BigInt> big;
  for (auto& f : s.invariant_factors)
    if (f != 1) big.push_back(f);
  EXPECT_EQ(big, (std::vector<BigInt>{5, 15}));
  EXPECT_EQ(abs(det(L.Q)), 75);
  EXPECT_EQ(s.U * s.D * s.V, L.Q);
}

TEST(Lattice, CircuitsAndQuadraticForm) {
  for (const auto& d : gen::alternating_corpus()) {
    const BlackGraph g = black_graph(d);
    const GoeritzLattice L = build_lattice(g, 7);
    EXPECT_EQ(L.b, static_cast<int>(g.edges.size()) - g.num_vertices + 1) << d.name();
    ASSERT_EQ(L.circuits.size(), static_cast<std::size_t>(L.b));
    for (int i = 0; i < L.b; ++i) {
      const auto& ci = L.circuits[static_cast<std::size_t>(i)];
      // Each circuit uses its own extra edge and no other extra edge.
      for (int j = 0; j < L.b; ++j) {
        const int e = L.extra_edges[static_cast<std::size_t>(j)];
        EXPECT_EQ(ci[static_cast<std::size_t>(e)] != 0, i == j) << d.name();
      }
      // Boundary of a circuit is zero.
      std::vector<int> bd(static_cast<std::size_t>(g.num_vertices), 0);
      for (std::size_t e = 0; e < ci.size(); ++e) {
        bd[static_cast<std::size_t>(g.edges[e].first)] -= ci[e];
        bd[static_cast<std::size_t>(g.edges[e].second)] += ci[e];
      }
      EXPECT_TRUE(std::all_of(bd.begin(), bd.end(), [](int v) { return v == 0; })) << d.name();
      for (int j = 0; j < L.b; ++j) {
        long long dot = 0;
        for (std::size_t e = 0; e < ci.size(); ++e) dot += ci[e] * L.circuits[static_cast<std::size_t>(j)][e];
        EXPECT_EQ(L.Q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), -dot);
      }
    }
  }
}

TEST(Lattice, NegativeDefiniteAndDeterminantAgree) {
  for (const auto& d : gen::alternating_corpus()) {
    const BlackGraph g = black_graph(d);
    const GoeritzLattice L = build_lattice(g);
    EXPECT_TRUE(is_negative_definite(L.Q)) << d.name();
    const BigInt trees = det_matrix_tree(g);
    EXPECT_EQ(abs(det(L.Q)), trees) << d.name();
    EXPECT_EQ(goeritz_determinant(d), trees) << d.name();
    if (L.b <= 6) EXPECT_EQ(abs(oracle::cofactor_det(L.Q)), trees) << d.name();
  }
}

TEST(Lattice, TreeSeedIndependence) {
  for (const char* n : {"trefoil", "k5_2", "k7_4", "nine40"}) {
    const BlackGraph g = black_graph(gen::load(n));
    const DTable base = d_table(build_lattice(g, -1).Q);
    for (int seed = 0; seed < 4; ++seed) {
      const GoeritzLattice L = build_lattice(g, seed);
      EXPECT_EQ(smith_normal_form(L.Q).invariant_factors, base.invariant_factors) << n;
      EXPECT_EQ(sorted_d(d_table(L.Q)), sorted_d(base)) << n;
    }
  }
}

TEST(Additivity, EveryCrossing) {
  std::vector<LinkDiagram> ds = gen::alternating_corpus();
  ds.push_back(square_knot());
  ds.push_back(borromean());
  int checked = 0;
  for (const auto& d : ds)
    for (int x = 0; x < d.size(); ++x) {
      try {
        EXPECT_TRUE(det_additivity_check(d, x)) << d.name() << " crossing " << x;
        ++checked;
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DisconnectedResolution) << d.name();
      }
    }
  EXPECT_GT(checked, 100);
}

TEST(Additivity, DisconnectedResolution) {
  // Smoothing a kink crossing one way splits off a circle.
  const LinkDiagram kink = parse_pd("X[1,1,2,2]");
  bool saw = false;
  try {
    det_additivity_check(kink, 0);
  } catch (const Error& e) {
    saw = e.kind() == ErrorKind::DisconnectedResolution;
  }
  EXPECT_TRUE(saw);
}
