#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace khcover;

namespace {

ErrorKind kind_of(const std::string& pd) {
  try {
    parse_pd(pd);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << pd;
  return ErrorKind::MalformedCode;
}

const char* kAtlasTrefoil = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";

}  // namespace

TEST(ParsePd, CrosslessUnknot) {
  const LinkDiagram d = parse_pd("O1");
  EXPECT_EQ(d.size(), 0);
  EXPECT_EQ(d.components().size(), 1u);
  EXPECT_EQ(faces(d).size(), 2u);
}

TEST(ParsePd, EmptyLink) {
  const LinkDiagram d = parse_pd("");
  EXPECT_EQ(d.size(), 0);
  EXPECT_EQ(d.components().size(), 0u);
}

TEST(ParsePd, Trefoil) {
  const LinkDiagram d = parse_pd(kAtlasTrefoil);
  EXPECT_EQ(d.size(), 3);
  EXPECT_EQ(d.num_arcs(), 6);
  EXPECT_EQ(d.components().size(), 1u);
  EXPECT_EQ(faces(d).size(), 5u);
}

TEST(ParsePd, MarkAndWhitespace) {
  const LinkDiagram d = parse_pd(" X[1, 5,2,4] ;X[3,1,4,6];\nX[5,3,6,2] mark=4");
  ASSERT_TRUE(d.mark());
  EXPECT_EQ(*d.mark(), 4);
}

TEST(ParsePd, BadArcCount) {
  EXPECT_EQ(kind_of("X[1,1,3,3]"), ErrorKind::BadArcCount);
  EXPECT_EQ(kind_of("X[1,1,1,2];X[2,3,3,4]"), ErrorKind::BadArcCount);
  EXPECT_EQ(kind_of("X[1,5,2,6];X[3,6,4,1];X[5,2,6,3]"), ErrorKind::BadArcCount);
}

TEST(ParsePd, KinkIsValid) {
  const LinkDiagram d = parse_pd("X[1,1,2,2]");
  EXPECT_EQ(d.size(), 1);
  EXPECT_EQ(d.components().size(), 1u);
}

TEST(ParsePd, Malformed) {
  for (const char* s : {"X[1,2,3]", "X[1,2,3,4,5]", "Y[1,2,3,4]", "X[1,2,3,4", "X[1,1,2,2];", "X[a,1,2,2]",
                        "X[1,1,2,2] mark=1 mark=1", "mark=1;X[1,1,2,2]", "X[1,2,3,1];X[2,4,4,3]", "X[0,0,1,1]", "X[1,1,2,2] mark=7"})
    EXPECT_EQ(kind_of(s), ErrorKind::MalformedCode) << s;
}

TEST(ParsePd, NonPlanar) {
  EXPECT_EQ(kind_of("X[1,1,2,3];X[2,4,3,4]"), ErrorKind::NonPlanar);
  EXPECT_EQ(kind_of("X[1,1,2,2];X[3,4,3,4]"), ErrorKind::NonPlanar);
}

TEST(ParsePd, SerializerRoundTripOnCorpus) {
  for (const auto& d : gen::corpus()) {
    const LinkDiagram e = parse_pd(to_pd(d), d.name());
    EXPECT_EQ(e, d) << d.name();
    const LinkDiagram m = d.with_mark(1);
    EXPECT_EQ(parse_pd(to_pd(m)), m) << d.name();
  }
}

TEST(ParsePd, DeterministicOrdering) {
  const LinkDiagram d = parse_pd(kAtlasTrefoil);
  EXPECT_EQ(d.crossings()[0].arcs, (std::array<int, 4>{1, 4, 2, 5}));
  EXPECT_EQ(d.crossings()[2].arcs, (std::array<int, 4>{5, 2, 6, 3}));
}

TEST(CrossingSigns, Basic) {
  EXPECT_EQ(crossing_signs(parse_pd("O1")), (SignCount{0, 0}));
  // Counterclockwise from the incoming under-strand, this string is the
  // left-handed trefoil; the shipped table trefoil is right-handed.
  EXPECT_EQ(crossing_signs(parse_pd(kAtlasTrefoil)), (SignCount{0, 3}));
  EXPECT_EQ(crossing_signs(mirror(parse_pd(kAtlasTrefoil))), (SignCount{3, 0}));
  EXPECT_EQ(crossing_signs(gen::load("trefoil")), (SignCount{3, 0}));
}

TEST(CrossingSigns, SumAndGlobalReversal) {
  for (const auto& d : gen::corpus()) {
    const auto s = crossing_signs(d);
    EXPECT_EQ(s.n_plus + s.n_minus, d.size());
    LinkDiagram r = d;
    for (int c = 0; c < static_cast<int>(d.components().size()); ++c) r = reverse_component(r, c);
    EXPECT_EQ(crossing_signs(r), s) << d.name();
  }
}

TEST(CrossingSigns, ReversingOneHopfComponentFlipsBoth) {
  const LinkDiagram h = gen::load("hopf");
  const auto s = crossing_signs(h);
  const auto r = crossing_signs(reverse_component(h, 0));
  EXPECT_EQ(r.n_plus, s.n_minus);
  EXPECT_EQ(r.n_minus, s.n_plus);
}

TEST(CrossingSigns, BraidLetters) {
  const LinkDiagram pos = gen::braid_closure(2, {1, 1, 1});
  const LinkDiagram neg = gen::braid_closure(2, {-1, -1, -1});
  EXPECT_EQ(crossing_signs(pos), (SignCount{3, 0}));
  EXPECT_EQ(crossing_signs(neg), (SignCount{0, 3}));
}

TEST(Mirror, InvolutionAndSignExchange) {
  EXPECT_EQ(mirror(parse_pd("O1")), parse_pd("O1"));
  for (const auto& d : gen::corpus()) {
    EXPECT_EQ(mirror(mirror(d)), d) << d.name();
    const auto s = crossing_signs(d), m = crossing_signs(mirror(d));
    EXPECT_EQ(s.n_plus, m.n_minus);
    EXPECT_EQ(s.n_minus, m.n_plus);
  }
}

TEST(Resolve, TrefoilAllZero) {
  const auto r = resolve(parse_pd(kAtlasTrefoil), {0, 0, 0});
  EXPECT_EQ(r.num_circles, 2);
  EXPECT_EQ(r.weight, 0);
  EXPECT_EQ(resolve(parse_pd(kAtlasTrefoil), {1, 1, 1}).num_circles, 3);
}

TEST(Resolve, HopfCircleCounts) {
  const LinkDiagram h = gen::load("hopf");
  std::vector<int> c;
  for (std::vector<int> I : {std::vector<int>{0, 0}, {1, 0}, {0, 1}, {1, 1}}) c.push_back(resolve(h, I).num_circles);
  EXPECT_EQ(c, (std::vector<int>{2, 1, 1, 2}));
}

TEST(Resolve, UnknotAndLengthMismatch) {
  EXPECT_EQ(resolve(parse_pd("O1"), {}).num_circles, 1);
  try {
    resolve(parse_pd(kAtlasTrefoil), {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(Resolve, CubeEdgesChangeCircleCountByOne) {
  gen::Rng rng(31);
  std::vector<LinkDiagram> ds = gen::corpus();
  for (int t = 0; t < 10; ++t) ds.push_back(gen::random_braid(rng, 4, 8));
  for (const auto& d : ds) {
    const int ell = d.size();
    if (ell > 10) continue;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << ell); ++s) {
      int c = 0;
      state_circles(d, s, &c);
      ASSERT_EQ(c, oracle::slot_walk_circles(d, s)) << d.name();
      for (int x = 0; x < ell; ++x) {
        if ((s >> x) & 1u) continue;
        int c2 = 0;
        state_circles(d, s | (std::uint64_t{1} << x), &c2);
        ASSERT_EQ(std::abs(c2 - c), 1) << d.name() << " state " << s << " crossing " << x;
      }
    }
  }
}

TEST(Faces, EulerFormula) {
  EXPECT_EQ(faces(parse_pd("O1")).size(), 2u);
  EXPECT_EQ(faces(gen::load("hopf")).size(), 4u);
  for (const auto& d : gen::corpus()) {
    if (!is_connected(d) || d.size() == 0) continue;
    EXPECT_EQ(static_cast<int>(faces(d).size()), d.size() + 2) << d.name();
    std::size_t arc_slots = 0;
    for (const auto& f : faces(d)) arc_slots += f.arcs.size();
    EXPECT_EQ(arc_slots, 2u * static_cast<std::size_t>(d.num_arcs()));
  }
}

TEST(Structure, ConnectivityAndAlternation) {
  EXPECT_TRUE(is_alternating(gen::load("trefoil")));
  EXPECT_TRUE(is_alternating(gen::load("nine40")));
  EXPECT_FALSE(is_alternating(gen::load("nine47")));
  EXPECT_FALSE(is_alternating(gen::load("t35")));
  EXPECT_FALSE(is_connected(parse_pd("O1;O2")));
  EXPECT_EQ(diagram_pieces(parse_pd("X[1,1,2,2];O3")), 2);
}

TEST(Smoothing, CircleCountsCommuteWithSurgery) {
  gen::Rng rng(32);
  std::vector<LinkDiagram> ds{gen::load("trefoil"), gen::load("hopf"), gen::load("k5_2"), gen::load("nine47")};
  for (int t = 0; t < 10; ++t) ds.push_back(gen::random_braid(rng, 4, 7));
  for (const auto& d : ds)
    for (int x = 0; x < d.size(); ++x)
      for (int bit = 0; bit < 2; ++bit) {
        const LinkDiagram r = smooth_crossing(d, x, bit);
        ASSERT_EQ(r.size(), d.size() - 1);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << r.size()); ++s) {
          // Insert the smoothed bit at position x.
          const std::uint64_t low = s & ((std::uint64_t{1} << x) - 1), high = (s >> x) << (x + 1);
          const std::uint64_t full = low | high | (static_cast<std::uint64_t>(bit) << x);
          int c1 = 0, c2 = 0;
          state_circles(d, full, &c1);
          state_circles(r, s, &c2);
          ASSERT_EQ(c1, c2) << d.name() << " x=" << x << " bit=" << bit;
        }
      }
}

TEST(Smoothing, MarkFollowsTheArc) {
  const LinkDiagram d = gen::load("trefoil").with_mark(1);
  for (int x = 0; x < d.size(); ++x)
    for (int bit = 0; bit < 2; ++bit) EXPECT_TRUE(smooth_crossing(d, x, bit).mark().has_value());
}
