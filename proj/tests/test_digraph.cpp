#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "subdiv/digraph.hpp"
#include "test_support.hpp"

using namespace subdiv;

TEST(Digraph, BuildCollapsesDuplicatesAndTransposes) {
  Digraph d(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(d.arc_count(), 3u);
  EXPECT_EQ(d.in(0), VertexList{2});
  EXPECT_EQ(d.transpose().transpose(), d);
  EXPECT_TRUE(d.has_arc(2, 0));
  EXPECT_FALSE(d.has_arc(0, 2));
}

TEST(Digraph, DigonHasMinOutDegreeOne) {
  Digraph d(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(min_out_degree(d), 1);
  EXPECT_EQ(directed_girth(d), 2);
}

TEST(Digraph, RejectsLoopsAndBadIds) {
  try {
    Digraph(2, {{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LoopArc);
  }
  try {
    Digraph(2, {{0, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexOutOfRange);
  }
}

TEST(Digraph, DegreeExamples) {
  EXPECT_EQ(min_out_degree(bioriented_clique(4)), 3);
  EXPECT_EQ(min_out_degree(transitive_tournament(4)), 0);
  EXPECT_EQ(min_out_degree(pattern_cab(2, 3)), 0);
  EXPECT_THROW(min_out_degree(Digraph(0)), Error);
}

TEST(Digraph, GirthExamples) {
  EXPECT_EQ(directed_girth(directed_cycle(5)), 5);
  EXPECT_EQ(directed_girth(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})), 3);
  EXPECT_FALSE(directed_girth(transitive_tournament(5)).has_value());
  EXPECT_EQ(directed_girth(bioriented_clique(3)), 2);
}

TEST(Digraph, GirthMatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Digraph d = ref::random_digraph(2 + trial % 7, 0.25, rng);
    int brute = ref::brute_girth(d);
    auto g = directed_girth(d);
    if (brute == 0) {
      EXPECT_FALSE(g.has_value());
    } else {
      ASSERT_TRUE(g.has_value());
      EXPECT_EQ(*g, brute);
      auto cyc = shortest_cycle(d);
      ASSERT_TRUE(cyc);
      for (std::size_t i = 0; i < cyc->size(); ++i)
        EXPECT_TRUE(d.has_arc((*cyc)[i], (*cyc)[(i + 1) % cyc->size()]));
    }
    bool digon = false;
    for (auto [u, v] : d.arcs()) digon |= d.has_arc(v, u);
    EXPECT_EQ(digon, g.has_value() && *g == 2);
  }
}

TEST(Digraph, StrongComponentsExamples) {
  EXPECT_EQ(strong_components(directed_cycle(4)).size(), 1u);
  EXPECT_EQ(strong_components(directed_path(2)).size(), 3u);
  Digraph two(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  auto comps = strong_components(two);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 2u);
  for (int l = 2; l < 9; ++l) EXPECT_EQ(strong_components(directed_cycle(l)).size(), 1u);
}

TEST(Digraph, StrongComponentsReverseTopologicalAgainstClosure) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Digraph d = ref::random_digraph(1 + trial % 9, 0.2, rng);
    auto r = ref::closure(d.n(), d.arcs());
    auto comps = strong_components(d);
    std::vector<int> comp_of(d.n(), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (Vertex v : comps[c]) comp_of[v] = static_cast<int>(c);
    for (Vertex u = 0; u < d.n(); ++u)
      for (Vertex v = 0; v < d.n(); ++v) {
        EXPECT_EQ(comp_of[u] == comp_of[v], r[u][v] && r[v][u]);
        // arcs only go from later components to earlier ones
        if (d.has_arc(u, v)) EXPECT_GE(comp_of[u], comp_of[v]);
      }
  }
}

TEST(Digraph, PatternCabShape) {
  Digraph c = pattern_cab(2, 3);
  EXPECT_EQ(c.n(), 12);
  EXPECT_EQ(c.arc_count(), 12u);
  for (int a = 1; a <= 4; ++a)
    for (int b = 2; b <= 4; ++b) {
      Digraph p = pattern_cab(a, b);
      EXPECT_EQ(p.n(), 2 * a * b);
      int sources = 0, sinks = 0;
      for (Vertex v = 0; v < p.n(); ++v) {
        sources += p.out_degree(v) == 2;
        sinks += p.in_degree(v) == 2;
      }
      if (a >= 1) {
        EXPECT_EQ(sources, a);
        EXPECT_EQ(sinks, a);
      }
    }
  try {
    pattern_cab(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePattern);
  }
}

// Orientations of C4 with two sources and two sinks are all the alternating one.
TEST(Digraph, PatternCab21IsAlternatingFourCycle) {
  Digraph c = pattern_cab(2, 1);
  ASSERT_EQ(c.n(), 4);
  ASSERT_EQ(c.arc_count(), 4u);
  // underlying graph is a 4-cycle: every vertex has total degree 2 and it is connected
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(c.out_degree(v) + c.in_degree(v), 2);
  int alternating = 0;
  for (Vertex v = 0; v < 4; ++v) alternating += (c.out_degree(v) == 2 || c.in_degree(v) == 2);
  EXPECT_EQ(alternating, 4);
}

TEST(Digraph, PatternTwoBlock) {
  Digraph c = pattern_two_block(3, 2);
  EXPECT_EQ(c.n(), 5);
  EXPECT_EQ(c.out_degree(0), 2);
  EXPECT_EQ(c.in_degree(1), 2);
  Digraph k1 = pattern_two_block(4, 1);
  EXPECT_EQ(k1.n(), 5);
  EXPECT_TRUE(k1.has_arc(0, 1));
  EXPECT_THROW(pattern_two_block(1, 1), Error);
  EXPECT_THROW(pattern_two_block(1, 2), Error);
}

TEST(Digraph, Generators) {
  EXPECT_EQ(bioriented_clique(3).arc_count(), 6u);
  EXPECT_EQ(k3_minus_e().arc_count(), 5u);
  Digraph star = bioriented_star(3);
  EXPECT_EQ(star.arc_count(), 6u);
  EXPECT_EQ(star.out_degree(0), 3);
  EXPECT_EQ(bioriented_path(3).arc_count(), 6u);
  EXPECT_EQ(transitive_tournament(4).arc_count(), 6u);
}

TEST(Digraph, EdgeListRoundTripAndErrors) {
  Digraph d = pattern_cab(2, 2);
  std::stringstream ss;
  write_edge_list(ss, d);
  EXPECT_EQ(read_edge_list(ss), d);
  std::stringstream bad("3 2\n0 1\n1 x\n");
  try {
    read_edge_list(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  std::stringstream short_file("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(short_file), Error);
  std::stringstream tagged("# property: no-even-dicycle\n2 1\n0 1\n");
  EXPECT_EQ(read_edge_list(tagged).arc_count(), 1u);
  EXPECT_NE(to_dot(d).find("0 -> 4"), std::string::npos);
}

TEST(Dipath, Operations) {
  Dipath p({0, 1, 2, 3});
  EXPECT_EQ(p.length(), 3);
  EXPECT_EQ(p.sub(1, 3).vertices, (VertexList{1, 2, 3}));
  EXPECT_EQ(p.then(Dipath({3, 4})).vertices, (VertexList{0, 1, 2, 3, 4}));
  EXPECT_THROW(p.then(Dipath({5, 6})), Error);
  EXPECT_EQ(Dipath::single(7).length(), 0);
  EXPECT_TRUE(p.valid_in(directed_path(3)));
  EXPECT_FALSE(Dipath({0, 2}).valid_in(directed_path(3)));
}
