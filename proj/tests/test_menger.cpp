#include <gtest/gtest.h>

#include <set>

#include "subdiv/menger.hpp"
#include "test_support.hpp"

using namespace subdiv;

namespace {

void expect_internally_disjoint(const Digraph& d, const std::vector<Dipath>& paths, Vertex u,
                                Vertex v) {
  std::set<Vertex> seen;
  for (const auto& p : paths) {
    ASSERT_TRUE(p.valid_in(d));
    EXPECT_EQ(p.first(), u);
    EXPECT_EQ(p.last(), v);
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
      EXPECT_TRUE(seen.insert(p.vertices[i]).second) << "shared interior vertex";
  }
}

}  // namespace

TEST(Menger, CliqueWithoutArcHasTwoPaths) {
  DigraphBuilder b(bioriented_clique(4));
  b.remove_arc(0, 1);
  Digraph d = b.build();
  auto r = vertex_disjoint_paths(d, 0, 1, 2);
  ASSERT_TRUE(r.has_paths());
  ASSERT_EQ(r.paths.size(), 2u);
  expect_internally_disjoint(d, r.paths, 0, 1);
  std::set<Vertex> mids{r.paths[0].vertices[1], r.paths[1].vertices[1]};
  EXPECT_EQ(mids, (std::set<Vertex>{2, 3}));
}

TEST(Menger, PathGivesSingletonCut) {
  auto r = vertex_disjoint_paths(directed_path(2), 0, 2, 2);
  ASSERT_FALSE(r.has_paths());
  EXPECT_EQ(r.cut, VertexList{1});
}

TEST(Menger, CycleHasOnlyOneRoute) {
  Digraph c5 = directed_cycle(5);
  EXPECT_EQ(ref::all_simple_paths(c5, 0, 2).size(), 1u);
  auto r = vertex_disjoint_paths(c5, 0, 2, 2);
  ASSERT_FALSE(r.has_paths());
  EXPECT_EQ(r.cut.size(), 1u);
}

TEST(Menger, Errors) {
  try {
    vertex_disjoint_paths(directed_path(2), 0, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ArcPresent);
  }
  try {
    vertex_disjoint_paths(directed_path(2), 1, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SameVertex);
  }
  try {
    fan_to_set(bioriented_clique(3), 0, {0, 1}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexInSet);
  }
}

TEST(Menger, FanExamples) {
  Digraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  auto f = fan_to_set(star, 0, {1, 2, 3}, 3);
  ASSERT_TRUE(f.has_fan());
  for (const auto& p : f.fan) EXPECT_EQ(p.length(), 1);
  auto c = fan_to_set(directed_path(2), 0, {2}, 2);
  ASSERT_FALSE(c.has_fan());
  EXPECT_EQ(c.cut, VertexList{1});
  auto k3 = fan_to_set(bioriented_clique(3), 0, {1, 2}, 2);
  ASSERT_TRUE(k3.has_fan());
  std::set<Vertex> ends{k3.fan[0].last(), k3.fan[1].last()};
  EXPECT_EQ(ends, (std::set<Vertex>{1, 2}));
}

TEST(Menger, KEqualsOneIsReachability) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    Digraph d = ref::random_digraph(6, 0.2, rng);
    Vertex u = 0, v = 5;
    if (d.has_arc(u, v)) continue;
    auto r = vertex_disjoint_paths(d, u, v, 1);
    EXPECT_EQ(r.has_paths(), ref::closure(d.n(), d.arcs())[u][v] != 0);
  }
}

TEST(Menger, ArcConnectivityExamples) {
  EXPECT_EQ(strong_arc_connectivity(bioriented_clique(3)), 2);
  EXPECT_EQ(ref::brute_arc_connectivity(bioriented_clique(3)), 2);
  EXPECT_EQ(strong_arc_connectivity(directed_cycle(5)), 1);
  EXPECT_EQ(strong_arc_connectivity(directed_path(3)), 0);
  EXPECT_THROW(strong_arc_connectivity(Digraph(0)), Error);
  for (int k = 2; k <= 5; ++k) EXPECT_EQ(strong_arc_connectivity(bioriented_clique(k)), k - 1);
  EXPECT_EQ(ref::brute_arc_connectivity(bioriented_clique(4)), 3);
}

TEST(Menger, ArcConnectivityMatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    Digraph d = ref::random_digraph(3 + t % 3, 0.6, rng);
    if (d.arc_count() > 14) continue;
    EXPECT_EQ(strong_arc_connectivity(d), ref::brute_arc_connectivity(d));
  }
}

// Cross-check the Menger dichotomy against exhaustive path enumeration.
TEST(Menger, DisjointPathCountMatchesBruteForce) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    Digraph d = ref::random_digraph(6, 0.35, rng);
    if (d.has_arc(0, 5)) continue;
    for (int k = 1; k <= 3; ++k) {
      auto r = vertex_disjoint_paths(d, 0, 5, k);
      if (r.has_paths()) {
        expect_internally_disjoint(d, r.paths, 0, 5);
      } else {
        EXPECT_LT(static_cast<int>(r.cut.size()), k);
        std::set<Vertex> cut(r.cut.begin(), r.cut.end());
        EXPECT_FALSE(cut.count(0) || cut.count(5));
        EXPECT_FALSE(ref::reaches_avoiding(d, 0, 5, cut));
      }
    }
  }
}
