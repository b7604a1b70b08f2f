#include <gtest/gtest.h>

#include <random>
#include <set>

#include "subdiv/k3e.hpp"
#include "subdiv/two_block.hpp"
#include "test_support.hpp"

using namespace subdiv;
using namespace subdiv::ref;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantBroken;
}

// Random digraph with every out-degree at least `min_out`.
Digraph random_min_out(int n, int min_out, double extra, std::mt19937_64& rng) {
  std::vector<Arc> arcs = random_out_regular(n, min_out, rng).arcs();
  for (auto a : random_digraph(n, extra, rng).arcs()) arcs.push_back(a);
  return Digraph(n, arcs);
}

}  // namespace

TEST(Fork, GreedyOnBiorientedClique) {
  auto [p1, p2] = fork(bioriented_clique(5), 0, 2, 2);
  EXPECT_EQ(p1.vertices, (VertexList{0, 1, 2}));
  EXPECT_EQ(p2.vertices, (VertexList{0, 3, 4}));
}

TEST(Fork, RespectsForbiddenSet) {
  std::vector<char> forbidden(6, 0);
  forbidden[1] = 1;
  auto [p1, p2] = fork(bioriented_clique(6), 0, 2, 2, forbidden);
  for (const auto* p : {&p1, &p2})
    for (Vertex v : p->vertices) EXPECT_NE(v, 1);
  EXPECT_EQ(p1.length(), 2);
  EXPECT_EQ(p2.length(), 2);
}

TEST(Fork, DipathHostIsStuck) {
  EXPECT_EQ(kind_of([] { fork(directed_path(5), 0, 1, 1); }), ErrorKind::StuckGreedy);
}

TEST(Fork, RandomHostsGiveDisjointPaths) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Digraph d = random_out_regular(30, 6, rng);
    auto [p1, p2] = fork(d, 0, 3, 3);
    ASSERT_TRUE(p1.valid_in(d));
    ASSERT_TRUE(p2.valid_in(d));
    EXPECT_EQ(p1.length(), 3);
    EXPECT_EQ(p2.length(), 3);
    std::set<Vertex> seen(p1.vertices.begin(), p1.vertices.end());
    for (std::size_t i = 1; i < p2.vertices.size(); ++i) EXPECT_FALSE(seen.count(p2.vertices[i]));
  }
}

TEST(TwoBlock, BiorientedCliquesContainLargestBlocks) {
  struct Case {
    int n, k1, k2;
  };
  for (Case c : {Case{5, 3, 2}, Case{4, 2, 2}, Case{6, 4, 2}, Case{7, 3, 3}}) {
    Digraph d = bioriented_clique(c.n);
    FinderResult r = find_two_block(d, c.k1, c.k2);
    ASSERT_EQ(r.status, FinderStatus::Found) << c.n << " " << c.k1 << "," << c.k2;
    auto rep = validate_certificate(d, pattern_two_block(c.k1, c.k2), *r.certificate);
    EXPECT_TRUE(rep) << rep.message;
  }
}

TEST(TwoBlock, TooSmallCliqueHasNone) {
  for (int k : {2, 3}) {
    FinderResult r = find_two_block(bioriented_clique(k + 1), k + 1, 2);
    EXPECT_EQ(r.status, FinderStatus::NotFound);
    EXPECT_FALSE(r.certificate.has_value());
  }
}

TEST(TwoBlock, ParameterChecks) {
  Digraph d = bioriented_clique(5);
  EXPECT_EQ(kind_of([&] { find_two_block(d, 2, 0); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([&] { find_two_block(d, 1, 2); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([&] { find_two_block(d, 1, 1); }), ErrorKind::DegeneratePattern);
}

TEST(TwoBlock, ConstructionRouteOnRandomHosts) {
  std::mt19937_64 rng(8);
  int constructed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int k1 = 2 + static_cast<int>(rng() % 3), k2 = 2;
    Digraph d = random_out_regular(12 + static_cast<int>(rng() % 18), k1 + k2, rng);
    FinderResult r = find_two_block(d, k1, k2, 10'000'000, {false});
    if (r.status == FinderStatus::Found) {
      ++constructed;
      auto rep = validate_certificate(d, pattern_two_block(k1, k2), *r.certificate);
      ASSERT_TRUE(rep) << rep.message;
      EXPECT_EQ(r.route, "construction");
    } else {
      ASSERT_TRUE(r.stuck.has_value());
    }
  }
  EXPECT_GT(constructed, 150);
}

TEST(TwoBlock, VerdictMatchesOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 4 + static_cast<int>(rng() % 6);
    Digraph d = random_digraph(n, 0.3 + 0.1 * (trial % 4), rng);
    int k2 = 1 + static_cast<int>(rng() % 2), k1 = 2 + static_cast<int>(rng() % 2);
    FinderResult r = find_two_block(d, k1, k2);
    auto truth = contains_subdivision(d, pattern_two_block(k1, k2));
    EXPECT_EQ(r.status == FinderStatus::Found, truth.status == SearchStatus::Found) << "trial " << trial;
    if (r.certificate) EXPECT_TRUE(validate_certificate(d, pattern_two_block(k1, k2), *r.certificate));
  }
}

TEST(TwoBlock, LongCycleGivesOneArcBlock) {
  std::mt19937_64 rng(6);
  for (int k = 2; k <= 5; ++k) {
    Digraph d = random_out_regular(25, k, rng);
    auto cert = two_block_from_long_cycle(d, k);
    ASSERT_TRUE(cert.has_value());
    EXPECT_TRUE(validate_certificate(d, pattern_two_block(k, 1), *cert));
  }
  EXPECT_FALSE(two_block_from_long_cycle(directed_cycle(5), 3).has_value());
}

TEST(K3e, BiorientedTriangle) {
  Digraph d = bioriented_clique(3);
  for (Vertex v0 = 0; v0 < 3; ++v0) {
    auto cert = find_k3e(d, v0);
    EXPECT_TRUE(validate_certificate(d, k3_minus_e(), cert));
  }
}

TEST(K3e, RootWithSingleOutArc) {
  // Bioriented triangle minus (0,2): vertex 0 has out-degree 1.
  Digraph d(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  ASSERT_EQ(k3e_root(d), 0);
  auto cert = find_k3e(d, 0);
  EXPECT_TRUE(validate_certificate(d, k3_minus_e(), cert));
}

TEST(K3e, PreconditionChecks) {
  EXPECT_EQ(kind_of([] { find_k3e(directed_cycle(4), 0); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { find_k3e(bioriented_clique(2), 0); }), ErrorKind::PreconditionViolated);
  EXPECT_FALSE(k3e_root(directed_cycle(4)).has_value());
  EXPECT_EQ(kind_of([] { find_k3e(bioriented_clique(5), 0, 0); }), ErrorKind::DepthBudgetExceeded);
}

TEST(K3e, RandomHostsAndStepCoverage) {
  std::mt19937_64 rng(12);
  std::set<std::size_t> kinds;
  for (int trial = 0; trial < 1500; ++trial) {
    int n = 3 + static_cast<int>(rng() % 12);
    Digraph d = random_min_out(n, 2, trial % 3 == 0 ? 0.0 : 0.1, rng);
    // Drop out-arcs of one vertex down to one to exercise the degree-one root.
    Vertex v0 = static_cast<Vertex>(rng() % n);
    if (trial % 2) {
      std::vector<Arc> arcs;
      bool kept = false;
      for (auto a : d.arcs())
        if (a.first != v0 || !kept) {
          arcs.push_back(a);
          kept = kept || a.first == v0;
        }
      d = Digraph(n, arcs);
    }
    K3eRun run = find_k3e_traced(d, v0);
    auto rep = validate_certificate(d, k3_minus_e(), run.certificate);
    ASSERT_TRUE(rep) << "trial " << trial << ": " << rep.message;
    EXPECT_EQ(run.trace.size(), run.steps.size() + 1);  // plus the base case
    for (const auto& s : run.steps) kinds.insert(s.index());
  }
  EXPECT_EQ(kinds.size(), 4u) << "every reduction kind should occur";
}

TEST(K3e, ArcSetReader) {
  // Subdivision of K3-e: 0<->1 direct, 1 -> 5 -> 2, 2 -> 1, 0 -> 6 -> 2.
  std::vector<Arc> arcs{{0, 1}, {1, 0}, {1, 5}, {5, 2}, {2, 1}, {0, 6}, {6, 2}};
  auto cert = certificate_from_arc_set(arcs, k3_minus_e());
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(validate_certificate(Digraph(7, arcs), k3_minus_e(), *cert));
  arcs.pop_back();
  EXPECT_FALSE(certificate_from_arc_set(arcs, k3_minus_e()).has_value());
}
