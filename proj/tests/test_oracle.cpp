#include <gtest/gtest.h>

#include "subdiv/json_io.hpp"
#include "subdiv/oracle.hpp"
#include "test_support.hpp"

using namespace subdiv;

TEST(Oracle, FindsTriangleInSixCycle) {
  Digraph c6 = directed_cycle(6), c3 = directed_cycle(3);
  auto r = contains_subdivision(c6, c3);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_EQ(r.certificate->branch.size(), 3u);
  EXPECT_TRUE(validate_certificate(c6, c3, *r.certificate).ok);
}

TEST(Oracle, TooSmallHostsHaveNoSubdivision) {
  EXPECT_EQ(contains_subdivision(bioriented_clique(3), pattern_two_block(2, 2)).status,
            SearchStatus::None);
  EXPECT_EQ(contains_subdivision(bioriented_clique(2), k3_minus_e()).status, SearchStatus::None);
}

TEST(Oracle, BudgetExceededIsDistinct) {
  auto r = contains_subdivision(bioriented_clique(9), pattern_cab(2, 2), 20);
  EXPECT_EQ(r.status, SearchStatus::BudgetExceeded);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(Oracle, ValidationReportsViolations) {
  Digraph host = directed_cycle(6);
  Digraph pat = directed_cycle(3);
  auto cert = *contains_subdivision(host, pat).certificate;
  auto overlap = cert;
  // route two paths through the same interior vertex
  overlap.branch = {0, 2, 4};
  overlap.paths = {{0, 1, Dipath({0, 1, 2})}, {1, 2, Dipath({2, 3, 4})}, {2, 0, Dipath({4, 5, 0})}};
  EXPECT_TRUE(validate_certificate(host, pat, overlap).ok);
  overlap.paths[1].path = Dipath({2, 1, 4});
  auto rep = validate_certificate(host, pat, overlap);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("arc absent"), std::string::npos);

  Digraph k4 = bioriented_clique(5);
  SubdivisionCertificate two;
  two.branch = {0, 1, 2};
  two.paths = {{0, 1, Dipath({0, 3, 1})}, {1, 2, Dipath({1, 3, 2})}, {2, 0, Dipath({2, 0})}};
  rep = validate_certificate(k4, pat, two);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("internal overlap"), std::string::npos);

  rep = validate_certificate(host, k3_minus_e(), cert);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("branch arity mismatch"), std::string::npos);
}

TEST(Oracle, EvenDicycle) {
  EXPECT_TRUE(has_even_dicycle(Digraph(2, {{0, 1}, {1, 0}})));
  EXPECT_FALSE(has_even_dicycle(directed_cycle(5)));
  EXPECT_TRUE(has_even_dicycle(bioriented_clique(3)));
  EXPECT_TRUE(has_even_dicycle(directed_cycle(6)));
  // two odd cycles sharing a vertex close an even cycle only via longer routes
  Digraph bowtie(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  EXPECT_FALSE(has_even_dicycle(bowtie));
}

TEST(Oracle, Automorphisms) {
  EXPECT_EQ(automorphisms(directed_cycle(5)).size(), 5u);
  EXPECT_EQ(automorphisms(bioriented_star(4)).size(), 24u);
  EXPECT_EQ(automorphisms(k3_minus_e()).size(), 1u);
  EXPECT_EQ(automorphisms(bioriented_clique(4)).size(), 24u);
}

TEST(Oracle, CertificateJsonRoundTrip) {
  auto r = contains_subdivision(bioriented_clique(4), k3_minus_e());
  ASSERT_EQ(r.status, SearchStatus::Found);
  auto j = certificate_to_json(*r.certificate);
  EXPECT_TRUE(j.contains("branch"));
  EXPECT_TRUE(j["paths"][0].contains("vertices"));
  auto back = certificate_from_json(j);
  EXPECT_EQ(back.branch, r.certificate->branch);
  EXPECT_TRUE(validate_certificate(bioriented_clique(4), k3_minus_e(), back).ok);
  EXPECT_THROW(certificate_from_json(nlohmann::json::parse(R"({"branch": 3})")), Error);
}

// Brute-force reference: try every injective branch map and every choice of simple paths.
namespace {
bool brute_contains(const Digraph& d, const Digraph& f) {
  auto arcs = f.arcs();
  VertexList phi(f.n(), -1);
  std::vector<char> used(d.n(), 0);
  std::function<bool(std::size_t)> route = [&](std::size_t i) -> bool {
    if (i == arcs.size()) return true;
    for (const auto& p : ref::all_simple_paths(d, phi[arcs[i].first], phi[arcs[i].second])) {
      bool ok = true;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) ok &= !used[p[k]];
      if (!ok) continue;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) used[p[k]] = 1;
      if (route(i + 1)) return true;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) used[p[k]] = 0;
    }
    return false;
  };
  std::function<bool(int)> assign = [&](int x) -> bool {
    if (x == f.n()) return route(0);
    for (Vertex h = 0; h < d.n(); ++h) {
      if (used[h]) continue;
      used[h] = 1;
      phi[x] = h;
      if (assign(x + 1)) return true;
      used[h] = 0;
    }
    return false;
  };
  return assign(0);
}
}  // namespace

TEST(Oracle, AgreesWithBruteForceAndIsMonotone) {
  std::mt19937_64 rng(99);
  std::vector<Digraph> patterns{k3_minus_e(), directed_cycle(3), pattern_two_block(2, 2),
                                pattern_cab(2, 1)};
  for (int t = 0; t < 150; ++t) {
    Digraph d = ref::random_digraph(5 + t % 2, 0.35, rng);
    for (const auto& f : patterns) {
      auto r = contains_subdivision(d, f);
      ASSERT_NE(r.status, SearchStatus::BudgetExceeded);
      EXPECT_EQ(r.status == SearchStatus::Found, brute_contains(d, f));
      if (r.status == SearchStatus::Found) {
        EXPECT_TRUE(validate_certificate(d, f, *r.certificate).ok);
        DigraphBuilder b(d);
        std::uniform_int_distribution<int> pick(0, d.n() - 1);
        for (int extra = 0; extra < 3; ++extra) {
          int u = pick(rng), v = pick(rng);
          if (u != v) b.add_arc(u, v);
        }
        EXPECT_EQ(contains_subdivision(b.build(), f).status, SearchStatus::Found);
      }
    }
  }
}
