#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "subdiv/mader.hpp"
#include "test_support.hpp"

using namespace subdiv;

namespace {

int count_min_out(int n, int min_out) {
  // Independent count: scan every arc subset.
  const int m = n * (n - 1);
  int count = 0;
  for (long mask = 0; mask < (1L << m); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) ok = __builtin_popcountl((mask >> (v * (n - 1))) & ((1L << (n - 1)) - 1)) >= min_out;
    count += ok;
  }
  return count;
}

}  // namespace

TEST(Enumerate, SmallCounts) {
  auto two = enumerate_digraphs(2, 1);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0], bioriented_clique(2));
  EXPECT_EQ(enumerate_digraphs(3, 0).size(), 64u);
  auto three = enumerate_digraphs(3, 2);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0], bioriented_clique(3));
}

TEST(Enumerate, CountsMatchSubsetScan) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < n; ++k) EXPECT_EQ(DigraphEnumerator(n, k).size(), static_cast<std::uint64_t>(count_min_out(n, k)));
  EXPECT_EQ(DigraphEnumerator(5, 0).size(), 1u << 20);
}

TEST(Enumerate, LexicographicDistinctAndResumable) {
  DigraphEnumerator e(4, 1);
  std::vector<std::vector<Arc>> seen;
  while (!e.done()) {
    Digraph d = e.next();
    EXPECT_GE(min_out_degree(d), 1);
    seen.push_back(d.arcs());
  }
  // Arc sets as characteristic vectors over tail-major arc order must strictly increase.
  auto key = [](const std::vector<Arc>& arcs) {
    std::vector<int> bits(12, 0);
    for (auto [u, v] : arcs) bits[u * 3 + (v < u ? v : v - 1)] = 1;
    return bits;
  };
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LT(key(seen[i - 1]), key(seen[i]));
  DigraphEnumerator r(4, 1);
  r.seek(17);
  EXPECT_EQ(r.next().arcs(), seen[17]);
  EXPECT_EQ(r.cursor(), 18u);
}

TEST(Enumerate, TooLarge) {
  try {
    DigraphEnumerator e(6, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(VerifyUpper, K3eNeedsOutDegreeTwo) {
  auto rep = verify_upper(parse_pattern_spec("k3e"), 1, 3, {});
  ASSERT_EQ(rep.outcome, MaderOutcome::Counterexample);
  EXPECT_EQ(*rep.counterexample, bioriented_clique(2));
  auto ok = verify_upper(parse_pattern_spec("k3e"), 2, 4, {});
  EXPECT_EQ(ok.outcome, MaderOutcome::AllContain);
  EXPECT_EQ(ok.hosts_per_order.front(), 1u);  // n = 3: only the bioriented triangle
}

TEST(VerifyUpper, TwoBlockTwoTwoAtThree) {
  MaderMode mode;
  mode.threads = 4;
  auto rep = verify_upper(parse_pattern_spec("twoblock:2,2"), 3, 5, mode);
  EXPECT_EQ(rep.outcome, MaderOutcome::AllContain);
  EXPECT_EQ(rep.hosts_undecided, 0u);
  auto low = verify_upper(parse_pattern_spec("twoblock:2,2"), 2, 3, {});
  EXPECT_EQ(low.outcome, MaderOutcome::Counterexample);
}

TEST(VerifyUpper, MonotoneInK) {
  for (int K = 2; K <= 3; ++K)
    EXPECT_EQ(verify_upper(parse_pattern_spec("k3e"), K, 4, {}).outcome, MaderOutcome::AllContain);
}

TEST(VerifyUpper, SampledModeIsReproducible) {
  MaderMode mode;
  mode.kind = MaderMode::Kind::Sampled;
  mode.count = 40;
  mode.seed = 9;
  mode.n_min = 6;
  auto a = verify_upper(parse_pattern_spec("twoblock:3,2"), 4, 12, mode);
  auto b = verify_upper(parse_pattern_spec("twoblock:3,2"), 4, 12, mode);
  EXPECT_EQ(a.outcome, MaderOutcome::AllContain);
  EXPECT_EQ(a.hosts_per_order, b.hosts_per_order);
  EXPECT_EQ(report_to_json(a), report_to_json(b));
  EXPECT_EQ(a.hosts_checked, 40u);
}

TEST(SampleHost, RepairMeetsDegree) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Digraph d = sample_min_out_host(10, 5, 0.1, seed);
    EXPECT_GE(min_out_degree(d), 5);
  }
}

TEST(LowerWitness, CliqueOneSmaller) {
  EXPECT_EQ(lower_witness(k3_minus_e()), bioriented_clique(2));
  EXPECT_EQ(lower_witness(pattern_two_block(3, 2)), bioriented_clique(4));
  EXPECT_EQ(min_out_degree(lower_witness(pattern_two_block(3, 2))), 3);
  EXPECT_EQ(confirm_lower_witness(k3_minus_e()), std::optional<bool>(true));
  EXPECT_EQ(confirm_lower_witness(pattern_two_block(3, 2)), std::optional<bool>(true));
}

TEST(Reports, JsonAndCsv) {
  auto rep = verify_upper(parse_pattern_spec("k3e"), 1, 3, {});
  auto j = report_to_json(rep);
  EXPECT_EQ(j["outcome"], "counterexample");
  EXPECT_EQ(j["counterexample"]["n"], 2);
  EXPECT_EQ(report_csv_header(), "pattern,K,n,mode,outcome,counterexample");
  EXPECT_EQ(report_csv_row(rep, "ce.edges"), "\"k3e\",1,2-3,exhaustive,counterexample,ce.edges");
}

TEST(PatternSpec, ParsesKnownGenerators) {
  EXPECT_EQ(pattern_graph(parse_pattern_spec("cab:2,3")), pattern_cab(2, 3));
  EXPECT_EQ(pattern_graph(parse_pattern_spec("twoblock:3,2")), pattern_two_block(3, 2));
  EXPECT_EQ(parse_pattern_spec("twoblock:2,3").text(), "twoblock:3,2");
  EXPECT_EQ(pattern_graph(parse_pattern_spec("k3e")), k3_minus_e());
  EXPECT_EQ(pattern_graph(parse_pattern_spec("bivec-clique:4")), bioriented_clique(4));
  Digraph oc = pattern_graph(parse_pattern_spec("ocycle:2,1,1,2"));
  EXPECT_EQ(oc.n(), 6);
  EXPECT_EQ(oc.arc_count(), 6u);
  for (const char* bad : {"cab", "cab:2", "nope:1", "k3e:1", "cab:2,x", "cab:2,", ""}) {
    try {
      parse_pattern_spec(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(PatternSpec, DispatchAgreesWithOracle) {
  std::mt19937_64 rng(31);
  for (const char* text : {"k3e", "twoblock:2,1", "cab:2,1", "ocycle:2,1,1,2", "dicycle:3", "bivec-star:2"}) {
    PatternSpec spec = parse_pattern_spec(text);
    Digraph pat = pattern_graph(spec);
    for (int trial = 0; trial < 40; ++trial) {
      Digraph d = ref::random_digraph(4 + static_cast<int>(rng() % 6), 0.35, rng);
      SearchBudget budget{10'000'000};
      FinderResult r = find_pattern(d, spec, budget);
      auto truth = contains_subdivision(d, pat);
      ASSERT_EQ(r.status == FinderStatus::Found, truth.status == SearchStatus::Found)
          << text << " trial " << trial << " route " << r.route << " status " << finder_status_name(r.status);
      if (r.certificate) EXPECT_TRUE(validate_certificate(d, pat, *r.certificate)) << text;
    }
  }
}
