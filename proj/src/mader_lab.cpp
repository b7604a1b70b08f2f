#include "subdiv/mader.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace subdiv {

DigraphEnumerator::DigraphEnumerator(int n, int min_out) : n_(n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "enumeration needs n >= 1");
  if (n > kMaxVertices)
    throw Error(ErrorKind::TooLarge, "exhaustive enumeration is limited to " + std::to_string(kMaxVertices) + " vertices");
  const int others = n - 1;
  choices_.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    // The highest mask bit stands for the lowest-id other vertex, so increasing masks follow
    // the lexicographic order of characteristic vectors.
    for (int mask = 0; mask < (1 << others); ++mask) {
      if (__builtin_popcount(mask) < min_out) continue;
      VertexList out;
      for (int i = 0; i < others; ++i)
        if (mask & (1 << (others - 1 - i))) out.push_back(i < v ? i : i + 1);
      choices_[v].push_back(std::move(out));
    }
    total_ *= choices_[v].size();
  }
}

void DigraphEnumerator::seek(std::uint64_t ordinal) { cursor_ = std::min(ordinal, total_); }

Digraph DigraphEnumerator::at(std::uint64_t ordinal) const {
  if (ordinal >= total_) throw Error(ErrorKind::BadParams, "enumeration ordinal out of range");
  std::vector<Arc> arcs;
  // The last vertex is the fastest digit.
  std::vector<std::size_t> digit(n_);
  for (int v = n_ - 1; v >= 0; --v) {
    digit[v] = ordinal % choices_[v].size();
    ordinal /= choices_[v].size();
  }
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex w : choices_[v][digit[v]]) arcs.emplace_back(v, w);
  return Digraph(n_, arcs);
}

Digraph DigraphEnumerator::next() { return at(cursor_++); }

std::vector<Digraph> enumerate_digraphs(int n, int min_out) {
  DigraphEnumerator e(n, min_out);
  std::vector<Digraph> out;
  out.reserve(e.size());
  while (!e.done()) out.push_back(e.next());
  return out;
}

std::string mader_outcome_name(MaderOutcome o) {
  switch (o) {
    case MaderOutcome::AllContain: return "all-contain";
    case MaderOutcome::Counterexample: return "counterexample";
    case MaderOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Digraph sample_min_out_host(int n, int min_out, double density, std::uint64_t seed) {
  if (min_out > n - 1) throw Error(ErrorKind::BadParams, "min out-degree exceeds n - 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  DigraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin(rng)) b.add_arc(u, v);
  Digraph d = b.build();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0, have = d.out_degree(u); v < n && have < min_out; ++v)
      if (v != u && !d.has_arc(u, v)) {
        b.add_arc(u, v);
        ++have;
      }
  return b.build();
}

namespace {

enum class Verdict { Contains, Missing, Undecided };

struct HostCheck {
  Verdict verdict;
  std::uint64_t nodes;
};

HostCheck check_host(const Digraph& d, const PatternSpec& spec, std::uint64_t budget_per_host) {
  SearchBudget budget{budget_per_host, 0};
  FinderResult r = find_pattern(d, spec, budget);
  switch (r.status) {
    case FinderStatus::Found: return {Verdict::Contains, budget.consumed};
    case FinderStatus::NotFound: return {Verdict::Missing, budget.consumed};
    case FinderStatus::BudgetExceeded: break;
  }
  return {Verdict::Undecided, budget.consumed};
}

// Accumulates per-host outcomes; the reported counterexample is the first in enumeration order.
struct Tally {
  std::uint64_t checked = 0, undecided = 0, nodes = 0;
  std::optional<std::pair<std::uint64_t, Digraph>> first_missing;

  void merge(Tally&& o) {
    checked += o.checked;
    undecided += o.undecided;
    nodes += o.nodes;
    if (o.first_missing && (!first_missing || o.first_missing->first < first_missing->first))
      first_missing = std::move(o.first_missing);
  }
};

Tally run_exhaustive_order(int n, int K, const PatternSpec& spec, int threads, std::uint64_t budget_per_host) {
  DigraphEnumerator proto(n, K);
  const std::uint64_t total = proto.size();
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::uint64_t>(1, total / 64))));
  std::vector<Tally> parts(threads);
  std::mutex stop_mu;
  std::uint64_t stop_at = total;  // shards skip ordinals past the earliest known counterexample
  auto work = [&](int shard) {
    DigraphEnumerator e = proto;
    const std::uint64_t lo = total * shard / threads, hi = total * (shard + 1) / threads;
    Tally& t = parts[shard];
    for (e.seek(lo); e.cursor() < hi; ) {
      {
        std::lock_guard<std::mutex> lock(stop_mu);
        if (e.cursor() >= stop_at) break;
      }
      const std::uint64_t ord = e.cursor();
      Digraph d = e.next();
      HostCheck hc = check_host(d, spec, budget_per_host);
      ++t.checked;
      t.nodes += hc.nodes;
      if (hc.verdict == Verdict::Undecided) ++t.undecided;
      if (hc.verdict == Verdict::Missing) {
        t.first_missing.emplace(ord, std::move(d));
        std::lock_guard<std::mutex> lock(stop_mu);
        stop_at = std::min(stop_at, ord);
        break;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) pool.emplace_back(work, s);
    for (auto& th : pool) th.join();
  }
  Tally all;
  for (auto& p : parts) all.merge(std::move(p));
  return all;
}

}  // namespace

MaderReport verify_upper(const PatternSpec& pattern, int K, int n_max, const MaderMode& mode,
                         std::uint64_t budget_per_host) {
  if (K < 0) throw Error(ErrorKind::BadParams, "K must be non-negative");
  MaderReport rep;
  rep.pattern = pattern.text();
  rep.K = K;
  rep.mode = mode;
  // Hosts need K + 1 vertices to reach out-degree K.
  rep.n_min = std::max(mode.n_min, std::max(1, K + 1));
  rep.n_max = n_max;
  if (mode.kind == MaderMode::Kind::Exhaustive && n_max > DigraphEnumerator::kMaxVertices)
    throw Error(ErrorKind::TooLarge, "exhaustive verification is limited to " +
                                         std::to_string(DigraphEnumerator::kMaxVertices) + " vertices");
  if (rep.n_min > n_max) return rep;
  rep.hosts_per_order.assign(n_max - rep.n_min + 1, 0);

  auto record_missing = [&](Digraph d) {
    // A counterexample must survive an independent exact search.
    SearchResult sr = contains_subdivision(d, pattern_graph(pattern), budget_per_host);
    if (sr.status != SearchStatus::None || min_out_degree(d) < K)
      throw Error(ErrorKind::InvariantBroken, "counterexample failed its re-check");
    rep.outcome = MaderOutcome::Counterexample;
    rep.counterexample = std::move(d);
  };

  if (mode.kind == MaderMode::Kind::Exhaustive) {
    for (int n = rep.n_min; n <= n_max; ++n) {
      Tally t = run_exhaustive_order(n, K, pattern, mode.threads, budget_per_host);
      rep.hosts_checked += t.checked;
      rep.hosts_undecided += t.undecided;
      rep.nodes += t.nodes;
      rep.hosts_per_order[n - rep.n_min] = t.checked;
      if (t.first_missing) {
        record_missing(std::move(t.first_missing->second));
        return rep;
      }
    }
  } else {
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<int> order(rep.n_min, n_max);
    for (std::uint64_t i = 0; i < mode.count; ++i) {
      const int n = order(rng);
      Digraph d = sample_min_out_host(n, K, mode.density, rng());
      HostCheck hc = check_host(d, pattern, budget_per_host);
      ++rep.hosts_checked;
      ++rep.hosts_per_order[n - rep.n_min];
      rep.nodes += hc.nodes;
      if (hc.verdict == Verdict::Undecided) ++rep.hosts_undecided;
      if (hc.verdict == Verdict::Missing) {
        record_missing(std::move(d));
        return rep;
      }
    }
  }
  rep.outcome = rep.hosts_undecided ? MaderOutcome::Inconclusive : MaderOutcome::AllContain;
  return rep;
}

Digraph lower_witness(const Digraph& pattern) {
  if (pattern.n() < 2) throw Error(ErrorKind::BadParams, "pattern needs at least two vertices");
  return bioriented_clique(pattern.n() - 1);
}

std::optional<bool> confirm_lower_witness(const Digraph& pattern, std::uint64_t max_nodes) {
  Digraph w = lower_witness(pattern);
  if (w.n() < 2) return true;  // a single vertex hosts no arc, let alone a subdivision
  SearchResult r = contains_subdivision(w, pattern, max_nodes);
  if (r.status == SearchStatus::BudgetExceeded) return std::nullopt;
  return r.status == SearchStatus::None;
}

nlohmann::json report_to_json(const MaderReport& r) {
  nlohmann::json j;
  j["pattern"] = r.pattern;
  j["K"] = r.K;
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  if (r.mode.kind == MaderMode::Kind::Exhaustive) {
    j["mode"] = {{"kind", "exhaustive"}};
  } else {
    j["mode"] = {{"kind", "sampled"}, {"count", r.mode.count}, {"seed", r.mode.seed}, {"density", r.mode.density}};
  }
  j["outcome"] = mader_outcome_name(r.outcome);
  j["hosts_checked"] = r.hosts_checked;
  j["hosts_undecided"] = r.hosts_undecided;
  j["nodes"] = r.nodes;
  j["hosts_per_order"] = r.hosts_per_order;
  if (r.counterexample) {
    j["counterexample"] = {{"n", r.counterexample->n()}, {"arcs", r.counterexample->arcs()}};
  }
  return j;
}

std::string report_csv_header() { return "pattern,K,n,mode,outcome,counterexample"; }

std::string report_csv_row(const MaderReport& r, const std::string& counterexample_path) {
  std::ostringstream out;
  out << '"' << r.pattern << "\"," << r.K << ',' << r.n_min << '-' << r.n_max << ','
      << (r.mode.kind == MaderMode::Kind::Exhaustive ? "exhaustive" : "sampled") << ','
      << mader_outcome_name(r.outcome) << ',' << counterexample_path;
  return out.str();
}

}  // namespace subdiv
