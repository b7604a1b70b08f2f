#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "subdiv/patterns.hpp"

namespace subdiv {

// Labeled digraphs on n <= 5 vertices with min out-degree >= min_out, in lexicographic order of
// their arc sets. Arcs are ordered by tail then head; a vertex's out-set is one digit of a
// mixed-radix counter over the admissible out-sets, so the ordinal doubles as a resume cursor.
class DigraphEnumerator {
 public:
  static constexpr int kMaxVertices = 5;

  // Throws TooLarge for n > kMaxVertices.
  DigraphEnumerator(int n, int min_out);

  std::uint64_t size() const { return total_; }
  std::uint64_t cursor() const { return cursor_; }
  void seek(std::uint64_t ordinal);
  bool done() const { return cursor_ >= total_; }
  // Digraph at the cursor; advances the cursor. Requires !done().
  Digraph next();
  Digraph at(std::uint64_t ordinal) const;

 private:
  int n_;
  std::vector<std::vector<VertexList>> choices_;  // per vertex, admissible out-sets in order
  std::uint64_t total_ = 1;
  std::uint64_t cursor_ = 0;
};

std::vector<Digraph> enumerate_digraphs(int n, int min_out);

struct MaderMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t count = 0;  // sampled hosts
  std::uint64_t seed = 1;
  int n_min = 1;            // smallest host order considered
  double density = 0.5;     // arc probability before repair (sampled mode)
  int threads = 1;          // exhaustive shards run concurrently
};

enum class MaderOutcome { AllContain, Counterexample, Inconclusive };
std::string mader_outcome_name(MaderOutcome o);

struct MaderReport {
  std::string pattern;
  int K = 0;
  int n_min = 0;
  int n_max = 0;
  MaderMode mode;
  MaderOutcome outcome = MaderOutcome::AllContain;
  std::optional<Digraph> counterexample;
  std::uint64_t hosts_checked = 0;
  std::uint64_t hosts_undecided = 0;  // budget ran out on these
  std::uint64_t nodes = 0;
  std::vector<std::uint64_t> hosts_per_order;  // index n - n_min
};

// Checks that every enumerated or sampled host with min out-degree >= K contains a subdivision
// of the pattern. Stops at the first counterexample, which is re-checked by the exact search.
MaderReport verify_upper(const PatternSpec& pattern, int K, int n_max, const MaderMode& mode,
                         std::uint64_t budget_per_host = 10'000'000);

// Random host on n vertices: arcs drawn with probability `density`, then each vertex short of
// `min_out` out-arcs receives its lowest-id missing out-neighbours.
Digraph sample_min_out_host(int n, int min_out, double density, std::uint64_t seed);

// Bioriented clique on |V(F)| - 1 vertices; its min out-degree is |V(F)| - 2.
Digraph lower_witness(const Digraph& pattern);
// Exact-search verdict on the witness: true if it has no subdivision, nullopt if undecided.
std::optional<bool> confirm_lower_witness(const Digraph& pattern, std::uint64_t max_nodes = 10'000'000);

nlohmann::json report_to_json(const MaderReport& r);
std::string report_csv_header();
std::string report_csv_row(const MaderReport& r, const std::string& counterexample_path = "");

}  // namespace subdiv
