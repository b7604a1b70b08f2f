#include "subdiv/patterns.hpp"

#include <charconv>
#include <sstream>

#include "subdiv/cab.hpp"
#include "subdiv/k3e.hpp"
#include "subdiv/two_block.hpp"

namespace subdiv {

namespace {

struct Generator {
  const char* name;
  int arity;  // -1: one or more
};

constexpr Generator kGenerators[] = {
    {"cab", 2},          {"twoblock", 2},   {"k3e", 0},        {"bivec-clique", 1}, {"bivec-star", 1},
    {"bivec-path", 1},   {"dicycle", 1},    {"transitive", 1}, {"ocycle", -1},
};

Error parse_error(const std::string& text, const std::string& why) {
  return Error(ErrorKind::ParseError, "pattern '" + text + "': " + why);
}

}  // namespace

std::string PatternSpec::text() const {
  std::ostringstream out;
  out << generator;
  for (std::size_t i = 0; i < params.size(); ++i) out << (i ? ',' : ':') << params[i];
  return out.str();
}

PatternSpec parse_pattern_spec(const std::string& text) {
  PatternSpec spec;
  const auto colon = text.find(':');
  spec.generator = text.substr(0, colon);
  const Generator* gen = nullptr;
  for (const auto& g : kGenerators)
    if (spec.generator == g.name) gen = &g;
  if (!gen) throw parse_error(text, "unknown generator");
  if (colon != std::string::npos) {
    std::string_view rest(text);
    rest.remove_prefix(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      auto item = rest.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
        throw parse_error(text, "parameter '" + std::string(item) + "' is not an integer");
      spec.params.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  const int count = static_cast<int>(spec.params.size());
  if (gen->arity >= 0 ? count != gen->arity : count == 0)
    throw parse_error(text, "wrong number of parameters");
  // The two blocks play symmetric roles; keep the longer one first.
  if (spec.generator == "twoblock" && spec.params[0] < spec.params[1]) std::swap(spec.params[0], spec.params[1]);
  return spec;
}

Digraph oriented_cycle_from_blocks(const std::vector<int>& blocks) {
  if (blocks.empty()) throw Error(ErrorKind::BadParams, "an oriented cycle needs at least one block");
  for (int len : blocks)
    if (len < 1) throw Error(ErrorKind::BadParams, "block lengths must be positive");
  if (blocks.size() == 1) return directed_cycle(blocks[0]);
  if (blocks.size() % 2) throw Error(ErrorKind::BadParams, "block directions must alternate around the cycle");
  int n = 0;
  for (int len : blocks) n += len;
  if (n < 2) throw Error(ErrorKind::DegeneratePattern, "cycle needs at least two vertices");
  std::vector<Arc> arcs;
  Vertex cur = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int step = 0; step < blocks[i]; ++step) {
      Vertex next = (cur + 1) % n;
      if (i % 2 == 0)
        arcs.emplace_back(cur, next);
      else
        arcs.emplace_back(next, cur);
      cur = next;
    }
  Digraph c(n, arcs);
  if (static_cast<int>(c.arc_count()) != n) throw Error(ErrorKind::DegeneratePattern, "blocks produce parallel arcs");
  return c;
}

Digraph pattern_graph(const PatternSpec& spec) {
  const auto& p = spec.params;
  const std::string& g = spec.generator;
  if (g == "cab") return pattern_cab(p[0], p[1]);
  if (g == "twoblock") return pattern_two_block(p[0], p[1]);
  if (g == "k3e") return k3_minus_e();
  if (g == "bivec-clique") return bioriented_clique(p[0]);
  if (g == "bivec-star") return bioriented_star(p[0]);
  if (g == "bivec-path") return bioriented_path(p[0]);
  if (g == "dicycle") return directed_cycle(p[0]);
  if (g == "transitive") return transitive_tournament(p[0]);
  if (g == "ocycle") return oriented_cycle_from_blocks(p);
  throw parse_error(spec.text(), "unknown generator");
}

FinderResult find_pattern(const Digraph& d, const PatternSpec& spec, SearchBudget& budget, const FinderOptions& options,
                          std::uint64_t seed) {
  const Digraph pattern = pattern_graph(spec);
  const auto& p = spec.params;
  if (spec.generator == "cab" && p[0] >= 2) return find_cab(d, p[0], p[1], budget, options);
  if (spec.generator == "twoblock") return find_two_block(d, p[0], p[1], budget, options);
  if (spec.generator == "k3e") {
    if (auto root = k3e_root(d)) {
      FinderResult r;
      K3eRun run = find_k3e_traced(d, *root);
      r.status = FinderStatus::Found;
      r.certificate = std::move(run.certificate);
      r.route = "construction";
      r.log = std::move(run.trace);
      r.iterations = static_cast<int>(run.steps.size());
      return r;
    }
  }
  if (spec.generator == "dicycle" || spec.generator == "ocycle" || spec.generator == "cab")
    return find_oriented_cycle_subdivision(d, pattern, budget, options, seed);
  FinderResult r;
  r.stuck = StuckState{"no-construction", "no dedicated finder for " + spec.text()};
  run_exact_fallback(d, pattern, budget, r);
  return r;
}

}  // namespace subdiv
