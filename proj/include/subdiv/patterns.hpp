#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subdiv/finder.hpp"

namespace subdiv {

// Declarative pattern name of the form generator[:p1,p2,...]. Known generators:
//   cab:a,b  twoblock:k1,k2  k3e  bivec-clique:k  bivec-star:k  bivec-path:k
//   dicycle:k  transitive:k  ocycle:l1,l2,...  (block lengths, alternating direction)
struct PatternSpec {
  std::string generator;
  std::vector<int> params;

  std::string text() const;
};

// Throws ParseError for unknown generators or wrong parameter counts.
PatternSpec parse_pattern_spec(const std::string& text);
Digraph pattern_graph(const PatternSpec& spec);

// Oriented cycle whose maximal directed blocks have the given lengths, alternating in direction
// and starting with a forward block; an odd count is only allowed for a single (directed) block.
Digraph oriented_cycle_from_blocks(const std::vector<int>& blocks);

// Runs the dedicated finder for the pattern when one exists, otherwise the exact search.
// The k3e finder needs its degree precondition; when it fails the exact search decides.
FinderResult find_pattern(const Digraph& d, const PatternSpec& spec, SearchBudget& budget,
                          const FinderOptions& options = {}, std::uint64_t seed = 1);

}  // namespace subdiv
