#pragma once

#include <utility>

#include "subdiv/finder.hpp"

namespace subdiv {

// Two dipaths from v of lengths l1 and l2 meeting only at v and avoiding `forbidden`,
// extended greedily by the lowest-id fresh out-neighbour. Throws StuckGreedy.
std::pair<Dipath, Dipath> fork(const Digraph& d, Vertex v, int l1, int l2, const std::vector<char>& forbidden);
std::pair<Dipath, Dipath> fork(const Digraph& d, Vertex v, int l1, int l2);

// Certificate for pattern_two_block(k1,k2), obtained by improving a k2-good path.
// Requires k1 >= k2 >= 1 (BadParams otherwise); k2 = 1 uses a long directed cycle.
FinderResult find_two_block(const Digraph& d, int k1, int k2, SearchBudget& budget, const FinderOptions& options = {});
FinderResult find_two_block(const Digraph& d, int k1, int k2, std::uint64_t max_nodes = 10'000'000,
                            const FinderOptions& options = {});

// Certificate for pattern_two_block(k, 1) read off a long dicycle; nullopt if delta+ < k.
std::optional<SubdivisionCertificate> two_block_from_long_cycle(const Digraph& d, int k);

}  // namespace subdiv
