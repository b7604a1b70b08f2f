#pragma once

#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv {

// Either k internally disjoint dipaths, or a separating vertex set of size < k.
struct PathsOrCut {
  std::vector<Dipath> paths;
  VertexList cut;
  bool has_paths() const { return !paths.empty(); }
};

// Either k dipaths from a common start meeting only there, or a separator of size < k.
struct FanOrCut {
  std::vector<Dipath> fan;
  VertexList cut;
  bool has_fan() const { return !fan.empty(); }
};

// k internally vertex-disjoint u->v dipaths, or a cut K with |K| < k avoiding u and v.
// Augmenting paths are searched breadth-first in increasing vertex order.
PathsOrCut vertex_disjoint_paths(const Digraph& d, Vertex u, Vertex v, int k);

// k dipaths from v into `targets`, pairwise meeting only at v, internal vertices outside
// targets; or a cut K subset of V - {v}, |K| < k, meeting every v-targets dipath.
FanOrCut fan_to_set(const Digraph& d, Vertex v, const VertexList& targets, int k);

// Maximum number of arc-disjoint s->t dipaths, stopping early once `cap` is reached.
int arc_disjoint_flow(const Digraph& d, Vertex s, Vertex t, int cap);

// Minimum number of arcs whose deletion leaves d not strongly connected (0 if already not strong).
int strong_arc_connectivity(const Digraph& d);

}  // namespace subdiv
