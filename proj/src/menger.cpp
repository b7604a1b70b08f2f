#include "subdiv/menger.hpp"

#include <algorithm>
#include <limits>

namespace subdiv {

namespace {

// Residual network with unit or small integer capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(nodes) {}

  void add_edge(int from, int to, int cap) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
  }

  // One BFS augmentation along a shortest residual path; false when none exists.
  bool augment(int s, int t) {
    std::vector<int> via(adj_.size(), -1);
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> queue{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[t]; ++head) {
      int x = queue[head];
      for (int e : adj_[x]) {
        int y = edges_[e].to;
        if (edges_[e].cap <= 0 || seen[y]) continue;
        seen[y] = 1;
        via[y] = e;
        queue.push_back(y);
      }
    }
    if (!seen[t]) return false;
    for (int y = t; y != s; y = edges_[via[y] ^ 1].to) {
      edges_[via[y]].cap -= 1;
      edges_[via[y] ^ 1].cap += 1;
    }
    return true;
  }

  int max_flow(int s, int t, int cap) {
    int flow = 0;
    while (flow < cap && augment(s, t)) ++flow;
    return flow;
  }

  std::vector<char> residual_reach(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> queue{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int e : adj_[queue[head]])
        if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = 1;
          queue.push_back(edges_[e].to);
        }
    return seen;
  }

  // Follow one unit of flow from s to t, consuming it; returns the node sequence.
  std::vector<int> take_flow_path(int s, int t) {
    std::vector<int> nodes{s};
    int x = s;
    while (x != t) {
      bool moved = false;
      for (int e : adj_[x]) {
        // forward edges are even; flow on them shows as capacity on the reverse twin
        if ((e & 1) == 0 && edges_[e ^ 1].cap > 0) {
          edges_[e ^ 1].cap -= 1;
          x = edges_[e].to;
          nodes.push_back(x);
          moved = true;
          break;
        }
      }
      if (!moved) throw Error(ErrorKind::InvariantBroken, "flow decomposition lost its path");
    }
    return nodes;
  }

 private:
  struct Edge {
    int to;
    int cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

int in_node(Vertex v) { return 2 * v; }
int out_node(Vertex v) { return 2 * v + 1; }

// Split network: v_in -> v_out with capacity 1 (unbounded for free vertices). Host arcs are
// unbounded so that every minimum cut consists of vertex edges only.
FlowNetwork split_network(const Digraph& d, int extra_nodes, const std::vector<char>& free_vertex,
                          const std::vector<char>& no_out) {
  FlowNetwork net(2 * d.n() + extra_nodes);
  const int big = d.n() + 1;
  for (Vertex v = 0; v < d.n(); ++v) net.add_edge(in_node(v), out_node(v), free_vertex[v] ? big : 1);
  for (Vertex u = 0; u < d.n(); ++u) {
    if (no_out[u]) continue;
    for (Vertex v : d.out(u)) net.add_edge(out_node(u), in_node(v), big);
  }
  return net;
}

Dipath path_from_nodes(const std::vector<int>& nodes, int n) {
  VertexList vs;
  for (int node : nodes) {
    if (node >= 2 * n) continue;
    Vertex v = node / 2;
    if (vs.empty() || vs.back() != v) vs.push_back(v);
  }
  return Dipath(std::move(vs));
}

VertexList cut_from_reach(const std::vector<char>& reach, int n) {
  VertexList cut;
  for (Vertex v = 0; v < n; ++v)
    if (reach[in_node(v)] && !reach[out_node(v)]) cut.push_back(v);
  return cut;
}

}  // namespace

PathsOrCut vertex_disjoint_paths(const Digraph& d, Vertex u, Vertex v, int k) {
  if (!d.contains(u) || !d.contains(v)) throw Error(ErrorKind::VertexOutOfRange, "endpoint");
  if (u == v) throw Error(ErrorKind::SameVertex, "u and v coincide");
  if (d.has_arc(u, v)) throw Error(ErrorKind::ArcPresent, "arc (u,v) present");
  if (k < 1) throw Error(ErrorKind::BadParams, "k must be positive");
  std::vector<char> free_vertex(d.n(), 0), no_out(d.n(), 0);
  free_vertex[u] = free_vertex[v] = 1;
  no_out[v] = 1;
  FlowNetwork net = split_network(d, 0, free_vertex, no_out);
  const int flow = net.max_flow(out_node(u), in_node(v), k);
  PathsOrCut result;
  if (flow == k) {
    for (int i = 0; i < k; ++i)
      result.paths.push_back(path_from_nodes(net.take_flow_path(out_node(u), in_node(v)), d.n()));
  } else {
    result.cut = cut_from_reach(net.residual_reach(out_node(u)), d.n());
  }
  return result;
}

FanOrCut fan_to_set(const Digraph& d, Vertex v, const VertexList& targets, int k) {
  if (!d.contains(v)) throw Error(ErrorKind::VertexOutOfRange, "fan start");
  if (targets.empty()) throw Error(ErrorKind::BadTarget, "empty target set");
  if (k < 1) throw Error(ErrorKind::BadParams, "k must be positive");
  std::vector<char> in_target(d.n(), 0);
  for (Vertex a : targets) {
    if (!d.contains(a)) throw Error(ErrorKind::VertexOutOfRange, "target");
    if (a == v) throw Error(ErrorKind::VertexInSet, "fan start lies in the target set");
    in_target[a] = 1;
  }
  std::vector<char> free_vertex(d.n(), 0);
  free_vertex[v] = 1;
  // target vertices only feed the artificial sink, so fan interiors avoid them
  FlowNetwork net = split_network(d, 1, free_vertex, in_target);
  const int sink = 2 * d.n();
  for (Vertex a = 0; a < d.n(); ++a)
    if (in_target[a]) net.add_edge(out_node(a), sink, d.n() + 1);
  const int flow = net.max_flow(out_node(v), sink, k);
  FanOrCut result;
  if (flow == k) {
    for (int i = 0; i < k; ++i)
      result.fan.push_back(path_from_nodes(net.take_flow_path(out_node(v), sink), d.n()));
  } else {
    result.cut = cut_from_reach(net.residual_reach(out_node(v)), d.n());
  }
  return result;
}

int arc_disjoint_flow(const Digraph& d, Vertex s, Vertex t, int cap) {
  FlowNetwork net(d.n());
  for (Vertex u = 0; u < d.n(); ++u)
    for (Vertex w : d.out(u)) net.add_edge(u, w, 1);
  return net.max_flow(s, t, cap);
}

int strong_arc_connectivity(const Digraph& d) {
  if (d.n() == 0) throw Error(ErrorKind::EmptyGraph, "arc connectivity of empty digraph");
  if (d.n() == 1) return 0;
  // Any minimum arc cut separates vertex 0 from some t in one of the two directions.
  int best = std::min(min_out_degree(d), min_in_degree(d));
  for (Vertex t = 1; t < d.n() && best > 0; ++t) {
    best = std::min(best, arc_disjoint_flow(d, 0, t, best));
    best = std::min(best, arc_disjoint_flow(d, t, 0, best));
  }
  return best;
}

}  // namespace subdiv
