#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/errors.hpp"

namespace subdiv {

using Vertex = int;
using Arc = std::pair<Vertex, Vertex>;
using VertexList = std::vector<Vertex>;

// Loopless digraph without parallel arcs; digons are allowed.
// Adjacency lists are sorted and the in-lists are the exact transpose of the out-lists.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);
  // Duplicates collapse; loops and out-of-range ids throw.
  Digraph(int n, const std::vector<Arc>& arcs);

  int n() const { return static_cast<int>(out_.size()); }
  std::size_t arc_count() const { return arcs_; }
  const VertexList& out(Vertex v) const { return out_[v]; }
  const VertexList& in(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }
  bool has_arc(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < n(); }

  std::vector<Arc> arcs() const;
  Digraph transpose() const;
  // Subgraph on `keep` (relabelled in the given order); `old_ids[i]` is the original id of new vertex i.
  Digraph induced(const VertexList& keep) const;

  bool operator==(const Digraph& other) const { return out_ == other.out_; }

 private:
  std::vector<VertexList> out_;
  std::vector<VertexList> in_;
  std::size_t arcs_ = 0;
};

// Mutable arc-set builder used by algorithms that edit a working copy.
class DigraphBuilder {
 public:
  explicit DigraphBuilder(int n = 0);
  explicit DigraphBuilder(const Digraph& d);
  int n() const { return static_cast<int>(out_.size()); }
  Vertex add_vertex();
  void add_arc(Vertex u, Vertex v);
  void remove_arc(Vertex u, Vertex v);
  bool has_arc(Vertex u, Vertex v) const;
  Digraph build() const;

 private:
  std::vector<std::vector<Vertex>> out_;
};

// Ordered sequence of distinct vertices; length is the number of arcs.
struct Dipath {
  VertexList vertices;

  Dipath() = default;
  explicit Dipath(VertexList vs) : vertices(std::move(vs)) {}
  static Dipath single(Vertex v) { return Dipath({v}); }

  int length() const { return vertices.empty() ? -1 : static_cast<int>(vertices.size()) - 1; }
  bool empty() const { return vertices.empty(); }
  Vertex first() const { return vertices.front(); }
  Vertex last() const { return vertices.back(); }
  bool contains(Vertex v) const;
  // Position of v, or -1.
  int index_of(Vertex v) const;
  // Subpath between two vertices on the path, inclusive, x before y.
  Dipath sub(Vertex x, Vertex y) const;
  Dipath reversed() const;
  // Concatenation; the last vertex of this must equal the first of `other`.
  Dipath then(const Dipath& other) const;
  Dipath then_vertex(Vertex v) const;
  bool distinct() const;
  bool valid_in(const Digraph& d) const;
  bool operator==(const Dipath& o) const { return vertices == o.vertices; }
};

// ---- degree queries ----
int min_out_degree(const Digraph& d);
int max_out_degree(const Digraph& d);
int min_in_degree(const Digraph& d);
int max_in_degree(const Digraph& d);

// Shortest directed cycle length; nullopt means acyclic (infinite girth).
std::optional<int> directed_girth(const Digraph& d);
// A shortest directed cycle as a closed vertex sequence (first vertex not repeated).
std::optional<VertexList> shortest_cycle(const Digraph& d);

// Strong components in reverse topological order (sink components first);
// each component sorted ascending.
std::vector<VertexList> strong_components(const Digraph& d);
bool is_strongly_connected(const Digraph& d);

// Vertices reachable from `sources`, skipping vertices flagged in `blocked`.
std::vector<char> reachable(const Digraph& d, const VertexList& sources,
                            const std::vector<char>* blocked = nullptr);
// BFS shortest path from s to any vertex with target[v] set; avoids blocked vertices.
// Neighbours are scanned in increasing id so the result is deterministic.
std::optional<Dipath> bfs_path(const Digraph& d, Vertex s, const std::vector<char>& target,
                               const std::vector<char>* blocked = nullptr);
std::optional<Dipath> bfs_path(const Digraph& d, Vertex s, Vertex t,
                               const std::vector<char>* blocked = nullptr);

// ---- generators ----
Digraph bioriented_clique(int k);
Digraph bioriented_star(int leaves);
Digraph bioriented_path(int length);
Digraph transitive_tournament(int k);
Digraph k3_minus_e();
Digraph directed_cycle(int length);
Digraph directed_path(int length);

// Oriented cycle with a sources s_i (ids 0..a-1), a sinks t_i (ids a..2a-1) and 2a
// internally disjoint dipaths of length b, s_i -> t_i and s_i -> t_{i+1 mod a}.
// Interior vertices follow, path by path in that order.
Digraph pattern_cab(int a, int b);
// Two internally disjoint dipaths from x=0 to y=1 of lengths k1 and k2.
Digraph pattern_two_block(int k1, int k2);

// ---- text formats ----
Digraph read_edge_list(std::istream& in);
Digraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Digraph& d);
std::string to_dot(const Digraph& d, const std::string& name = "D");

}  // namespace subdiv
