#pragma once

#include <cstdint>

#include "subdiv/finder.hpp"
#include "subdiv/gadget.hpp"

namespace subdiv {

// Thrown by gadget embedding when an arc has neither a length-g cycle nor a common in-neighbour.
class PropertyViolatedError : public Error {
 public:
  explicit PropertyViolatedError(Arc arc)
      : Error(ErrorKind::PropertyViolated,
              "arc (" + std::to_string(arc.first) + "," + std::to_string(arc.second) +
                  ") lies on no cycle of length g and its ends have no common in-neighbour"),
        arc_(arc) {}
  Arc arc() const { return arc_; }

 private:
  Arc arc_;
};

// Deleting `deleted` and redirecting each in-arc (z, deleted) to (z, target).
// Vertex ids are kept; the deleted vertex stays as an isolated vertex.
struct ContractionRecord {
  Vertex deleted = -1;
  Vertex target = -1;
  VertexList redirected;   // in-neighbours z of the deleted vertex, z != target
  std::vector<Arc> added;  // redirected arcs (z, target) that were not already present
};

ContractionRecord contract_arc(Digraph& d, Vertex x, Vertex y);
Digraph replay_contraction(const Digraph& before, const ContractionRecord& rec);
// Certificate in the contracted graph -> certificate in the graph before contraction.
// Works for any pattern whose vertices of in-degree 2 have out-degree 0 (true for C_{a,b}).
SubdivisionCertificate lift_certificate(const SubdivisionCertificate& cert, const ContractionRecord& rec);

struct GirthReduction {
  Digraph graph;
  VertexList original;  // original id of each vertex of `graph`
  int attempts = 0;
};

// Random level filter followed by peeling vertices of out-degree < k; throws RetriesExhausted.
GirthReduction reduce_girth(const Digraph& d, long long k, int g, std::uint64_t seed, int max_retries = 64);

// Directed cycle of length exactly `len` through the arc (x,y), as x, y, ...; shortest-path based,
// which is exact when the girth is at least len.
std::optional<VertexList> cycle_of_length_through(const Digraph& d, Vertex x, Vertex y, int len);

Gadget embed_gadget_I_or_II(const Digraph& d, Vertex p, Vertex q, const CabParams& params);

struct TreeParams {
  int b = 1;
  long long h = 1;
  long long d = 1;
  long long degree_threshold() const { return (h + 1) * (d * (2LL * b - 2) + 1) + d; }
  static TreeParams from(const CabParams& p) { return {p.b, p.h, p.d}; }
};

struct TypeThreeEmbedding {
  Dipath P0;
  Gadget gadget;
};

// Type-III gadget reachable from v in d minus `removed`; throws PreconditionUnverifiable
// naming the vertex at which the degree condition or the leaf argument failed.
TypeThreeEmbedding embed_gadget_III(const Digraph& d, Vertex v, const TreeParams& tp,
                                    const std::vector<char>* removed = nullptr, SearchBudget* budget = nullptr);

// Directed cycle of length at least min out-degree + 1 (closed list, first vertex not repeated).
VertexList long_dicycle(const Digraph& d);

FinderResult find_cab(const Digraph& d, int a, int b, SearchBudget& budget, const FinderOptions& options = {});
FinderResult find_cab(const Digraph& d, int a, int b, std::uint64_t max_nodes = 10'000'000,
                      const FinderOptions& options = {});

// Sources and maximal directed blocks of an oriented cycle.
struct CycleShape {
  int sources = 0;
  std::vector<int> block_lengths;  // in traversal order, starting at a source along a forward block
  VertexList traversal;            // cycle vertices in that order
  bool directed = false;
};
CycleShape analyze_oriented_cycle(const Digraph& c);

// Exact search for a subdivision of an oriented cycle: a depth-first walk around candidate host
// cycles from their lowest-id source, requiring each host block to be at least as long as its
// pattern block. Used as the exact fallback for cycle patterns.
SearchResult search_oriented_cycle(const Digraph& d, const Digraph& cycle, SearchBudget& budget);

FinderResult find_oriented_cycle_subdivision(const Digraph& d, const Digraph& cycle, SearchBudget& budget,
                                             const FinderOptions& options = {}, std::uint64_t seed = 1);

}  // namespace subdiv
