#pragma once

#include <string>
#include <variant>
#include <vector>

#include "subdiv/oracle.hpp"

namespace subdiv {

// One reduction of the K3-e recursion together with what its lift needs.
struct TrimArcs {
  std::vector<Arc> removed;
};
struct RestrictToSink {
  VertexList kept;  // terminal strong component
  Vertex new_root = -1;
};
struct ContractPartition {
  VertexList W;
  Vertex s0 = -1;
  VertexList Z;
  Dipath bridge;  // s0 -> w with inner vertices in Z
};
struct ContractV1 {
  Vertex v0 = -1, v1 = -1, v2 = -1;
  VertexList redirected;  // in-neighbours x != v0 of v1, whose arc now enters v0
};
using ReductionStep = std::variant<TrimArcs, RestrictToSink, ContractPartition, ContractV1>;

std::string reduction_step_json(const ReductionStep& step);

// Lifts a subdivision, given by its arc set, from the reduced digraph to the one before `step`.
std::vector<Arc> lift_k3e_arcs(const std::vector<Arc>& arcs, const ReductionStep& step);

// Reads a certificate off an arc set forming a subdivision of `pattern`, whose vertices all
// have total degree at least three; nullopt if the arc set is not such a subdivision.
std::optional<SubdivisionCertificate> certificate_from_arc_set(const std::vector<Arc>& arcs, const Digraph& pattern);

struct K3eRun {
  SubdivisionCertificate certificate;
  std::vector<ReductionStep> steps;
  std::vector<std::string> trace;  // JSON lines
};

// Subdivision of k3_minus_e() in d, given d+(v0) >= 1 and d+(v) >= 2 for every other v.
// depth_budget < 0 means |V| + |A|.
K3eRun find_k3e_traced(const Digraph& d, Vertex v0, long long depth_budget = -1);
SubdivisionCertificate find_k3e(const Digraph& d, Vertex v0, long long depth_budget = -1);

// Lowest-id vertex that can serve as v0, if any.
std::optional<Vertex> k3e_root(const Digraph& d);

}  // namespace subdiv
