#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv {

// Host dipath realizing the pattern arc (from, to); from/to are pattern vertex ids.
struct CertificatePath {
  Vertex from = -1;
  Vertex to = -1;
  Dipath path;
};

// Embedding of a subdivision of a pattern F into a host D.
struct SubdivisionCertificate {
  VertexList branch;                  // pattern vertex -> host vertex
  std::vector<CertificatePath> paths;  // one per pattern arc
};

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t consumed = 0;
  bool exhausted() const { return consumed >= max_nodes; }
};

enum class SearchStatus { Found, None, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<SubdivisionCertificate> certificate;
  std::uint64_t nodes = 0;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Exhaustive backtracking search for a subdivision of F in D. Branch vertices are tried in
// increasing host id, pattern arcs are routed shortest path first. Automorphisms of patterns
// with at most 8 vertices are used to skip symmetric branch maps.
SearchResult contains_subdivision(const Digraph& d, const Digraph& pattern, SearchBudget& budget);
SearchResult contains_subdivision(const Digraph& d, const Digraph& pattern,
                                  std::uint64_t max_nodes = 10'000'000);

// Checks the certificate against D and F; never throws. Reports the first violation found.
ValidationReport validate_certificate(const Digraph& d, const Digraph& pattern,
                                      const SubdivisionCertificate& cert);

// True iff D has a directed cycle of even length. Throws BudgetExceeded.
bool has_even_dicycle(const Digraph& d, std::uint64_t max_nodes = 10'000'000);

// All automorphisms of a small digraph as permutations (identity included).
std::vector<VertexList> automorphisms(const Digraph& d);

// Rewrites a certificate through a vertex map (host of cert -> new host).
SubdivisionCertificate relabel_certificate(const SubdivisionCertificate& cert,
                                           const VertexList& host_map);

}  // namespace subdiv

namespace subdiv {

// Records a host dipath realizing the pattern path chain[0] -> ... -> chain.back(), whose
// inner entries are subdivision vertices of the pattern: they take the first inner host
// positions and the last pattern arc absorbs the remainder. Requires host length >= arcs in chain.
void place_pattern_path(SubdivisionCertificate& cert, const VertexList& chain, const Dipath& host);

}  // namespace subdiv
