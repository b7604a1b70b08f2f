#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subdiv/digraph.hpp"
#include "subdiv/oracle.hpp"

namespace subdiv {

// Parameters of the C_{a,b} construction; all derived quantities use 64-bit arithmetic.
struct CabParams {
  int a = 2;
  int b = 1;
  long long g = 0;  // girth target 4b^2
  long long k = 0;  // operative out-degree threshold 12b^2(4g+3)^2(a+3)(b+1)
  long long h = 0;  // arborescence depth bound 4g+2
  long long d = 0;  // arborescence branching 2b(4g+3)(a+3)(b+1)

  static CabParams make(int a, int b);
  long long type2_length() const { return 2LL * b * b + b - 2; }    // min |P1| of a type-II gadget
  long long type3_length() const { return 2LL * b - 1; }            // min |P1|,|P2| of a type-III gadget
  long long gadget_size_cap() const { return (8 * g + 6) * (2LL * b - 1); }
  long long window() const { return (4 * g + 3) * (2LL * b - 1); }  // max A1 run plus one
  long long recent_span() const { return window() * (a + 3) * (b + 1); }
  long long closure_bound() const { return 1LL * (a + 3) * (b + 1) - 2; }
};

enum class GadgetKind { Trivial, TypeI, TypeIIBasic, TypeIIExtended, TypeIII };
enum class LinkKind { None, FirstToSecond, BackArc };

std::string gadget_kind_name(GadgetKind kind);

// Local structure attached to a spine arc (p,q).
//  TypeI: `cycle` lists the directed cycle starting p, q, ... (closing arc back to p implied).
//  TypeII: P1 runs r -> p and every P1 vertex has an arc to q; the extended form adds P2 ending
//    at r together with a link arc: first(P2) -> second(P1), or link_vertex -> first(P2).
//  TypeIII: P1 runs p -> r and P2 runs q -> r.
struct Gadget {
  GadgetKind kind = GadgetKind::Trivial;
  Vertex p = -1;
  Vertex q = -1;
  Vertex r = -1;
  VertexList cycle;
  Dipath P1;
  Dipath P2;
  LinkKind link = LinkKind::None;
  Vertex link_vertex = -1;

  static Gadget trivial(Vertex p, Vertex q);
  VertexList vertices() const;  // sorted, distinct
  bool contains(Vertex v) const;
  std::vector<Arc> arcs() const;  // arcs the gadget uses
  Gadget basic_part() const;      // TypeIIExtended -> TypeIIBasic
};

// Oriented path of dipaths: Q[i] runs s[i] -> t[i], Qp[i] runs s[i+1] -> t[i].
struct AlternatingPath {
  int a = 0;
  VertexList s, t;
  std::vector<Dipath> Q;
  std::vector<Dipath> Qp;
  bool strong = false;

  Vertex first() const { return s.front(); }
  Vertex last() const { return t.back(); }
  VertexList vertices() const;
  // Traversal from s[0] to t[a-1]; consecutive entries are joined by an arc in either direction.
  VertexList walk() const;
};

// Recomputes `strong` from the path lengths.
void refresh_strength(AlternatingPath& R, int b);
// Internal disjointness, endpoint consistency, length bounds, strength flag, and (if given) host arcs.
ValidationReport check_alternating_path(const AlternatingPath& R, int b, const Digraph* host = nullptr);
AlternatingPath single_dipath(const Dipath& path, int b);

// Spine v0..vm with one optional gadget per spine arc; an empty slot means the arc is in A1.
struct Chain {
  Dipath spine;
  std::vector<std::optional<Gadget>> gadgets;

  int length() const { return spine.length(); }
  int a2_count() const;
  int a2_count(int from, int to) const;  // over spine arcs from..to-1
  Gadget gadget_at(int i) const;          // trivial gadget for A1 arcs
  Chain sub(int i, int j) const;          // subchain on spine positions i..j
  VertexList vertices() const;            // sorted V(C)
  // Appends a dipath starting at the current last spine vertex; its arcs join A1.
  void append_path(const Dipath& path);
  void append_gadget_arc(const Gadget& g);
};

ValidationReport validate_chain(const Digraph& d, const Chain& chain, const CabParams& params);

ValidationReport validate_gadget(const Digraph& d, const Gadget& g, const CabParams& params);

// (2,b)-alternating path inside a type-I or type-II gadget, from p back to p and ending at q.
AlternatingPath base_alt_path(const Gadget& g, const CabParams& params);

// Shortest dipath inside the gadget from x to {p,q}. Not defined for type-III gadgets.
Dipath reach_pq(const Gadget& g, Vertex x);

// Alternating path inside an extended type-II gadget from {p,q} to the target set.
// A single-element X may name any vertex outside {p,q}; otherwise X must lie in P1 - {p,r}.
AlternatingPath extended_exit_path(const Gadget& g, const VertexList& X, const CabParams& params);

// Strong (a,b)-alternating path from the first to the last spine vertex.
AlternatingPath chain_alt_path(const Chain& chain, int a, int b);

// Closes two strong alternating paths sharing exactly their crossed endpoints into a
// certificate for pattern_cab(a1 + a2 - 2, b).
SubdivisionCertificate join_alt_paths(const AlternatingPath& R1, const AlternatingPath& R2, int b);

// Builds a C_{A,b} certificate from a closed oriented cycle given as alternating runs:
// forward[i] runs sigma_i -> tau_i and backward[i] runs sigma_{i+1} -> tau_i (indices mod A).
SubdivisionCertificate cab_certificate_from_runs(const std::vector<Dipath>& forward,
                                                 const std::vector<Dipath>& backward, int b);

// Alternating path from {p*,q*} of the extended type-II gadget `star` to {p,q} of `g`.
AlternatingPath gadget_intersection_path(const Gadget& g, const Gadget& star, const CabParams& params);

struct ArcIntoFirstGadget {
  Vertex x = -1;  // head of an arc from the last spine vertex into the first gadget
};
struct StarGadgetClosure {
  Vertex zstar = -1;
  Gadget star;  // extended type-II gadget on (last spine vertex, zstar)
};
using ChainClosure = std::variant<ArcIntoFirstGadget, StarGadgetClosure>;

// Certificate for pattern_cab(a,b) from a rich chain plus a closing structure.
SubdivisionCertificate close_chain(const Digraph& d, const Chain& chain, const ChainClosure& closure,
                                   const CabParams& params);

}  // namespace subdiv
