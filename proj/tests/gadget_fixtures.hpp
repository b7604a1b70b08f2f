#pragma once

// Hand-built hosts carrying gadgets and chains, shared by unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "subdiv/gadget.hpp"

namespace subdiv::ref {

struct HostBuilder {
  int n = 0;
  std::vector<Arc> arc_list;

  Vertex fresh() { return n++; }
  void arc(Vertex u, Vertex v) { arc_list.emplace_back(u, v); }
  void path(const Dipath& p) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) arc(p.vertices[i], p.vertices[i + 1]);
  }
  // from -> fresh ... -> to with exactly `len` arcs (to = -1 ends at a fresh vertex).
  Dipath fresh_path(Vertex from, int len, Vertex to = -1) {
    VertexList vs{from};
    for (int i = 1; i < len; ++i) vs.push_back(fresh());
    vs.push_back(to < 0 ? fresh() : to);
    Dipath p(vs);
    path(p);
    return p;
  }
  // Dipath threading through `visits` in order, padded with fresh vertices so that it has
  // at least `min_len` arcs; no two visits are adjacent on the result.
  Dipath thread(Vertex from, const VertexList& visits, Vertex to, int min_len) {
    VertexList vs{from};
    for (Vertex v : visits) {
      vs.push_back(fresh());
      vs.push_back(v);
    }
    vs.push_back(fresh());
    while (static_cast<int>(vs.size()) < min_len) vs.push_back(fresh());
    vs.push_back(to);
    Dipath p(vs);
    path(p);
    return p;
  }
  Digraph build() const { return Digraph(n, arc_list); }
};

inline Gadget make_type1(HostBuilder& hb, Vertex p, Vertex q, int len) {
  Gadget g;
  g.kind = GadgetKind::TypeI;
  g.p = p;
  g.q = q;
  hb.arc(p, q);
  Dipath back = hb.fresh_path(q, len - 1, p);
  g.cycle = VertexList(back.vertices.begin(), back.vertices.end() - 1);
  g.cycle.insert(g.cycle.begin(), p);
  return g;
}

inline Gadget make_type2_basic(HostBuilder& hb, Vertex p, Vertex q, int len) {
  Gadget g;
  g.kind = GadgetKind::TypeIIBasic;
  g.p = p;
  g.q = q;
  Vertex r = hb.fresh();
  g.r = r;
  g.P1 = hb.fresh_path(r, len, p);
  for (Vertex v : g.P1.vertices) hb.arc(v, q);
  return g;
}

inline Gadget make_type3(HostBuilder& hb, Vertex p, Vertex q, int len1, int len2) {
  Gadget g;
  g.kind = GadgetKind::TypeIII;
  g.p = p;
  g.q = q;
  hb.arc(p, q);
  g.r = hb.fresh();
  g.P1 = hb.fresh_path(p, len1, g.r);
  g.P2 = hb.fresh_path(q, len2, g.r);
  return g;
}

// Extended type-II gadget; link_index < 0 selects the first-to-second clause, otherwise the
// back arc leaves P1 at that index (P1 index 0 is r).
inline Gadget make_type2_extended(HostBuilder& hb, Vertex p, Vertex q, int len1, int len2, int link_index) {
  Gadget g = make_type2_basic(hb, p, q, len1);
  g.kind = GadgetKind::TypeIIExtended;
  Vertex z = hb.fresh();
  g.P2 = hb.fresh_path(z, len2, g.r);
  if (link_index < 0) {
    g.link = LinkKind::FirstToSecond;
    hb.arc(z, g.P1.vertices[1]);
  } else {
    g.link = LinkKind::BackArc;
    g.link_vertex = g.P1.vertices[link_index];
    hb.arc(g.link_vertex, z);
  }
  return g;
}

// Star gadget for closing: P1* threads through `p1_visits`, P2* through `p2_visits`.
inline Gadget make_star(HostBuilder& hb, Vertex p_star, const VertexList& p1_visits, const VertexList& p2_visits,
                        const CabParams& params) {
  Gadget g;
  g.kind = GadgetKind::TypeIIExtended;
  g.p = p_star;
  g.q = hb.fresh();
  g.r = hb.fresh();
  g.P1 = hb.thread(g.r, p1_visits, p_star, static_cast<int>(params.type2_length()));
  for (Vertex v : g.P1.vertices) hb.arc(v, g.q);
  Vertex z = hb.fresh();
  g.P2 = hb.thread(z, p2_visits, g.r, params.b);
  g.link = LinkKind::FirstToSecond;
  hb.arc(z, g.P1.vertices[1]);
  return g;
}

enum class Slot { A1, I, II, III };

inline Gadget make_slot(HostBuilder& hb, Slot s, Vertex p, Vertex q, const CabParams& params) {
  switch (s) {
    case Slot::I: return make_type1(hb, p, q, static_cast<int>(params.g));
    case Slot::II: return make_type2_basic(hb, p, q, static_cast<int>(params.type2_length()));
    case Slot::III:
      return make_type3(hb, p, q, static_cast<int>(params.type3_length()), static_cast<int>(params.type3_length()));
    case Slot::A1: break;
  }
  hb.arc(p, q);
  return Gadget::trivial(p, q);
}

inline Chain make_chain(HostBuilder& hb, const std::vector<Slot>& slots, const CabParams& params) {
  Chain c;
  c.spine = Dipath::single(hb.fresh());
  for (Slot s : slots) {
    Vertex p = c.spine.last(), q = hb.fresh();
    Gadget g = make_slot(hb, s, p, q, params);
    if (s == Slot::A1)
      c.append_path(Dipath({p, q}));
    else
      c.append_gadget_arc(g);
  }
  return c;
}

inline std::vector<Slot> random_slots(int gadget_arcs, int a1_arcs, std::mt19937& rng) {
  std::vector<Slot> slots(gadget_arcs + a1_arcs, Slot::A1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int i = 0; i < gadget_arcs; ++i) slots[i] = static_cast<Slot>(1 + kind(rng));
  std::shuffle(slots.begin() + 1, slots.end() - 1, rng);
  return slots;
}

// Strong (a,b)-alternating path on fresh vertices from `first` to `last`; dipath lengths vary in [b, b+2].
template <class Rng>
AlternatingPath fresh_alt(HostBuilder& hb, int a, int b, Vertex first, Vertex last, Rng& rng) {
  AlternatingPath R;
  R.a = a;
  for (int i = 0; i < a; ++i) {
    R.s.push_back(i == 0 ? first : hb.fresh());
    R.t.push_back(i == a - 1 ? last : hb.fresh());
  }
  for (int i = 0; i < a; ++i) R.Q.push_back(hb.fresh_path(R.s[i], b + static_cast<int>(rng() % 3), R.t[i]));
  for (int i = 0; i + 1 < a; ++i) R.Qp.push_back(hb.fresh_path(R.s[i + 1], b + static_cast<int>(rng() % 3), R.t[i]));
  refresh_strength(R, b);
  return R;
}

// Host containing a subdivision of pattern_cab(a,b): two alternating paths wired crosswise,
// plus `noise` random arcs, with labels shuffled.
template <class Rng>
Digraph wired_cab_host(int a, int b, int noise, Rng& rng) {
  HostBuilder hb;
  Vertex x = hb.fresh(), y = hb.fresh();
  int a1 = 2 + static_cast<int>(rng() % (a - 1)), a2 = a + 2 - a1;
  fresh_alt(hb, a1, b, x, y, rng);
  fresh_alt(hb, a2, b, y, x, rng);
  for (int i = 0; i < noise; ++i) {
    int u = static_cast<int>(rng() % hb.n), v = static_cast<int>(rng() % hb.n);
    if (u != v) hb.arc(u, v);
  }
  std::vector<int> perm(hb.n);
  for (int i = 0; i < hb.n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Arc> arcs;
  for (auto [u, v] : hb.arc_list) arcs.emplace_back(perm[u], perm[v]);
  return Digraph(hb.n, arcs);
}

// Z_n with arcs i -> i+1..i+s; girth ceil(n/s).
inline Digraph circulant(int n, int s) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= s; ++j) arcs.emplace_back(i, (i + j) % n);
  return Digraph(n, arcs);
}

}  // namespace subdiv::ref
