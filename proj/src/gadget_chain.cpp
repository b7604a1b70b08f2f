#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "subdiv/gadget.hpp"

namespace subdiv {

namespace {

Dipath arc_path(Vertex u, Vertex v) { return Dipath({u, v}); }

Dipath slice(const Dipath& p, int i, int j) {
  return Dipath(VertexList(p.vertices.begin() + i, p.vertices.begin() + j + 1));
}

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorKind::InvariantBroken, what); }

void ensure_valid(const AlternatingPath& R, int b, const char* where) {
  auto rep = check_alternating_path(R, b);
  if (!rep) broken(std::string(where) + ": " + rep.message);
}

bool in_list(const VertexList& xs, Vertex v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

// Shortest dipath from any source to any target using only the given arcs.
std::optional<Dipath> local_bfs(const std::vector<Arc>& arcs, const VertexList& sources,
                                const std::set<Vertex>& targets) {
  std::map<Vertex, VertexList> adj;
  for (auto [u, v] : arcs) adj[u].push_back(v);
  for (auto& [u, vs] : adj) std::sort(vs.begin(), vs.end());
  std::map<Vertex, Vertex> parent;
  std::deque<Vertex> queue;
  VertexList srcs = sources;
  std::sort(srcs.begin(), srcs.end());
  for (Vertex s : srcs) {
    if (targets.count(s)) return Dipath::single(s);
    if (parent.emplace(s, -1).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : adj[u]) {
      if (!parent.emplace(v, u).second) continue;
      if (targets.count(v)) {
        VertexList path{v};
        for (Vertex w = u; w != -1; w = parent[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        return Dipath(std::move(path));
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

// Appends `tail` to the last Q-path of R and moves t_a to its end.
void extend_last(AlternatingPath& R, const Dipath& tail) {
  R.Q.back() = R.Q.back().then(tail);
  R.t.back() = R.Q.back().last();
}

AlternatingPath two_path(Vertex s1, const Dipath& q1, const Dipath& qp1, const Dipath& q2, int b) {
  AlternatingPath R;
  R.a = 2;
  R.s = {s1, qp1.first()};
  R.t = {q1.last(), q2.last()};
  R.Q = {q1, q2};
  R.Qp = {qp1};
  refresh_strength(R, b);
  return R;
}

// Oriented traversal pieces of R: (vertices in walking order, walked along the arcs?).
void append_segments(const AlternatingPath& R, std::vector<std::pair<VertexList, bool>>& out) {
  for (int i = 0; i < R.a; ++i) {
    if (R.Q[i].length() > 0) out.emplace_back(R.Q[i].vertices, true);
    if (i + 1 < R.a) out.emplace_back(R.Qp[i].reversed().vertices, false);
  }
}

}  // namespace

CabParams CabParams::make(int a, int b) {
  if (a < 2 || b < 1) throw Error(ErrorKind::BadParams, "C_{a,b} needs a >= 2 and b >= 1");
  CabParams p;
  p.a = a;
  p.b = b;
  const long long bb = b;
  p.g = 4 * bb * bb;
  p.k = 12 * bb * bb * (4 * p.g + 3) * (4 * p.g + 3) * (a + 3) * (bb + 1);
  p.h = 4 * p.g + 2;
  p.d = 2 * bb * (4 * p.g + 3) * (a + 3) * (bb + 1);
  return p;
}

std::string gadget_kind_name(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Trivial: return "trivial";
    case GadgetKind::TypeI: return "I";
    case GadgetKind::TypeIIBasic: return "II-basic";
    case GadgetKind::TypeIIExtended: return "II-extended";
    case GadgetKind::TypeIII: return "III";
  }
  return "?";
}

// ---- Gadget ----

Gadget Gadget::trivial(Vertex p, Vertex q) {
  Gadget g;
  g.p = p;
  g.q = q;
  return g;
}

VertexList Gadget::vertices() const {
  VertexList vs{p, q};
  vs.insert(vs.end(), cycle.begin(), cycle.end());
  vs.insert(vs.end(), P1.vertices.begin(), P1.vertices.end());
  vs.insert(vs.end(), P2.vertices.begin(), P2.vertices.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Gadget::contains(Vertex v) const {
  auto vs = vertices();
  return std::binary_search(vs.begin(), vs.end(), v);
}

std::vector<Arc> Gadget::arcs() const {
  std::vector<Arc> result;
  auto path_arcs = [&](const Dipath& P) {
    for (std::size_t i = 0; i + 1 < P.vertices.size(); ++i)
      result.emplace_back(P.vertices[i], P.vertices[i + 1]);
  };
  switch (kind) {
    case GadgetKind::Trivial:
      result.emplace_back(p, q);
      break;
    case GadgetKind::TypeI:
      for (std::size_t i = 0; i < cycle.size(); ++i)
        result.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
      break;
    case GadgetKind::TypeIIBasic:
    case GadgetKind::TypeIIExtended:
      path_arcs(P1);
      for (Vertex v : P1.vertices) result.emplace_back(v, q);
      if (kind == GadgetKind::TypeIIExtended) {
        path_arcs(P2);
        if (link == LinkKind::FirstToSecond && P1.length() >= 1)
          result.emplace_back(P2.first(), P1.vertices[1]);
        else if (link == LinkKind::BackArc)
          result.emplace_back(link_vertex, P2.first());
      }
      break;
    case GadgetKind::TypeIII:
      result.emplace_back(p, q);
      path_arcs(P1);
      path_arcs(P2);
      break;
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

Gadget Gadget::basic_part() const {
  if (kind != GadgetKind::TypeIIExtended) throw Error(ErrorKind::WrongKind, "basic part needs an extended type-II gadget");
  Gadget g = *this;
  g.kind = GadgetKind::TypeIIBasic;
  g.P2 = Dipath();
  g.link = LinkKind::None;
  g.link_vertex = -1;
  return g;
}

ValidationReport validate_gadget(const Digraph& d, const Gadget& g, const CabParams& params) {
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  if (!d.contains(g.p) || !d.contains(g.q)) return fail("p or q outside the host");
  if (g.p == g.q) return fail("p equals q");
  const int b = params.b;
  switch (g.kind) {
    case GadgetKind::Trivial:
      break;
    case GadgetKind::TypeI: {
      if (g.cycle.size() < 2 || g.cycle[0] != g.p || g.cycle[1] != g.q)
        return fail("cycle must start with p, q");
      if (!Dipath(g.cycle).distinct()) return fail("cycle repeats a vertex");
      if (static_cast<long long>(g.cycle.size()) < params.g) return fail("cycle shorter than g");
      break;
    }
    case GadgetKind::TypeIIBasic:
    case GadgetKind::TypeIIExtended: {
      if (g.P1.empty() || g.P1.first() != g.r || g.P1.last() != g.p) return fail("P1 must run from r to p");
      if (!g.P1.distinct()) return fail("P1 repeats a vertex");
      if (g.P1.length() < params.type2_length()) return fail("P1 too short");
      if (g.P1.contains(g.q)) return fail("q lies on P1");
      for (Vertex v : g.P1.vertices)
        if (!d.has_arc(v, g.q)) return fail("P1 vertex " + std::to_string(v) + " lacks an arc to q");
      if (g.kind == GadgetKind::TypeIIBasic) break;
      if (g.P2.empty() || g.P2.last() != g.r) return fail("P2 must end at r");
      if (!g.P2.distinct()) return fail("P2 repeats a vertex");
      if (g.P2.length() < b) return fail("P2 too short");
      if (g.P2.contains(g.q)) return fail("q lies on P2");
      for (Vertex v : g.P2.vertices)
        if (v != g.r && g.P1.contains(v)) return fail("P1 and P2 share " + std::to_string(v));
      if (g.link == LinkKind::FirstToSecond) {
        if (g.P1.length() < 1 || !d.has_arc(g.P2.first(), g.P1.vertices[1]))
          return fail("link arc from first of P2 to second of P1 missing");
      } else if (g.link == LinkKind::BackArc) {
        if (!g.P1.contains(g.link_vertex) || g.link_vertex == g.r)
          return fail("back-arc tail must lie on P1 minus r");
        if (!d.has_arc(g.link_vertex, g.P2.first())) return fail("back arc to first of P2 missing");
      } else {
        return fail("extended gadget without link clause");
      }
      break;
    }
    case GadgetKind::TypeIII: {
      if (g.P1.empty() || g.P1.first() != g.p || g.P1.last() != g.r) return fail("P1 must run from p to r");
      if (g.P2.empty() || g.P2.first() != g.q || g.P2.last() != g.r) return fail("P2 must run from q to r");
      if (!g.P1.distinct() || !g.P2.distinct()) return fail("P1 or P2 repeats a vertex");
      if (g.P1.length() < 2 * b - 1) return fail("P1 too short");
      if (g.P2.length() < 2 * b - 1) return fail("P2 too short");
      for (Vertex v : g.P2.vertices)
        if (v != g.r && g.P1.contains(v)) return fail("P1 and P2 share " + std::to_string(v));
      break;
    }
  }
  for (auto [u, v] : g.arcs())
    if (!d.has_arc(u, v)) return fail("arc absent: (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return {};
}

// ---- AlternatingPath ----

VertexList AlternatingPath::vertices() const {
  VertexList vs = walk();
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

VertexList AlternatingPath::walk() const {
  VertexList w;
  for (int i = 0; i < a; ++i) {
    const auto& q = Q[i].vertices;
    w.insert(w.end(), q.begin() + (w.empty() ? 0 : 1), q.end());
    if (i + 1 < a) {
      const auto& qp = Qp[i].vertices;
      w.insert(w.end(), qp.rbegin() + 1, qp.rend());
    }
  }
  return w;
}

void refresh_strength(AlternatingPath& R, int b) {
  R.strong = R.a >= 1 && R.Q.front().length() >= b && R.Q.back().length() >= b;
}

AlternatingPath single_dipath(const Dipath& path, int b) {
  AlternatingPath R;
  R.a = 1;
  R.s = {path.first()};
  R.t = {path.last()};
  R.Q = {path};
  refresh_strength(R, b);
  return R;
}

ValidationReport check_alternating_path(const AlternatingPath& R, int b, const Digraph* host) {
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  const std::size_t a = static_cast<std::size_t>(R.a);
  if (R.a < 1 || R.s.size() != a || R.t.size() != a || R.Q.size() != a || R.Qp.size() != a - 1)
    return fail("list sizes do not match a");
  for (int i = 0; i < R.a; ++i) {
    const Dipath& q = R.Q[i];
    if (q.empty() || q.first() != R.s[i] || q.last() != R.t[i])
      return fail("Q" + std::to_string(i + 1) + " does not run s->t");
    bool outer = i == 0 || i == R.a - 1;
    if (!outer && q.length() < b) return fail("Q" + std::to_string(i + 1) + " shorter than b");
  }
  for (int i = 0; i + 1 < R.a; ++i) {
    const Dipath& q = R.Qp[i];
    if (q.empty() || q.first() != R.s[i + 1] || q.last() != R.t[i])
      return fail("Q'" + std::to_string(i + 1) + " does not run s_{i+1}->t_i");
    if (q.length() < b) return fail("Q'" + std::to_string(i + 1) + " shorter than b");
  }
  if (!Dipath(R.walk()).distinct()) return fail("constituent dipaths are not internally disjoint");
  bool strong = R.Q.front().length() >= b && R.Q.back().length() >= b;
  if (strong != R.strong) return fail("strength flag incorrect");
  if (host) {
    for (const auto& q : R.Q)
      if (!q.valid_in(*host)) return fail("Q path not in host");
    for (const auto& q : R.Qp)
      if (!q.valid_in(*host)) return fail("Q' path not in host");
  }
  return {};
}

// ---- gadget lemmas ----

AlternatingPath base_alt_path(const Gadget& g, const CabParams& params) {
  AlternatingPath R;
  R.a = 2;
  if (g.kind == GadgetKind::TypeI) {
    VertexList back(g.cycle.begin() + 1, g.cycle.end());
    back.push_back(g.p);
    R.s = {g.p, g.q};
    R.t = {g.p, g.q};
    R.Q = {Dipath::single(g.p), Dipath::single(g.q)};
    R.Qp = {Dipath(back)};
  } else if (g.kind == GadgetKind::TypeIIBasic || g.kind == GadgetKind::TypeIIExtended) {
    R.s = {g.p, g.r};
    R.t = {g.p, g.q};
    R.Q = {Dipath::single(g.p), arc_path(g.r, g.q)};
    R.Qp = {g.P1};
  } else {
    throw Error(ErrorKind::WrongKind, "base path needs a type-I or type-II gadget, got " + gadget_kind_name(g.kind));
  }
  refresh_strength(R, params.b);
  ensure_valid(R, params.b, "base_alt_path");
  return R;
}

Dipath reach_pq(const Gadget& g, Vertex x) {
  if (g.kind == GadgetKind::TypeIII) throw Error(ErrorKind::WrongKind, "type-III gadgets need not reach {p,q}");
  if (!g.contains(x)) throw Error(ErrorKind::BadTarget, "vertex " + std::to_string(x) + " not in gadget");
  // every P1 vertex of a type-II gadget has its own arc to q
  if ((g.kind == GadgetKind::TypeIIBasic || g.kind == GadgetKind::TypeIIExtended) && x != g.p && g.P1.contains(x))
    return arc_path(x, g.q);
  auto path = local_bfs(g.arcs(), {x}, {g.p, g.q});
  if (!path) broken("gadget does not reach {p,q}");
  return *path;
}

AlternatingPath extended_exit_path(const Gadget& g, const VertexList& X, const CabParams& params) {
  if (g.kind != GadgetKind::TypeIIExtended) throw Error(ErrorKind::WrongKind, "exit path needs an extended type-II gadget");
  if (X.empty()) throw Error(ErrorKind::BadTarget, "empty target set");
  const int b = params.b;
  const Dipath& P1 = g.P1;
  const Dipath& P2 = g.P2;
  auto on_inner_p1 = [&](Vertex v) { return P1.contains(v) && v != g.p && v != g.r; };

  AlternatingPath R;
  if (X.size() == 1 && !on_inner_p1(X[0])) {
    Vertex x = X[0];
    if (x == g.p || x == g.q || !P2.contains(x))
      throw Error(ErrorKind::BadTarget, "target " + std::to_string(x) + " is not a gadget vertex outside {p,q}");
    R = two_path(g.p, Dipath::single(g.p), P2.sub(x, g.r).then(P1), Dipath::single(x), b);
    ensure_valid(R, b, "extended_exit_path");
    return R;
  }
  for (Vertex x : X)
    if (!on_inner_p1(x)) throw Error(ErrorKind::BadTarget, "target " + std::to_string(x) + " outside P1 - {p,r}");

  const Vertex z = P2.first();
  const Vertex y = P1.vertices[1];
  auto first_target_from_y = [&]() {
    for (int i = 1; i <= P1.length(); ++i)
      if (in_list(X, P1.vertices[i])) return P1.vertices[i];
    broken("no target on P1");
  };

  if (g.link == LinkKind::FirstToSecond) {
    Vertex x = first_target_from_y();
    R = two_path(g.q, Dipath::single(g.q), P2.then(arc_path(g.r, g.q)), arc_path(z, y).then(P1.sub(y, x)), b);
  } else if (g.link == LinkKind::BackArc && g.link_vertex == g.p) {
    Vertex x = first_target_from_y();
    R = single_dipath(arc_path(g.p, z).then(P2).then(P1.sub(g.r, x)), b);
  } else if (g.link == LinkKind::BackArc) {
    const Vertex w = g.link_vertex;
    const int iw = P1.index_of(w);
    int best = -1;
    for (Vertex x : X) {
      int ix = P1.index_of(x);
      int dist = std::abs(ix - iw), best_dist = best < 0 ? 0 : std::abs(best - iw);
      // ties go to the r side, which has the smaller index
      if (best < 0 || dist < best_dist || (dist == best_dist && ix < best)) best = ix;
    }
    const Vertex xp = P1.vertices[best];
    Dipath loop = arc_path(w, z).then(P2).then(arc_path(g.r, g.q));
    if (iw <= best)
      R = two_path(g.q, Dipath::single(g.q), loop, P1.sub(w, xp), b);
    else
      R = two_path(g.q, Dipath::single(g.q), P1.sub(xp, w).then(loop), Dipath::single(xp), b);
  } else {
    throw Error(ErrorKind::WrongKind, "extended gadget without link clause");
  }
  ensure_valid(R, b, "extended_exit_path");
  return R;
}

// ---- chains ----

int Chain::a2_count() const { return a2_count(0, length()); }

int Chain::a2_count(int from, int to) const {
  int c = 0;
  for (int i = std::max(from, 0); i < to && i < static_cast<int>(gadgets.size()); ++i) c += gadgets[i].has_value();
  return c;
}

Gadget Chain::gadget_at(int i) const {
  if (gadgets[i]) return *gadgets[i];
  return Gadget::trivial(spine.vertices[i], spine.vertices[i + 1]);
}

Chain Chain::sub(int i, int j) const {
  Chain c;
  c.spine = slice(spine, i, j);
  c.gadgets.assign(gadgets.begin() + i, gadgets.begin() + j);
  return c;
}

VertexList Chain::vertices() const {
  VertexList vs = spine.vertices;
  for (const auto& g : gadgets)
    if (g) {
      auto gv = g->vertices();
      vs.insert(vs.end(), gv.begin(), gv.end());
    }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void Chain::append_path(const Dipath& path) {
  if (spine.empty()) {
    spine = path;
  } else {
    spine = spine.then(path);
  }
  gadgets.resize(spine.length());
}

void Chain::append_gadget_arc(const Gadget& g) {
  if (spine.empty() || spine.last() != g.p) broken("gadget does not start at the spine end");
  spine = spine.then_vertex(g.q);
  gadgets.push_back(g);
}

ValidationReport validate_chain(const Digraph& d, const Chain& chain, const CabParams& params) {
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  if (chain.spine.empty()) return fail("empty spine");
  if (!chain.spine.distinct()) return fail("spine repeats a vertex");
  if (!chain.spine.valid_in(d)) return fail("spine not a dipath of the host");
  if (static_cast<int>(chain.gadgets.size()) != chain.length()) return fail("one gadget slot per spine arc required");
  std::set<Vertex> spine_set(chain.spine.vertices.begin(), chain.spine.vertices.end());
  std::map<Vertex, int> owner;
  for (int i = 0; i < chain.length(); ++i) {
    if (!chain.gadgets[i]) continue;
    const Gadget& g = *chain.gadgets[i];
    std::string at = "gadget at arc " + std::to_string(i) + ": ";
    if (g.kind == GadgetKind::Trivial || g.kind == GadgetKind::TypeIIExtended)
      return fail(at + "kind " + gadget_kind_name(g.kind) + " not allowed in a chain");
    if (g.p != chain.spine.vertices[i] || g.q != chain.spine.vertices[i + 1]) return fail(at + "endpoints differ from arc");
    if (auto rep = validate_gadget(d, g, params); !rep) return fail(at + rep.message);
    for (Vertex v : g.vertices()) {
      if (spine_set.count(v)) {
        if (v != g.p && v != g.q) return fail(at + "meets the spine outside its arc");
        continue;
      }
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh) return fail(at + "shares vertex " + std::to_string(v) + " with gadget at arc " + std::to_string(it->second));
    }
  }
  return {};
}

AlternatingPath chain_alt_path(const Chain& chain, int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorKind::BadParams, "chain path needs a, b >= 1");
  const long long need = 1LL * a * (b + 1) - 1;
  if (chain.a2_count() < need)
    throw Error(ErrorKind::ChainTooPoor, "chain has " + std::to_string(chain.a2_count()) + " gadget arcs, needs " +
                                             std::to_string(need));
  const Dipath& P = chain.spine;
  CabParams local;
  local.b = b;

  // Builds the path for the subchain on spine positions 0..end.
  auto build = [&](auto&& self, int level, int end) -> AlternatingPath {
    if (level == 1) {
      if (end < b) broken("spine shorter than b in base case");
      return single_dipath(slice(P, 0, end), b);
    }
    int j = end - b - 1;
    while (j >= 0 && !chain.gadgets[j]) --j;
    if (j < 0) broken("no gadget arc left for the induction step");
    AlternatingPath R = self(self, level - 1, j);
    const Gadget& g = *chain.gadgets[j];
    const Dipath rest = slice(P, j + 1, end);
    if (g.kind == GadgetKind::TypeIII) {
      R.Q.back() = R.Q.back().then(g.P1);
      R.t.back() = g.r;
      R.Qp.push_back(g.P2);
      R.s.push_back(g.q);
    } else {
      AlternatingPath R0 = base_alt_path(g, local);
      R.Qp.push_back(R0.Qp[0]);
      R.s.push_back(R0.s[1]);
      R.Q.push_back(R0.Q[1].then(rest));
      R.t.push_back(P.vertices[end]);
      ++R.a;
      refresh_strength(R, b);
      return R;
    }
    R.Q.push_back(rest);
    R.t.push_back(P.vertices[end]);
    ++R.a;
    refresh_strength(R, b);
    return R;
  };
  AlternatingPath R = build(build, a, P.length());
  ensure_valid(R, b, "chain_alt_path");
  if (!R.strong || R.s[0] != P.first() || R.t.back() != P.last()) broken("chain path lost its endpoints or strength");
  return R;
}

SubdivisionCertificate cab_certificate_from_runs(const std::vector<Dipath>& forward,
                                                 const std::vector<Dipath>& backward, int b) {
  const int A = static_cast<int>(forward.size());
  if (A < 1 || static_cast<int>(backward.size()) != A) broken("run lists must have equal nonzero size");
  for (int i = 0; i < A; ++i) {
    if (forward[i].length() < b || backward[i].length() < b) broken("run shorter than b");
    if (backward[i].first() != forward[(i + 1) % A].first() || backward[i].last() != forward[i].last())
      broken("runs do not close up");
  }
  Digraph pattern = pattern_cab(A, b);
  SubdivisionCertificate cert;
  cert.branch.assign(pattern.n(), -1);
  int next = 2 * A;
  auto chain_of = [&](Vertex from, Vertex to) {
    VertexList c{from};
    for (int i = 1; i < b; ++i) c.push_back(next++);
    c.push_back(to);
    return c;
  };
  for (int i = 0; i < A; ++i) {
    int k = A - 1 - i;  // pattern s_i sits at the host source sigma_k
    place_pattern_path(cert, chain_of(i, A + i), forward[k]);
    place_pattern_path(cert, chain_of(i, A + (i + 1) % A), backward[((A - 2 - i) % A + A) % A]);
  }
  return cert;
}

SubdivisionCertificate join_alt_paths(const AlternatingPath& R1, const AlternatingPath& R2, int b) {
  if (!R1.strong || !R2.strong) throw Error(ErrorKind::PreconditionViolated, "both alternating paths must be strong");
  if (R1.s[0] != R2.t.back() || R2.s[0] != R1.t.back())
    throw Error(ErrorKind::EndpointMismatch, "paths must meet in s1(R1)=t(R2) and s1(R2)=t(R1)");
  {
    auto v1 = R1.vertices(), v2 = R2.vertices();
    VertexList common;
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(common));
    for (Vertex v : common)
      if (v != R1.s[0] && v != R2.s[0])
        throw Error(ErrorKind::OverlapViolation, "paths share vertex " + std::to_string(v));
  }
  std::vector<std::pair<VertexList, bool>> segs;
  append_segments(R1, segs);
  append_segments(R2, segs);
  std::vector<std::pair<VertexList, bool>> runs;
  for (auto& [vs, fwd] : segs) {
    if (!runs.empty() && runs.back().second == fwd)
      runs.back().first.insert(runs.back().first.end(), vs.begin() + 1, vs.end());
    else
      runs.emplace_back(vs, fwd);
  }
  if (runs.size() > 1 && runs.front().second == runs.back().second) {
    auto& tail = runs.back().first;
    tail.insert(tail.end(), runs.front().first.begin() + 1, runs.front().first.end());
    runs.front() = std::move(runs.back());
    runs.pop_back();
  }
  if (runs.size() % 2 != 0 || runs.empty()) broken("closed walk does not alternate");
  if (!runs.front().second) std::rotate(runs.begin(), runs.begin() + 1, runs.end());
  std::vector<Dipath> forward, backward;
  for (std::size_t i = 0; i < runs.size(); i += 2) {
    forward.emplace_back(runs[i].first);
    backward.push_back(Dipath(runs[i + 1].first).reversed());
  }
  return cab_certificate_from_runs(forward, backward, b);
}

// ---- gadget intersection ----

AlternatingPath gadget_intersection_path(const Gadget& g, const Gadget& star, const CabParams& params) {
  if (star.kind != GadgetKind::TypeIIExtended) throw Error(ErrorKind::BadStar, "second gadget must be extended type II");
  if (g.contains(star.p) || g.contains(star.q)) throw Error(ErrorKind::BadStar, "p* or q* lies in the first gadget");
  VertexList common;
  {
    auto v1 = g.vertices(), v2 = star.vertices();
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(common));
  }
  if (common.empty()) throw Error(ErrorKind::Disjoint, "gadgets share no vertex");
  const int b = params.b;
  AlternatingPath R;

  if (g.kind != GadgetKind::TypeIII) {
    auto P = local_bfs(g.arcs(), common, {g.p, g.q});
    if (!P) broken("gadget does not reach {p,q}");
    R = extended_exit_path(star, {P->first()}, params);
    extend_last(R, *P);
  } else {
    auto dist = [&](Vertex x) {
      int best = 1 << 30;
      if (x == g.p || x == g.q) return 0;
      if (g.P1.contains(x)) best = g.P1.index_of(x);
      if (g.P2.contains(x)) best = std::min(best, g.P2.index_of(x));
      return best;
    };
    // Base of G-path from {p,q} to x: P1 when x is on it, else P2.
    auto from_base = [&](Vertex x) { return g.P1.contains(x) ? g.P1.sub(g.p, x) : g.P2.sub(g.q, x); };

    std::optional<Vertex> far;
    for (Vertex x : star.P1.vertices)
      if (g.contains(x) && dist(x) >= b - 1) {
        far = x;
        break;
      }
    bool meets_p2 = false;
    for (Vertex v : star.P2.vertices) meets_p2 = meets_p2 || g.contains(v);

    if (far) {
      Dipath base = from_base(*far);
      R = two_path(star.q, Dipath::single(star.q), base.then(arc_path(*far, star.q)), Dipath::single(base.first()), b);
    } else if (!meets_p2) {
      R = extended_exit_path(star, common, params);
      Vertex x = R.t.back();
      if (x != g.p && x != g.q) {
        bool on_p1 = g.P1.contains(x);
        extend_last(R, (on_p1 ? g.P1 : g.P2).sub(x, g.r));
        Vertex other = on_p1 ? g.q : g.p;
        R.Qp.push_back(on_p1 ? g.P2 : g.P1);
        R.s.push_back(other);
        R.t.push_back(other);
        R.Q.push_back(Dipath::single(other));
        ++R.a;
        refresh_strength(R, b);
      }
    } else {
      int iw = star.P2.length();
      while (!g.contains(star.P2.vertices[iw])) --iw;
      Dipath walk = slice(star.P2, iw, star.P2.length()).then(star.P1);
      const Vertex w = walk.first();
      std::optional<Dipath> piece;
      int start = 0;
      for (int i = 1; i <= walk.length() + 1 && !piece; ++i) {
        bool cut = i > walk.length() || (walk.vertices[i] != w && g.contains(walk.vertices[i]));
        if (!cut) continue;
        if (i - 1 - start >= b) piece = slice(walk, start, i - 1);
        start = i;
      }
      if (!piece) broken("no long segment between gadget vertices");
      Dipath tail = piece->last() == star.p ? *piece : piece->then(arc_path(piece->last(), star.q));
      Dipath base = from_base(piece->first());
      R = two_path(tail.last(), Dipath::single(tail.last()), base.then(tail), Dipath::single(base.first()), b);
    }
  }
  refresh_strength(R, b);
  ensure_valid(R, b, "gadget_intersection_path");
  auto hits = [&](Vertex u, Vertex v) {
    auto vs = R.vertices();
    return std::binary_search(vs.begin(), vs.end(), u) + std::binary_search(vs.begin(), vs.end(), v);
  };
  if (hits(g.p, g.q) != 1 || hits(star.p, star.q) != 1) broken("intersection path meets a designated pair twice");
  if ((R.t.back() != g.p && R.t.back() != g.q) || (R.s[0] != star.p && R.s[0] != star.q))
    broken("intersection path has wrong ends");
  return R;
}

// ---- closing a chain ----

SubdivisionCertificate close_chain(const Digraph& d, const Chain& chain, const ChainClosure& closure,
                                   const CabParams& params) {
  const int a = params.a, b = params.b;
  if (chain.a2_count() < params.closure_bound())
    throw Error(ErrorKind::ChainTooPoor, "closing needs " + std::to_string(params.closure_bound()) + " gadget arcs, chain has " +
                                             std::to_string(chain.a2_count()));
  if (auto rep = validate_chain(d, chain, params); !rep) throw Error(ErrorKind::ClosureInvalid, "not a chain: " + rep.message);
  const Dipath& P = chain.spine;
  const int ell = P.length();
  const Vertex z0 = P.vertices[0], z1 = P.vertices[1], zl = P.last();
  const Gadget G = chain.gadget_at(0);

  AlternatingPath Rs;
  std::optional<Vertex> zstar;
  if (auto* c1 = std::get_if<ArcIntoFirstGadget>(&closure)) {
    const Vertex x = c1->x;
    if (!G.contains(x)) throw Error(ErrorKind::ClosureInvalid, "closing vertex not in the first gadget");
    if (!d.has_arc(zl, x)) throw Error(ErrorKind::ClosureInvalid, "no arc from the spine end to the closing vertex");
    if (x == z0 || x == z1) {
      Rs = single_dipath(arc_path(zl, x), b);
    } else if (G.kind != GadgetKind::TypeIII) {
      Rs = single_dipath(arc_path(zl, x).then(reach_pq(G, x)), b);
    } else {
      bool on_p1 = G.P1.contains(x);
      Dipath q1 = arc_path(zl, x).then((on_p1 ? G.P1 : G.P2).sub(x, G.r));
      Vertex other = on_p1 ? z1 : z0;
      Rs = two_path(zl, q1, on_p1 ? G.P2 : G.P1, Dipath::single(other), b);
    }
  } else {
    const auto& c2 = std::get<StarGadgetClosure>(closure);
    auto cv = chain.vertices();
    auto in_chain = [&](Vertex v) { return std::binary_search(cv.begin(), cv.end(), v); };
    if (in_chain(c2.zstar)) throw Error(ErrorKind::ClosureInvalid, "z* lies on the chain");
    if (!d.has_arc(zl, c2.zstar)) throw Error(ErrorKind::ClosureInvalid, "no arc from spine end to z*");
    const Gadget& S = c2.star;
    if (S.kind != GadgetKind::TypeIIExtended || S.p != zl || S.q != c2.zstar)
      throw Error(ErrorKind::ClosureInvalid, "G* must be extended type II on (z_l, z*)");
    if (auto rep = validate_gadget(d, S, params); !rep) throw Error(ErrorKind::ClosureInvalid, "G* invalid: " + rep.message);
    bool touches = false;
    for (Vertex v : S.vertices()) {
      if (G.contains(v)) {
        touches = true;
      } else if (v != zl && in_chain(v)) {
        throw Error(ErrorKind::ClosureInvalid, "G* meets the chain outside the first gadget at " + std::to_string(v));
      }
    }
    if (!touches) throw Error(ErrorKind::ClosureInvalid, "G* misses the first gadget");
    Rs = gadget_intersection_path(G, S, params);
    zstar = c2.zstar;
  }

  // R1 runs from z_{l-b} through R* and then along the spine to z_{b+1}.
  AlternatingPath R1 = Rs;
  Dipath head = slice(P, ell - b, ell);
  if (R1.s[0] != zl) head = head.then(arc_path(zl, *zstar));
  if (head.last() != R1.s[0]) broken("R* does not start at z_l or z*");
  R1.Q[0] = head.then(R1.Q[0]);
  R1.s[0] = head.first();
  const int ta = P.index_of(R1.t.back());
  if (ta != 0 && ta != 1) broken("R* does not end in {z0,z1}");
  extend_last(R1, slice(P, ta, b + 1));
  refresh_strength(R1, b);
  ensure_valid(R1, b, "close_chain R1");

  const int a2 = a + 2 - R1.a;
  AlternatingPath R2 = chain_alt_path(chain.sub(b + 1, ell - b), a2, b);
  SubdivisionCertificate cert = join_alt_paths(R1, R2, b);
  if (auto rep = validate_certificate(d, pattern_cab(a, b), cert); !rep) broken("closing certificate invalid: " + rep.message);
  return cert;
}

}  // namespace subdiv
