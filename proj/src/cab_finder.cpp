#include "subdiv/cab.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "subdiv/two_block.hpp"

namespace subdiv {

namespace {

struct BudgetAbort {};

void tick(SearchBudget* budget, std::uint64_t n = 1) {
  if (!budget) return;
  budget->consumed += n;
  if (budget->consumed > budget->max_nodes) throw BudgetAbort{};
}

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorKind::InvariantBroken, what); }

// Breadth-first layers from `root` avoiding `removed`, up to `max_depth` arcs.
struct Ball {
  VertexList order;
  std::vector<int> dist;
  std::vector<Vertex> parent;

  Dipath path_to(Vertex v) const {
    VertexList vs;
    for (Vertex w = v; w != -1; w = parent[w]) vs.push_back(w);
    std::reverse(vs.begin(), vs.end());
    return Dipath(std::move(vs));
  }
};

Ball bfs_ball(const Digraph& d, Vertex root, long long max_depth, const std::vector<char>* removed,
              SearchBudget* budget) {
  Ball ball;
  ball.dist.assign(d.n(), -1);
  ball.parent.assign(d.n(), -1);
  ball.dist[root] = 0;
  ball.order.push_back(root);
  for (std::size_t head = 0; head < ball.order.size(); ++head) {
    Vertex u = ball.order[head];
    tick(budget);
    if (ball.dist[u] >= max_depth) continue;
    for (Vertex v : d.out(u)) {
      if (ball.dist[v] >= 0 || (removed && (*removed)[v])) continue;
      ball.dist[v] = ball.dist[u] + 1;
      ball.parent[v] = u;
      ball.order.push_back(v);
    }
  }
  return ball;
}

std::optional<VertexList> cycle_through(const Digraph& d, Vertex x, Vertex y, int len, SearchBudget* budget) {
  if (len < 2) return std::nullopt;
  if (len == 2) {
    if (d.has_arc(y, x)) return VertexList{x, y};
    return std::nullopt;
  }
  Ball ball = bfs_ball(d, y, len - 1, nullptr, budget);
  if (ball.dist[x] != len - 1) return std::nullopt;
  Dipath p = ball.path_to(x);  // y ... x
  VertexList cycle{x};
  cycle.insert(cycle.end(), p.vertices.begin(), p.vertices.end() - 1);
  return cycle;
}

std::optional<Vertex> common_in_neighbour(const Digraph& d, Vertex x, Vertex y) {
  const VertexList& a = d.in(x);
  const VertexList& b = d.in(y);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      if (*i != x && *i != y) return *i;
      ++i;
      ++j;
    }
  }
  return std::nullopt;
}

// Removes closed sub-walks so the result visits each vertex once.
VertexList loop_erase(const VertexList& walk) {
  VertexList out;
  std::map<Vertex, std::size_t> pos;
  for (Vertex v : walk) {
    auto it = pos.find(v);
    if (it != pos.end()) {
      for (std::size_t k = it->second + 1; k < out.size(); ++k) pos.erase(out[k]);
      out.resize(it->second + 1);
      continue;
    }
    pos[v] = out.size();
    out.push_back(v);
  }
  return out;
}

Gadget embed_I_or_II(const Digraph& d, Vertex p, Vertex q, const CabParams& params, SearchBudget* budget) {
  if (!d.has_arc(p, q)) throw Error(ErrorKind::PreconditionViolated, "gadget base is not an arc of the host");
  const int g = static_cast<int>(params.g);
  const int L = static_cast<int>(params.type2_length());
  const int b = params.b;
  auto finish = [&](Gadget gad) {
    if (auto rep = validate_gadget(d, gad, params); !rep) broken("embedded gadget invalid: " + rep.message);
    if (static_cast<long long>(gad.vertices().size()) > 2LL * g) broken("embedded gadget exceeds 2g vertices");
    return gad;
  };

  VertexList r{p};
  for (int i = 1; i <= L; ++i) {
    Vertex prev = r.back();
    if (auto C = cycle_through(d, prev, q, g, budget)) {
      // q -> ... -> prev along C, then back down the r-chain to p.
      VertexList walk(C->begin() + 1, C->end());
      walk.push_back(prev);
      for (int j = i - 2; j >= 0; --j) walk.push_back(r[j]);
      VertexList path = loop_erase(walk);
      if (path.back() != p) broken("r-walk closure does not end at p");
      Gadget gad;
      gad.kind = GadgetKind::TypeI;
      gad.p = p;
      gad.q = q;
      gad.cycle = {p};
      gad.cycle.insert(gad.cycle.end(), path.begin(), path.end() - 1);
      return finish(gad);
    }
    auto z = common_in_neighbour(d, prev, q);
    if (!z) throw PropertyViolatedError({prev, q});
    r.push_back(*z);
  }

  const Vertex u = r[L - 1];
  VertexList w{r[L]};
  for (int i = 1; i <= b; ++i) {
    Vertex prev = w.back();
    if (auto C = cycle_through(d, prev, u, g, budget)) {
      std::set<Vertex> marked(r.begin(), r.end());
      marked.insert(q);
      std::set<Vertex> w_marked(w.begin(), w.end() - 1);
      const int k = static_cast<int>(C->size());
      int jv = -1;
      for (int j = k - 1; j >= 1; --j) {
        if (marked.count((*C)[j]) || w_marked.count((*C)[j])) {
          jv = j;
          break;
        }
      }
      if (jv < 0) broken("w-walk cycle misses the marked set");
      Vertex v = (*C)[jv];
      if (w_marked.count(v) && v != r[L]) broken("w-walk cycle returns to the w-chain");
      if (v == r[L]) broken("w-walk cycle returns to r");
      Gadget gad;
      gad.p = p;
      gad.q = q;
      if (v == q) {
        gad.kind = GadgetKind::TypeI;
        gad.cycle = {p};
        gad.cycle.insert(gad.cycle.end(), C->begin() + jv, C->end());
        gad.cycle.push_back(prev);
        for (int j = L - 1; j >= 1; --j) gad.cycle.push_back(r[j]);
        return finish(gad);
      }
      gad.kind = GadgetKind::TypeIIExtended;
      gad.r = r[L];
      gad.P1 = Dipath(VertexList(r.rbegin(), r.rend()));
      VertexList p2(C->begin() + jv + 1, C->end());
      for (auto it = w.rbegin(); it != w.rend(); ++it) p2.push_back(*it);
      gad.P2 = Dipath(std::move(p2));
      gad.link = LinkKind::BackArc;
      gad.link_vertex = v;
      return finish(gad);
    }
    auto z = common_in_neighbour(d, prev, u);
    if (!z) throw PropertyViolatedError({prev, u});
    w.push_back(*z);
  }
  Gadget gad;
  gad.kind = GadgetKind::TypeIIExtended;
  gad.p = p;
  gad.q = q;
  gad.r = r[L];
  gad.P1 = Dipath(VertexList(r.rbegin(), r.rend()));
  gad.P2 = Dipath(VertexList(w.rbegin(), w.rend()));
  gad.link = LinkKind::FirstToSecond;
  return finish(gad);
}

std::string json_line(const nlohmann::json& j) { return j.dump(); }

}  // namespace

// ---- contraction ----

ContractionRecord contract_arc(Digraph& d, Vertex x, Vertex y) {
  if (!d.has_arc(x, y)) throw Error(ErrorKind::PreconditionViolated, "contracted pair is not an arc");
  if (d.has_arc(y, x)) throw Error(ErrorKind::PreconditionViolated, "contraction across a digon");
  ContractionRecord rec;
  rec.deleted = x;
  rec.target = y;
  DigraphBuilder b(d);
  for (Vertex z : d.in(x)) {
    b.remove_arc(z, x);
    if (z == y) continue;
    rec.redirected.push_back(z);
    if (!d.has_arc(z, y)) {
      rec.added.emplace_back(z, y);
      b.add_arc(z, y);
    }
  }
  for (Vertex v : d.out(x)) b.remove_arc(x, v);
  d = b.build();
  return rec;
}

Digraph replay_contraction(const Digraph& before, const ContractionRecord& rec) {
  DigraphBuilder b(before);
  for (Vertex z : before.in(rec.deleted)) b.remove_arc(z, rec.deleted);
  for (Vertex v : before.out(rec.deleted)) b.remove_arc(rec.deleted, v);
  for (Vertex z : rec.redirected) b.add_arc(z, rec.target);
  return b.build();
}

SubdivisionCertificate lift_certificate(const SubdivisionCertificate& cert, const ContractionRecord& rec) {
  const std::set<Arc> added(rec.added.begin(), rec.added.end());
  const Vertex x = rec.deleted, y = rec.target;
  struct Use {
    std::size_t path;
    std::size_t pos;  // arc from vertices[pos] to vertices[pos+1]
  };
  std::vector<Use> uses;
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    const VertexList& vs = cert.paths[i].path.vertices;
    for (std::size_t j = 0; j + 1 < vs.size(); ++j)
      if (added.count({vs[j], vs[j + 1]})) uses.push_back({i, j});
  }
  SubdivisionCertificate out = cert;
  if (uses.empty()) return out;
  if (uses.size() == 1) {
    VertexList& vs = out.paths[uses[0].path].path.vertices;
    vs.insert(vs.begin() + static_cast<long>(uses[0].pos) + 1, x);
    return out;
  }
  if (uses.size() != 2) broken("lift: more than two redirected arcs in use");
  // Both redirected arcs enter y, which must then be a branch vertex with no outgoing path.
  auto it = std::find(out.branch.begin(), out.branch.end(), y);
  if (it == out.branch.end()) broken("lift: y carries two redirected arcs but is not a branch vertex");
  const Vertex pattern_y = static_cast<Vertex>(it - out.branch.begin());
  for (const auto& cp : out.paths)
    if (cp.from == pattern_y) broken("lift: y has an outgoing pattern path");
  for (const Use& use : uses)
    if (use.pos + 2 != out.paths[use.path].path.vertices.size() || out.paths[use.path].to != pattern_y)
      broken("lift: redirected arc is not the last arc of a path into y");
  *it = x;
  for (auto& cp : out.paths)
    if (cp.to == pattern_y) cp.path.vertices.back() = x;
  return out;
}

// ---- girth reduction ----

GirthReduction reduce_girth(const Digraph& d, long long k, int g, std::uint64_t seed, int max_retries) {
  if (g < 1 || k < 0 || max_retries < 1) throw Error(ErrorKind::BadParams, "reduce_girth needs g >= 1, k >= 0");
  if (d.n() == 0) throw Error(ErrorKind::EmptyGraph, "reduce_girth on the empty digraph");
  if (max_out_degree(d) < k)
    throw Error(ErrorKind::RetriesExhausted, "no vertex has out-degree k; filtering cannot help");
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt - 1));
    std::uniform_int_distribution<int> level_of(0, g - 1);
    std::vector<int> level(d.n());
    for (int& l : level) l = level_of(rng);
    std::vector<VertexList> out(d.n());
    for (Vertex u = 0; u < d.n(); ++u)
      for (Vertex v : d.out(u))
        if (level[v] == (level[u] + 1) % g) out[u].push_back(v);
    // Peel vertices of low out-degree until stable.
    std::vector<char> alive(d.n(), 1);
    std::vector<int> deg(d.n());
    std::deque<Vertex> queue;
    for (Vertex u = 0; u < d.n(); ++u) {
      deg[u] = static_cast<int>(out[u].size());
      if (deg[u] < k) {
        alive[u] = 0;
        queue.push_back(u);
      }
    }
    std::vector<VertexList> in(d.n());
    for (Vertex u = 0; u < d.n(); ++u)
      for (Vertex v : out[u]) in[v].push_back(u);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex u : in[v]) {
        if (!alive[u]) continue;
        if (--deg[u] < k) {
          alive[u] = 0;
          queue.push_back(u);
        }
      }
    }
    VertexList keep;
    for (Vertex u = 0; u < d.n(); ++u)
      if (alive[u]) keep.push_back(u);
    if (keep.empty()) continue;
    std::vector<int> index(d.n(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    std::vector<Arc> arcs;
    for (Vertex u : keep)
      for (Vertex v : out[u])
        if (alive[v]) arcs.emplace_back(index[u], index[v]);
    GirthReduction red{Digraph(static_cast<int>(keep.size()), arcs), keep, attempt};
    auto girth = directed_girth(red.graph);
    if (min_out_degree(red.graph) < k || (girth && *girth < g)) broken("girth reduction postcondition failed");
    return red;
  }
  throw Error(ErrorKind::RetriesExhausted,
              "no attempt out of " + std::to_string(max_retries) + " kept out-degree " + std::to_string(k));
}

// ---- gadget embeddings ----

std::optional<VertexList> cycle_of_length_through(const Digraph& d, Vertex x, Vertex y, int len) {
  return cycle_through(d, x, y, len, nullptr);
}

Gadget embed_gadget_I_or_II(const Digraph& d, Vertex p, Vertex q, const CabParams& params) {
  return embed_I_or_II(d, p, q, params, nullptr);
}

TypeThreeEmbedding embed_gadget_III(const Digraph& d, Vertex v, const TreeParams& tp, const std::vector<char>* removed,
                                    SearchBudget* budget) {
  if (tp.b < 1 || tp.h < 0 || tp.d < 1) throw Error(ErrorKind::BadParams, "tree parameters must be positive");
  const long long threshold = tp.degree_threshold();
  const int seg = 2 * tp.b - 1;
  auto live = [&](Vertex x) { return !removed || !(*removed)[x]; };
  auto degree = [&](Vertex x) {
    long long c = 0;
    for (Vertex y : d.out(x)) c += live(y);
    return c;
  };
  auto require_degree = [&](Vertex x) {
    long long deg = degree(x);
    if (deg < threshold)
      throw Error(ErrorKind::PreconditionUnverifiable, "vertex " + std::to_string(x) + " has out-degree " +
                                                           std::to_string(deg) + " < " + std::to_string(threshold));
  };
  require_degree(v);

  std::vector<char> in_tree(d.n(), 0);
  std::vector<Vertex> parent(d.n(), -1);
  std::vector<int> depth(d.n(), -1);
  in_tree[v] = 1;
  depth[v] = 0;

  // Greedy d-tuple of dipaths from u of length <= seg, fresh w.r.t. `blocked` and each other.
  auto greedy_tuple = [&](Vertex u, std::vector<char>& blocked) {
    std::vector<VertexList> paths;
    for (long long k = 0; k < tp.d; ++k) {
      VertexList path{u};
      while (static_cast<int>(path.size()) <= seg) {
        tick(budget);
        Vertex next = -1;
        for (Vertex y : d.out(path.back()))
          if (live(y) && !blocked[y]) {
            next = y;
            break;
          }
        if (next < 0) break;
        blocked[next] = 1;
        path.push_back(next);
      }
      paths.push_back(std::move(path));
    }
    return paths;
  };

  std::vector<VertexList> levels{{v}};
  for (long long i = 0; i <= tp.h; ++i) {
    VertexList next_level, leaves;
    for (Vertex u : levels[i]) {
      std::vector<char> blocked = in_tree;
      auto paths = greedy_tuple(u, blocked);
      bool full = std::all_of(paths.begin(), paths.end(),
                              [&](const VertexList& p) { return static_cast<int>(p.size()) == seg + 1; });
      if (!full) {
        leaves.push_back(u);
        continue;
      }
      for (const auto& path : paths) {
        for (std::size_t j = 1; j < path.size(); ++j) {
          in_tree[path[j]] = 1;
          parent[path[j]] = path[j - 1];
          depth[path[j]] = depth[path[j - 1]] + 1;
        }
        next_level.push_back(path.back());
      }
    }
    levels.push_back(next_level);
    for (Vertex u : leaves) {
      std::vector<char> blocked = in_tree;  // X: the whole tree built so far
      auto tuple = greedy_tuple(u, blocked);
      auto shortp = std::find_if(tuple.begin(), tuple.end(),
                                 [&](const VertexList& p) { return static_cast<int>(p.size()) <= seg; });
      if (shortp == tuple.end()) continue;
      const VertexList& Qk = *shortp;
      const Vertex w = Qk.back();
      require_degree(w);
      auto lca = [&](Vertex a, Vertex b) {
        while (depth[a] > depth[b]) a = parent[a];
        while (depth[b] > depth[a]) b = parent[b];
        while (a != b) {
          a = parent[a];
          b = parent[b];
        }
        return a;
      };
      for (Vertex x : d.out(w)) {
        if (!live(x) || !in_tree[x]) continue;
        Vertex y = lca(u, x);
        if (depth[u] - depth[y] <= seg - 1 || depth[x] - depth[y] <= seg - 1) continue;
        auto tree_path = [&](Vertex from, Vertex to) {
          VertexList vs;
          for (Vertex t = to; t != from; t = parent[t]) vs.push_back(t);
          vs.push_back(from);
          std::reverse(vs.begin(), vs.end());
          return vs;
        };
        TypeThreeEmbedding emb;
        emb.P0 = Dipath(tree_path(v, y));
        VertexList to_u = tree_path(y, u);
        VertexList p2(to_u.begin() + 1, to_u.end());
        p2.insert(p2.end(), Qk.begin() + 1, Qk.end());
        p2.push_back(x);
        emb.gadget.kind = GadgetKind::TypeIII;
        emb.gadget.p = y;
        emb.gadget.q = to_u[1];
        emb.gadget.r = x;
        emb.gadget.P1 = Dipath(tree_path(y, x));
        emb.gadget.P2 = Dipath(std::move(p2));
        return emb;
      }
      throw Error(ErrorKind::PreconditionUnverifiable,
                  "every out-neighbour of " + std::to_string(w) + " in the tree lies close to the leaf path");
    }
    if (next_level.empty()) break;
  }
  throw Error(ErrorKind::PreconditionUnverifiable,
              "the arborescence from " + std::to_string(v) + " has no usable leaf within depth " + std::to_string(tp.h));
}

// ---- long dicycle ----

VertexList long_dicycle(const Digraph& d) {
  if (d.n() == 0) throw Error(ErrorKind::EmptyGraph, "long_dicycle on the empty digraph");
  if (min_out_degree(d) < 1) throw Error(ErrorKind::PreconditionViolated, "a vertex has no out-neighbour");
  std::vector<int> pos(d.n(), -1);
  VertexList path{0};
  pos[0] = 0;
  for (;;) {
    Vertex next = -1;
    for (Vertex y : d.out(path.back()))
      if (pos[y] < 0) {
        next = y;
        break;
      }
    if (next < 0) break;
    pos[next] = static_cast<int>(path.size());
    path.push_back(next);
  }
  int earliest = static_cast<int>(path.size());
  for (Vertex y : d.out(path.back())) earliest = std::min(earliest, pos[y]);
  return VertexList(path.begin() + earliest, path.end());
}

// ---- finder result plumbing ----

std::string stuck_to_json(const StuckState& s) {
  nlohmann::json j{{"phase", s.phase},
                   {"detail", s.detail},
                   {"chain_length", s.chain_length},
                   {"chain_gadgets", s.chain_gadgets},
                   {"contractions", s.contractions},
                   {"live_vertices", s.live_vertices},
                   {"live_arcs", s.live_arcs}};
  return j.dump();
}

std::string finder_status_name(FinderStatus s) {
  switch (s) {
    case FinderStatus::Found: return "found";
    case FinderStatus::NotFound: return "not-found";
    case FinderStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

void run_exact_fallback(const Digraph& d, const Digraph& pattern, SearchBudget& budget, FinderResult& result) {
  if (budget.exhausted()) {
    result.status = FinderStatus::BudgetExceeded;
    return;
  }
  const std::uint64_t before = budget.consumed;
  bool cycle = true;
  try {
    analyze_oriented_cycle(pattern);
  } catch (const Error&) {
    cycle = false;
  }
  SearchResult sr = cycle ? search_oriented_cycle(d, pattern, budget) : contains_subdivision(d, pattern, budget);
  result.nodes += budget.consumed - before;
  result.log.push_back(json_line({{"event", "exact-search"}, {"nodes", budget.consumed - before}}));
  switch (sr.status) {
    case SearchStatus::Found:
      result.status = FinderStatus::Found;
      result.certificate = std::move(sr.certificate);
      result.route = "exact-search";
      break;
    case SearchStatus::None: result.status = FinderStatus::NotFound; break;
    case SearchStatus::BudgetExceeded: result.status = FinderStatus::BudgetExceeded; break;
  }
}

// ---- the chain machine ----

namespace {

enum class Step { Extended, Contracted, Closed, Stuck };

class CabMachine {
 public:
  CabMachine(const Digraph& d, const CabParams& params, SearchBudget& budget, FinderResult& result)
      : input_(d), P_(params), budget_(budget), result_(result) {}

  std::optional<SubdivisionCertificate> run() {
    trim();
    if (auto girth = directed_girth(W_); girth && *girth < P_.g) {
      stuck("precondition", "directed girth " + std::to_string(*girth) + " is below " + std::to_string(P_.g));
      return std::nullopt;
    }
    if (!reset_chain()) return std::nullopt;
    long long last_live = live_count(), last_len = chain_.length();
    for (;;) {
      ++result_.iterations;
      tick(&budget_);
      Step step = iterate();
      if (step == Step::Closed) return lift(*closed_);
      if (step == Step::Stuck) return std::nullopt;
      long long live = live_count();
      if (!(live < last_live || (live == last_live && chain_.length() > last_len))) broken("chain loop made no progress");
      last_live = live;
      last_len = chain_.length();
    }
  }

  void stuck(const std::string& phase, const std::string& detail) {
    StuckState s;
    s.phase = phase;
    s.detail = detail;
    s.chain_length = chain_.spine.empty() ? 0 : chain_.length();
    s.chain_gadgets = chain_.spine.empty() ? 0 : chain_.a2_count();
    s.contractions = static_cast<int>(records_.size());
    s.live_vertices = static_cast<int>(live_count());
    s.live_arcs = W_.arc_count();
    result_.stuck = s;
    result_.log.push_back(json_line({{"event", "stuck"}, {"phase", phase}, {"detail", detail}}));
  }

 private:
  const Digraph& input_;
  CabParams P_;
  SearchBudget& budget_;
  FinderResult& result_;
  Digraph W_;
  std::vector<char> dead_;
  std::vector<ContractionRecord> records_;
  Chain chain_;
  std::optional<SubdivisionCertificate> closed_;

  long long live_count() const { return std::count(dead_.begin(), dead_.end(), 0); }

  void trim() {
    const long long k = P_.k;
    std::vector<Arc> arcs;
    std::size_t dropped = 0;
    for (Vertex u = 0; u < input_.n(); ++u) {
      const VertexList& out = input_.out(u);
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<long long>(i) < k)
          arcs.emplace_back(u, out[i]);
        else
          ++dropped;
      }
    }
    W_ = Digraph(input_.n(), arcs);
    dead_.assign(W_.n(), 0);
    result_.log.push_back(json_line({{"event", "trim"}, {"k", k}, {"arcs_removed", dropped}, {"arcs", W_.arc_count()}}));
  }

  bool reset_chain() {
    for (Vertex v = 0; v < W_.n(); ++v) {
      if (!dead_[v] && W_.out_degree(v) > 0) {
        chain_ = Chain{};
        chain_.spine = Dipath::single(v);
        return true;
      }
    }
    stuck("graph-exhausted", "no vertex with an out-neighbour remains");
    return false;
  }

  // False when the chain had to restart and no start vertex is left.
  bool contract(Arc arc) {
    auto [x, y] = arc;
    if (W_.has_arc(y, x)) broken("contraction across a digon");
    const VertexList cv = chain_.vertices();
    const bool reset = std::binary_search(cv.begin(), cv.end(), x);
    records_.push_back(contract_arc(W_, x, y));
    dead_[x] = 1;
    result_.log.push_back(json_line({{"event", "contract"},
                                     {"deleted", x},
                                     {"target", y},
                                     {"redirected", records_.back().redirected.size()},
                                     {"chain_reset", reset}}));
    return !reset || reset_chain();
  }

  int compute_i0() const {
    const int m = chain_.length();
    const long long need = P_.closure_bound();
    if (chain_.a2_count() < need) return 0;
    for (int i = m - 1; i >= 0; --i)
      if (chain_.a2_count(i, m) >= need) return i;
    return 0;
  }

  Step close(const Chain& c, const ChainClosure& closure, const char* kind) {
    try {
      closed_ = close_chain(W_, c, closure, P_);
    } catch (const Error& e) {
      result_.log.push_back(json_line({{"event", "close-failed"}, {"kind", kind}, {"error", e.what()}}));
      return Step::Extended;  // caller treats this as "keep scanning"
    }
    result_.log.push_back(json_line({{"event", "close"}, {"kind", kind}, {"chain_length", c.length()}}));
    return Step::Closed;
  }

  Step iterate() {
    try {
      return iterate_inner();
    } catch (const PropertyViolatedError& e) {
      return contract(e.arc()) ? Step::Contracted : Step::Stuck;
    }
  }

  Step iterate_inner() {
    const int m = chain_.length();
    const Vertex vm = chain_.spine.last();
    const VertexList cv = chain_.vertices();
    std::vector<char> removed = dead_;
    for (Vertex x : cv)
      if (x != vm) removed[x] = 1;
    const int i0 = compute_i0();
    std::vector<char> in_recent(W_.n(), 0);
    for (Vertex x : chain_.sub(i0, m).vertices()) in_recent[x] = 1;
    std::vector<int> owner(W_.n(), -1);
    for (int j = 0; j < i0; ++j)
      for (Vertex x : chain_.gadget_at(j).vertices())
        if (owner[x] < 0 && !in_recent[x]) owner[x] = j;

    // An arc from the reachable region back into an old gadget closes the chain.
    if (i0 > 0) {
      Ball all = bfs_ball(W_, vm, W_.n(), &removed, &budget_);
      for (Vertex u : all.order) {
        for (Vertex x : W_.out(u)) {
          if (owner[x] < 0) continue;
          Chain c = chain_.sub(owner[x], m);
          c.append_path(all.path_to(u));
          if (close(c, ArcIntoFirstGadget{x}, "arc-into-gadget") == Step::Closed) return Step::Closed;
        }
      }
    }

    Ball ball = bfs_ball(W_, vm, P_.window(), &removed, &budget_);
    for (Vertex u : ball.order) {
      if (u == vm) continue;
      const Dipath Q = ball.path_to(u);
      const int t = Q.length();
      Gadget star = embed_I_or_II(W_, Q.vertices[t - 1], u, P_, &budget_);
      const VertexList sv = star.vertices();
      if (std::any_of(sv.begin(), sv.end(), [&](Vertex x) { return in_recent[x] != 0; })) continue;
      const bool meets_chain = std::any_of(sv.begin(), sv.end(), [&](Vertex x) { return owner[x] >= 0; });

      if (star.kind == GadgetKind::TypeIIExtended) {
        Gadget basic = star.basic_part();
        if (!meets_chain) {
          for (Vertex x : basic.vertices())
            if (Q.contains(x) && x != Q.vertices[t - 1] && x != u) broken("basic part meets the shortest path");
          chain_.append_path(Dipath(VertexList(Q.vertices.begin(), Q.vertices.end() - 1)));
          chain_.append_gadget_arc(basic);
          return extended("II", t);
        }
        int i1 = -1;
        for (int i = i0 - 1; i >= 0 && i1 < 0; --i) {
          const Gadget g = chain_.gadget_at(i);
          if (std::any_of(sv.begin(), sv.end(), [&](Vertex x) { return g.contains(x); })) i1 = i;
        }
        Chain c = chain_.sub(i1, m);
        c.append_path(Dipath(VertexList(Q.vertices.begin(), Q.vertices.end() - 1)));
        if (close(c, StarGadgetClosure{u, star}, "star-gadget") == Step::Closed) return Step::Closed;
        continue;
      }

      // Directed cycle through (w_{t-1}, u).
      int j = 0;
      while (!std::binary_search(sv.begin(), sv.end(), Q.vertices[j])) ++j;
      const Vertex wj = Q.vertices[j];
      auto at = std::find(star.cycle.begin(), star.cycle.end(), wj);
      VertexList rotated(at, star.cycle.end());
      rotated.insert(rotated.end(), star.cycle.begin(), at);
      if (!meets_chain) {
        Gadget g1;
        g1.kind = GadgetKind::TypeI;
        g1.p = wj;
        g1.q = rotated[1];
        g1.cycle = rotated;
        chain_.append_path(Dipath(VertexList(Q.vertices.begin(), Q.vertices.begin() + j + 1)));
        chain_.append_gadget_arc(g1);
        return extended("I", j + 1);
      }
      std::size_t s = 1;
      while (s < rotated.size() && owner[rotated[s]] < 0) ++s;
      if (s == rotated.size()) broken("cycle meets the chain but the walk never reached it");
      VertexList qpp(Q.vertices.begin(), Q.vertices.begin() + j + 1);
      qpp.insert(qpp.end(), rotated.begin() + 1, rotated.begin() + static_cast<long>(s));
      const Vertex x = rotated[s];
      Chain c = chain_.sub(owner[x], m);
      c.append_path(Dipath(std::move(qpp)));
      if (close(c, ArcIntoFirstGadget{x}, "cycle-into-gadget") == Step::Closed) return Step::Closed;
    }

    try {
      TypeThreeEmbedding emb = embed_gadget_III(W_, vm, TreeParams::from(P_), &removed, &budget_);
      chain_.append_path(emb.P0);
      chain_.append_gadget_arc(emb.gadget);
      return extended("III", emb.P0.length() + 1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionUnverifiable) throw;
      stuck("gadget-III", e.what());
      return Step::Stuck;
    }
  }

  Step extended(const char* kind, int added_arcs) {
    if (auto rep = validate_chain(W_, chain_, P_); !rep) broken("extended chain invalid: " + rep.message);
    result_.log.push_back(json_line({{"event", "extend"},
                                     {"gadget", kind},
                                     {"spine_arcs", added_arcs},
                                     {"chain_length", chain_.length()},
                                     {"chain_gadgets", chain_.a2_count()}}));
    return Step::Extended;
  }

  SubdivisionCertificate lift(SubdivisionCertificate cert) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) cert = lift_certificate(cert, *it);
    return cert;
  }
};

}  // namespace

FinderResult find_cab(const Digraph& d, int a, int b, SearchBudget& budget, const FinderOptions& options) {
  if (a < 2) throw Error(ErrorKind::DegeneratePattern, "C_{a,b} with a < 2 is handled by the two-block finder");
  if (b < 1) throw Error(ErrorKind::BadParams, "b must be at least 1");
  const CabParams params = CabParams::make(a, b);
  const Digraph pattern = pattern_cab(a, b);
  FinderResult result;
  const std::uint64_t before = budget.consumed;
  if (d.n() == 0) {
    result.status = FinderStatus::NotFound;
    result.stuck = StuckState{"precondition", "empty host", 0, 0, 0, 0, 0};
    return result;
  }
  CabMachine machine(d, params, budget, result);
  try {
    if (auto cert = machine.run()) {
      if (auto rep = validate_certificate(d, pattern, *cert); !rep)
        broken("constructed certificate rejected: " + rep.message);
      result.status = FinderStatus::Found;
      result.certificate = std::move(cert);
      result.route = "construction";
      result.nodes = budget.consumed - before;
      return result;
    }
  } catch (const BudgetAbort&) {
    budget.consumed = budget.max_nodes;
    machine.stuck("budget", "node budget exhausted during construction");
    result.status = FinderStatus::BudgetExceeded;
    result.nodes = budget.consumed - before;
    return result;
  }
  result.nodes = budget.consumed - before;
  result.status = FinderStatus::NotFound;
  if (options.exact_fallback) {
    result.nodes = 0;
    run_exact_fallback(d, pattern, budget, result);
    result.nodes = budget.consumed - before;
  }
  return result;
}

FinderResult find_cab(const Digraph& d, int a, int b, std::uint64_t max_nodes, const FinderOptions& options) {
  SearchBudget budget{max_nodes, 0};
  return find_cab(d, a, b, budget, options);
}

// ---- oriented cycles ----

CycleShape analyze_oriented_cycle(const Digraph& c) {
  const int n = c.n();
  auto bad = [](const std::string& m) { return Error(ErrorKind::BadParams, "not an oriented cycle: " + m); };
  if (n < 2) throw bad("fewer than two vertices");
  if (static_cast<int>(c.arc_count()) != n) throw bad("arc count differs from vertex count");
  std::vector<VertexList> nbr(n);
  for (auto [u, v] : c.arcs()) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v)
    if (nbr[v].size() != 2) throw bad("vertex " + std::to_string(v) + " does not have degree two");
  CycleShape shape;
  Vertex start = 0;
  for (Vertex v = 0; v < n; ++v)
    if (c.out_degree(v) == 2) {
      start = v;
      ++shape.sources;
    }
  shape.directed = shape.sources == 0;
  // Walk the underlying cycle; the first step follows an out-arc of the start.
  shape.traversal = {start};
  Vertex prev = -1, cur = start;
  Vertex first = c.out(start).front();
  for (int step = 0; step < n; ++step) {
    Vertex next;
    if (step == 0) {
      next = first;
    } else if (n == 2) {
      next = start;
    } else {
      next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
    }
    if (step + 1 < n) {
      if (next == start) throw bad("underlying graph is disconnected");
      shape.traversal.push_back(next);
    } else if (next != start) {
      throw bad("traversal does not close");
    }
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(std::set<Vertex>(shape.traversal.begin(), shape.traversal.end()).size()) != n)
    throw bad("underlying graph is disconnected");
  if (!shape.directed) {
    bool forward = true;
    int run = 0;
    for (int i = 0; i < n; ++i) {
      Vertex x = shape.traversal[i], y = shape.traversal[(i + 1) % n];
      bool f = c.has_arc(x, y);
      if (i > 0 && f != forward) {
        shape.block_lengths.push_back(run);
        run = 0;
      }
      forward = f;
      ++run;
    }
    shape.block_lengths.push_back(run);
  } else {
    shape.block_lengths = {n};
  }
  return shape;
}

namespace {

// Concatenations of certificate paths along each pattern dipath from `from` to `to`
// whose inner vertices have in- and out-degree one.
std::vector<Dipath> runs_between(const SubdivisionCertificate& cert, const Digraph& pattern, Vertex from, Vertex to) {
  std::map<Arc, const Dipath*> by_arc;
  for (const auto& cp : cert.paths) by_arc[{cp.from, cp.to}] = &cp.path;
  std::vector<Dipath> runs;
  for (Vertex first : pattern.out(from)) {
    Dipath run = Dipath::single(cert.branch[from]);
    Vertex prev = from, cur = first;
    for (;;) {
      run = run.then(*by_arc.at({prev, cur}));
      if (cur == to) {
        runs.push_back(run);
        break;
      }
      if (pattern.in_degree(cur) != 1 || pattern.out_degree(cur) != 1) break;
      prev = cur;
      cur = pattern.out(cur).front();
    }
  }
  return runs;
}

Dipath host_run(const SubdivisionCertificate& cert, const Digraph& pattern, Vertex from, Vertex to) {
  auto runs = runs_between(cert, pattern, from, to);
  if (runs.size() != 1) broken("pattern has no unique run between the requested branch vertices");
  return runs.front();
}

// Pattern-vertex chain of block i of the shape, oriented along its arcs.
VertexList block_chain(const CycleShape& shape, int block) {
  const int n = static_cast<int>(shape.traversal.size());
  int offset = 0;
  for (int i = 0; i < block; ++i) offset += shape.block_lengths[i];
  VertexList chain;
  for (int i = 0; i <= shape.block_lengths[block]; ++i) chain.push_back(shape.traversal[(offset + i) % n]);
  if (block % 2 == 1) std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

namespace {

// Depth-first walk around a prospective host cycle starting at its lowest-id source
// (lowest-id vertex for directed cycles).
// Each pattern block needs a host block at least as long, in the same cyclic order.
class CycleSearch {
 public:
  CycleSearch(const Digraph& d, std::vector<int> blocks, SearchBudget& budget)
      : d_(d), blocks_(std::move(blocks)), budget_(budget), used_(d.n(), 0), seen_(d.n(), 0) {
    suffix_.assign(blocks_.size() + 1, 0);
    for (int i = static_cast<int>(blocks_.size()) - 1; i >= 0; --i) suffix_[i] = suffix_[i + 1] + blocks_[i];
  }

  // Host vertices in traversal order and the indices at which blocks end.
  std::optional<std::pair<VertexList, std::vector<int>>> run() {
    for (Vertex s = 0; s < d_.n(); ++s) {
      if (d_.out_degree(s) < (directed() ? 1 : 2)) continue;
      start_ = s;
      path_ = {s};
      turns_.clear();
      used_[s] = 1;
      bool found = extend(0, 0);
      used_[s] = 0;
      if (found) return std::make_pair(path_, turns_);
    }
    return std::nullopt;
  }

 private:
  bool directed() const { return blocks_.size() == 1; }

  // Can `from` still reach the start through unused vertices, ignoring directions?
  bool can_close(Vertex from) {
    ++stamp_;
    std::vector<Vertex> stack{from};
    seen_[from] = stamp_;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const VertexList* nb : {&d_.out(x), &d_.in(x)})
        for (Vertex y : *nb) {
          if (y == start_) return true;
          if (used_[y] || seen_[y] == stamp_ || (directed() && y < start_)) continue;
          seen_[y] = stamp_;
          stack.push_back(y);
        }
    }
    return false;
  }

  bool extend(int block, int len) {
    if (++budget_.consumed > budget_.max_nodes) throw BudgetAbort{};
    const Vertex cur = path_.back();
    const int last = static_cast<int>(blocks_.size()) - 1;
    const int still_needed = std::max(0, blocks_[block] - len) + suffix_[block + 1];
    if (still_needed > d_.n() - static_cast<int>(path_.size()) + 1) return false;
    if (path_.size() > 1 && !can_close(cur)) return false;
    const bool forward = block % 2 == 0;
    for (Vertex w : forward ? d_.out(cur) : d_.in(cur)) {
      if (w == start_) {
        if (block == last && len + 1 >= blocks_[block] && path_.size() > 1) {
          turns_.push_back(static_cast<int>(path_.size()));
          return true;
        }
        continue;
      }
      if (used_[w] || (directed() && w < start_)) continue;
      used_[w] = 1;
      path_.push_back(w);
      if (extend(block, len + 1)) return true;
      path_.pop_back();
      used_[w] = 0;
    }
    // Turn at cur; a turn from a backward block makes cur a source, which must exceed the start.
    if (block < last && len >= blocks_[block] && (forward || cur > start_)) {
      turns_.push_back(static_cast<int>(path_.size()) - 1);
      if (extend(block + 1, 0)) return true;
      turns_.pop_back();
    }
    return false;
  }

  const Digraph& d_;
  std::vector<int> blocks_;
  SearchBudget& budget_;
  std::vector<char> used_;
  std::vector<int> seen_;
  int stamp_ = 0;
  std::vector<int> suffix_;
  Vertex start_ = -1;
  VertexList path_;
  std::vector<int> turns_;
};

}  // namespace

SearchResult search_oriented_cycle(const Digraph& d, const Digraph& cycle, SearchBudget& budget) {
  const CycleShape shape = analyze_oriented_cycle(cycle);
  const std::uint64_t before = budget.consumed;
  SearchResult result;
  const int blocks = static_cast<int>(shape.block_lengths.size());
  try {
    // Rotations by an even offset keep a source first; the search covers both traversal senses.
    std::set<std::vector<int>> tried;
    for (int r = 0; r < blocks; r += (shape.directed ? 1 : 2)) {
      std::vector<int> rotated(blocks);
      for (int j = 0; j < blocks; ++j) rotated[j] = shape.block_lengths[(j + r) % blocks];
      if (!tried.insert(rotated).second) continue;
      auto hit = CycleSearch(d, rotated, budget).run();
      if (!hit) continue;
      const auto& [walk, turns] = *hit;
      VertexList closed = walk;
      closed.push_back(walk.front());
      SubdivisionCertificate cert;
      cert.branch.assign(cycle.n(), -1);
      int from = 0;
      for (int j = 0; j < blocks; ++j) {
        const int to = turns[j];
        Dipath piece(VertexList(closed.begin() + from, closed.begin() + to + 1));
        if (j % 2) piece = piece.reversed();
        place_pattern_path(cert, block_chain(shape, (j + r) % blocks), piece);
        from = to;
      }
      result.status = SearchStatus::Found;
      result.certificate = std::move(cert);
      break;
    }
  } catch (const BudgetAbort&) {
    result.status = SearchStatus::BudgetExceeded;
  }
  result.nodes = budget.consumed - before;
  return result;
}

FinderResult find_oriented_cycle_subdivision(const Digraph& d, const Digraph& cycle, SearchBudget& budget,
                                             const FinderOptions& options, std::uint64_t seed) {
  const CycleShape shape = analyze_oriented_cycle(cycle);
  const int len = cycle.n();
  FinderResult result;
  SubdivisionCertificate cert;
  cert.branch.assign(len, -1);

  if (shape.directed) {
    if (d.n() > 0 && min_out_degree(d) >= 1) {
      VertexList host = long_dicycle(d);
      if (static_cast<int>(host.size()) >= len) {
        host.push_back(host.front());
        VertexList chain = shape.traversal;
        chain.push_back(chain.front());
        place_pattern_path(cert, chain, Dipath(host));
        result.status = FinderStatus::Found;
        result.certificate = cert;
        result.route = "long-dicycle";
        return result;
      }
    }
    result.stuck = StuckState{"long-dicycle", "greedy cycle shorter than the pattern", 0, 0, 0, d.n(), d.arc_count()};
    if (options.exact_fallback) run_exact_fallback(d, cycle, budget, result);
    return result;
  }

  const int a = shape.sources;
  const int b = *std::max_element(shape.block_lengths.begin(), shape.block_lengths.end());
  if (a == 1) {
    const int k1 = std::max(shape.block_lengths[0], shape.block_lengths[1]);
    const int k2 = std::min(shape.block_lengths[0], shape.block_lengths[1]);
    FinderResult inner = find_two_block(d, k1, k2, budget, options);
    result = inner;
    result.certificate.reset();
    if (inner.status != FinderStatus::Found) return result;
    // Longer host run realizes the longer block; both stay long enough.
    std::vector<Dipath> runs = runs_between(*inner.certificate, pattern_two_block(k1, k2), 0, 1);
    if (runs.size() != 2) broken("two-block certificate must have two runs");
    if (runs[0].length() < runs[1].length()) std::swap(runs[0], runs[1]);
    const bool first_is_long = shape.block_lengths[0] >= shape.block_lengths[1];
    place_pattern_path(cert, block_chain(shape, 0), runs[first_is_long ? 0 : 1]);
    place_pattern_path(cert, block_chain(shape, 1), runs[first_is_long ? 1 : 0]);
    result.certificate = cert;
    return result;
  }

  // Two or more sources: find C_{a,b}, preferably inside a large-girth subgraph.
  const CabParams params = CabParams::make(a, b);
  const Digraph pattern = pattern_cab(a, b);
  FinderResult inner;
  try {
    GirthReduction red = reduce_girth(d, params.k, static_cast<int>(params.g), seed);
    inner = find_cab(red.graph, a, b, budget, {false});
    if (inner.status == FinderStatus::Found) {
      inner.certificate = relabel_certificate(*inner.certificate, red.original);
    }
    inner.log.insert(inner.log.begin(), json_line({{"event", "reduce-girth"}, {"attempts", red.attempts}}));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RetriesExhausted) throw;
    inner.log.push_back(json_line({{"event", "reduce-girth"}, {"error", e.what()}}));
  }
  if (inner.status != FinderStatus::Found && inner.status != FinderStatus::BudgetExceeded) {
    FinderResult direct = find_cab(d, a, b, budget, {false});
    direct.log.insert(direct.log.begin(), inner.log.begin(), inner.log.end());
    inner = std::move(direct);
  }
  result = inner;
  result.certificate.reset();
  if (inner.status == FinderStatus::NotFound && options.exact_fallback) {
    // Shorter blocks than b may still fit where C_{a,b} does not, so decide on the cycle itself.
    run_exact_fallback(d, cycle, budget, result);
    return result;
  }
  if (inner.status != FinderStatus::Found) return result;
  // Blocks alternate forward/backward; C_{a,b} runs in the matching cyclic order are
  // s_0->t_0, s_{a-1}->t_0, s_{a-1}->t_{a-1}, s_{a-2}->t_{a-1}, ...
  const int blocks = static_cast<int>(shape.block_lengths.size());
  for (int i = 0; i < blocks; ++i) {
    const int jj = i / 2;
    const int sink = (a - jj) % a;
    const int source = i % 2 == 0 ? sink : (sink - 1 + a) % a;
    Dipath run = host_run(*inner.certificate, pattern, source, a + sink);
    place_pattern_path(cert, block_chain(shape, i), run);
  }
  result.certificate = cert;
  return result;
}

}  // namespace subdiv
