#include "subdiv/two_block.hpp"

#include <algorithm>

#include "json.hpp"
#include "subdiv/cab.hpp"

namespace subdiv {

namespace {

struct BudgetAbort {};

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorKind::InvariantBroken, what); }

std::string path_text(const VertexList& vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : ",") + std::to_string(v);
  return "[" + s + "]";
}

// Greedy dipath of `len` arcs from the last vertex of `path`, marking what it uses.
void grow(const Digraph& d, VertexList& path, int len, std::vector<char>& used, const char* which) {
  while (static_cast<int>(path.size()) <= len) {
    Vertex next = -1;
    for (Vertex y : d.out(path.back()))
      if (!used[y]) {
        next = y;
        break;
      }
    if (next < 0)
      throw Error(ErrorKind::StuckGreedy, std::string(which) + " stuck at step " + std::to_string(path.size()) +
                                              " with path " + path_text(path));
    used[next] = 1;
    path.push_back(next);
  }
}

// Pattern vertex chains of pattern_two_block(k1,k2): the k1 run, then the k2 run.
std::pair<VertexList, VertexList> two_block_chains(int k1, int k2) {
  VertexList first{0}, second{0};
  for (int i = 0; i < k1 - 1; ++i) first.push_back(2 + i);
  for (int i = 0; i < k2 - 1; ++i) second.push_back(1 + k1 + i);
  first.push_back(1);
  second.push_back(1);
  return {first, second};
}

SubdivisionCertificate certificate_from_pair(const Dipath& longer, const Dipath& shorter, int k1, int k2) {
  SubdivisionCertificate cert;
  cert.branch.assign(k1 + k2, -1);
  auto [c1, c2] = two_block_chains(k1, k2);
  place_pattern_path(cert, c1, longer);
  place_pattern_path(cert, c2, shorter);
  return cert;
}

class TwoBlockSearch {
 public:
  TwoBlockSearch(const Digraph& d, int k1, int k2, SearchBudget& budget, FinderResult& result)
      : d_(d), k1_(k1), k2_(k2), budget_(budget), result_(result) {}

  std::optional<SubdivisionCertificate> run() {
    if (!seed()) return std::nullopt;
    for (;;) {
      ++result_.iterations;
      const int before = P0_.length();
      if (auto cert = step()) return cert;
      if (stuck_) return std::nullopt;
      if (P0_.length() <= before) broken("good path did not grow");
      result_.log.push_back(nlohmann::json{{"event", "improve"}, {"good_path_length", P0_.length()}}.dump());
    }
  }

  std::optional<StuckState> stuck_;

 private:
  const Digraph& d_;
  const int k1_, k2_;
  SearchBudget& budget_;
  FinderResult& result_;
  Dipath P0_;
  Dipath P1_, P2_;

  void tick() {
    if (++budget_.consumed > budget_.max_nodes) throw BudgetAbort{};
  }

  void set_stuck(const std::string& phase, const std::string& detail) {
    StuckState s;
    s.phase = phase;
    s.detail = detail;
    s.chain_length = P0_.empty() ? 0 : P0_.length();
    s.live_vertices = d_.n();
    s.live_arcs = d_.arc_count();
    stuck_ = s;
    result_.log.push_back(nlohmann::json{{"event", "stuck"}, {"phase", phase}, {"detail", detail}}.dump());
  }

  std::vector<char> mark(std::initializer_list<const Dipath*> paths) const {
    std::vector<char> m(d_.n(), 0);
    for (const Dipath* p : paths)
      for (Vertex v : p->vertices) m[v] = 1;
    return m;
  }

  // BFS from `root` over unblocked vertices; parents index the search tree.
  struct Reach {
    VertexList order;
    std::vector<Vertex> parent;
    std::vector<char> seen;
    Dipath path_to(Vertex v) const {
      VertexList vs;
      for (Vertex w = v; w != -1; w = parent[w]) vs.push_back(w);
      std::reverse(vs.begin(), vs.end());
      return Dipath(std::move(vs));
    }
  };

  Reach reach(Vertex root, const std::vector<char>& blocked) {
    Reach r;
    r.parent.assign(d_.n(), -1);
    r.seen.assign(d_.n(), 0);
    r.seen[root] = 1;
    r.order.push_back(root);
    for (std::size_t h = 0; h < r.order.size(); ++h) {
      tick();
      for (Vertex y : d_.out(r.order[h]))
        if (!r.seen[y] && !blocked[y]) {
          r.seen[y] = 1;
          r.parent[y] = r.order[h];
          r.order.push_back(y);
        }
    }
    return r;
  }

  bool seed() {
    for (Vertex u = 0; u < d_.n(); ++u) {
      for (Vertex v : d_.out(u)) {
        tick();
        std::vector<char> forbidden(d_.n(), 0);
        forbidden[u] = 1;
        try {
          auto [p1, p2] = fork(d_, v, k2_ - 1, k2_ - 1, forbidden);
          P0_ = Dipath({u, v});
          P1_ = p1;
          P2_ = p2;
          result_.log.push_back(nlohmann::json{{"event", "seed"}, {"arc", {u, v}}}.dump());
          return true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::StuckGreedy) throw;
        }
      }
    }
    set_stuck("seed", "no arc starts a good path");
    return false;
  }

  // Replaces the good path by P0 + `ext`, with fresh witnesses grown inside the region
  // `inside` reachable from the end of `ext`; on failure the search is marked stuck.
  void improve(const Dipath& ext, const std::vector<char>& inside, const std::vector<char>& avoid_tail) {
    const Vertex s = ext.last();
    std::vector<char> forbidden(d_.n(), 0);
    for (Vertex v = 0; v < d_.n(); ++v) forbidden[v] = !inside[v];
    forbidden[s] = 0;
    Dipath f1, f2;
    try {
      std::tie(f1, f2) = fork(d_, s, k2_ - 1, k2_ - 2, forbidden);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StuckGreedy) throw;
      set_stuck("fork", e.what());
      return;
    }
    std::vector<char> used = avoid_tail;
    for (Vertex v : f1.vertices) used[v] = 1;
    for (Vertex v : f2.vertices) used[v] = 1;
    Vertex tail = -1;
    for (Vertex y : d_.out(f2.last()))
      if (!used[y]) {
        tail = y;
        break;
      }
    if (tail < 0) {
      set_stuck("fork-tail", "no fresh out-neighbour at " + std::to_string(f2.last()));
      return;
    }
    P0_ = P0_.then(ext);
    P1_ = f1;
    P2_ = f2.then_vertex(tail);
  }

  std::optional<SubdivisionCertificate> step() {
    const Vertex x = P0_.last();
    std::vector<int> pos(d_.n(), -1);
    for (int i = 0; i < static_cast<int>(P0_.vertices.size()); ++i) pos[P0_.vertices[i]] = i;
    auto on_p0_minus_x = [&](Vertex v) { return pos[v] >= 0 && v != x; };

    // Each witness end must reach P0 - x avoiding the other witness paths; otherwise extend.
    for (int side = 0; side < 2; ++side) {
      const Dipath& mine = side == 0 ? P1_ : P2_;
      const Vertex end = mine.last();
      std::vector<char> blocked = mark({&P1_, &P2_});
      blocked[end] = 0;
      Reach r = reach(end, blocked);
      bool hits = false;
      for (Vertex v : r.order)
        if (on_p0_minus_x(v)) hits = true;
      if (!hits) {
        improve(mine, r.seen, mark({&P0_, &mine}));
        return std::nullopt;
      }
    }

    // Farthest entry point into P0 - x from each end, avoiding P0, P1, P2 internally.
    std::vector<char> all = mark({&P0_, &P1_, &P2_});
    auto entries = [&](Vertex end, const std::vector<char>& blocked_base, Reach& r) {
      std::vector<char> blocked = blocked_base;
      blocked[end] = 0;
      r = reach(end, blocked);
      Vertex best = -1, via = -1;
      for (Vertex u : r.order)
        for (Vertex v : d_.out(u))
          if (on_p0_minus_x(v) && (best < 0 || pos[v] < pos[best])) {
            best = v;
            via = u;
          }
      return std::pair{best, via};
    };
    Reach ra, rb;
    auto [astar, avia] = entries(P1_.last(), all, ra);
    auto [bstar, bvia] = entries(P2_.last(), all, rb);
    if (astar < 0 || bstar < 0) broken("witness end lost its route into the good path");
    if (pos[astar] > pos[bstar]) {
      std::swap(P1_, P2_);
      std::swap(astar, bstar);
      std::swap(avia, bvia);
      std::swap(ra, rb);
    }
    const Dipath Pa = ra.path_to(avia).then_vertex(astar);
    const Dipath Q = P1_.then(Pa);
    const int r = std::min(Q.length(), k1_);
    const Dipath Qp(VertexList(Q.vertices.begin(), Q.vertices.begin() + r + 1));
    const Vertex y = Qp.last();

    // First ending: a far entry point of b avoiding P0, Q, P2.
    std::vector<char> blocked = mark({&P0_, &Q, &P2_});
    blocked[P2_.last()] = 0;
    Reach rs = reach(P2_.last(), blocked);
    Vertex bfar = -1, bfar_via = -1;
    for (Vertex u : rs.order)
      for (Vertex v : d_.out(u))
        if (on_p0_minus_x(v) && pos[v] >= pos[astar] && pos[v] - pos[astar] >= k1_ - r &&
            (bfar < 0 || pos[v] > pos[bfar])) {
          bfar = v;
          bfar_via = u;
        }
    if (bfar >= 0) {
      Dipath long_path = Q.then(P0_.sub(astar, bfar));
      Dipath short_path = P2_.then(rs.path_to(bfar_via).then_vertex(bfar));
      result_.log.push_back(nlohmann::json{{"event", "close"}, {"ending", "far-entry"}}.dump());
      return certificate_from_pair(long_path, short_path, k1_, k2_);
    }

    // Second ending: b reaches Q avoiding P0, Q' and P2 (except b and y).
    std::vector<char> blocked2 = mark({&P0_, &Qp, &P2_});
    blocked2[P2_.last()] = 0;
    if (pos[y] < 0) blocked2[y] = 0;
    std::vector<char> target(d_.n(), 0);
    for (Vertex v : Q.vertices)
      if (!blocked2[v]) target[v] = 1;
    target[P2_.last()] = 0;
    tick();
    if (auto Pstar = bfs_path(d_, P2_.last(), target, &blocked2)) {
      const Vertex q = Pstar->last();
      Dipath long_path = Q.sub(x, q);
      Dipath short_path = P2_.then(*Pstar);
      if (long_path.length() < k1_) broken("second ending produced a short path");
      result_.log.push_back(nlohmann::json{{"event", "close"}, {"ending", "reach-q"}}.dump());
      return certificate_from_pair(long_path, short_path, k1_, k2_);
    }
    Reach rr = reach(P2_.last(), blocked2);
    improve(P2_, rr.seen, mark({&P0_, &P2_}));
    return std::nullopt;
  }
};

}  // namespace

std::pair<Dipath, Dipath> fork(const Digraph& d, Vertex v, int l1, int l2, const std::vector<char>& forbidden) {
  if (!d.contains(v)) throw Error(ErrorKind::VertexOutOfRange, "fork root outside the digraph");
  if (l1 < 0 || l2 < 0) throw Error(ErrorKind::BadParams, "fork lengths must be non-negative");
  std::vector<char> used(d.n(), 0);
  for (Vertex u = 0; u < d.n() && u < static_cast<Vertex>(forbidden.size()); ++u) used[u] = forbidden[u];
  used[v] = 1;
  VertexList p1{v}, p2{v};
  grow(d, p1, l1, used, "first path");
  grow(d, p2, l2, used, "second path");
  return {Dipath(p1), Dipath(p2)};
}

std::pair<Dipath, Dipath> fork(const Digraph& d, Vertex v, int l1, int l2) {
  return fork(d, v, l1, l2, std::vector<char>(d.n(), 0));
}

std::optional<SubdivisionCertificate> two_block_from_long_cycle(const Digraph& d, int k) {
  if (k < 2 || d.n() == 0 || min_out_degree(d) < 1) return std::nullopt;
  // Rebuild the greedy path so the last vertex's out-neighbours can be located on it.
  VertexList cyc = long_dicycle(d);
  const Vertex vm = cyc.back();
  std::vector<int> pos(d.n(), -1);
  for (int i = 0; i < static_cast<int>(cyc.size()); ++i) pos[cyc[i]] = i;
  int latest = -1;
  for (Vertex y : d.out(vm))
    if (pos[y] >= 0 && y != vm) latest = std::max(latest, pos[y]);
  if (latest <= 0) return std::nullopt;
  VertexList longer{vm};
  longer.insert(longer.end(), cyc.begin(), cyc.begin() + latest + 1);
  Dipath lp(longer), sp({vm, cyc[latest]});
  if (lp.length() < k) return std::nullopt;
  return certificate_from_pair(lp, sp, k, 1);
}

FinderResult find_two_block(const Digraph& d, int k1, int k2, SearchBudget& budget, const FinderOptions& options) {
  if (k2 < 1 || k1 < k2) throw Error(ErrorKind::BadParams, "two blocks need k1 >= k2 >= 1");
  const Digraph pattern = pattern_two_block(k1, k2);
  FinderResult result;
  const std::uint64_t before = budget.consumed;
  std::optional<SubdivisionCertificate> cert;
  if (k2 == 1) {
    cert = two_block_from_long_cycle(d, k1);
    if (cert) result.route = "long-dicycle";
    else result.stuck = StuckState{"long-dicycle", "greedy cycle too short", 0, 0, 0, d.n(), d.arc_count()};
  } else if (d.n() > 0) {
    TwoBlockSearch search(d, k1, k2, budget, result);
    try {
      cert = search.run();
    } catch (const BudgetAbort&) {
      budget.consumed = budget.max_nodes;
      result.status = FinderStatus::BudgetExceeded;
      result.stuck = StuckState{"budget", "node budget exhausted", 0, 0, 0, d.n(), d.arc_count()};
      result.nodes = budget.consumed - before;
      return result;
    }
    if (cert) result.route = "construction";
    else result.stuck = search.stuck_;
  }
  if (cert) {
    if (auto rep = validate_certificate(d, pattern, *cert); !rep)
      broken("two-block certificate rejected: " + rep.message);
    result.status = FinderStatus::Found;
    result.certificate = std::move(cert);
    result.nodes = budget.consumed - before;
    return result;
  }
  result.status = FinderStatus::NotFound;
  if (options.exact_fallback) run_exact_fallback(d, pattern, budget, result);
  result.nodes = budget.consumed - before;
  return result;
}

FinderResult find_two_block(const Digraph& d, int k1, int k2, std::uint64_t max_nodes, const FinderOptions& options) {
  SearchBudget budget{max_nodes, 0};
  return find_two_block(d, k1, k2, budget, options);
}

}  // namespace subdiv
