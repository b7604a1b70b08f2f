#include "subdiv/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace subdiv {

namespace {

struct BudgetAbort {};

class SubdivisionSearch {
 public:
  SubdivisionSearch(const Digraph& host, const Digraph& pattern, SearchBudget& budget)
      : d_(host), f_(pattern), budget_(budget) {}

  SearchStatus run(std::optional<SubdivisionCertificate>& out) {
    if (f_.n() == 0) {
      out = SubdivisionCertificate{};
      return SearchStatus::Found;
    }
    if (d_.n() < f_.n() || d_.arc_count() < f_.arc_count()) return SearchStatus::None;
    prepare();
    try {
      if (assign(0)) {
        out = certificate();
        return SearchStatus::Found;
      }
    } catch (const BudgetAbort&) {
      return SearchStatus::BudgetExceeded;
    }
    return SearchStatus::None;
  }

 private:
  const Digraph& d_;
  const Digraph& f_;
  SearchBudget& budget_;

  VertexList order_;
  std::vector<int> order_pos_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> arcs_after_;  // per order index: arcs closed by that assignment
  std::vector<std::vector<int>> out_arcs_, in_arcs_;  // per pattern vertex: arc indices
  std::vector<VertexList> symmetries_;

  VertexList phi_;
  std::vector<int> owner_;
  std::vector<char> used_;
  std::vector<char> routed_;
  std::vector<Dipath> route_;
  std::vector<int> dist_;
  VertexList walk_;

  void tick() {
    if (++budget_.consumed > budget_.max_nodes) throw BudgetAbort{};
  }

  void prepare() {
    const int nf = f_.n();
    arcs_ = f_.arcs();
    out_arcs_.assign(nf, {});
    in_arcs_.assign(nf, {});
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      out_arcs_[arcs_[i].first].push_back(i);
      in_arcs_[arcs_[i].second].push_back(i);
    }
    // Greedy connectivity order: each next vertex has the most arcs into the placed prefix.
    std::vector<char> placed(nf, 0);
    order_pos_.assign(nf, -1);
    for (int step = 0; step < nf; ++step) {
      int best = -1;
      std::tuple<int, int, int> best_key{-1, -1, 0};
      for (Vertex x = 0; x < nf; ++x) {
        if (placed[x]) continue;
        int links = 0;
        for (Vertex y : f_.out(x)) links += placed[y];
        for (Vertex y : f_.in(x)) links += placed[y];
        std::tuple<int, int, int> key{links, f_.out_degree(x) + f_.in_degree(x), -x};
        if (best < 0 || key > best_key) {
          best = x;
          best_key = key;
        }
      }
      placed[best] = 1;
      order_pos_[best] = step;
      order_.push_back(best);
    }
    arcs_after_.assign(nf, {});
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      auto [x, y] = arcs_[i];
      arcs_after_[std::max(order_pos_[x], order_pos_[y])].push_back(i);
    }
    if (nf <= 8) {
      for (auto& perm : automorphisms(f_)) {
        bool identity = true;
        for (Vertex x = 0; x < nf; ++x) identity &= perm[x] == x;
        if (!identity) symmetries_.push_back(perm);
      }
    }
    phi_.assign(nf, -1);
    owner_.assign(d_.n(), -1);
    used_.assign(d_.n(), 0);
    routed_.assign(arcs_.size(), 0);
    route_.assign(arcs_.size(), Dipath{});
    dist_.assign(d_.n(), -1);
  }

  SubdivisionCertificate certificate() const {
    SubdivisionCertificate cert;
    cert.branch = phi_;
    for (std::size_t i = 0; i < arcs_.size(); ++i)
      cert.paths.push_back({arcs_[i].first, arcs_[i].second, route_[i]});
    return cert;
  }

  // Lex-leader test over the assignment order: reject phi if some automorphism image is smaller.
  bool symmetry_ok() const {
    for (const auto& sigma : symmetries_) {
      for (Vertex x : order_) {
        Vertex mine = phi_[x];
        Vertex theirs = phi_[sigma[x]];
        if (mine < 0 || theirs < 0) break;
        if (theirs < mine) return false;
        if (theirs > mine) break;
      }
    }
    return true;
  }

  bool feasible() {
    for (Vertex x = 0; x < f_.n(); ++x) {
      const Vertex hx = phi_[x];
      if (hx < 0) continue;
      int need_out = 0, need_in = 0;
      for (int a : out_arcs_[x]) need_out += !routed_[a];
      for (int a : in_arcs_[x]) need_in += !routed_[a];
      if (need_out > 0) {
        int avail = 0;
        for (Vertex w : d_.out(hx)) {
          if (!used_[w]) ++avail;
          else if (owner_[w] >= 0 && has_open_arc(x, owner_[w])) ++avail;
        }
        if (avail < need_out) return false;
      }
      if (need_in > 0) {
        int avail = 0;
        for (Vertex w : d_.in(hx)) {
          if (!used_[w]) ++avail;
          else if (owner_[w] >= 0 && has_open_arc(owner_[w], x)) ++avail;
        }
        if (avail < need_in) return false;
      }
    }
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (routed_[a]) continue;
      Vertex hx = phi_[arcs_[a].first], hy = phi_[arcs_[a].second];
      if (hx < 0 || hy < 0) continue;
      if (!reaches_through_free(hx, hy)) return false;
    }
    return unmapped_have_hosts() && digon_cycles_fit();
  }

  // Every unmapped pattern vertex needs a free host reachable from the images of its mapped
  // in-neighbours and reaching the images of its mapped out-neighbours.
  bool unmapped_have_hosts() {
    const int nf = f_.n();
    std::vector<std::vector<char>> fwd(nf), bwd(nf);
    int unmapped = 0;
    std::vector<char> any_candidate(d_.n(), 0);
    for (Vertex y = 0; y < nf; ++y) {
      if (phi_[y] >= 0) continue;
      ++unmapped;
      bool found = false;
      for (Vertex h = 0; h < d_.n(); ++h) {
        if (used_[h] || d_.out_degree(h) < f_.out_degree(y) || d_.in_degree(h) < f_.in_degree(y))
          continue;
        bool ok = true;
        for (Vertex x : f_.in(y)) {
          if (phi_[x] < 0) continue;
          if (fwd[x].empty()) fwd[x] = free_reach(phi_[x], false);
          if (!fwd[x][h]) {
            ok = false;
            break;
          }
        }
        for (Vertex x : f_.out(y)) {
          if (!ok) break;
          if (phi_[x] < 0) continue;
          if (bwd[x].empty()) bwd[x] = free_reach(phi_[x], true);
          if (!bwd[x][h]) ok = false;
        }
        if (ok) {
          found = true;
          any_candidate[h] = 1;
        }
      }
      if (!found) return false;
    }
    int candidates = 0;
    for (char c : any_candidate) candidates += c;
    return candidates >= unmapped;
  }

  std::vector<char> free_reach(Vertex s, bool backwards) {
    tick();
    std::vector<char> seen(d_.n(), 0);
    walk_.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < walk_.size(); ++head) {
      const auto& nb = backwards ? d_.in(walk_[head]) : d_.out(walk_[head]);
      for (Vertex w : nb) {
        if (seen[w] || used_[w]) continue;
        seen[w] = 1;
        walk_.push_back(w);
      }
    }
    return seen;
  }

  // Pattern digons {x,y} with both arcs still open need pairwise internally disjoint closed
  // walks through the image of x; a vertex-capacitated flow bounds how many can coexist.
  bool digon_cycles_fit() {
    for (Vertex x = 0; x < f_.n(); ++x) {
      if (phi_[x] < 0) continue;
      int need = 0;
      std::vector<char> partner_host(d_.n(), 0);
      for (int a : out_arcs_[x]) {
        if (routed_[a]) continue;
        Vertex y = arcs_[a].second;
        for (int b : in_arcs_[x]) {
          if (arcs_[b].first == y && !routed_[b]) {
            ++need;
            if (phi_[y] >= 0) partner_host[phi_[y]] = 1;
          }
        }
      }
      if (need <= 1) continue;
      if (cycle_flow(phi_[x], partner_host, need) < need) return false;
    }
    return true;
  }

  // Max number (capped) of cycles through c that are internally disjoint, using free vertices
  // and the given partner hosts, each with unit capacity.
  int cycle_flow(Vertex c, const std::vector<char>& partner_host, int cap) {
    tick();
    const int n = d_.n();
    // node 2v = v_in, 2v+1 = v_out; the source is c_out and the sink is c_in
    std::vector<std::vector<int>> adj(2 * n);
    struct E { int to, cap; };
    std::vector<E> edges;
    auto add = [&](int a, int b) {
      adj[a].push_back(static_cast<int>(edges.size()));
      edges.push_back({b, 1});
      adj[b].push_back(static_cast<int>(edges.size()));
      edges.push_back({a, 0});
    };
    auto usable = [&](Vertex v) { return !used_[v] || partner_host[v]; };
    for (Vertex v = 0; v < n; ++v)
      if (v != c && usable(v)) add(2 * v, 2 * v + 1);
    for (Vertex v = 0; v < n; ++v) {
      if (v != c && !usable(v)) continue;
      for (Vertex w : d_.out(v))
        if (w == c || usable(w)) add(2 * v + 1, 2 * w);
    }
    const int s = 2 * c + 1, t = 2 * c;
    int flow = 0;
    std::vector<int> via(2 * n);
    while (flow < cap) {
      std::fill(via.begin(), via.end(), -1);
      std::vector<int> queue{s};
      via[s] = -2;
      for (std::size_t head = 0; head < queue.size() && via[t] == -1; ++head)
        for (int e : adj[queue[head]])
          if (edges[e].cap > 0 && via[edges[e].to] == -1) {
            via[edges[e].to] = e;
            queue.push_back(edges[e].to);
          }
      if (via[t] == -1) break;
      for (int x = t; x != s; x = edges[via[x] ^ 1].to) {
        edges[via[x]].cap -= 1;
        edges[via[x] ^ 1].cap += 1;
      }
      ++flow;
    }
    return flow;
  }

  bool has_open_arc(Vertex x, Vertex y) const {
    for (int a : out_arcs_[x])
      if (arcs_[a].second == y && !routed_[a]) return true;
    return false;
  }

  bool reaches_through_free(Vertex s, Vertex t) {
    tick();
    std::vector<char> seen(d_.n(), 0);
    walk_.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < walk_.size(); ++head) {
      for (Vertex w : d_.out(walk_[head])) {
        if (w == t) return true;
        if (seen[w] || used_[w]) continue;
        seen[w] = 1;
        walk_.push_back(w);
      }
    }
    return false;
  }

  bool assign(int idx) {
    tick();
    if (idx == f_.n()) return true;
    const Vertex x = order_[idx];
    for (Vertex h = 0; h < d_.n(); ++h) {
      if (used_[h] || d_.out_degree(h) < f_.out_degree(x) || d_.in_degree(h) < f_.in_degree(x))
        continue;
      phi_[x] = h;
      owner_[h] = x;
      used_[h] = 1;
      if (symmetry_ok() && feasible() && route(idx, 0)) return true;
      phi_[x] = -1;
      owner_[h] = -1;
      used_[h] = 0;
    }
    return false;
  }

  // Route the arcs closed by assignment idx, starting with the j-th, then continue assigning.
  bool route(int idx, std::size_t j) {
    if (j == arcs_after_[idx].size()) return assign(idx + 1);
    const int a = arcs_after_[idx][j];
    const Vertex s = phi_[arcs_[a].first], t = phi_[arcs_[a].second];
    // Distances to t through free vertices bound the remaining length during enumeration.
    std::fill(dist_.begin(), dist_.end(), -1);
    dist_[t] = 0;
    walk_.assign(1, t);
    int free_count = 0;
    for (Vertex v = 0; v < d_.n(); ++v) free_count += !used_[v];
    for (std::size_t head = 0; head < walk_.size(); ++head) {
      Vertex u = walk_[head];
      for (Vertex w : d_.in(u)) {
        if (dist_[w] >= 0) continue;
        if (w != s && used_[w]) continue;
        dist_[w] = dist_[u] + 1;
        if (w != s) walk_.push_back(w);
      }
    }
    if (dist_[s] < 0) return false;
    std::vector<int> dist = dist_;
    for (int len = dist[s]; len <= free_count + 1; ++len) {
      VertexList path{s};
      if (extend(idx, j, a, path, t, len, dist)) return true;
    }
    return false;
  }

  bool extend(int idx, std::size_t j, int a, VertexList& path, Vertex t, int remaining,
              const std::vector<int>& dist) {
    tick();
    const Vertex cur = path.back();
    if (remaining == 1) {
      if (!d_.has_arc(cur, t)) return false;
      path.push_back(t);
      route_[a] = Dipath(path);
      routed_[a] = 1;
      bool ok = feasible() && route(idx, j + 1);
      if (ok) return true;
      routed_[a] = 0;
      path.pop_back();
      return false;
    }
    for (Vertex w : d_.out(cur)) {
      if (used_[w] || dist[w] < 0 || dist[w] > remaining - 1) continue;
      used_[w] = 1;
      path.push_back(w);
      if (extend(idx, j, a, path, t, remaining - 1, dist)) return true;
      path.pop_back();
      used_[w] = 0;
    }
    return false;
  }
};

void permutations_rec(const Digraph& d, VertexList& perm, std::vector<char>& taken, int x,
                      std::vector<VertexList>& out) {
  const int n = d.n();
  if (x == n) {
    out.push_back(perm);
    return;
  }
  for (Vertex img = 0; img < n; ++img) {
    if (taken[img] || d.out_degree(img) != d.out_degree(x) || d.in_degree(img) != d.in_degree(x))
      continue;
    bool ok = true;
    for (Vertex y = 0; y < x && ok; ++y) {
      ok = d.has_arc(x, y) == d.has_arc(img, perm[y]) && d.has_arc(y, x) == d.has_arc(perm[y], img);
    }
    if (!ok) continue;
    taken[img] = 1;
    perm[x] = img;
    permutations_rec(d, perm, taken, x + 1, out);
    taken[img] = 0;
  }
}

}  // namespace

std::vector<VertexList> automorphisms(const Digraph& d) {
  std::vector<VertexList> out;
  VertexList perm(d.n(), -1);
  std::vector<char> taken(d.n(), 0);
  permutations_rec(d, perm, taken, 0, out);
  return out;
}

SearchResult contains_subdivision(const Digraph& d, const Digraph& pattern, SearchBudget& budget) {
  if (budget.max_nodes < 1) throw Error(ErrorKind::BadParams, "search budget must be positive");
  const std::uint64_t before = budget.consumed;
  SearchResult result;
  SubdivisionSearch search(d, pattern, budget);
  result.status = search.run(result.certificate);
  result.nodes = std::min(budget.consumed, budget.max_nodes) - before;
  budget.consumed = std::min(budget.consumed, budget.max_nodes);
  return result;
}

SearchResult contains_subdivision(const Digraph& d, const Digraph& pattern,
                                  std::uint64_t max_nodes) {
  SearchBudget budget{max_nodes, 0};
  return contains_subdivision(d, pattern, budget);
}

ValidationReport validate_certificate(const Digraph& d, const Digraph& pattern,
                                      const SubdivisionCertificate& cert) {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  const int nf = pattern.n();
  if (static_cast<int>(cert.branch.size()) != nf || cert.paths.size() != pattern.arc_count())
    return fail("branch arity mismatch: pattern has " + std::to_string(nf) + " vertices and " +
                std::to_string(pattern.arc_count()) + " arcs, certificate has " +
                std::to_string(cert.branch.size()) + " branch vertices and " +
                std::to_string(cert.paths.size()) + " paths");
  std::vector<int> branch_of(std::max(d.n(), 0), -1);
  for (Vertex x = 0; x < nf; ++x) {
    Vertex h = cert.branch[x];
    if (!d.contains(h)) return fail("branch vertex out of range for pattern vertex " + std::to_string(x));
    if (branch_of[h] >= 0) return fail("branch map not injective at host vertex " + std::to_string(h));
    branch_of[h] = x;
  }
  std::set<Arc> seen_arcs;
  std::vector<int> interior_owner(d.n(), -1);
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    const auto& cp = cert.paths[i];
    if (!pattern.contains(cp.from) || !pattern.contains(cp.to) || !pattern.has_arc(cp.from, cp.to))
      return fail("path " + std::to_string(i) + " does not correspond to a pattern arc");
    if (!seen_arcs.insert({cp.from, cp.to}).second)
      return fail("pattern arc (" + std::to_string(cp.from) + "," + std::to_string(cp.to) +
                  ") realized twice");
    const auto& vs = cp.path.vertices;
    if (vs.size() < 2) return fail("path " + std::to_string(i) + " has length < 1");
    if (vs.front() != cert.branch[cp.from] || vs.back() != cert.branch[cp.to])
      return fail("path " + std::to_string(i) + " endpoints do not match branch images");
    for (Vertex v : vs)
      if (!d.contains(v)) return fail("path " + std::to_string(i) + " leaves the host");
    for (std::size_t k = 0; k + 1 < vs.size(); ++k)
      if (!d.has_arc(vs[k], vs[k + 1]))
        return fail("arc absent: (" + std::to_string(vs[k]) + "," + std::to_string(vs[k + 1]) + ")");
    if (!cp.path.distinct()) return fail("path " + std::to_string(i) + " repeats a vertex");
    for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
      Vertex v = vs[k];
      if (branch_of[v] >= 0)
        return fail("internal vertex " + std::to_string(v) + " is a branch vertex");
      if (interior_owner[v] >= 0)
        return fail("internal overlap at host vertex " + std::to_string(v));
      interior_owner[v] = static_cast<int>(i);
    }
  }
  return {};
}

bool has_even_dicycle(const Digraph& d, std::uint64_t max_nodes) {
  for (Vertex u = 0; u < d.n(); ++u)
    for (Vertex v : d.out(u))
      if (d.has_arc(v, u)) return true;
  std::uint64_t nodes = 0;
  std::vector<int> comp_of(d.n(), -1);
  auto comps = strong_components(d);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (Vertex v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<char> on_path(d.n(), 0);
  // Cycles are enumerated once each, rooted at their smallest vertex.
  for (Vertex s = 0; s < d.n(); ++s) {
    bool found = false;
    auto dfs = [&](auto&& self, Vertex u, int len) -> void {
      if (found) return;
      if (++nodes > max_nodes) throw Error(ErrorKind::BudgetExceeded, "even dicycle search");
      for (Vertex w : d.out(u)) {
        if (w == s) {
          if ((len + 1) % 2 == 0) found = true;
          continue;
        }
        if (w < s || on_path[w] || comp_of[w] != comp_of[s]) continue;
        on_path[w] = 1;
        self(self, w, len + 1);
        on_path[w] = 0;
        if (found) return;
      }
    };
    on_path[s] = 1;
    dfs(dfs, s, 0);
    on_path[s] = 0;
    if (found) return true;
  }
  return false;
}

SubdivisionCertificate relabel_certificate(const SubdivisionCertificate& cert,
                                           const VertexList& host_map) {
  SubdivisionCertificate out;
  for (Vertex v : cert.branch) out.branch.push_back(host_map.at(v));
  for (const auto& cp : cert.paths) {
    VertexList vs;
    for (Vertex v : cp.path.vertices) vs.push_back(host_map.at(v));
    out.paths.push_back({cp.from, cp.to, Dipath(std::move(vs))});
  }
  return out;
}

}  // namespace subdiv

namespace subdiv {

void place_pattern_path(SubdivisionCertificate& cert, const VertexList& chain, const Dipath& host) {
  const int arcs = static_cast<int>(chain.size()) - 1;
  if (arcs < 1 || host.length() < arcs)
    throw Error(ErrorKind::InvariantBroken, "host path shorter than the pattern path it realizes");
  for (int i = 0; i <= arcs; ++i) {
    Vertex host_v = i == arcs ? host.last() : host.vertices[i];
    if (cert.branch[chain[i]] >= 0 && cert.branch[chain[i]] != host_v)
      throw Error(ErrorKind::InvariantBroken, "pattern vertex placed twice");
    cert.branch[chain[i]] = host_v;
  }
  for (int i = 0; i < arcs; ++i) {
    int end = i == arcs - 1 ? host.length() : i + 1;
    Dipath piece(VertexList(host.vertices.begin() + i, host.vertices.begin() + end + 1));
    cert.paths.push_back({chain[i], chain[i + 1], std::move(piece)});
  }
}

}  // namespace subdiv
