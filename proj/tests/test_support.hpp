#pragma once

// Independent brute-force reference implementations and random generators for tests.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "subdiv/digraph.hpp"

namespace subdiv::ref {

inline Digraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) arcs.emplace_back(u, v);
  return Digraph(n, arcs);
}

// Every vertex gets exactly k distinct random out-neighbours.
inline Digraph random_out_regular(int n, int k, std::mt19937_64& rng) {
  std::vector<Arc> arcs;
  std::vector<int> others;
  for (int u = 0; u < n; ++u) {
    others.clear();
    for (int v = 0; v < n; ++v)
      if (v != u) others.push_back(v);
    std::shuffle(others.begin(), others.end(), rng);
    for (int i = 0; i < k; ++i) arcs.emplace_back(u, others[i]);
  }
  return Digraph(n, arcs);
}

// Transitive closure by repeated relaxation (Warshall).
inline std::vector<std::vector<char>> closure(int n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) r[v][v] = 1;
  for (auto [u, v] : arcs) r[u][v] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (r[i][k])
        for (int j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

inline bool brute_strong(int n, const std::vector<Arc>& arcs) {
  auto r = closure(n, arcs);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!r[i][j]) return false;
  return true;
}

// Smallest number of arcs whose removal destroys strong connectivity.
inline int brute_arc_connectivity(const Digraph& d) {
  auto arcs = d.arcs();
  const int m = static_cast<int>(arcs.size());
  for (int size = 0; size <= m; ++size) {
    std::vector<int> pick(size);
    std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
      if (depth == size) {
        std::vector<Arc> rest;
        for (int i = 0; i < m; ++i)
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) rest.push_back(arcs[i]);
        return !brute_strong(d.n(), rest);
      }
      for (int i = start; i < m; ++i) {
        pick[depth] = i;
        if (rec(i + 1, depth + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return size;
  }
  return m;
}

// All simple u->v dipaths.
inline std::vector<VertexList> all_simple_paths(const Digraph& d, Vertex u, Vertex v) {
  std::vector<VertexList> out;
  VertexList cur{u};
  std::vector<char> on(d.n(), 0);
  on[u] = 1;
  std::function<void(Vertex)> rec = [&](Vertex x) {
    if (x == v) {
      out.push_back(cur);
      return;
    }
    for (Vertex w : d.out(x)) {
      if (on[w]) continue;
      on[w] = 1;
      cur.push_back(w);
      rec(w);
      cur.pop_back();
      on[w] = 0;
    }
  };
  rec(u);
  return out;
}

// Shortest cycle length by brute-force enumeration of simple cycles; 0 if acyclic.
inline int brute_girth(const Digraph& d) {
  int best = 0;
  for (Vertex s = 0; s < d.n(); ++s)
    for (Vertex w : d.out(s))
      for (const auto& p : all_simple_paths(d, w, s)) {
        int len = static_cast<int>(p.size());
        if (best == 0 || len < best) best = len;
      }
  return best;
}

inline bool reaches_avoiding(const Digraph& d, Vertex u, Vertex v, const std::set<Vertex>& removed) {
  std::vector<Arc> arcs;
  for (auto a : d.arcs())
    if (!removed.count(a.first) && !removed.count(a.second)) arcs.push_back(a);
  if (removed.count(u) || removed.count(v)) return false;
  return closure(d.n(), arcs)[u][v];
}

}  // namespace subdiv::ref
