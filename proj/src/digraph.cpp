#include "subdiv/digraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace subdiv {

namespace {

void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " outside 0.." +
                                                 std::to_string(n - 1));
  }
}

}  // namespace

Digraph::Digraph(int n) : out_(n), in_(n) {
  if (n < 0) throw Error(ErrorKind::VertexOutOfRange, "negative vertex count");
}

Digraph::Digraph(int n, const std::vector<Arc>& arcs) : Digraph(n) {
  for (auto [u, v] : arcs) {
    check_vertex(n, u);
    check_vertex(n, v);
    if (u == v) throw Error(ErrorKind::LoopArc, "loop at " + std::to_string(u));
    out_[u].push_back(v);
  }
  for (Vertex u = 0; u < n; ++u) {
    auto& o = out_[u];
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    arcs_ += o.size();
    for (Vertex v : o) in_[v].push_back(u);
  }
  // in-lists are filled in increasing tail order, hence already sorted
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(arcs_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : out_[u]) result.emplace_back(u, v);
  return result;
}

Digraph Digraph::transpose() const {
  std::vector<Arc> rev;
  rev.reserve(arcs_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : out_[u]) rev.emplace_back(v, u);
  return Digraph(n(), rev);
}

Digraph Digraph::induced(const VertexList& keep) const {
  std::vector<int> pos(n(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) pos[keep[i]] = i;
  std::vector<Arc> sub;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i)
    for (Vertex v : out_[keep[i]])
      if (pos[v] >= 0) sub.emplace_back(i, pos[v]);
  return Digraph(static_cast<int>(keep.size()), sub);
}

DigraphBuilder::DigraphBuilder(int n) : out_(n) {}

DigraphBuilder::DigraphBuilder(const Digraph& d) : out_(d.n()) {
  for (Vertex u = 0; u < d.n(); ++u) out_[u] = d.out(u);
}

Vertex DigraphBuilder::add_vertex() {
  out_.emplace_back();
  return n() - 1;
}

void DigraphBuilder::add_arc(Vertex u, Vertex v) {
  check_vertex(n(), u);
  check_vertex(n(), v);
  if (u == v) throw Error(ErrorKind::LoopArc, "loop at " + std::to_string(u));
  auto& o = out_[u];
  auto it = std::lower_bound(o.begin(), o.end(), v);
  if (it == o.end() || *it != v) o.insert(it, v);
}

void DigraphBuilder::remove_arc(Vertex u, Vertex v) {
  auto& o = out_[u];
  auto it = std::lower_bound(o.begin(), o.end(), v);
  if (it != o.end() && *it == v) o.erase(it);
}

bool DigraphBuilder::has_arc(Vertex u, Vertex v) const {
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

Digraph DigraphBuilder::build() const {
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : out_[u]) arcs.emplace_back(u, v);
  return Digraph(n(), arcs);
}

// ---- Dipath ----

bool Dipath::contains(Vertex v) const { return index_of(v) >= 0; }

int Dipath::index_of(Vertex v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

Dipath Dipath::sub(Vertex x, Vertex y) const {
  int i = index_of(x), j = index_of(y);
  if (i < 0 || j < 0 || i > j)
    throw Error(ErrorKind::InvariantBroken, "subpath endpoints not in order on path");
  return Dipath(VertexList(vertices.begin() + i, vertices.begin() + j + 1));
}

Dipath Dipath::reversed() const { return Dipath(VertexList(vertices.rbegin(), vertices.rend())); }

Dipath Dipath::then(const Dipath& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  if (last() != other.first())
    throw Error(ErrorKind::InvariantBroken, "concatenation endpoints differ: " +
                                                std::to_string(last()) + " vs " +
                                                std::to_string(other.first()));
  VertexList vs = vertices;
  vs.insert(vs.end(), other.vertices.begin() + 1, other.vertices.end());
  return Dipath(std::move(vs));
}

Dipath Dipath::then_vertex(Vertex v) const {
  VertexList vs = vertices;
  vs.push_back(v);
  return Dipath(std::move(vs));
}

bool Dipath::distinct() const {
  VertexList s = vertices;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool Dipath::valid_in(const Digraph& d) const {
  if (vertices.empty()) return false;
  for (Vertex v : vertices)
    if (!d.contains(v)) return false;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (!d.has_arc(vertices[i], vertices[i + 1])) return false;
  return distinct();
}

// ---- degrees ----

namespace {
template <typename F>
int degree_extreme(const Digraph& d, F pick, bool want_min) {
  if (d.n() == 0) throw Error(ErrorKind::EmptyGraph, "degree of empty digraph");
  int best = pick(0);
  for (Vertex v = 1; v < d.n(); ++v) best = want_min ? std::min(best, pick(v)) : std::max(best, pick(v));
  return best;
}
}  // namespace

int min_out_degree(const Digraph& d) {
  return degree_extreme(d, [&](Vertex v) { return d.out_degree(v); }, true);
}
int max_out_degree(const Digraph& d) {
  return degree_extreme(d, [&](Vertex v) { return d.out_degree(v); }, false);
}
int min_in_degree(const Digraph& d) {
  return degree_extreme(d, [&](Vertex v) { return d.in_degree(v); }, true);
}
int max_in_degree(const Digraph& d) {
  return degree_extreme(d, [&](Vertex v) { return d.in_degree(v); }, false);
}

// ---- cycles and reachability ----

std::optional<VertexList> shortest_cycle(const Digraph& d) {
  const int n = d.n();
  std::optional<VertexList> best;
  std::vector<int> dist(n), parent(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.assign(1, s);
    int closing = -1;
    for (std::size_t head = 0; head < queue.size() && closing < 0; ++head) {
      Vertex u = queue[head];
      if (best && dist[u] + 1 >= static_cast<int>(best->size())) break;
      for (Vertex v : d.out(u)) {
        if (v == s) {
          closing = u;
          break;
        }
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (closing >= 0) {
      VertexList cyc;
      for (Vertex x = closing; x != s; x = parent[x]) cyc.push_back(x);
      cyc.push_back(s);
      std::reverse(cyc.begin(), cyc.end());
      if (!best || cyc.size() < best->size()) best = std::move(cyc);
      if (best->size() == 2) break;
    }
  }
  return best;
}

std::optional<int> directed_girth(const Digraph& d) {
  auto c = shortest_cycle(d);
  if (!c) return std::nullopt;
  return static_cast<int>(c->size());
}

std::vector<VertexList> strong_components(const Digraph& d) {
  // Iterative Tarjan; components pop out in reverse topological order.
  const int n = d.n();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<VertexList> comps;
  std::vector<std::pair<Vertex, std::size_t>> call;
  int counter = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [u, it] = call.back();
      if (it < d.out(u).size()) {
        Vertex v = d.out(u)[it++];
        if (index[v] < 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          call.emplace_back(v, 0);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      Vertex done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        VertexList comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

bool is_strongly_connected(const Digraph& d) {
  if (d.n() == 0) return false;
  auto fwd = reachable(d, {0});
  auto bwd = reachable(d.transpose(), {0});
  for (Vertex v = 0; v < d.n(); ++v)
    if (!fwd[v] || !bwd[v]) return false;
  return true;
}

std::vector<char> reachable(const Digraph& d, const VertexList& sources,
                            const std::vector<char>* blocked) {
  std::vector<char> seen(d.n(), 0);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex v : d.out(queue[head])) {
      if (seen[v] || (blocked && (*blocked)[v])) continue;
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  return seen;
}

std::optional<Dipath> bfs_path(const Digraph& d, Vertex s, const std::vector<char>& target,
                               const std::vector<char>* blocked) {
  if (target[s]) return Dipath::single(s);
  std::vector<int> parent(d.n(), -2);
  parent[s] = -1;
  std::vector<Vertex> queue{s};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex v : d.out(u)) {
      if (parent[v] != -2) continue;
      if (target[v]) {
        VertexList vs{v};
        for (Vertex x = u; x != -1; x = parent[x]) vs.push_back(x);
        std::reverse(vs.begin(), vs.end());
        return Dipath(std::move(vs));
      }
      if (blocked && (*blocked)[v]) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

std::optional<Dipath> bfs_path(const Digraph& d, Vertex s, Vertex t,
                               const std::vector<char>* blocked) {
  std::vector<char> target(d.n(), 0);
  target[t] = 1;
  return bfs_path(d, s, target, blocked);
}

// ---- generators ----

Digraph bioriented_clique(int k) {
  std::vector<Arc> arcs;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v)
      if (u != v) arcs.emplace_back(u, v);
  return Digraph(k, arcs);
}

Digraph bioriented_star(int leaves) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= leaves; ++i) {
    arcs.emplace_back(0, i);
    arcs.emplace_back(i, 0);
  }
  return Digraph(leaves + 1, arcs);
}

Digraph bioriented_path(int length) {
  std::vector<Arc> arcs;
  for (int i = 0; i < length; ++i) {
    arcs.emplace_back(i, i + 1);
    arcs.emplace_back(i + 1, i);
  }
  return Digraph(length + 1, arcs);
}

Digraph transitive_tournament(int k) {
  std::vector<Arc> arcs;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) arcs.emplace_back(u, v);
  return Digraph(k, arcs);
}

Digraph k3_minus_e() {
  // missing arc is (2,0); vertex 2 has out-degree 1
  return Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}});
}

Digraph directed_cycle(int length) {
  if (length < 2) throw Error(ErrorKind::DegeneratePattern, "directed cycle needs length >= 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < length; ++i) arcs.emplace_back(i, (i + 1) % length);
  return Digraph(length, arcs);
}

Digraph directed_path(int length) {
  std::vector<Arc> arcs;
  for (int i = 0; i < length; ++i) arcs.emplace_back(i, i + 1);
  return Digraph(length + 1, arcs);
}

Digraph pattern_cab(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorKind::BadParams, "pattern_cab needs a,b >= 1");
  if (a == 1 && b == 1)
    throw Error(ErrorKind::DegeneratePattern, "a=b=1 would need two parallel arcs");
  std::vector<Arc> arcs;
  int next = 2 * a;
  auto add_path = [&](Vertex from, Vertex to) {
    Vertex cur = from;
    for (int step = 1; step < b; ++step) {
      arcs.emplace_back(cur, next);
      cur = next++;
    }
    arcs.emplace_back(cur, to);
  };
  for (int i = 0; i < a; ++i) {
    add_path(i, a + i);
    add_path(i, a + (i + 1) % a);
  }
  return Digraph(2 * a * b, arcs);
}

Digraph pattern_two_block(int k1, int k2) {
  if (k2 < 1 || k1 < k2) throw Error(ErrorKind::BadParams, "pattern_two_block needs k1 >= k2 >= 1");
  if (k1 == 1) throw Error(ErrorKind::DegeneratePattern, "C(1,1) would need two parallel arcs");
  std::vector<Arc> arcs;
  int next = 2;
  for (int len : {k1, k2}) {
    Vertex cur = 0;
    for (int step = 1; step < len; ++step) {
      arcs.emplace_back(cur, next);
      cur = next++;
    }
    arcs.emplace_back(cur, 1);
  }
  return Digraph(k1 + k2, arcs);
}

// ---- text formats ----

Digraph read_edge_list(std::istream& in) {
  std::string line;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_content_line(line)) throw Error(ErrorKind::ParseError, "missing header line");
  long long n = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
      throw Error(ErrorKind::ParseError, "header must be 'n m', got '" + line + "'");
  }
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(line))
      throw Error(ErrorKind::ParseError, "expected " + std::to_string(m) + " arcs, found " +
                                             std::to_string(i));
    std::istringstream ls(line);
    long long u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw Error(ErrorKind::ParseError, "bad arc line '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorKind::ParseError, "arc endpoint out of range in '" + line + "'");
    if (u == v) throw Error(ErrorKind::ParseError, "loop in '" + line + "'");
    arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_content_line(line)) throw Error(ErrorKind::ParseError, "trailing content after arcs");
  return Digraph(static_cast<int>(n), arcs);
}

Digraph read_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_edge_list(f);
}

void write_edge_list(std::ostream& out, const Digraph& d) {
  out << d.n() << ' ' << d.arc_count() << '\n';
  for (auto [u, v] : d.arcs()) out << u << ' ' << v << '\n';
}

std::string to_dot(const Digraph& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (Vertex v = 0; v < d.n(); ++v) os << "  " << v << ";\n";
  for (auto [u, v] : d.arcs()) os << "  " << u << " -> " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace subdiv
