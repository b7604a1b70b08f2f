#include "subdiv/k3e.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"
#include "subdiv/menger.hpp"

namespace subdiv {

namespace {

[[noreturn]] void broken(const std::string& what) { throw Error(ErrorKind::InvariantBroken, what); }

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

// Working digraph on the original id range; removed vertices are isolated and flagged dead.
struct Working {
  Digraph d;
  std::vector<char> alive;
  Vertex v0 = -1;

  long long measure() const {
    return std::count(alive.begin(), alive.end(), 1) + static_cast<long long>(d.arc_count());
  }
  VertexList live() const {
    VertexList vs;
    for (Vertex v = 0; v < d.n(); ++v)
      if (alive[v]) vs.push_back(v);
    return vs;
  }
};

Digraph keep_only(const Digraph& d, const std::vector<char>& keep) {
  std::vector<Arc> arcs;
  for (auto [u, v] : d.arcs())
    if (keep[u] && keep[v]) arcs.emplace_back(u, v);
  return Digraph(d.n(), arcs);
}

// Arcs of the subdivision built from the two fan paths.
std::vector<Arc> fan_certificate(const Dipath& to_v0, const Dipath& to_z0, Vertex v0, Vertex v1, Vertex z0) {
  std::vector<Arc> arcs;
  for (const Dipath* p : {&to_v0, &to_z0})
    for (std::size_t i = 0; i + 1 < p->vertices.size(); ++i) arcs.emplace_back(p->vertices[i], p->vertices[i + 1]);
  arcs.emplace_back(v0, v1);
  arcs.emplace_back(z0, v0);
  arcs.emplace_back(z0, v1);
  return arcs;
}

}  // namespace

std::string reduction_step_json(const ReductionStep& step) {
  nlohmann::json j = std::visit(
      overloaded{
          [](const TrimArcs& s) { return nlohmann::json{{"step", "trim"}, {"removed", s.removed}}; },
          [](const RestrictToSink& s) {
            return nlohmann::json{{"step", "restrict"}, {"kept", s.kept.size()}, {"root", s.new_root}};
          },
          [](const ContractPartition& s) {
            return nlohmann::json{{"step", "partition"},  {"W", s.W.size()},        {"s0", s.s0},
                                  {"Z", s.Z.size()},      {"bridge", s.bridge.vertices}};
          },
          [](const ContractV1& s) {
            return nlohmann::json{{"step", "contract"}, {"v0", s.v0}, {"v1", s.v1}, {"v2", s.v2},
                                  {"redirected", s.redirected}};
          },
      },
      step);
  return j.dump();
}

std::vector<Arc> lift_k3e_arcs(const std::vector<Arc>& arcs, const ReductionStep& step) {
  return std::visit(
      overloaded{
          [&](const TrimArcs&) { return arcs; },
          [&](const RestrictToSink&) { return arcs; },
          [&](const ContractPartition& s) {
            std::vector<Arc> out;
            const Arc shortcut{s.s0, s.bridge.last()};
            for (const Arc& a : arcs) {
              if (a != shortcut) {
                out.push_back(a);
                continue;
              }
              for (std::size_t i = 0; i + 1 < s.bridge.vertices.size(); ++i)
                out.emplace_back(s.bridge.vertices[i], s.bridge.vertices[i + 1]);
            }
            return out;
          },
          [&](const ContractV1& s) {
            const std::set<Vertex> moved(s.redirected.begin(), s.redirected.end());
            std::vector<Arc> out;
            bool v0_keeps_in = false, used_shortcut = false;
            for (const Arc& a : arcs) {
              if (a == Arc{s.v0, s.v2}) {
                used_shortcut = true;
              } else if (a.second == s.v0 && moved.count(a.first)) {
                out.emplace_back(a.first, s.v1);
              } else {
                if (a.second == s.v0) v0_keeps_in = true;
                out.push_back(a);
              }
            }
            if (used_shortcut) {
              out.emplace_back(s.v1, s.v2);
              if (v0_keeps_in) out.emplace_back(s.v0, s.v1);
            } else if (std::any_of(out.begin(), out.end(), [&](const Arc& a) { return a.second == s.v1; })) {
              broken("contraction lift: v0 receives a redirected arc but does not use its only out-arc");
            }
            return out;
          },
      },
      step);
}

std::optional<SubdivisionCertificate> certificate_from_arc_set(const std::vector<Arc>& arcs, const Digraph& pattern) {
  std::map<Vertex, VertexList> out, in;
  for (auto [u, v] : arcs) {
    out[u].push_back(v);
    in[v].push_back(u);
  }
  std::set<Vertex> verts;
  for (auto [u, v] : arcs) {
    verts.insert(u);
    verts.insert(v);
  }
  VertexList branch;
  for (Vertex v : verts) {
    const std::size_t deg = out[v].size() + in[v].size();
    if (deg >= 3) {
      branch.push_back(v);
    } else if (out[v].size() != 1 || in[v].size() != 1) {
      return std::nullopt;
    }
  }
  if (static_cast<int>(branch.size()) != pattern.n()) return std::nullopt;
  const std::set<Vertex> is_branch(branch.begin(), branch.end());
  std::vector<std::pair<Arc, Dipath>> runs;
  std::set<Arc> seen_arcs;
  for (Vertex b : branch) {
    for (Vertex first : out[b]) {
      VertexList vs{b, first};
      seen_arcs.insert({b, first});
      while (!is_branch.count(vs.back())) {
        Vertex nxt = out[vs.back()].front();
        seen_arcs.insert({vs.back(), nxt});
        vs.push_back(nxt);
        if (vs.size() > verts.size() + 1) return std::nullopt;
      }
      runs.push_back({{b, vs.back()}, Dipath(vs)});
    }
  }
  if (seen_arcs.size() != std::set<Arc>(arcs.begin(), arcs.end()).size()) return std::nullopt;
  if (runs.size() != pattern.arc_count()) return std::nullopt;
  VertexList perm(pattern.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::map<Vertex, int> index;
  for (int i = 0; i < static_cast<int>(branch.size()); ++i) index[branch[i]] = i;
  do {
    // perm[pattern vertex] = index into branch
    std::vector<int> inverse(pattern.n());
    for (int x = 0; x < pattern.n(); ++x) inverse[perm[x]] = x;
    SubdivisionCertificate cert;
    bool ok = true;
    std::set<Arc> used;
    for (const auto& [ends, path] : runs) {
      Vertex px = inverse[index[ends.first]], py = inverse[index[ends.second]];
      if (!pattern.has_arc(px, py) || !used.insert({px, py}).second) {
        ok = false;
        break;
      }
      cert.paths.push_back({px, py, path});
    }
    if (!ok) continue;
    cert.branch.resize(pattern.n());
    for (int x = 0; x < pattern.n(); ++x) cert.branch[x] = branch[perm[x]];
    return cert;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::optional<Vertex> k3e_root(const Digraph& d) {
  int low = 0;
  Vertex low_vertex = -1;
  for (Vertex v = 0; v < d.n(); ++v) {
    if (d.out_degree(v) < 1) return std::nullopt;
    if (d.out_degree(v) < 2) {
      ++low;
      low_vertex = v;
    }
  }
  if (low > 1) return std::nullopt;
  if (low == 1) return low_vertex;
  return d.n() > 0 ? std::optional<Vertex>(0) : std::nullopt;
}

K3eRun find_k3e_traced(const Digraph& d, Vertex v0, long long depth_budget) {
  if (!d.contains(v0)) throw Error(ErrorKind::VertexOutOfRange, "v0 outside the digraph");
  if (d.out_degree(v0) < 1) throw Error(ErrorKind::PreconditionViolated, "vertex " + std::to_string(v0) + " has no out-neighbour");
  for (Vertex v = 0; v < d.n(); ++v)
    if (v != v0 && d.out_degree(v) < 2)
      throw Error(ErrorKind::PreconditionViolated, "vertex " + std::to_string(v) + " has out-degree below 2");
  if (depth_budget < 0) depth_budget = d.n() + static_cast<long long>(d.arc_count());

  K3eRun run;
  Working w{d, std::vector<char>(d.n(), 1), v0};
  auto push = [&](ReductionStep step) {
    run.trace.push_back(reduction_step_json(step));
    run.steps.push_back(std::move(step));
    if (static_cast<long long>(run.steps.size()) > depth_budget)
      throw Error(ErrorKind::DepthBudgetExceeded, "more than " + std::to_string(depth_budget) + " reductions");
  };

  std::vector<Arc> found;
  for (;;) {
    const long long before = w.measure();
    // Exact degrees: v0 keeps one out-arc, every other live vertex two.
    TrimArcs trim;
    DigraphBuilder b(w.d);
    for (Vertex v : w.live()) {
      const std::size_t keep = v == w.v0 ? 1 : 2;
      const VertexList& outs = w.d.out(v);
      for (std::size_t i = keep; i < outs.size(); ++i) {
        trim.removed.emplace_back(v, outs[i]);
        b.remove_arc(v, outs[i]);
      }
    }
    if (!trim.removed.empty()) {
      w.d = b.build();
      push(trim);
      continue;
    }

    // Restrict to a terminal strong component among the live vertices.
    const VertexList live = w.live();
    const Digraph live_graph = w.d.induced(live);
    if (!is_strongly_connected(live_graph)) {
      VertexList sink = strong_components(live_graph).front();
      RestrictToSink step;
      for (Vertex i : sink) step.kept.push_back(live[i]);
      step.new_root = std::find(step.kept.begin(), step.kept.end(), w.v0) != step.kept.end() ? w.v0 : step.kept.front();
      std::vector<char> keep(w.d.n(), 0);
      for (Vertex v : step.kept) keep[v] = 1;
      w.d = keep_only(w.d, keep);
      w.alive = keep;
      w.v0 = step.new_root;
      push(step);
      if (w.measure() >= before) broken("restriction did not shrink the digraph");
      continue;
    }

    const Vertex v1 = w.d.out(w.v0).front();
    std::optional<Vertex> z0;
    for (Vertex z : w.d.in(w.v0))
      if (z != v1 && w.d.has_arc(z, v1)) {
        z0 = z;
        break;
      }

    if (!z0) {
      ContractV1 step;
      step.v0 = w.v0;
      step.v1 = v1;
      for (Vertex y : w.d.out(v1))
        if (y != w.v0) {
          step.v2 = y;
          break;
        }
      if (step.v2 < 0) broken("v1 has no out-neighbour besides v0");
      DigraphBuilder nb(w.d);
      for (Vertex y : w.d.out(v1)) nb.remove_arc(v1, y);
      for (Vertex x : w.d.in(v1)) {
        nb.remove_arc(x, v1);
        if (x == w.v0) continue;
        if (w.d.has_arc(x, w.v0)) broken("in-neighbour of v1 already points at v0");
        step.redirected.push_back(x);
        nb.add_arc(x, w.v0);
      }
      nb.add_arc(w.v0, step.v2);
      w.d = nb.build();
      w.alive[v1] = 0;
      push(step);
      continue;
    }

    FanOrCut fc = fan_to_set(w.d, v1, {w.v0, *z0}, 2);
    if (fc.has_fan()) {
      const Dipath& p1 = fc.fan[0].last() == w.v0 ? fc.fan[0] : fc.fan[1];
      const Dipath& p2 = fc.fan[0].last() == w.v0 ? fc.fan[1] : fc.fan[0];
      found = fan_certificate(p1, p2, w.v0, v1, *z0);
      run.trace.push_back(nlohmann::json{{"step", "fan"}, {"v0", w.v0}, {"v1", v1}, {"z0", *z0}}.dump());
      break;
    }
    if (fc.cut.size() != 1) broken("strongly connected digraph has an empty separator");
    ContractPartition step;
    step.s0 = fc.cut.front();
    std::vector<char> blocked(w.d.n(), 0);
    blocked[step.s0] = 1;
    for (Vertex v = 0; v < w.d.n(); ++v)
      if (!w.alive[v]) blocked[v] = 1;
    std::vector<char> in_w = reachable(w.d, {v1}, &blocked);
    std::vector<char> target(w.d.n(), 0);
    for (Vertex v : live) {
      if (v == step.s0) continue;
      (in_w[v] ? step.W : step.Z).push_back(v);
      if (in_w[v]) target[v] = 1;
    }
    auto bridge = bfs_path(w.d, step.s0, target);
    if (!bridge) broken("separator vertex cannot reach the reachable side");
    step.bridge = *bridge;
    std::vector<char> keep(w.d.n(), 0);
    for (Vertex v : step.W) keep[v] = 1;
    keep[step.s0] = 1;
    DigraphBuilder nb(keep_only(w.d, keep));
    nb.add_arc(step.s0, step.bridge.last());
    w.d = nb.build();
    w.alive = keep;
    w.v0 = step.s0;
    push(step);
    if (w.measure() >= before) broken("partition reduction did not shrink the digraph");
  }

  for (auto it = run.steps.rbegin(); it != run.steps.rend(); ++it) found = lift_k3e_arcs(found, *it);
  const Digraph pattern = k3_minus_e();
  auto cert = certificate_from_arc_set(found, pattern);
  if (!cert) broken("lifted arc set is not a subdivision of K3-e");
  if (auto rep = validate_certificate(d, pattern, *cert); !rep) broken("K3-e certificate rejected: " + rep.message);
  run.certificate = std::move(*cert);
  return run;
}

SubdivisionCertificate find_k3e(const Digraph& d, Vertex v0, long long depth_budget) {
  return find_k3e_traced(d, v0, depth_budget).certificate;
}

}  // namespace subdiv
