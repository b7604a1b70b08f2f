#include "subdiv/constructions.hpp"

#include <fstream>
#include <sstream>

#include "subdiv/oracle.hpp"

namespace subdiv {

std::string block_property_tag(BlockProperty p) {
  return p == BlockProperty::NoEvenDicycle ? "no-even-dicycle" : "no-s3-subdivision";
}

BlockProperty parse_block_property(const std::string& tag) {
  if (tag == "no-even-dicycle") return BlockProperty::NoEvenDicycle;
  if (tag == "no-s3-subdivision") return BlockProperty::NoS3Subdivision;
  throw Error(ErrorKind::ParseError, "unknown property tag '" + tag + "'");
}

BuildingBlock make_block(Digraph graph, BlockProperty property, std::uint64_t max_nodes) {
  if (graph.n() == 0) throw Error(ErrorKind::EmptyGraph, "building block");
  BuildingBlock block{std::move(graph), property, 0, std::nullopt};
  block.k = min_out_degree(block.graph);
  if (block.property == BlockProperty::NoEvenDicycle) {
    try {
      block.property_verified = !has_even_dicycle(block.graph, max_nodes);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  } else {
    auto r = contains_subdivision(block.graph, bioriented_star(3), max_nodes);
    if (r.status != SearchStatus::BudgetExceeded)
      block.property_verified = r.status == SearchStatus::None;
  }
  if (block.property_verified == false)
    throw Error(ErrorKind::PropertyMismatch,
                "block violates its claimed property " + block_property_tag(property));
  return block;
}

BuildingBlock read_block_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::string header;
  std::getline(f, header);
  const std::string prefix = "# property:";
  if (header.rfind(prefix, 0) != 0)
    throw Error(ErrorKind::ParseError, "block file must start with '# property: <tag>'");
  std::string tag;
  std::istringstream(header.substr(prefix.size())) >> tag;
  BlockProperty property = parse_block_property(tag);
  return make_block(read_edge_list(f), property);
}

BuildingBlock shipped_no_even_block() {
  return make_block(directed_cycle(5), BlockProperty::NoEvenDicycle);
}

BuildingBlock shipped_no_s3_block() {
  return make_block(directed_cycle(4), BlockProperty::NoS3Subdivision);
}

namespace {

// Block on A, reversed block on B, every arc from B to A. Vertex ids start at `offset`.
void add_half(std::vector<Arc>& arcs, const Digraph& block, int offset, HalfLayout& layout) {
  const int m = block.n();
  for (int i = 0; i < m; ++i) {
    layout.side_a.push_back(offset + i);
    layout.side_b.push_back(offset + m + i);
  }
  for (auto [s, t] : block.arcs()) {
    arcs.emplace_back(offset + s, offset + t);
    arcs.emplace_back(offset + m + t, offset + m + s);
  }
  for (Vertex b : layout.side_b)
    for (Vertex a : layout.side_a) arcs.emplace_back(b, a);
}

void require(const BuildingBlock& block, BlockProperty wanted) {
  if (block.property != wanted)
    throw Error(ErrorKind::PropertyMismatch, "construction needs a " + block_property_tag(wanted) +
                                                 " block, got " + block_property_tag(block.property));
  if (block.property_verified == false)
    throw Error(ErrorKind::PropertyMismatch, "block fails its claimed property");
  if (block.graph.n() == 0 || min_out_degree(block.graph) != block.k)
    throw Error(ErrorKind::PropertyMismatch, "block minimum out-degree differs from its claim");
}

}  // namespace

NoK4Construction join_no_k4(const BuildingBlock& block) {
  require(block, BlockProperty::NoEvenDicycle);
  NoK4Construction out;
  std::vector<Arc> arcs;
  HalfLayout half;
  add_half(arcs, block.graph, 0, half);
  out.side_a = half.side_a;
  out.side_b = half.side_b;
  const int core = 2 * block.graph.n();
  out.apex = core;
  for (Vertex x = 0; x < core; ++x) {
    arcs.emplace_back(out.apex, x);
    arcs.emplace_back(x, out.apex);
  }
  out.graph = Digraph(core + 1, arcs);
  return out;
}

NoS4Construction join_no_s4(const BuildingBlock& block) {
  require(block, BlockProperty::NoS3Subdivision);
  NoS4Construction out;
  const int half = 2 * block.graph.n();
  {
    std::vector<Arc> single;
    HalfLayout probe;
    add_half(single, block.graph, 0, probe);
    Digraph h(half, single);
    if (min_out_degree(h) != block.k || min_in_degree(h) != block.k)
      throw Error(ErrorKind::InvariantBroken, "intermediate join lost the degree balance");
  }
  std::vector<Arc> arcs;
  add_half(arcs, block.graph, 0, out.x);
  add_half(arcs, block.graph, half, out.y);
  out.u = 2 * half;
  out.v = 2 * half + 1;
  for (Vertex x = 0; x < half; ++x) {
    arcs.emplace_back(out.u, x);
    arcs.emplace_back(x, out.v);
  }
  for (Vertex y = half; y < 2 * half; ++y) {
    arcs.emplace_back(y, out.u);
    arcs.emplace_back(out.v, y);
  }
  out.graph = Digraph(2 * half + 2, arcs);
  return out;
}

}  // namespace subdiv
