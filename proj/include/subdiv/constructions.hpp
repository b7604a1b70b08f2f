#pragma once

#include <optional>
#include <string>

#include "subdiv/digraph.hpp"

namespace subdiv {

enum class BlockProperty { NoEvenDicycle, NoS3Subdivision };

std::string block_property_tag(BlockProperty p);  // "no-even-dicycle" / "no-s3-subdivision"
BlockProperty parse_block_property(const std::string& tag);

// Externally supplied building block with a claimed property.
struct BuildingBlock {
  Digraph graph;
  BlockProperty property = BlockProperty::NoEvenDicycle;
  int k = 0;  // claimed minimum out-degree
  // Outcome of the oracle check of the claimed property; nullopt if too large to decide.
  std::optional<bool> property_verified;
};

// Checks min out-degree == k (PropertyMismatch otherwise) and runs the property oracle within
// `max_nodes`. A refuted property raises PropertyMismatch.
BuildingBlock make_block(Digraph graph, BlockProperty property, std::uint64_t max_nodes = 10'000'000);

// Reads an edge list whose first line is "# property: <tag>".
BuildingBlock read_block_file(const std::string& path);

// Odd directed cycle of length 5: out-degree 1, no even dicycle.
BuildingBlock shipped_no_even_block();
// Directed 4-cycle: out-degree 1 and no subdivision of the bioriented 3-star.
BuildingBlock shipped_no_s3_block();

struct NoK4Construction {
  Digraph graph;
  VertexList side_a;  // copy of the block
  VertexList side_b;  // copy of the reversed block
  Vertex apex = -1;
};

struct HalfLayout {
  VertexList side_a;
  VertexList side_b;
};

struct NoS4Construction {
  Digraph graph;
  HalfLayout x;
  HalfLayout y;
  Vertex u = -1;
  Vertex v = -1;
};

NoK4Construction join_no_k4(const BuildingBlock& block);
NoS4Construction join_no_s4(const BuildingBlock& block);

}  // namespace subdiv
