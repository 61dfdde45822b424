#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "epkit/labeled_graph.hpp"
#include "epkit/paths_packing.hpp"

namespace epkit {

// Random simple graph with m edges over Z_2, every arc labeled 1, so the
// non-null cycles are exactly the odd cycles.
LabeledGraph odd_cycles(int n, int m, std::uint64_t seed);

// h x w grid (h + w even, w = h by default) over Z_2 with every arc labeled
// 1, plus twist arcs (i, 0) -> (h-1-i, w-1). Vertex (i, j) has id i*w + j.
LabeledGraph escher_wall(int h, int w = -1);

// r x c grid with uniformly random Z_m labels.
LabeledGraph zm_grid(int m, int rows, int cols, std::uint64_t seed);

// n vertices, m arcs between distinct random endpoints (parallel arcs
// allowed), uniformly random labels.
LabeledGraph random_graph(int n, int m, const GroupSpec& group, std::uint64_t seed);

struct CliqueInstance {
  LabeledGraph graph;
  CliqueExpansion expansion;
};

// K_ell over Z_2 with identity labels, each edge subdivided once when
// `subdivide` is set. gadget "odd" attaches a triangle labeled 1 to the
// first two branch vertices; "none" adds nothing.
CliqueInstance subdivided_clique(int ell, const std::string& gadget, bool subdivide = true);

}  // namespace epkit
