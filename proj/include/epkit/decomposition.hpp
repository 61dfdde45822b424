#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "epkit/cycle_space.hpp"
#include "epkit/labeled_graph.hpp"

namespace epkit {

/// A rooted tree decomposition. The root is the only node without an entry
/// in `parent`.
struct TreeDecomposition {
  std::vector<int> nodes;
  std::map<int, int> parent;
  std::map<int, VertexSet> bags;

  // Largest bag size minus one (-1 when every bag is empty).
  int width() const;
};

enum class TwMode { Exact, Heuristic };

inline constexpr int kExactTreewidthLimit = 20;

// Exact mode solves the subset DP over elimination orders and throws
// GuardExceeded above kExactTreewidthLimit vertices; heuristic mode uses a
// min-fill elimination order.
TreeDecomposition tree_decomposition(const LabeledGraph& g, TwMode mode);

// Decomposition induced by eliminating the vertices in `order` (which must
// list every vertex of g once).
TreeDecomposition decomposition_from_order(const LabeledGraph& g, const std::vector<Vertex>& order);

// Empty when `td` is a valid tree decomposition of g, otherwise the reason.
std::string decomposition_violation(const LabeledGraph& g, const TreeDecomposition& td);

using PackingOrCover = std::variant<PackingCertificate, GfvsCertificate>;

// Either k vertex-disjoint non-null cycles or a gfvs of size at most
// (k-1)(w+1), where w is the width of `td`. Throws InvalidInput for an
// invalid decomposition or k < 1.
PackingOrCover packing_or_cover_bounded_tw(const LabeledGraph& g, int k, const TreeDecomposition& td);

}  // namespace epkit
