#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "epkit/labeled_graph.hpp"

namespace epkit {

/// Vertex potentials with lambda(head) = lambda(tail) * label on every arc.
struct ConsistentLabeling {
  std::map<Vertex, GroupElement> values;
};

/// Either a consistent labeling of the whole graph or a non-null cycle.
using LabelingResult = std::variant<ConsistentLabeling, Walk>;

// Spanning-forest propagation: every component root gets the identity, tree
// arcs fix the remaining potentials, and the first non-tree arc (by id) that
// violates the arc equation closes a non-null cycle with the tree.
LabelingResult find_consistent_labeling(const LabeledGraph& g);

std::optional<Walk> find_non_null_cycle(const LabeledGraph& g);

bool is_clean(const LabeledGraph& g);
bool is_clean(const LabeledGraph& g, const VertexSet& s);

// Untangles every vertex of `a` with its potential from a consistent
// labeling of G[a]. All arcs inside `a` end up with the identity label and
// the set of non-null cycles is unchanged. Throws InvalidInput if G[a] is
// not clean.
LabeledGraph untangle(const LabeledGraph& g, const VertexSet& a);

struct GfvsCertificate {
  VertexSet vertices;
  bool verified = false;
};

GfvsCertificate verify_gfvs(const LabeledGraph& g, const VertexSet& x);

enum class Integrality { Integral, HalfIntegral };

std::string to_string(Integrality i);

/// k distinct non-null cycles; integral packings are vertex-disjoint,
/// half-integral ones use every vertex at most twice.
struct PackingCertificate {
  std::vector<Walk> cycles;
  Integrality integrality = Integrality::Integral;

  int k() const { return static_cast<int>(cycles.size()); }
};

// Empty string when valid, otherwise the first violated condition.
std::string packing_violation(const LabeledGraph& g, const PackingCertificate& p);
inline bool verify_packing(const LabeledGraph& g, const PackingCertificate& p) {
  return packing_violation(g, p).empty();
}

// The arc ids of a cycle, sorted: two cycles are the same subgraph iff equal.
std::vector<ArcId> cycle_key(const Walk& c);

// A simple u-v path whose value differs from the identity, or nothing.
// Exact DFS with (vertex, visited, value) dead-state memoisation.
std::optional<Walk> non_null_path_exists(const LabeledGraph& g, Vertex u, Vertex v);

// Simple u-v path (u != v) avoiding `skip_arc` whose value is not `avoid_value`.
std::optional<Walk> path_with_value_other_than(const LabeledGraph& g, Vertex u, Vertex v,
                                               const GroupElement& avoid_value,
                                               ArcId skip_arc = -1);

// Splits a non-null closed walk at its earliest repeated vertex until a
// non-null cycle remains. Throws InvalidInput if the walk is open or null.
Walk extract_non_null_cycle(const LabeledGraph& g, const Walk& closed_walk);

}  // namespace epkit
