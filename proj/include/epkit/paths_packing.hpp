#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "epkit/bounds.hpp"
#include "epkit/cycle_space.hpp"
#include "epkit/labeled_graph.hpp"

namespace epkit {

// An S-path has distinct endpoints in S and no internal vertex in S.
bool is_s_path(const LabeledGraph& g, const VertexSet& s, const Walk& p);
bool has_non_null_s_path(const LabeledGraph& g, const VertexSet& s);

struct SPathDuality {
  // Maximum number of vertex-disjoint non-null S-paths.
  int nu = 0;
  // k disjoint non-null S-paths when nu >= k.
  std::vector<Walk> paths;
  // Otherwise a minimum set of at most 2k-2 vertices meeting every non-null S-path.
  std::optional<VertexSet> hitting_set;

  bool has_paths() const { return !hitting_set.has_value(); }
};

inline constexpr int kSPathVertexLimit = 24;

// Exact search at desk scale. Throws GuardExceeded above kSPathVertexLimit
// vertices or when the path enumeration gets too large.
SPathDuality non_null_s_paths_or_hitting_set(const LabeledGraph& g, const VertexSet& s, int k);

// Empty when `r` is a correct answer for (g, s, k), otherwise the reason.
std::string s_path_result_violation(const LabeledGraph& g, const VertexSet& s, int k,
                                    const SPathDuality& r);

/// A K_ell-expansion: supernode i is a tree of g given by its vertex set and
/// tree arcs; edge_map[{i, j}] (i < j) is an arc joining supernodes i and j.
struct CliqueExpansion {
  std::vector<VertexSet> supernodes;
  std::vector<std::vector<ArcId>> tree_arcs;
  std::map<std::pair<int, int>, ArcId> edge_map;
  std::vector<Vertex> centers;

  int order() const { return static_cast<int>(supernodes.size()); }
  VertexSet vertices() const;
};

// Keeps the listed supernodes (renumbered in the given order).
CliqueExpansion restrict_expansion(const CliqueExpansion& eta, const std::vector<int>& keep);

std::string expansion_violation(const LabeledGraph& g, const CliqueExpansion& eta, int ell);
inline bool verify_expansion(const LabeledGraph& g, const CliqueExpansion& eta, int ell) {
  return expansion_violation(g, eta, ell).empty();
}

inline constexpr int kCliqueExpansionLimit = 6;

// Exact K_ell-minor search for ell <= 6 (GuardExceeded above that or when the
// branching budget runs out). Supernodes are BFS trees rooted at their lowest
// vertex, which is also the center; mapped arcs are the lowest joining ids.
std::optional<CliqueExpansion> find_clique_expansion(const LabeledGraph& g, int ell);

struct CliqueBranchResult {
  std::variant<PackingCertificate, Separation> outcome;
  // Index of the clean sub-expansion used, -1 if every one was non-clean.
  int sub_expansion = -1;
  VertexSet hitting_set;
  VertexSet separator;
};

// Either a half-integral k-packing or a separation (A, B) with G[A ∖ B]
// clean, 1 < |A ∩ B| <= 3k and every supernode missing A ∩ B inside A ∖ B.
// Paper mode requires ell > 6k^2. Throws PreconditionFailed when the input
// does not support the construction.
CliqueBranchResult clique_branch_separation(const LabeledGraph& g, int k, const CliqueExpansion& eta,
                                            ThresholdMode mode = ThresholdMode::Paper);

struct CliqueIrrelevantOptions {
  ThresholdMode mode = ThresholdMode::Paper;
  // Small mode only: use this set instead of the supernode centers.
  std::optional<VertexSet> z;
};

// A vertex v with G - v k-equivalent to G, for a clean G[A] holding the
// expansion in A ∖ B. Paper mode requires order >= rho(k).
Vertex clique_branch_irrelevant(const LabeledGraph& g, int k, const CliqueExpansion& eta,
                                const Separation& sep, const CliqueIrrelevantOptions& options = {});

}  // namespace epkit
