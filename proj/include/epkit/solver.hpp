#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epkit/bounds.hpp"
#include "epkit/cycle_space.hpp"
#include "epkit/decomposition.hpp"
#include "epkit/labeled_graph.hpp"
#include "epkit/paths_packing.hpp"

namespace epkit {

// Removes every arc that lies on no non-null cycle: a loop survives iff its
// label is not the identity, any other arc iff its block is not clean.
LabeledGraph strip_null_arcs(const LabeledGraph& g);

struct DriverConfig {
  int tw_threshold = 4;
  ThresholdMode thresholds = ThresholdMode::Small;
  bool oracle_fallback = false;
  std::uint64_t seed = 0;
  // Order of the clique expansion searched for above the treewidth threshold.
  int clique_order = kCliqueExpansionLimit;
  // Used at the top level when they fit the (stripped) input.
  std::optional<TreeDecomposition> td;
  std::optional<CliqueExpansion> expansion;
};

struct TrailStep {
  std::string step;  // low_treewidth, clique_packing, peel, irrelevant, oracle_fallback
  int k = 0;
  int vertices = 0;  // size of the graph handled at this step
  int arcs_stripped = 0;
  int width = -1;
  int bound = -1;  // cover growth allowed at this step
  VertexSet touched;  // cover part, separator or deleted vertex
  std::string note;
};

struct Certificate {
  PackingOrCover outcome;
  std::vector<TrailStep> trail;
  int k = 0;
  bool fallback = false;
  DriverConfig config;
  std::optional<DriverConstants> paper;  // set in paper mode

  bool is_packing() const { return std::holds_alternative<PackingCertificate>(outcome); }
};

// Packing-or-cover driver. The result is verified against g before it is
// returned. Throws Unimplemented when the wall case is reached without
// oracle fallback.
Certificate solve(const LabeledGraph& g, int k, const DriverConfig& config = {});

// Empty when `cert` is a valid answer for (g, k), otherwise the reason.
std::string certificate_violation(const LabeledGraph& g, const Certificate& cert);

}  // namespace epkit
