#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epkit/cycle_space.hpp"
#include "epkit/labeled_graph.hpp"

namespace epkit {

/// Size guards for the exhaustive solvers. Exceeding any of them raises
/// GuardExceeded; nothing is ever truncated silently.
struct OracleLimits {
  int max_vertices = 14;
  std::size_t max_cycles = 20'000;
  long max_steps = 100'000'000;
};

// Every simple cycle of g (self-loops included), each listed once: it starts
// at its lowest vertex and its first arc id is below its last arc id. Sorted
// by start vertex, then by arc sequence.
std::vector<Walk> enumerate_cycles(const LabeledGraph& g, const OracleLimits& limits = {});
std::vector<Walk> enumerate_non_null_cycles(const LabeledGraph& g, const OracleLimits& limits = {});

struct MinGfvs {
  int size = 0;
  VertexSet witness;
};

struct MaxPacking {
  int size = 0;
  PackingCertificate witness;
};

struct ExactResult {
  MinGfvs gfvs;
  MaxPacking integral;
  MaxPacking half_integral;
  std::size_t non_null_cycles = 0;
};

MinGfvs min_gfvs(const LabeledGraph& g, const OracleLimits& limits = {});
MaxPacking max_packing(const LabeledGraph& g, Integrality mode, const OracleLimits& limits = {});
// Some k distinct non-null cycles within the multiplicity cap, or nothing.
// Cheaper than max_packing when k is small.
std::optional<PackingCertificate> find_packing(const LabeledGraph& g, int k, Integrality mode,
                                               const OracleLimits& limits = {});
ExactResult solve_exact(const LabeledGraph& g, const OracleLimits& limits = {});

// Half-integral k-packing exists or a gfvs of size at most p exists.
bool ep_predicate(const LabeledGraph& g, int k, int p, const OracleLimits& limits = {});
bool ep_predicate(const ExactResult& r, int k, int p);

}  // namespace epkit
