#pragma once

#include <vector>

#include "epkit/bounds.hpp"
#include "epkit/labeled_graph.hpp"

namespace epkit {

// Vertices of components of G - S that meet X (X ∖ S included).
VertexSet reach(const LabeledGraph& g, const VertexSet& x, const VertexSet& s);

// True iff S ∩ (X ∪ Y) = ∅ and every X-Y path of G meets S.
bool separates(const LabeledGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& s);

struct ImportantSeparator {
  VertexSet separator;
  VertexSet reach;
};

struct ImportantSeparators {
  // False when some vertex of X is adjacent to some vertex of Y, in which
  // case no separator of any size exists and the list is empty.
  bool separable = true;
  // Sorted by size, then lexicographically.
  std::vector<ImportantSeparator> separators;
};

// All important X-Y vertex separators of size at most k (labels ignored).
// Throws InvalidInput if X and Y overlap or name unknown vertices.
ImportantSeparators enumerate_important_separators(const LabeledGraph& g, const VertexSet& x,
                                                   const VertexSet& y, int k);

using Partition = std::vector<VertexSet>;

// Every partition of `t`, in restricted-growth-string order over the sorted
// elements (the single-part partition comes first).
std::vector<Partition> set_partitions(const VertexSet& t);

struct MultiwayCutInstance {
  LabeledGraph graph;
  Partition parts;

  VertexSet terminals() const;
};

// Throws InvalidInput unless the parts are non-empty, pairwise disjoint,
// inside V(graph), and there are at least two of them.
void validate(const MultiwayCutInstance& inst);

bool is_multiway_cut(const MultiwayCutInstance& inst, const VertexSet& s);
// Throws InvalidInput if s meets the terminals.
bool is_minimal_multiway_cut(const MultiwayCutInstance& inst, const VertexSet& s);

// For all X1, X2 ⊆ Z with |X1| = |X2| <= p there are |X1| vertex-disjoint
// X1-X2 paths (a vertex in both sets counts as a trivial path).
bool is_p_linked(const LabeledGraph& g, const VertexSet& z, int p);

struct WellLinkedWitness {
  VertexSet z;
  int checked_to = 0;
  bool verified = false;
};

// Checks Z for |Z|/2-linkedness. Throws GuardExceeded when the number of
// subset pairs is beyond desk scale.
WellLinkedWitness verify_well_linked(const LabeledGraph& g, const VertexSet& z);

struct TwReductionOptions {
  ThresholdMode mode = ThresholdMode::Paper;
  // Verify |T| <= t, Z ∩ T = ∅, the size of Z and well-linkedness.
  bool check_preconditions = true;
  // Also collect Z-vertices lying on the important separators themselves,
  // not only those in their reach. Needed for soundness; see README.
  bool include_separator_hits = true;
  // Largest important separator considered; -1 means 2t.
  int separator_budget = -1;
};

struct PartitionContribution {
  Partition partition;
  VertexSet contribution;
  int separators = 0;
};

struct TwReduction {
  VertexSet set;
  std::vector<PartitionContribution> partitions;
  int partitions_enumerated = 0;
};

// The set 𝒳 ⊆ Z: no vertex of Z ∖ 𝒳 lies on a minimal T-multiway cut of
// size at most t. Throws PreconditionFailed naming the violated premise.
TwReduction tw_reduction_set(const LabeledGraph& g, int t, const VertexSet& terminals,
                             const VertexSet& z, const TwReductionOptions& options = {});

struct IrrelevantOptions {
  ThresholdMode mode = ThresholdMode::Paper;
  bool check_well_linked = true;
};

struct IrrelevantVertex {
  Vertex vertex = -1;
  // Union of the reduction sets over all proper subsets J of A ∩ B.
  VertexSet excluded;
  int subsets_examined = 0;
};

// A vertex v of Z such that G - v is k-equivalent to G. Requires a valid
// separation with G[A] clean, 1 < |A ∩ B| <= p and Z ⊆ A ∖ B well-linked in
// G[A] and larger than the mode's bound. Lowest eligible id wins.
IrrelevantVertex find_irrelevant_vertex(const LabeledGraph& g, const Separation& sep,
                                        const VertexSet& z, int p, int k,
                                        const IrrelevantOptions& options = {});

}  // namespace epkit
