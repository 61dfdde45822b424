#pragma once

#include <set>
#include <vector>

#include "epkit/group.hpp"

namespace epkit {

using Vertex = int;
using ArcId = int;
using VertexSet = std::set<Vertex>;

struct Arc {
  Vertex tail;
  Vertex head;
  GroupElement label;
};

enum class Direction { Forward, Reverse };

struct Step {
  ArcId arc;
  Direction dir;

  friend bool operator==(const Step&, const Step&) = default;
};

/// A walk in the underlying undirected graph. Each step traverses one arc,
/// either along its orientation or against it. `start` is only consulted for
/// the empty walk; otherwise it must equal the first step's source.
struct Walk {
  Vertex start = 0;
  std::vector<Step> steps;

  bool empty() const { return steps.empty(); }
  std::size_t length() const { return steps.size(); }

  friend bool operator==(const Walk&, const Walk&) = default;
};

/// A group-labeled graph with stable vertex and arc ids.
///
/// Vertices live in a fixed universe [0, universe_size()); subgraph
/// operations mark vertices and arcs absent but never renumber them, so
/// certificates computed on G - X still name vertices and arcs of G.
/// Instances are immutable once built.
class LabeledGraph {
 public:
  LabeledGraph(GroupSpec group, int vertex_count, std::vector<Arc> arcs = {});

  const GroupSpec& group() const { return group_; }

  int universe_size() const { return static_cast<int>(vertex_present_.size()); }
  bool has_vertex(Vertex v) const {
    return v >= 0 && v < universe_size() && vertex_present_[v];
  }
  std::vector<Vertex> vertices() const;
  VertexSet vertex_set() const;
  int vertex_count() const { return vertex_count_; }

  int arc_universe_size() const { return static_cast<int>(arcs_.size()); }
  bool has_arc(ArcId a) const { return a >= 0 && a < arc_universe_size() && arc_present_[a]; }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  std::vector<ArcId> arc_ids() const;
  int arc_count() const { return arc_count_; }

  // Present arcs incident to v, in increasing id order. A self-loop appears once.
  const std::vector<ArcId>& incident(Vertex v) const { return incidence_.at(v); }
  // The endpoint of `a` opposite to `v` (v itself for a self-loop).
  Vertex other_end(ArcId a, Vertex v) const;
  // Label of `a` traversed starting from `from`; for self-loops use `dir`.
  GroupElement traversal_label(ArcId a, Direction dir) const;
  // Direction of `a` when leaving `from`. Self-loops report Forward.
  Direction direction_from(ArcId a, Vertex from) const;

  LabeledGraph induced_subgraph(const VertexSet& keep) const;
  LabeledGraph without_vertices(const VertexSet& drop) const;
  LabeledGraph without_arcs(const std::vector<ArcId>& drop) const;
  // Same structure, new labels (indexed by arc id; absent arcs ignored).
  LabeledGraph relabeled(std::vector<GroupElement> labels) const;

 private:
  LabeledGraph() = default;
  void rebuild_incidence();

  GroupSpec group_ = GroupSpec::cyclic(1);
  std::vector<char> vertex_present_;
  std::vector<Arc> arcs_;
  std::vector<char> arc_present_;
  std::vector<std::vector<ArcId>> incidence_;
  int vertex_count_ = 0;
  int arc_count_ = 0;
};

// Vertices visited by the walk, v_0 .. v_m. Throws InvalidInput if the walk
// is inconsistent (missing arc, discontinuity).
std::vector<Vertex> walk_vertices(const LabeledGraph& g, const Walk& w);

// Ordered product of step labels; reverse steps contribute the inverse label.
GroupElement walk_value(const LabeledGraph& g, const Walk& w);

Walk reversed(const LabeledGraph& g, const Walk& w);
Walk concatenate(const LabeledGraph& g, const Walk& first, const Walk& second);

// True iff the walk is closed, non-empty, visits distinct vertices except
// for the repeated endpoint, and does not reuse an arc.
bool is_cycle(const LabeledGraph& g, const Walk& w);
bool is_path(const LabeledGraph& g, const Walk& w);

// Throws InvalidInput if `c` is not a cycle of g.
bool is_non_null_cycle(const LabeledGraph& g, const Walk& c);

struct Separation {
  VertexSet a;
  VertexSet b;

  VertexSet separator() const;
  std::size_t order() const { return separator().size(); }
};

// A ∪ B = V(G), both inside V(G), and no arc joins A∖B to B∖A.
bool is_valid_separation(const LabeledGraph& g, const Separation& sep);

struct Block {
  VertexSet vertices;
  std::vector<ArcId> arcs;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  VertexSet cut_vertices;
};

// Block-cut decomposition of the underlying undirected multigraph. Parallel
// arcs between two vertices form one block; self-loops are ignored; isolated
// vertices are singleton blocks. Blocks are sorted by vertex set.
BlockDecomposition blocks_and_cut_vertices(const LabeledGraph& g);

std::vector<VertexSet> connected_components(const LabeledGraph& g);
// Vertices reachable from `sources` in g (sources absent from g are skipped).
VertexSet reachable_from(const LabeledGraph& g, const VertexSet& sources);

}  // namespace epkit
