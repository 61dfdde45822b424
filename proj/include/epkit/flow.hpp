#pragma once

#include <vector>

namespace epkit {

/// Max flow on an undirected graph with vertex capacities, realised by
/// splitting every vertex v into v_in -> v_out. Vertices are 0..n-1; a
/// vertex is either unit-capacity or unbounded. Augmenting paths are found by
/// BFS in adjacency order, so results are deterministic.
class VertexFlow {
 public:
  static constexpr int kInfinite = 1 << 29;

  VertexFlow(const std::vector<std::vector<int>>& adjacency, const std::vector<char>& unbounded);

  // Pushes flow from `sources` to `sinks` until none remains or the value
  // exceeds `limit`. Returns the flow value (kInfinite when a source is
  // joined to a sink through unbounded vertices only).
  // Call at most once per instance.
  int run(const std::vector<int>& sources, const std::vector<int>& sinks, int limit = kInfinite);

  // After run(): per vertex, whether its in-node and out-node still reach
  // the sink in the residual network. Saturated vertices with only the
  // out-node reaching the sink form the minimum cut closest to the sinks.
  struct SinkSide {
    std::vector<char> in;
    std::vector<char> out;
  };
  SinkSide sink_side() const;

 private:
  struct Edge {
    int to;
    int cap;
  };
  void add_edge(int from, int to, int cap);
  int augment(int s, int t);

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  int source_ = -1;
  int sink_ = -1;
};

}  // namespace epkit
