#include "epkit/flow.hpp"

#include <algorithm>
#include <queue>

namespace epkit {

VertexFlow::VertexFlow(const std::vector<std::vector<int>>& adjacency,
                       const std::vector<char>& unbounded)
    : n_(static_cast<int>(adjacency.size())), out_(2 * adjacency.size() + 2) {
  for (int v = 0; v < n_; ++v) add_edge(2 * v, 2 * v + 1, unbounded[v] ? kInfinite : 1);
  for (int u = 0; u < n_; ++u) {
    for (int v : adjacency[u]) {
      if (u != v) add_edge(2 * u + 1, 2 * v, kInfinite);
    }
  }
  source_ = 2 * n_;
  sink_ = 2 * n_ + 1;
}

void VertexFlow::add_edge(int from, int to, int cap) {
  out_[from].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({to, cap});
  out_[to].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({from, 0});
}

int VertexFlow::augment(int s, int t) {
  std::vector<int> via(out_.size(), -1);
  std::vector<char> seen(out_.size(), 0);
  std::queue<int> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty() && !seen[t]) {
    const int x = q.front();
    q.pop();
    for (int e : out_[x]) {
      const Edge& edge = edges_[e];
      if (edge.cap <= 0 || seen[edge.to]) continue;
      seen[edge.to] = 1;
      via[edge.to] = e;
      q.push(edge.to);
    }
  }
  if (!seen[t]) return 0;
  int bottleneck = kInfinite;
  for (int x = t; x != s; x = edges_[via[x] ^ 1].to) bottleneck = std::min(bottleneck, edges_[via[x]].cap);
  for (int x = t; x != s; x = edges_[via[x] ^ 1].to) {
    edges_[via[x]].cap -= bottleneck;
    edges_[via[x] ^ 1].cap += bottleneck;
  }
  return bottleneck;
}

int VertexFlow::run(const std::vector<int>& sources, const std::vector<int>& sinks, int limit) {
  for (int v : sources) add_edge(source_, 2 * v, kInfinite);
  for (int v : sinks) add_edge(2 * v + 1, sink_, kInfinite);
  int flow = 0;
  while (flow <= limit) {
    const int pushed = augment(source_, sink_);
    if (pushed == 0) break;
    if (pushed >= kInfinite) return kInfinite;
    flow += pushed;
  }
  return flow;
}

VertexFlow::SinkSide VertexFlow::sink_side() const {
  // Reverse BFS from the sink over residual edges x -> y with cap > 0.
  std::vector<char> reach(out_.size(), 0);
  std::queue<int> q;
  q.push(sink_);
  reach[sink_] = 1;
  while (!q.empty()) {
    const int y = q.front();
    q.pop();
    for (int e : out_[y]) {
      // e is y -> x; its twin x -> y has residual capacity edges_[e ^ 1].cap.
      const int x = edges_[e].to;
      if (reach[x] || edges_[e ^ 1].cap <= 0) continue;
      reach[x] = 1;
      q.push(x);
    }
  }
  SinkSide side{std::vector<char>(n_, 0), std::vector<char>(n_, 0)};
  for (int v = 0; v < n_; ++v) {
    side.in[v] = reach[2 * v];
    side.out[v] = reach[2 * v + 1];
  }
  return side;
}

}  // namespace epkit
