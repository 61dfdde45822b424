#pragma once

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include "epkit/generators.hpp"
#include "epkit/labeled_graph.hpp"

namespace testing {

using namespace epkit;

inline LabeledGraph zn_graph(int m, int n, const std::vector<std::tuple<int, int, int>>& arcs) {
  const GroupSpec group = GroupSpec::cyclic(m);
  std::vector<Arc> out;
  for (const auto& [t, h, label] : arcs) out.push_back({t, h, canonical(group, {label})});
  return LabeledGraph(group, n, std::move(out));
}

// Z_2, every arc labeled 1.
inline LabeledGraph odd_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::tuple<int, int, int>> arcs;
  for (const auto& [u, v] : edges) arcs.emplace_back(u, v, 1);
  return zn_graph(2, n, arcs);
}

inline LabeledGraph disjoint_triangles(int count) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < count; ++i) {
    edges.insert(edges.end(), {{3 * i, 3 * i + 1}, {3 * i + 1, 3 * i + 2}, {3 * i + 2, 3 * i}});
  }
  return odd_graph(3 * count, edges);
}

inline LabeledGraph clique(int n, int label = 0, int m = 2) {
  std::vector<std::tuple<int, int, int>> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) arcs.emplace_back(u, v, label);
  }
  return zn_graph(m, n, arcs);
}

inline const std::vector<GroupSpec>& fuzz_groups() {
  static const std::vector<GroupSpec> groups{GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::cyclic(6),
                                             GroupSpec::symmetric(3)};
  return groups;
}

// Random instance with labels biased towards the identity so that both
// clean and non-clean parts appear.
inline LabeledGraph fuzz_graph(std::mt19937_64& rng, int max_n, int max_arcs, const GroupSpec& group) {
  const int n = std::uniform_int_distribution<int>(2, max_n)(rng);
  const int m = std::uniform_int_distribution<int>(0, max_arcs)(rng);
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    const int u = vertex(rng);
    int v = vertex(rng);
    if (v == u && rng() % 4 != 0) v = (u + 1) % n;
    arcs.push_back({u, v, rng() % 3 == 0 ? random_element(group, rng) : identity(group)});
  }
  return LabeledGraph(group, n, std::move(arcs));
}

// Clean clique on 6 or 7 vertices (potential labels) plus 1 to 3 vertices
// with randomly labeled arcs; large enough to reach the clique branch.
inline LabeledGraph dense_fuzz_graph(std::mt19937_64& rng, const GroupSpec& group) {
  const int core = 6 + static_cast<int>(rng() % 2);
  const int n = core + 1 + static_cast<int>(rng() % 3);
  std::vector<GroupElement> pot;
  for (int v = 0; v < n; ++v) pot.push_back(random_element(group, rng));
  std::vector<Arc> arcs;
  for (int u = 0; u < core; ++u) {
    for (int v = u + 1; v < core; ++v) arcs.push_back({u, v, inverse(pot[u]) * pot[v]});
  }
  for (int v = core; v < n; ++v) {
    for (int j = 0; j < 3; ++j) {
      const int u = static_cast<int>(rng() % n);
      if (u != v) arcs.push_back({v, u, random_element(group, rng)});
    }
  }
  return LabeledGraph(group, n, std::move(arcs));
}

// Z_2, every arc labeled 0.
inline LabeledGraph plain(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::tuple<int, int, int>> arcs;
  for (const auto& [u, v] : edges) arcs.emplace_back(u, v, 0);
  return testing::zn_graph(2, n, arcs);
}

inline LabeledGraph random_simple(std::mt19937_64& rng, int n, double density) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return plain(n, edges);
}

// Clique on Z, terminals attached to random Z vertices, a few extra vertices.
struct ReductionInstance {
  LabeledGraph graph;
  VertexSet terminals;
  VertexSet z;
};

inline ReductionInstance reduction_instance(std::mt19937_64& rng, int t) {
  const int zs = 2 * t + 1 + static_cast<int>(rng() % 3);
  const int ts = 2 + static_cast<int>(rng() % (t - 1));
  const int extra = static_cast<int>(rng() % std::max(1, 12 - zs - ts));
  const int n = zs + ts + extra;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < zs; ++u) {
    for (int v = u + 1; v < zs; ++v) edges.emplace_back(u, v);
  }
  std::uniform_int_distribution<int> zpick(0, zs - 1), any(0, n - 1);
  for (int i = zs; i < n; ++i) {
    const int links = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < links; ++j) edges.emplace_back(i, rng() % 2 ? zpick(rng) : any(rng));
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  ReductionInstance out{plain(n, edges), {}, {}};
  for (int i = 0; i < zs; ++i) out.z.insert(i);
  for (int i = zs; i < zs + ts; ++i) out.terminals.insert(i);
  return out;
}


// A: clique on Z = {0..zs-1} with potential labels (clean, not identity),
// X = {zs, zs+1} each attached to one Z vertex; B \ A: 3 vertices with
// random labels.
struct IrrelevantInstance {
  LabeledGraph graph;
  Separation sep;
  VertexSet z;
};

inline IrrelevantInstance irrelevant_instance(std::mt19937_64& rng, const GroupSpec& group, int zs) {
  const int x1 = zs, x2 = zs + 1, n = zs + 5;
  std::vector<GroupElement> pot;
  for (int i = 0; i < n; ++i) pot.push_back(random_element(group, rng));
  std::vector<Arc> arcs;
  auto clean_arc = [&](int u, int v) { arcs.push_back({u, v, inverse(pot[u]) * pot[v]}); };
  for (int u = 0; u < zs; ++u) {
    for (int v = u + 1; v < zs; ++v) clean_arc(u, v);
  }
  clean_arc(x1, static_cast<int>(rng() % zs));
  clean_arc(x2, static_cast<int>(rng() % zs));
  const std::vector<int> side{x1, x2, zs + 2, zs + 3, zs + 4};
  for (int i = 0; i < 6; ++i) {
    const int u = side[rng() % side.size()], v = side[rng() % side.size()];
    if (u == v || (u <= x2 && v <= x2)) continue;
    arcs.push_back({u, v, random_element(group, rng)});
  }
  IrrelevantInstance out{LabeledGraph(group, n, arcs), {{}, {side.begin(), side.end()}}, {}};
  for (int i = 0; i <= x2; ++i) out.sep.a.insert(i);
  for (int i = 0; i < zs; ++i) out.z.insert(i);
  return out;
}

}  // namespace testing
