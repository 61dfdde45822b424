#include "epkit/generators.hpp"

#include <random>
#include <utility>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

GroupElement z2(int v) { return canonical(GroupSpec::cyclic(2), {v}); }

}  // namespace

LabeledGraph odd_cycles(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 0 || static_cast<long>(m) > static_cast<long>(n) * (n - 1) / 2) {
    throw InvalidInput("odd_cycles: need n >= 1 and 0 <= m <= n(n-1)/2");
  }
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pairs.size() - 1);
    std::swap(pairs[i], pairs[pick(rng)]);
    auto [u, v] = pairs[i];
    if (rng() & 1) std::swap(u, v);
    arcs.push_back({u, v, z2(1)});
  }
  return LabeledGraph(GroupSpec::cyclic(2), n, std::move(arcs));
}

LabeledGraph escher_wall(int h, int w) {
  if (w < 0) w = h;
  if (h < 2 || w < 2 || (h + w) % 2 != 0) {
    throw InvalidInput("escher_wall: need h, w >= 2 with h + w even");
  }
  std::vector<Arc> arcs;
  auto id = [w](int i, int j) { return i * w + j; };
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (j + 1 < w) arcs.push_back({id(i, j), id(i, j + 1), z2(1)});
      if (i + 1 < h) arcs.push_back({id(i, j), id(i + 1, j), z2(1)});
    }
  }
  for (int i = 0; i < h; ++i) arcs.push_back({id(i, 0), id(h - 1 - i, w - 1), z2(1)});
  return LabeledGraph(GroupSpec::cyclic(2), h * w, std::move(arcs));
}

LabeledGraph zm_grid(int m, int rows, int cols, std::uint64_t seed) {
  if (m < 1 || rows < 1 || cols < 1) throw InvalidInput("zm_grid: parameters must be positive");
  const GroupSpec group = GroupSpec::cyclic(m);
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) arcs.push_back({v, v + 1, random_element(group, rng)});
      if (i + 1 < rows) arcs.push_back({v, v + cols, random_element(group, rng)});
    }
  }
  return LabeledGraph(group, rows * cols, std::move(arcs));
}

LabeledGraph random_graph(int n, int m, const GroupSpec& group, std::uint64_t seed) {
  if (n < 2 && m > 0) throw InvalidInput("random: arcs need at least two vertices");
  if (n < 0 || m < 0) throw InvalidInput("random: parameters must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> vertex(0, std::max(0, n - 1));
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    const int u = vertex(rng);
    int v = vertex(rng);
    while (v == u) v = vertex(rng);
    arcs.push_back({u, v, random_element(group, rng)});
  }
  return LabeledGraph(group, n, std::move(arcs));
}

CliqueInstance subdivided_clique(int ell, const std::string& gadget, bool subdivide) {
  if (ell < 1) throw InvalidInput("subdivided_clique: ell must be positive");
  if (gadget != "none" && gadget != "odd") throw InvalidInput("subdivided_clique: gadget is none or odd");
  if (gadget == "odd" && ell < 2) throw InvalidInput("subdivided_clique: the odd gadget needs ell >= 2");
  std::vector<Arc> arcs;
  CliqueExpansion eta;
  eta.supernodes.resize(ell);
  eta.tree_arcs.resize(ell);
  for (int i = 0; i < ell; ++i) {
    eta.supernodes[i].insert(i);
    eta.centers.push_back(i);
  }
  int next = ell;
  for (int i = 0; i < ell; ++i) {
    for (int j = i + 1; j < ell; ++j) {
      if (!subdivide) {
        eta.edge_map[{i, j}] = static_cast<ArcId>(arcs.size());
        arcs.push_back({i, j, z2(0)});
        continue;
      }
      const int s = next++;
      eta.supernodes[i].insert(s);
      eta.tree_arcs[i].push_back(static_cast<ArcId>(arcs.size()));
      arcs.push_back({i, s, z2(0)});
      eta.edge_map[{i, j}] = static_cast<ArcId>(arcs.size());
      arcs.push_back({s, j, z2(0)});
    }
  }
  if (gadget == "odd") {
    const int a = next++, c = next++, d = next++;
    arcs.push_back({a, c, z2(1)});
    arcs.push_back({c, d, z2(1)});
    arcs.push_back({d, a, z2(1)});
    arcs.push_back({0, a, z2(0)});
    arcs.push_back({1, c, z2(0)});
  }
  return {LabeledGraph(GroupSpec::cyclic(2), next, std::move(arcs)), std::move(eta)};
}

}  // namespace epkit
