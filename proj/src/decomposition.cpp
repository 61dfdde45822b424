#include "epkit/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

std::vector<std::set<Vertex>> simple_adjacency(const LabeledGraph& g) {
  std::vector<std::set<Vertex>> adj(g.universe_size());
  for (ArcId a : g.arc_ids()) {
    const Arc& arc = g.arc(a);
    if (arc.tail == arc.head) continue;
    adj[arc.tail].insert(arc.head);
    adj[arc.head].insert(arc.tail);
  }
  return adj;
}

std::vector<Vertex> exact_order(const LabeledGraph& g) {
  const std::vector<Vertex> vs = g.vertices();
  const int m = static_cast<int>(vs.size());
  if (m > kExactTreewidthLimit) {
    throw GuardExceeded("exact treewidth is limited to " + std::to_string(kExactTreewidthLimit) +
                        " vertices");
  }
  std::vector<int> index(g.universe_size(), -1);
  for (int i = 0; i < m; ++i) index[vs[i]] = i;
  const auto adj = simple_adjacency(g);
  std::vector<std::uint32_t> nbr(m, 0);
  for (int i = 0; i < m; ++i) {
    for (Vertex w : adj[vs[i]]) nbr[i] |= 1u << index[w];
  }

  // |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S.
  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v;
    std::uint32_t frontier = 1u << v;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[__builtin_ctz(f)];
      next &= ~seen;
      seen |= next;
      frontier = next & s;
    }
    return __builtin_popcount(seen & ~s & ~(1u << v));
  };

  const std::uint32_t full = m == 32 ? ~0u : (1u << m) - 1;
  std::vector<std::int8_t> tw(std::size_t{1} << m, 0);
  std::vector<std::int8_t> last(std::size_t{1} << m, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = __builtin_ctz(rest);
      const std::uint32_t without = s & ~(1u << v);
      const int value = std::max<int>(tw[without], q_size(without, v));
      if (value < best) {
        best = value;
        last[s] = static_cast<std::int8_t>(v);
      }
    }
    tw[s] = static_cast<std::int8_t>(best);
    if (s == full) break;
  }

  std::vector<Vertex> order(m);
  std::uint32_t s = full;
  for (int pos = m - 1; pos >= 0; --pos) {
    const int v = last[s];
    order[pos] = vs[v];
    s &= ~(1u << v);
  }
  return order;
}

std::vector<Vertex> min_fill_order(const LabeledGraph& g) {
  auto adj = simple_adjacency(g);
  std::set<Vertex> remaining = g.vertex_set();
  std::vector<Vertex> order;
  while (!remaining.empty()) {
    Vertex best = -1;
    long best_fill = -1;
    for (Vertex v : remaining) {
      long fill = 0;
      for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
        for (auto j = std::next(i); j != adj[v].end(); ++j) {
          if (!adj[*i].count(*j)) ++fill;
        }
      }
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    for (Vertex a : adj[best]) {
      for (Vertex b : adj[best]) {
        if (a != b) adj[a].insert(b);
      }
      adj[a].erase(best);
    }
    adj[best].clear();
    remaining.erase(best);
    order.push_back(best);
  }
  return order;
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& [node, bag] : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

TreeDecomposition decomposition_from_order(const LabeledGraph& g, const std::vector<Vertex>& order) {
  const std::vector<Vertex> vs = g.vertices();
  if (order.size() != vs.size()) throw InvalidInput("elimination order does not cover the graph");
  std::vector<int> position(g.universe_size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!g.has_vertex(order[i]) || position[order[i]] >= 0) {
      throw InvalidInput("elimination order is not a permutation of the vertices");
    }
    position[order[i]] = static_cast<int>(i);
  }

  TreeDecomposition td;
  if (order.empty()) {
    td.nodes = {0};
    td.bags[0] = {};
    return td;
  }
  auto adj = simple_adjacency(g);
  std::vector<int> roots;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    VertexSet later;
    for (Vertex w : adj[v]) {
      if (position[w] > static_cast<int>(i)) later.insert(w);
    }
    for (Vertex a : later) {
      for (Vertex b : later) {
        if (a != b) adj[a].insert(b);
      }
    }
    const int node = static_cast<int>(i);
    td.nodes.push_back(node);
    VertexSet bag = later;
    bag.insert(v);
    td.bags[node] = std::move(bag);
    if (later.empty()) {
      roots.push_back(node);
    } else {
      int first = static_cast<int>(order.size());
      for (Vertex w : later) first = std::min(first, position[w]);
      td.parent[node] = first;
    }
  }
  // Chain the component trees below the last root.
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) td.parent[roots[i]] = roots.back();
  return td;
}

TreeDecomposition tree_decomposition(const LabeledGraph& g, TwMode mode) {
  return decomposition_from_order(g, mode == TwMode::Exact ? exact_order(g) : min_fill_order(g));
}

std::string decomposition_violation(const LabeledGraph& g, const TreeDecomposition& td) {
  if (td.nodes.empty()) return "no nodes";
  std::set<int> nodes(td.nodes.begin(), td.nodes.end());
  if (nodes.size() != td.nodes.size()) return "duplicate node id";
  int roots = 0;
  for (int n : td.nodes) {
    if (!td.bags.count(n)) return "node " + std::to_string(n) + " has no bag";
    auto it = td.parent.find(n);
    if (it == td.parent.end()) {
      ++roots;
    } else if (!nodes.count(it->second)) {
      return "node " + std::to_string(n) + " has an unknown parent";
    }
  }
  for (const auto& [n, p] : td.parent) {
    if (!nodes.count(n)) return "parent entry for unknown node " + std::to_string(n);
  }
  for (const auto& [n, bag] : td.bags) {
    if (!nodes.count(n)) return "bag for unknown node " + std::to_string(n);
    for (Vertex v : bag) {
      if (!g.has_vertex(v)) return "bag " + std::to_string(n) + " names unknown vertex";
    }
  }
  if (roots != 1) return "expected exactly one root, found " + std::to_string(roots);
  for (int n : td.nodes) {
    int x = n;
    for (std::size_t steps = 0; td.parent.count(x); ++steps) {
      if (steps > td.nodes.size()) return "parent map contains a cycle";
      x = td.parent.at(x);
    }
  }

  for (Vertex v : g.vertices()) {
    int holders = 0;
    int tops = 0;
    for (int n : td.nodes) {
      if (!td.bags.at(n).count(v)) continue;
      ++holders;
      auto it = td.parent.find(n);
      if (it == td.parent.end() || !td.bags.at(it->second).count(v)) ++tops;
    }
    if (holders == 0) return "vertex " + std::to_string(v) + " is in no bag";
    if (tops != 1) return "bags containing vertex " + std::to_string(v) + " are not connected";
  }
  for (ArcId a : g.arc_ids()) {
    const Arc& arc = g.arc(a);
    const bool covered = std::any_of(td.nodes.begin(), td.nodes.end(), [&](int n) {
      const auto& bag = td.bags.at(n);
      return bag.count(arc.tail) && bag.count(arc.head);
    });
    if (!covered) return "arc " + std::to_string(a) + " is in no bag";
  }
  return {};
}

PackingOrCover packing_or_cover_bounded_tw(const LabeledGraph& g, int k, const TreeDecomposition& td) {
  if (k < 1) throw InvalidInput("packing_or_cover_bounded_tw: k must be positive");
  if (auto why = decomposition_violation(g, td); !why.empty()) {
    throw InvalidInput("invalid tree decomposition: " + why);
  }
  std::map<int, std::vector<int>> children;
  int root = -1;
  for (int n : td.nodes) {
    if (auto it = td.parent.find(n); it != td.parent.end()) {
      children[it->second].push_back(n);
    } else {
      root = n;
    }
  }
  std::vector<int> post;
  std::function<void(int)> visit = [&](int n) {
    for (int c : children[n]) visit(c);
    post.push_back(n);
  };
  visit(root);

  PackingCertificate packing;
  VertexSet cover;
  VertexSet removed;
  for (int level = k; level >= 1; --level) {
    const LabeledGraph current = g.without_vertices(removed);
    auto witness = find_non_null_cycle(current);
    if (!witness) {
      GfvsCertificate cert = verify_gfvs(g, cover);
      if (!cert.verified) throw std::logic_error("bounded-treewidth cover failed to verify");
      return cert;
    }
    if (level == 1) {
      packing.cycles.push_back(std::move(*witness));
      return packing;
    }
    // Lowest node whose subtree induces a non-clean graph.
    std::map<int, VertexSet> alpha;
    for (int n : post) {
      VertexSet a;
      for (Vertex v : td.bags.at(n)) {
        if (current.has_vertex(v)) a.insert(v);
      }
      for (int c : children[n]) a.insert(alpha[c].begin(), alpha[c].end());
      auto cycle = find_non_null_cycle(current.induced_subgraph(a));
      if (cycle) {
        packing.cycles.push_back(std::move(*cycle));
        for (Vertex v : td.bags.at(n)) {
          if (current.has_vertex(v)) cover.insert(v);
        }
        removed.insert(a.begin(), a.end());
        break;
      }
      alpha[n] = std::move(a);
    }
  }
  throw std::logic_error("bounded-treewidth recursion fell through");
}

}  // namespace epkit
