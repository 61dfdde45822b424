#include "epkit/cuts.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>

#include "epkit/cycle_space.hpp"
#include "epkit/errors.hpp"
#include "epkit/flow.hpp"

namespace epkit {

namespace {

// Simple undirected view: no labels, no loops, no parallel edges.
struct Undirected {
  std::vector<std::vector<int>> adj;
  std::vector<char> present;

  int size() const { return static_cast<int>(adj.size()); }
};

Undirected undirected_view(const LabeledGraph& g, int extra = 0) {
  const int n = g.universe_size();
  Undirected u{std::vector<std::vector<int>>(n + extra), std::vector<char>(n + extra, 0)};
  for (Vertex v : g.vertices()) u.present[v] = 1;
  for (ArcId a : g.arc_ids()) {
    const Arc& arc = g.arc(a);
    if (arc.tail == arc.head) continue;
    u.adj[arc.tail].push_back(arc.head);
    u.adj[arc.head].push_back(arc.tail);
  }
  for (auto& list : u.adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return u;
}

void add_edge(Undirected& u, int a, int b) {
  u.adj[a].push_back(b);
  u.adj[b].push_back(a);
}

// BFS from `sources` avoiding `blocked`.
std::vector<char> bfs(const Undirected& u, const std::vector<int>& sources,
                      const std::vector<char>& blocked) {
  std::vector<char> seen(u.size(), 0);
  std::queue<int> q;
  for (int s : sources) {
    if (!u.present[s] || blocked[s] || seen[s]) continue;
    seen[s] = 1;
    q.push(s);
  }
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : u.adj[x]) {
      if (!u.present[y] || blocked[y] || seen[y]) continue;
      seen[y] = 1;
      q.push(y);
    }
  }
  return seen;
}

std::vector<int> members(const std::vector<char>& mask) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

std::vector<char> mask_of(const VertexSet& s, int n) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) m[v] = 1;
  return m;
}

VertexSet set_of(const std::vector<char>& mask) {
  VertexSet s;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v) {
    if (mask[v]) s.insert(v);
  }
  return s;
}

bool separates_in(const Undirected& u, const VertexSet& x, const VertexSet& y, const VertexSet& s) {
  const auto blocked = mask_of(s, u.size());
  const auto seen = bfs(u, {x.begin(), x.end()}, blocked);
  return std::none_of(y.begin(), y.end(), [&](int v) { return seen[v]; });
}

VertexSet reach_in(const Undirected& u, const VertexSet& x, const VertexSet& s) {
  return set_of(bfs(u, {x.begin(), x.end()}, mask_of(s, u.size())));
}

bool adjacent_sets(const Undirected& u, const VertexSet& x, const VertexSet& y) {
  for (int a : x) {
    for (int b : u.adj[a]) {
      if (y.count(b)) return true;
    }
  }
  return false;
}

class SeparatorBrancher {
 public:
  SeparatorBrancher(const Undirected& u, const VertexSet& y) : u_(u), y_(mask_of(y, u.size())) {}

  std::vector<VertexSet> run(const VertexSet& x, int k) {
    found_.clear();
    std::vector<char> deleted(u_.size(), 0);
    recurse(deleted, mask_of(x, u_.size()), k, {});
    return found_;
  }

 private:
  void recurse(std::vector<char>& deleted, const std::vector<char>& x, int k, VertexSet prefix) {
    std::vector<std::vector<int>> adj(u_.size());
    std::vector<char> unbounded(u_.size(), 0);
    for (int v = 0; v < u_.size(); ++v) {
      unbounded[v] = x[v] || y_[v];
      if (!u_.present[v] || deleted[v]) continue;
      for (int w : u_.adj[v]) {
        if (u_.present[w] && !deleted[w]) adj[v].push_back(w);
      }
    }
    VertexFlow flow(adj, unbounded);
    const int lambda = flow.run(members(x), members(y_), k);
    if (lambda > k) return;
    if (lambda == 0) {
      found_.push_back(std::move(prefix));
      return;
    }
    const auto side = flow.sink_side();
    std::vector<char> cut(u_.size(), 0);
    int pivot = -1;
    for (int v = 0; v < u_.size(); ++v) {
      if (!u_.present[v] || deleted[v] || side.in[v] || !side.out[v]) continue;
      cut[v] = 1;
      if (pivot < 0) pivot = v;
    }
    std::vector<char> blocked = deleted;
    for (int v = 0; v < u_.size(); ++v) blocked[v] = blocked[v] || cut[v];
    const auto furthest = bfs(u_, members(x), blocked);

    deleted[pivot] = 1;
    VertexSet with = prefix;
    with.insert(pivot);
    recurse(deleted, furthest, k - 1, std::move(with));
    deleted[pivot] = 0;

    auto grown = furthest;
    grown[pivot] = 1;
    recurse(deleted, grown, k, std::move(prefix));
  }

  const Undirected& u_;
  std::vector<char> y_;
  std::vector<VertexSet> found_;
};

bool less_by_size(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Important separators of an undirected view; X, Y assumed disjoint and
// non-adjacent.
std::vector<ImportantSeparator> important_in(const Undirected& u, const VertexSet& x,
                                             const VertexSet& y, int k) {
  SeparatorBrancher brancher(u, y);
  auto raw = brancher.run(x, k);
  std::sort(raw.begin(), raw.end(), less_by_size);
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  std::vector<ImportantSeparator> candidates;
  for (const VertexSet& s : raw) {
    if (!separates_in(u, x, y, s)) continue;
    bool minimal = true;
    for (Vertex v : s) {
      VertexSet smaller = s;
      smaller.erase(v);
      if (separates_in(u, x, y, smaller)) {
        minimal = false;
        break;
      }
    }
    if (minimal) candidates.push_back({s, reach_in(u, x, s)});
  }

  std::vector<ImportantSeparator> out;
  for (const auto& c : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const auto& o) {
      return o.separator.size() <= c.separator.size() && o.reach.size() > c.reach.size() &&
             std::includes(o.reach.begin(), o.reach.end(), c.reach.begin(), c.reach.end());
    });
    if (!dominated) out.push_back(c);
  }
  return out;
}

void require_vertices(const LabeledGraph& g, const VertexSet& s, const char* what) {
  for (Vertex v : s) {
    if (!g.has_vertex(v)) {
      throw InvalidInput(std::string(what) + " names unknown vertex " + std::to_string(v));
    }
  }
}

bool disjoint(const VertexSet& a, const VertexSet& b) {
  return std::none_of(a.begin(), a.end(), [&](Vertex v) { return b.count(v) > 0; });
}

// Calls f on every k-subset of `items` in lexicographic order; stops when f
// returns false. Returns false iff stopped early.
template <class F>
bool for_each_subset(const std::vector<int>& items, int k, F&& f) {
  const int n = static_cast<int>(items.size());
  if (k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> chosen(k);
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = items[idx[i]];
    if (!f(chosen)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

bool linked(const Undirected& u, const std::vector<int>& x1, const std::vector<int>& x2) {
  VertexFlow flow(u.adj, std::vector<char>(u.size(), 0));
  const int need = static_cast<int>(x1.size());
  return flow.run(x1, x2, need) >= need;
}

}  // namespace

VertexSet reach(const LabeledGraph& g, const VertexSet& x, const VertexSet& s) {
  require_vertices(g, x, "reach");
  require_vertices(g, s, "reach");
  return reach_in(undirected_view(g), x, s);
}

bool separates(const LabeledGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& s) {
  require_vertices(g, x, "separator check");
  require_vertices(g, y, "separator check");
  require_vertices(g, s, "separator check");
  if (!disjoint(s, x) || !disjoint(s, y)) return false;
  return separates_in(undirected_view(g), x, y, s);
}

ImportantSeparators enumerate_important_separators(const LabeledGraph& g, const VertexSet& x,
                                                   const VertexSet& y, int k) {
  require_vertices(g, x, "important separators: X");
  require_vertices(g, y, "important separators: Y");
  if (!disjoint(x, y)) throw InvalidInput("important separators: X and Y overlap");
  if (k < 0) throw InvalidInput("important separators: k must be non-negative");
  const Undirected u = undirected_view(g);
  if (adjacent_sets(u, x, y)) return {false, {}};
  return {true, important_in(u, x, y, k)};
}

std::vector<Partition> set_partitions(const VertexSet& t) {
  const std::vector<Vertex> items(t.begin(), t.end());
  const int n = static_cast<int>(items.size());
  std::vector<Partition> out;
  if (n == 0) return {Partition{}};
  std::vector<int> rgs(n, 0);
  while (true) {
    const int parts = *std::max_element(rgs.begin(), rgs.end()) + 1;
    Partition p(parts);
    for (int i = 0; i < n; ++i) p[rgs[i]].insert(items[i]);
    out.push_back(std::move(p));
    // Next restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1]).
    int i = n - 1;
    for (; i > 0; --i) {
      const int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] <= prefix_max) break;
    }
    if (i == 0) break;
    ++rgs[i];
    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
  }
  return out;
}

VertexSet MultiwayCutInstance::terminals() const {
  VertexSet t;
  for (const auto& part : parts) t.insert(part.begin(), part.end());
  return t;
}

void validate(const MultiwayCutInstance& inst) {
  if (inst.parts.size() < 2) throw InvalidInput("multiway cut: need at least two parts");
  std::size_t total = 0;
  for (const auto& part : inst.parts) {
    if (part.empty()) throw InvalidInput("multiway cut: empty part");
    require_vertices(inst.graph, part, "multiway cut");
    total += part.size();
  }
  if (inst.terminals().size() != total) throw InvalidInput("multiway cut: parts overlap");
}

bool is_multiway_cut(const MultiwayCutInstance& inst, const VertexSet& s) {
  validate(inst);
  require_vertices(inst.graph, s, "multiway cut");
  if (!disjoint(s, inst.terminals())) throw InvalidInput("multiway cut meets the terminals");
  const Undirected u = undirected_view(inst.graph);
  const auto blocked = mask_of(s, u.size());
  for (std::size_t i = 0; i + 1 < inst.parts.size(); ++i) {
    const auto seen = bfs(u, {inst.parts[i].begin(), inst.parts[i].end()}, blocked);
    for (std::size_t j = i + 1; j < inst.parts.size(); ++j) {
      for (Vertex v : inst.parts[j]) {
        if (seen[v]) return false;
      }
    }
  }
  return true;
}

bool is_minimal_multiway_cut(const MultiwayCutInstance& inst, const VertexSet& s) {
  if (!is_multiway_cut(inst, s)) return false;
  for (Vertex v : s) {
    VertexSet smaller = s;
    smaller.erase(v);
    if (is_multiway_cut(inst, smaller)) return false;
  }
  return true;
}

bool is_p_linked(const LabeledGraph& g, const VertexSet& z, int p) {
  require_vertices(g, z, "well-linked check");
  if (p < 0) throw InvalidInput("well-linked check: p must be non-negative");
  const int size = static_cast<int>(z.size());
  p = std::min(p, size);
  if (p == 0) return true;
  // With |Z| >= 2p a linkage for smaller sets extends to size p by adding the
  // same unused vertices to both sides, so size p alone suffices.
  const int from = size >= 2 * p ? p : 1;
  std::uint64_t pairs = 0;
  for (int s = from; s <= p; ++s) pairs += binomial(size, s) * binomial(size, s);
  if (pairs > 5'000'000) {
    throw GuardExceeded("well-linked check: " + std::to_string(pairs) + " subset pairs");
  }
  const Undirected u = undirected_view(g);
  const std::vector<int> items(z.begin(), z.end());
  for (int s = from; s <= p; ++s) {
    const bool ok = for_each_subset(items, s, [&](const std::vector<int>& x1) {
      return for_each_subset(items, s, [&](const std::vector<int>& x2) {
        if (x2 < x1) return true;
        return linked(u, x1, x2);
      });
    });
    if (!ok) return false;
  }
  return true;
}

WellLinkedWitness verify_well_linked(const LabeledGraph& g, const VertexSet& z) {
  const int p = static_cast<int>(z.size()) / 2;
  return {z, p, is_p_linked(g, z, p)};
}

TwReduction tw_reduction_set(const LabeledGraph& g, int t, const VertexSet& terminals,
                             const VertexSet& z, const TwReductionOptions& options) {
  if (t <= 1) throw PreconditionFailed("tw reduction: t must exceed 1");
  require_vertices(g, terminals, "tw reduction: T");
  require_vertices(g, z, "tw reduction: Z");
  if (options.check_preconditions) {
    if (static_cast<int>(terminals.size()) > t) throw PreconditionFailed("tw reduction: |T| > t");
    if (!disjoint(terminals, z)) throw PreconditionFailed("tw reduction: Z meets T");
    const auto zs = static_cast<int>(z.size());
    if (options.mode == ThresholdMode::Paper && zs < 7 * t) {
      throw PreconditionFailed("tw reduction: |Z| < 7t");
    }
    if (options.mode == ThresholdMode::Small && zs <= 2 * t) {
      throw PreconditionFailed("tw reduction: |Z| <= 2t");
    }
    if (!verify_well_linked(g, z).verified) {
      throw PreconditionFailed("tw reduction: Z is not well-linked");
    }
  }
  const int budget = options.separator_budget >= 0 ? options.separator_budget : 2 * t;

  // G*: apex q joined to every z through a private subdivision vertex.
  const int n = g.universe_size();
  Undirected star = undirected_view(g, 1 + static_cast<int>(z.size()));
  const int apex = n;
  star.present[apex] = 1;
  int next = n + 1;
  for (Vertex v : z) {
    star.present[next] = 1;
    add_edge(star, v, next);
    add_edge(star, next, apex);
    ++next;
  }

  TwReduction result;
  const auto partitions = set_partitions(terminals);
  result.partitions_enumerated = static_cast<int>(partitions.size());
  std::uint64_t cap = 1;
  for (std::size_t i = 0; i < terminals.size(); ++i) cap *= terminals.size();
  if (static_cast<std::uint64_t>(partitions.size()) > std::max<std::uint64_t>(cap, 1)) {
    throw std::logic_error("tw reduction: partition count above |T|^|T|");
  }

  for (const Partition& partition : partitions) {
    if (partition.size() < 2) continue;
    PartitionContribution entry{partition, {}, 0};
    for (const VertexSet& part : partition) {
      VertexSet y{apex};
      for (Vertex v : terminals) {
        if (!part.count(v)) y.insert(v);
      }
      if (adjacent_sets(star, part, y)) continue;
      for (const auto& sep : important_in(star, part, y, budget)) {
        ++entry.separators;
        for (Vertex v : z) {
          if (sep.reach.count(v) || (options.include_separator_hits && sep.separator.count(v))) {
            entry.contribution.insert(v);
          }
        }
      }
    }
    result.set.insert(entry.contribution.begin(), entry.contribution.end());
    result.partitions.push_back(std::move(entry));
  }
  return result;
}

IrrelevantVertex find_irrelevant_vertex(const LabeledGraph& g, const Separation& sep,
                                        const VertexSet& z, int p, [[maybe_unused]] int k,
                                        const IrrelevantOptions& options) {
  require_vertices(g, z, "irrelevant vertex: Z");
  if (!is_valid_separation(g, sep)) throw PreconditionFailed("irrelevant vertex: invalid separation");
  const VertexSet x = sep.separator();
  const int order = static_cast<int>(x.size());
  if (order <= 1) throw PreconditionFailed("irrelevant vertex: |A ∩ B| <= 1");
  if (order > p) throw PreconditionFailed("irrelevant vertex: |A ∩ B| > p");
  for (Vertex v : z) {
    if (!sep.a.count(v) || sep.b.count(v)) {
      throw PreconditionFailed("irrelevant vertex: Z is not inside A ∖ B");
    }
  }
  if (!is_clean(g, sep.a)) throw PreconditionFailed("irrelevant vertex: G[A] is not clean");
  const auto zs = static_cast<std::uint64_t>(z.size());
  if (options.mode == ThresholdMode::Paper && (zs == 0 || linkage_z_bound(p).exceeds(zs - 1))) {
    throw PreconditionFailed("irrelevant vertex: |Z| <= 2^p p^(6p)");
  }
  if (options.mode == ThresholdMode::Small && zs <= 2 * static_cast<std::uint64_t>(p)) {
    throw PreconditionFailed("irrelevant vertex: |Z| <= 2p");
  }
  const LabeledGraph ga = untangle(g, sep.a).induced_subgraph(sep.a);
  if (options.check_well_linked && !verify_well_linked(ga, z).verified) {
    throw PreconditionFailed("irrelevant vertex: Z is not well-linked in G[A]");
  }

  IrrelevantVertex result;
  const std::vector<Vertex> xs(x.begin(), x.end());
  for (std::uint32_t mask = 0; mask + 1 < (1u << order); ++mask) {
    VertexSet j, rest;
    for (int i = 0; i < order; ++i) ((mask >> i) & 1u ? j : rest).insert(xs[i]);
    ++result.subsets_examined;
    if (rest.size() <= 1) continue;
    TwReductionOptions tw;
    tw.mode = options.mode;
    tw.check_preconditions = false;
    tw.separator_budget = static_cast<int>(rest.size()) + order;
    const auto reduced =
        tw_reduction_set(ga.without_vertices(j), static_cast<int>(rest.size()), rest, z, tw);
    result.excluded.insert(reduced.set.begin(), reduced.set.end());
  }
  for (Vertex v : z) {
    if (!result.excluded.count(v)) {
      result.vertex = v;
      return result;
    }
  }
  throw PreconditionFailed("irrelevant vertex: every vertex of Z is excluded");
}

}  // namespace epkit
