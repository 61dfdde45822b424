#include "epkit/cycle_space.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <unordered_set>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

struct Forest {
  std::vector<int> parent_arc;  // -1 for roots / unvisited
  std::vector<int> depth;
  std::vector<std::optional<GroupElement>> potential;
};

// Steps from x up to its ancestor `top`.
std::vector<Step> climb(const LabeledGraph& g, const Forest& f, Vertex x, Vertex top) {
  std::vector<Step> steps;
  while (x != top) {
    const ArcId a = f.parent_arc[x];
    steps.push_back({a, g.direction_from(a, x)});
    x = g.other_end(a, x);
  }
  return steps;
}

Walk tree_cycle(const LabeledGraph& g, const Forest& f, ArcId violated) {
  const Arc& arc = g.arc(violated);
  const Vertex u = arc.tail;
  const Vertex v = arc.head;
  Vertex x = v;
  Vertex y = u;
  while (f.depth[x] > f.depth[y]) x = g.other_end(f.parent_arc[x], x);
  while (f.depth[y] > f.depth[x]) y = g.other_end(f.parent_arc[y], y);
  while (x != y) {
    x = g.other_end(f.parent_arc[x], x);
    y = g.other_end(f.parent_arc[y], y);
  }
  const Vertex lca = x;
  Walk w;
  w.start = u;
  w.steps.push_back({violated, Direction::Forward});
  const auto up = climb(g, f, v, lca);
  w.steps.insert(w.steps.end(), up.begin(), up.end());
  auto down = climb(g, f, u, lca);
  std::reverse(down.begin(), down.end());
  for (Step s : down) {
    s.dir = s.dir == Direction::Forward ? Direction::Reverse : Direction::Forward;
    w.steps.push_back(s);
  }
  return w;
}

class PathSearch {
 public:
  PathSearch(const LabeledGraph& g, Vertex target, const GroupElement& avoid, ArcId skip)
      : g_(g), target_(target), avoid_(avoid), skip_(skip),
        visited_(g.universe_size(), 0), memo_enabled_(g.universe_size() <= 64) {}

  std::optional<Walk> run(Vertex source) {
    if (!g_.has_vertex(source) || !g_.has_vertex(target_) || source == target_) return std::nullopt;
    Walk w;
    w.start = source;
    visited_[source] = 1;
    mask_ = bit(source);
    if (dfs(source, identity(g_.group()), w)) return w;
    return std::nullopt;
  }

 private:
  struct State {
    std::uint64_t mask;
    Vertex at;
    GroupElement value;
    bool operator==(const State& o) const {
      return mask == o.mask && at == o.at && value == o.value;
    }
  };
  struct StateHash {
    std::size_t operator()(const State& s) const {
      return s.mask * 0x9e3779b97f4a7c15ULL ^ (static_cast<std::size_t>(s.at) << 1) ^ s.value.hash();
    }
  };

  static std::uint64_t bit(Vertex v) { return v < 64 ? (std::uint64_t{1} << v) : 0; }

  bool target_reachable(Vertex from) const {
    std::vector<char> seen(g_.universe_size(), 0);
    std::vector<Vertex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (ArcId a : g_.incident(x)) {
        if (a == skip_) continue;
        const Vertex y = g_.other_end(a, x);
        if (y == target_) return true;
        if (seen[y] || visited_[y]) continue;
        seen[y] = 1;
        stack.push_back(y);
      }
    }
    return false;
  }

  bool dfs(Vertex at, const GroupElement& value, Walk& w) {
    if (memo_enabled_ && dead_.count(State{mask_, at, value})) return false;
    if (!target_reachable(at)) {
      if (memo_enabled_) dead_.insert(State{mask_, at, value});
      return false;
    }
    for (ArcId a : g_.incident(at)) {
      if (a == skip_) continue;
      const Vertex next = g_.other_end(a, at);
      if (next == at || visited_[next]) continue;
      const Direction dir = g_.direction_from(a, at);
      const GroupElement nv = value * g_.traversal_label(a, dir);
      w.steps.push_back({a, dir});
      if (next == target_) {
        if (nv != avoid_) return true;
        w.steps.pop_back();
        continue;
      }
      visited_[next] = 1;
      mask_ |= bit(next);
      if (dfs(next, nv, w)) return true;
      visited_[next] = 0;
      mask_ &= ~bit(next);
      w.steps.pop_back();
    }
    if (memo_enabled_) dead_.insert(State{mask_, at, value});
    return false;
  }

  const LabeledGraph& g_;
  Vertex target_;
  GroupElement avoid_;
  ArcId skip_;
  std::vector<char> visited_;
  std::uint64_t mask_ = 0;
  bool memo_enabled_;
  std::unordered_set<State, StateHash> dead_;
};

}  // namespace

LabelingResult find_consistent_labeling(const LabeledGraph& g) {
  const int n = g.universe_size();
  Forest f{std::vector<int>(n, -1), std::vector<int>(n, 0),
           std::vector<std::optional<GroupElement>>(n)};
  const GroupElement one = identity(g.group());

  for (Vertex root : g.vertices()) {
    if (f.potential[root]) continue;
    f.potential[root] = one;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (ArcId a : g.incident(u)) {
        const Vertex v = g.other_end(a, u);
        if (f.potential[v]) continue;
        const Direction dir = g.direction_from(a, u);
        f.potential[v] = *f.potential[u] * g.traversal_label(a, dir);
        f.parent_arc[v] = a;
        f.depth[v] = f.depth[u] + 1;
        q.push(v);
      }
    }
  }

  for (ArcId id : g.arc_ids()) {
    const Arc& a = g.arc(id);
    if (*f.potential[a.head] == *f.potential[a.tail] * a.label) continue;
    if (a.tail == a.head) return Walk{a.tail, {{id, Direction::Forward}}};
    return tree_cycle(g, f, id);
  }

  ConsistentLabeling labeling;
  for (Vertex v : g.vertices()) labeling.values.emplace(v, *f.potential[v]);
  return labeling;
}

std::optional<Walk> find_non_null_cycle(const LabeledGraph& g) {
  auto r = find_consistent_labeling(g);
  if (auto* w = std::get_if<Walk>(&r)) return std::move(*w);
  return std::nullopt;
}

bool is_clean(const LabeledGraph& g) { return !find_non_null_cycle(g).has_value(); }

bool is_clean(const LabeledGraph& g, const VertexSet& s) {
  return is_clean(g.induced_subgraph(s));
}

LabeledGraph untangle(const LabeledGraph& g, const VertexSet& a) {
  if (a.empty()) return g;
  const auto result = find_consistent_labeling(g.induced_subgraph(a));
  const auto* lab = std::get_if<ConsistentLabeling>(&result);
  if (!lab) throw InvalidInput("untangle: the induced subgraph is not clean");

  std::vector<GroupElement> labels;
  labels.reserve(g.arc_universe_size());
  for (ArcId id = 0; id < g.arc_universe_size(); ++id) {
    const Arc& arc = g.arc(id);
    GroupElement label = arc.label;
    if (g.has_arc(id)) {
      if (auto it = lab->values.find(arc.tail); it != lab->values.end()) label = it->second * label;
      if (auto it = lab->values.find(arc.head); it != lab->values.end()) {
        label = label * inverse(it->second);
      }
    }
    labels.push_back(std::move(label));
  }
  return g.relabeled(std::move(labels));
}

GfvsCertificate verify_gfvs(const LabeledGraph& g, const VertexSet& x) {
  for (Vertex v : x) {
    if (!g.has_vertex(v)) throw InvalidInput("gfvs names unknown vertex " + std::to_string(v));
  }
  return GfvsCertificate{x, is_clean(g.without_vertices(x))};
}

std::string to_string(Integrality i) {
  return i == Integrality::Integral ? "integral" : "half_integral";
}

std::vector<ArcId> cycle_key(const Walk& c) {
  std::vector<ArcId> key;
  for (const Step& s : c.steps) key.push_back(s.arc);
  std::sort(key.begin(), key.end());
  return key;
}

std::string packing_violation(const LabeledGraph& g, const PackingCertificate& p) {
  const int cap = p.integrality == Integrality::Integral ? 1 : 2;
  std::vector<int> use(g.universe_size(), 0);
  std::set<std::vector<ArcId>> seen;
  for (std::size_t i = 0; i < p.cycles.size(); ++i) {
    const Walk& c = p.cycles[i];
    const std::string tag = "cycle " + std::to_string(i);
    try {
      if (!is_cycle(g, c)) return tag + " is not a cycle";
    } catch (const InvalidInput& e) {
      return tag + ": " + e.what();
    }
    if (walk_value(g, c).is_identity()) return tag + " is null";
    if (!seen.insert(cycle_key(c)).second) return tag + " repeats an earlier cycle";
    auto vs = walk_vertices(g, c);
    vs.pop_back();
    for (Vertex v : vs) {
      if (++use[v] > cap) return "vertex " + std::to_string(v) + " used by too many cycles";
    }
  }
  return {};
}

std::optional<Walk> path_with_value_other_than(const LabeledGraph& g, Vertex u, Vertex v,
                                               const GroupElement& avoid_value, ArcId skip_arc) {
  PathSearch search(g, v, avoid_value, skip_arc);
  return search.run(u);
}

std::optional<Walk> non_null_path_exists(const LabeledGraph& g, Vertex u, Vertex v) {
  return path_with_value_other_than(g, u, v, identity(g.group()));
}

Walk extract_non_null_cycle(const LabeledGraph& g, const Walk& closed_walk) {
  Walk w = closed_walk;
  while (true) {
    const auto vs = walk_vertices(g, w);
    if (w.empty() || vs.front() != vs.back()) {
      throw InvalidInput("extract_non_null_cycle: walk is not closed");
    }
    if (walk_value(g, w).is_identity()) {
      throw InvalidInput("extract_non_null_cycle: walk is null");
    }
    if (is_cycle(g, w)) return w;

    // Earliest j with vs[j] == vs[i] for some i < j, ignoring the closing repeat.
    std::size_t split_i = 0, split_j = 0;
    bool found = false;
    for (std::size_t j = 1; j < vs.size() && !found; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (vs[i] == vs[j] && !(i == 0 && j + 1 == vs.size())) {
          split_i = i;
          split_j = j;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      // No repeated vertex but a repeated arc: only possible as a 2-step
      // back-and-forth walk, whose value is the identity.
      throw InvalidInput("extract_non_null_cycle: degenerate closed walk");
    }
    Walk inner{vs[split_i], {w.steps.begin() + split_i, w.steps.begin() + split_j}};
    if (!walk_value(g, inner).is_identity()) {
      w = std::move(inner);
      continue;
    }
    Walk outer{vs[0], {w.steps.begin(), w.steps.begin() + split_i}};
    outer.steps.insert(outer.steps.end(), w.steps.begin() + split_j, w.steps.end());
    w = std::move(outer);
  }
}

}  // namespace epkit
