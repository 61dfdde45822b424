#include "epkit/paths_packing.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "epkit/cuts.hpp"
#include "epkit/errors.hpp"

namespace epkit {

namespace {

using Mask = std::uint64_t;

Mask bit(Vertex v) { return Mask{1} << v; }

constexpr long kPathStepBudget = 20'000'000;

// Depth-first search for non-null S-paths from a given S vertex. States
// (vertex, visited set, value) with no non-null completion are remembered
// across calls.
class SPathSearch {
 public:
  SPathSearch(const LabeledGraph& g, const VertexSet& s) : g_(g), in_s_(g.universe_size(), 0) {
    for (Vertex v : s) in_s_[v] = 1;
  }

  bool exists(Vertex start, Mask blocked) {
    stop_at_first_ = true;
    found_.clear();
    Walk w{start, {}};
    return dfs(start, blocked | bit(start), bit(start), identity(g_.group()), w) == Outcome::Stop;
  }

  // Non-null S-paths from `start` avoiding `blocked`, one per
  // inclusion-minimal vertex set, sorted by vertex set.
  std::vector<std::pair<Mask, Walk>> minimal(Vertex start, Mask blocked) {
    stop_at_first_ = false;
    found_.clear();
    Walk w{start, {}};
    dfs(start, blocked | bit(start), bit(start), identity(g_.group()), w);
    std::vector<std::pair<Mask, Walk>> out;
    for (auto& [m, p] : found_) {
      const bool dominated = std::any_of(found_.begin(), found_.end(), [&](const auto& o) {
        return o.first != m && (o.first & m) == o.first;
      });
      if (!dominated) out.emplace_back(m, std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  enum class Outcome { Dead, Live, Stop };

  struct State {
    Mask visited;
    Vertex at;
    GroupElement value;
    bool operator==(const State& o) const {
      return visited == o.visited && at == o.at && value == o.value;
    }
  };
  struct StateHash {
    std::size_t operator()(const State& s) const {
      return s.visited * 0x9e3779b97f4a7c15ULL ^ (static_cast<std::size_t>(s.at) << 1) ^ s.value.hash();
    }
  };

  bool dominated(Mask m) const {
    return std::any_of(found_.begin(), found_.end(),
                       [&](const auto& f) { return (f.first & m) == f.first; });
  }

  Outcome dfs(Vertex at, Mask visited, Mask mask, const GroupElement& value, Walk& w) {
    if (dead_.count(State{visited, at, value})) return Outcome::Dead;
    if (++steps_ > kPathStepBudget) throw GuardExceeded("S-path search exceeded its step budget");
    bool live = false;
    for (ArcId a : g_.incident(at)) {
      const Vertex next = g_.other_end(a, at);
      if (next == at || (visited & bit(next))) continue;
      const Direction dir = g_.direction_from(a, at);
      const GroupElement nv = value * g_.traversal_label(a, dir);
      const Mask grown = mask | bit(next);
      if (in_s_[next]) {
        if (nv.is_identity()) continue;
        live = true;
        if (stop_at_first_) return Outcome::Stop;
        if (dominated(grown)) continue;
        w.steps.push_back({a, dir});
        found_.emplace_back(grown, w);
        w.steps.pop_back();
        continue;
      }
      if (!stop_at_first_ && dominated(grown)) {
        live = true;
        continue;
      }
      w.steps.push_back({a, dir});
      const Outcome r = dfs(next, visited | bit(next), grown, nv, w);
      w.steps.pop_back();
      if (r == Outcome::Stop) return r;
      if (r == Outcome::Live) live = true;
    }
    if (!live) dead_.insert(State{visited, at, value});
    return live ? Outcome::Live : Outcome::Dead;
  }

  const LabeledGraph& g_;
  std::vector<char> in_s_;
  bool stop_at_first_ = false;
  std::vector<std::pair<Mask, Walk>> found_;
  std::unordered_set<State, StateHash> dead_;
  long steps_ = 0;
};

void require_small(const LabeledGraph& g) {
  if (g.universe_size() > 64 || g.vertex_count() > kSPathVertexLimit) {
    throw GuardExceeded("S-path duality is limited to " + std::to_string(kSPathVertexLimit) +
                        " vertices");
  }
}

Mask absent_mask(const LabeledGraph& g) {
  Mask m = 0;
  for (Vertex v = 0; v < g.universe_size(); ++v) {
    if (!g.has_vertex(v)) m |= bit(v);
  }
  return m;
}

class Packer {
 public:
  Packer(const LabeledGraph& g, const VertexSet& s) : search_(g, s), s_(s.begin(), s.end()) {}

  int best(Mask used) {
    if (auto it = memo_.find(used); it != memo_.end()) return it->second.value;
    int open = 0;
    Vertex first = -1;
    for (Vertex v : s_) {
      if (used & bit(v)) continue;
      if (first < 0) first = v;
      ++open;
    }
    Entry entry;
    if (open >= 2) {
      entry.value = best(used | bit(first));
      for (auto& [m, w] : search_.minimal(first, used)) {
        if (entry.value == open / 2) break;
        const int value = 1 + best(used | m);
        if (value > entry.value) {
          entry.value = value;
          entry.taken = m;
          entry.path = w;
        }
      }
    }
    memo_[used] = entry;
    return entry.value;
  }

  std::vector<Walk> paths(Mask used) {
    std::vector<Walk> out;
    while (true) {
      best(used);
      const Entry& e = memo_.at(used);
      if (e.value == 0) break;
      if (e.taken == 0) {
        for (Vertex v : s_) {
          if (!(used & bit(v))) {
            used |= bit(v);
            break;
          }
        }
        continue;
      }
      out.push_back(e.path);
      used |= e.taken;
    }
    return out;
  }

 private:
  struct Entry {
    int value = 0;
    Mask taken = 0;
    Walk path;
  };
  SPathSearch search_;
  std::vector<Vertex> s_;
  std::unordered_map<Mask, Entry> memo_;
};

Walk tree_path(const LabeledGraph& g, const std::vector<ArcId>& tree, Vertex from, Vertex to) {
  std::map<Vertex, std::vector<ArcId>> adj;
  for (ArcId a : tree) {
    adj[g.arc(a).tail].push_back(a);
    adj[g.arc(a).head].push_back(a);
  }
  std::map<Vertex, ArcId> via;
  std::queue<Vertex> q;
  q.push(from);
  via[from] = -1;
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (ArcId a : adj[x]) {
      const Vertex y = g.other_end(a, x);
      if (via.count(y)) continue;
      via[y] = a;
      q.push(y);
    }
  }
  if (!via.count(to)) throw std::logic_error("tree_path: vertex outside the tree");
  std::vector<Step> steps;
  for (Vertex x = to; x != from;) {
    const ArcId a = via.at(x);
    const Vertex y = g.other_end(a, x);
    steps.push_back({a, g.direction_from(a, y)});
    x = y;
  }
  std::reverse(steps.begin(), steps.end());
  return Walk{from, std::move(steps)};
}

}  // namespace

bool is_s_path(const LabeledGraph& g, const VertexSet& s, const Walk& p) {
  if (!is_path(g, p) || p.empty()) return false;
  const auto vs = walk_vertices(g, p);
  if (!s.count(vs.front()) || !s.count(vs.back())) return false;
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
    if (s.count(vs[i])) return false;
  }
  return true;
}

bool has_non_null_s_path(const LabeledGraph& g, const VertexSet& s) {
  require_small(g);
  SPathSearch search(g, s);
  const Mask blocked = absent_mask(g);
  for (Vertex v : s) {
    if (!g.has_vertex(v)) continue;
    if (search.exists(v, blocked)) return true;
  }
  return false;
}

SPathDuality non_null_s_paths_or_hitting_set(const LabeledGraph& g, const VertexSet& s, int k) {
  if (k < 1) throw InvalidInput("S-path duality: k must be positive");
  for (Vertex v : s) {
    if (!g.has_vertex(v)) throw InvalidInput("S-path duality: unknown vertex " + std::to_string(v));
  }
  require_small(g);

  SPathDuality result;
  Packer packer(g, s);
  const Mask blocked = absent_mask(g);
  result.nu = packer.best(blocked);
  if (result.nu >= k) {
    result.paths = packer.paths(blocked);
    result.paths.resize(k);
    return result;
  }

  const std::vector<Vertex> vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  for (int size = 0; size <= std::min(2 * k - 2, n); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      VertexSet x;
      for (int i : idx) x.insert(vs[i]);
      VertexSet rest;
      std::set_difference(s.begin(), s.end(), x.begin(), x.end(), std::inserter(rest, rest.end()));
      if (!has_non_null_s_path(g.without_vertices(x), rest)) {
        result.hitting_set = std::move(x);
        return result;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("S-path duality: no hitting set within 2k-2");
}

std::string s_path_result_violation(const LabeledGraph& g, const VertexSet& s, int k,
                                    const SPathDuality& r) {
  if (r.has_paths()) {
    if (static_cast<int>(r.paths.size()) != k) return "expected exactly k paths";
    Mask used = 0;
    for (const Walk& p : r.paths) {
      if (!is_s_path(g, s, p)) return "a returned walk is not an S-path";
      if (walk_value(g, p).is_identity()) return "a returned path is null";
      for (Vertex v : walk_vertices(g, p)) {
        if (used & bit(v)) return "returned paths share a vertex";
        used |= bit(v);
      }
    }
    return {};
  }
  if (!r.paths.empty()) return "both sides returned";
  const VertexSet& x = *r.hitting_set;
  if (static_cast<int>(x.size()) > 2 * k - 2) return "hitting set larger than 2k-2";
  VertexSet rest;
  std::set_difference(s.begin(), s.end(), x.begin(), x.end(), std::inserter(rest, rest.end()));
  if (has_non_null_s_path(g.without_vertices(x), rest)) return "hitting set misses a non-null S-path";
  return {};
}

VertexSet CliqueExpansion::vertices() const {
  VertexSet out;
  for (const auto& s : supernodes) out.insert(s.begin(), s.end());
  return out;
}

CliqueExpansion restrict_expansion(const CliqueExpansion& eta, const std::vector<int>& keep) {
  CliqueExpansion out;
  for (int i : keep) {
    out.supernodes.push_back(eta.supernodes.at(i));
    out.tree_arcs.push_back(eta.tree_arcs.at(i));
    out.centers.push_back(eta.centers.at(i));
  }
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      const int i = std::min(keep[a], keep[b]);
      const int j = std::max(keep[a], keep[b]);
      out.edge_map[{static_cast<int>(a), static_cast<int>(b)}] = eta.edge_map.at({i, j});
    }
  }
  return out;
}

std::string expansion_violation(const LabeledGraph& g, const CliqueExpansion& eta, int ell) {
  const int order = eta.order();
  if (order != ell) return "expansion has order " + std::to_string(order);
  if (static_cast<int>(eta.tree_arcs.size()) != order || static_cast<int>(eta.centers.size()) != order) {
    return "supernode, tree and center lists differ in length";
  }
  std::vector<int> owner(g.universe_size(), -1);
  for (int i = 0; i < order; ++i) {
    const auto& node = eta.supernodes[i];
    const std::string tag = "supernode " + std::to_string(i);
    if (node.empty()) return tag + " is empty";
    for (Vertex v : node) {
      if (!g.has_vertex(v)) return tag + " names unknown vertex " + std::to_string(v);
      if (owner[v] >= 0) return tag + " overlaps supernode " + std::to_string(owner[v]);
      owner[v] = i;
    }
    if (!node.count(eta.centers[i])) return tag + " does not contain its center";
    const auto& arcs = eta.tree_arcs[i];
    if (arcs.size() + 1 != node.size()) return tag + " has the wrong number of tree arcs";
    std::map<Vertex, Vertex> root;
    for (Vertex v : node) root[v] = v;
    auto find = [&](Vertex v) {
      while (root[v] != v) v = root[v] = root[root[v]];
      return v;
    };
    for (ArcId a : arcs) {
      if (!g.has_arc(a)) return tag + " uses unknown arc " + std::to_string(a);
      const Arc& arc = g.arc(a);
      if (!node.count(arc.tail) || !node.count(arc.head)) return tag + " has an arc leaving it";
      const Vertex x = find(arc.tail);
      const Vertex y = find(arc.head);
      if (x == y) return tag + " tree arcs contain a cycle";
      root[x] = y;
    }
  }
  if (eta.edge_map.size() != static_cast<std::size_t>(order) * (order - 1) / 2) {
    return "edge map does not cover every pair";
  }
  for (const auto& [key, a] : eta.edge_map) {
    const auto [i, j] = key;
    if (i < 0 || j >= order || i >= j) return "edge map has an invalid pair";
    if (!g.has_arc(a)) return "edge map uses unknown arc " + std::to_string(a);
    const Arc& arc = g.arc(a);
    const bool joins = (owner[arc.tail] == i && owner[arc.head] == j) ||
                       (owner[arc.tail] == j && owner[arc.head] == i);
    if (!joins) {
      return "arc " + std::to_string(a) + " does not join supernodes " + std::to_string(i) + " and " +
             std::to_string(j);
    }
  }
  return {};
}

namespace {

class MinorSearch {
 public:
  MinorSearch(const LabeledGraph& g, int ell) : ell_(ell), nbr_(g.universe_size(), 0) {
    for (ArcId a : g.arc_ids()) {
      const Arc& arc = g.arc(a);
      if (arc.tail == arc.head) continue;
      nbr_[arc.tail] |= bit(arc.head);
      nbr_[arc.head] |= bit(arc.tail);
    }
  }

  std::optional<std::vector<Mask>> run(Mask component) {
    sets_.clear();
    if (place(component)) return sets_;
    return std::nullopt;
  }

 private:
  Mask neighbourhood(Mask s) const {
    Mask n = 0;
    for (Mask r = s; r; r &= r - 1) n |= nbr_[__builtin_ctzll(r)];
    return n & ~s;
  }

  bool touches_all(Mask s) const {
    const Mask n = neighbourhood(s);
    return std::all_of(sets_.begin(), sets_.end(), [&](Mask p) { return (n & p) != 0; });
  }

  bool connected(Mask s) const {
    if (!s) return false;
    Mask seen = s & (~s + 1);
    Mask frontier = seen;
    while (frontier) {
      const Mask next = neighbourhood(frontier) & s & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == s;
  }

  bool place(Mask remaining) {
    const int i = static_cast<int>(sets_.size());
    if (i == ell_ - 1) {
      if (!connected(remaining) || !touches_all(remaining)) return false;
      sets_.push_back(remaining);
      return true;
    }
    if (__builtin_popcountll(remaining) < ell_ - i) return false;
    const Mask u = remaining & (~remaining + 1);
    return grow(u, nbr_[__builtin_ctzll(u)] & remaining, 0, remaining);
  }

  bool grow(Mask s, Mask candidates, Mask excluded, Mask remaining) {
    if (++steps_ > 50'000'000) throw GuardExceeded("clique expansion search exceeded its budget");
    if (s != remaining && touches_all(s)) {
      sets_.push_back(s);
      if (place(remaining & ~s)) return true;
      sets_.pop_back();
    }
    while (candidates) {
      const Mask w = candidates & (~candidates + 1);
      candidates &= ~w;
      const Mask next =
          (candidates | (nbr_[__builtin_ctzll(w)] & remaining)) & ~s & ~excluded & ~w;
      if (grow(s | w, next, excluded, remaining)) return true;
      excluded |= w;
    }
    return false;
  }

  int ell_;
  std::vector<Mask> nbr_;
  std::vector<Mask> sets_;
  long steps_ = 0;
};

CliqueExpansion build_expansion(const LabeledGraph& g, const std::vector<Mask>& sets) {
  CliqueExpansion eta;
  std::vector<int> owner(g.universe_size(), -1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    VertexSet node;
    for (Mask r = sets[i]; r; r &= r - 1) {
      node.insert(__builtin_ctzll(r));
      owner[__builtin_ctzll(r)] = static_cast<int>(i);
    }
    const Vertex center = *node.begin();
    std::vector<ArcId> arcs;
    std::set<Vertex> seen{center};
    std::queue<Vertex> q;
    q.push(center);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (ArcId a : g.incident(x)) {
        const Vertex y = g.other_end(a, x);
        if (!node.count(y) || seen.count(y)) continue;
        seen.insert(y);
        arcs.push_back(a);
        q.push(y);
      }
    }
    eta.supernodes.push_back(std::move(node));
    eta.tree_arcs.push_back(std::move(arcs));
    eta.centers.push_back(center);
  }
  for (ArcId a : g.arc_ids()) {
    const Arc& arc = g.arc(a);
    const int i = owner[arc.tail];
    const int j = owner[arc.head];
    if (i < 0 || j < 0 || i == j) continue;
    eta.edge_map.emplace(std::make_pair(std::min(i, j), std::max(i, j)), a);
  }
  return eta;
}

VertexSet subtract(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool meets(const VertexSet& a, const VertexSet& b) {
  return std::any_of(a.begin(), a.end(), [&](Vertex v) { return b.count(v) > 0; });
}

}  // namespace

std::optional<CliqueExpansion> find_clique_expansion(const LabeledGraph& g, int ell) {
  if (ell < 1) throw InvalidInput("clique expansion order must be positive");
  if (ell > kCliqueExpansionLimit) {
    throw GuardExceeded("clique expansion search is limited to order " +
                        std::to_string(kCliqueExpansionLimit));
  }
  if (g.universe_size() > 64) throw GuardExceeded("clique expansion search needs at most 64 vertex ids");
  MinorSearch search(g, ell);
  for (const VertexSet& comp : connected_components(g)) {
    if (static_cast<int>(comp.size()) < ell) continue;
    Mask m = 0;
    for (Vertex v : comp) m |= bit(v);
    if (auto sets = search.run(m)) return build_expansion(g, *sets);
  }
  return std::nullopt;
}

CliqueBranchResult clique_branch_separation(const LabeledGraph& g, int k, const CliqueExpansion& eta,
                                            ThresholdMode mode) {
  if (k < 1) throw InvalidInput("clique branch: k must be positive");
  const int ell = eta.order();
  if (auto why = expansion_violation(g, eta, ell); !why.empty()) {
    throw PreconditionFailed("clique branch: invalid expansion: " + why);
  }
  if (mode == ThresholdMode::Paper && ell <= 6 * k * k) {
    throw PreconditionFailed("clique branch: expansion order must exceed 6k^2");
  }
  if (ell < k) throw PreconditionFailed("clique branch: expansion order below k");

  CliqueBranchResult result;
  const int part = ell / k;
  std::vector<CliqueExpansion> subs;
  PackingCertificate integral;
  int clean_index = -1;
  for (int i = 0; i < k; ++i) {
    std::vector<int> keep;
    for (int j = i * part; j < (i + 1) * part; ++j) keep.push_back(j);
    subs.push_back(restrict_expansion(eta, keep));
    auto cycle = find_non_null_cycle(g.induced_subgraph(subs.back().vertices()));
    if (!cycle) {
      clean_index = i;
      break;
    }
    integral.cycles.push_back(std::move(*cycle));
  }
  if (clean_index < 0) {
    result.outcome = std::move(integral);
    return result;
  }
  result.sub_expansion = clean_index;
  const CliqueExpansion& sub = subs[clean_index];
  const LabeledGraph gu = untangle(g, sub.vertices());
  const VertexSet centers(sub.centers.begin(), sub.centers.end());
  const SPathDuality duality = non_null_s_paths_or_hitting_set(gu, centers, k);

  if (duality.has_paths()) {
    std::map<Vertex, int> index;
    for (int i = 0; i < sub.order(); ++i) index[sub.centers[i]] = i;
    PackingCertificate half;
    half.integrality = Integrality::HalfIntegral;
    for (const Walk& p : duality.paths) {
      const auto vs = walk_vertices(gu, p);
      const int a = index.at(vs.front());
      const int b = index.at(vs.back());
      const ArcId e = sub.edge_map.at({std::min(a, b), std::max(a, b)});
      const Arc& arc = g.arc(e);
      const Vertex end_b = sub.supernodes[b].count(arc.tail) ? arc.tail : arc.head;
      const Vertex end_a = g.other_end(e, end_b);
      Walk closure = tree_path(gu, sub.tree_arcs[b], vs.back(), end_b);
      closure.steps.push_back({e, gu.direction_from(e, end_b)});
      closure = concatenate(gu, closure, tree_path(gu, sub.tree_arcs[a], end_a, vs.front()));
      half.cycles.push_back(extract_non_null_cycle(gu, concatenate(gu, p, closure)));
    }
    if (auto why = packing_violation(g, half); !why.empty()) {
      throw std::logic_error("clique branch produced an invalid packing: " + why);
    }
    result.outcome = std::move(half);
    return result;
  }

  const VertexSet& x = *duality.hitting_set;
  result.hitting_set = x;
  const LabeledGraph h = g.without_vertices(x);
  std::vector<int> surviving;
  for (int i = 0; i < sub.order(); ++i) {
    if (!meets(sub.supernodes[i], x)) surviving.push_back(i);
  }
  if (surviving.empty()) throw PreconditionFailed("clique branch: no supernode avoids the hitting set");

  const BlockDecomposition bd = blocks_and_cut_vertices(h);
  const Block* block = nullptr;
  for (const Block& b : bd.blocks) {
    if (std::all_of(surviving.begin(), surviving.end(),
                    [&](int i) { return meets(b.vertices, sub.supernodes[i]); })) {
      block = &b;
      break;
    }
  }
  if (!block) throw std::logic_error("clique branch: no block meets every surviving supernode");
  if (!is_clean(h, block->vertices)) {
    if (surviving.size() >= 2) throw std::logic_error("clique branch: the central block is not clean");
    throw PreconditionFailed("clique branch: a single surviving supernode leaves the block unchecked");
  }

  VertexSet bad;
  PackingCertificate pendant;
  for (Vertex z : block->vertices) {
    if (!bd.cut_vertices.count(z)) continue;
    VertexSet others = block->vertices;
    others.erase(z);
    const VertexSet gz = reachable_from(h.without_vertices(others), {z});
    if (auto cycle = find_non_null_cycle(h.induced_subgraph(gz))) {
      bad.insert(z);
      pendant.cycles.push_back(std::move(*cycle));
    }
  }
  if (static_cast<int>(bad.size()) >= k) {
    pendant.cycles.resize(k);
    result.outcome = std::move(pendant);
    return result;
  }

  VertexSet xp = x;
  xp.insert(bad.begin(), bad.end());
  result.separator = xp;
  int anchor = -1;
  for (int i = 0; i < sub.order(); ++i) {
    if (!meets(sub.supernodes[i], xp)) {
      anchor = i;
      break;
    }
  }
  if (anchor < 0) throw PreconditionFailed("clique branch: every supernode meets X'");
  const VertexSet c = reachable_from(g.without_vertices(xp), {sub.centers[anchor]});
  Separation sep;
  sep.a = c;
  sep.a.insert(xp.begin(), xp.end());
  sep.b = subtract(g.vertex_set(), c);
  sep.b.insert(xp.begin(), xp.end());

  if (!is_valid_separation(g, sep)) throw std::logic_error("clique branch: invalid separation");
  if (!is_clean(g, c)) throw std::logic_error("clique branch: G[A \\ B] is not clean");
  if (static_cast<int>(xp.size()) > 3 * k) throw std::logic_error("clique branch: |A ∩ B| > 3k");
  if (xp.size() <= 1) {
    throw PreconditionFailed("clique branch: |A ∩ B| <= 1 (some arc lies on no non-null cycle)");
  }
  for (const VertexSet& node : eta.supernodes) {
    if (!meets(node, xp) && !std::includes(c.begin(), c.end(), node.begin(), node.end())) {
      throw std::logic_error("clique branch: a surviving supernode is outside A \\ B");
    }
  }
  result.outcome = std::move(sep);
  return result;
}

Vertex clique_branch_irrelevant(const LabeledGraph& g, int k, const CliqueExpansion& eta,
                                const Separation& sep, const CliqueIrrelevantOptions& options) {
  if (k < 1) throw InvalidInput("clique irrelevant: k must be positive");
  if (auto why = expansion_violation(g, eta, eta.order()); !why.empty()) {
    throw PreconditionFailed("clique irrelevant: invalid expansion: " + why);
  }
  if (!is_valid_separation(g, sep)) throw PreconditionFailed("clique irrelevant: invalid separation");
  const VertexSet x = sep.separator();
  if (x.size() <= 1 || static_cast<int>(x.size()) > 3 * k) {
    throw PreconditionFailed("clique irrelevant: need 1 < |A ∩ B| <= 3k");
  }
  for (Vertex v : eta.vertices()) {
    if (!sep.a.count(v) || sep.b.count(v)) {
      throw PreconditionFailed("clique irrelevant: expansion is not inside A \\ B");
    }
  }
  if (!is_clean(g, sep.a)) throw PreconditionFailed("clique irrelevant: G[A] is not clean");

  IrrelevantOptions opts;
  opts.mode = options.mode;
  if (options.mode == ThresholdMode::Paper) {
    const Magnitude bound = rho(k);
    if (bound.exceeds(static_cast<std::uint64_t>(eta.order()))) {
      throw PreconditionFailed("clique irrelevant: expansion order below rho(k)");
    }
    const VertexSet z(eta.centers.begin(), eta.centers.end());
    return find_irrelevant_vertex(g, sep, z, 3 * k, k, opts).vertex;
  }
  const VertexSet z = options.z ? *options.z : VertexSet(eta.centers.begin(), eta.centers.end());
  return find_irrelevant_vertex(g, sep, z, static_cast<int>(x.size()), k, opts).vertex;
}

}  // namespace epkit
