#pragma once

// Exhaustive reference implementations. They share graph storage and group
// arithmetic with the library and nothing else.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "epkit/labeled_graph.hpp"

namespace brute {

using namespace epkit;
using Mask = std::uint64_t;

struct Cycle {
  std::vector<ArcId> arcs;  // sorted
  Mask vertices = 0;
  bool non_null = false;

  friend bool operator<(const Cycle& a, const Cycle& b) {
    return std::tie(a.arcs, a.non_null) < std::tie(b.arcs, b.non_null);
  }
  friend bool operator==(const Cycle& a, const Cycle& b) {
    return a.arcs == b.arcs && a.non_null == b.non_null;
  }
};

inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << v;
  return m;
}

inline VertexSet to_set(Mask m) {
  VertexSet s;
  for (; m; m &= m - 1) s.insert(__builtin_ctzll(m));
  return s;
}

inline std::vector<ArcId> present_arcs(const LabeledGraph& g) {
  std::vector<ArcId> out;
  for (ArcId a = 0; a < g.arc_universe_size(); ++a) {
    if (g.has_arc(a)) out.push_back(a);
  }
  return out;
}

// Product of labels along the arc set traversed as a closed trail from its
// lowest vertex; nullopt unless the arcs form one simple cycle.
inline std::optional<GroupElement> cycle_value(const LabeledGraph& g, const std::vector<ArcId>& arcs) {
  std::map<Vertex, int> degree;
  for (ArcId a : arcs) {
    degree[g.arc(a).tail] += 1;
    degree[g.arc(a).head] += 1;
  }
  for (const auto& [v, d] : degree) {
    if (d != 2) return std::nullopt;
  }
  const Vertex start = degree.begin()->first;
  GroupElement value = identity(g.group());
  std::vector<char> used(arcs.size(), 0);
  Vertex at = start;
  std::size_t steps = 0;
  do {
    std::size_t pick = arcs.size();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& arc = g.arc(arcs[i]);
      if (!used[i] && (arc.tail == at || arc.head == at)) {
        pick = i;
        break;
      }
    }
    if (pick == arcs.size()) return std::nullopt;
    used[pick] = 1;
    const Arc& arc = g.arc(arcs[pick]);
    if (arc.tail == at) {
      value = value * arc.label;
      at = arc.head;
    } else {
      value = value * inverse(arc.label);
      at = arc.tail;
    }
    ++steps;
  } while (at != start);
  if (steps != arcs.size()) return std::nullopt;  // more than one component
  return value;
}

// Every simple cycle, found by testing each arc subset. At most 22 arcs.
inline std::vector<Cycle> cycles(const LabeledGraph& g) {
  const auto arcs = present_arcs(g);
  if (arcs.size() > 22) throw std::logic_error("brute::cycles: too many arcs");
  std::vector<Cycle> out;
  for (Mask m = 1; m < (Mask{1} << arcs.size()); ++m) {
    std::vector<ArcId> chosen;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (m >> i & 1) chosen.push_back(arcs[i]);
    }
    const auto value = cycle_value(g, chosen);
    if (!value) continue;
    Cycle c{chosen, 0, !value->is_identity()};
    for (ArcId a : chosen) c.vertices |= (Mask{1} << g.arc(a).tail) | (Mask{1} << g.arc(a).head);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Cycle> non_null_cycles(const LabeledGraph& g) {
  std::vector<Cycle> out;
  for (Cycle& c : cycles(g)) {
    if (c.non_null) out.push_back(std::move(c));
  }
  return out;
}

inline bool hits_all(const std::vector<Cycle>& cs, Mask x) {
  return std::all_of(cs.begin(), cs.end(), [x](const Cycle& c) { return (c.vertices & x) != 0; });
}

inline int min_gfvs(const LabeledGraph& g) {
  const auto cs = non_null_cycles(g);
  const Mask all = to_mask(g.vertex_set());
  int best = popcount(all);
  for (Mask x = all;; x = (x - 1) & all) {
    if (popcount(x) < best && hits_all(cs, x)) best = popcount(x);
    if (x == 0) break;
  }
  return best;
}

// Largest family of non-null cycles using each vertex at most `cap` times.
inline int max_packing(const LabeledGraph& g, int cap) {
  const auto cs = non_null_cycles(g);
  std::vector<int> usage(g.universe_size(), 0);
  int best = 0;
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int count) {
    best = std::max(best, count);
    if (i == cs.size() || count + static_cast<int>(cs.size() - i) <= best) return;
    bool fits = true;
    for (Mask m = cs[i].vertices; m; m &= m - 1) fits = fits && usage[__builtin_ctzll(m)] < cap;
    if (fits) {
      for (Mask m = cs[i].vertices; m; m &= m - 1) ++usage[__builtin_ctzll(m)];
      go(i + 1, count + 1);
      for (Mask m = cs[i].vertices; m; m &= m - 1) --usage[__builtin_ctzll(m)];
    }
    go(i + 1, count);
  };
  go(0, 0);
  return best;
}

inline bool ep(const LabeledGraph& g, int k, int p) { return max_packing(g, 2) >= k || min_gfvs(g) <= p; }

// Vertices reachable from X ∖ S in G - S.
inline Mask reach(const LabeledGraph& g, Mask x, Mask s) {
  Mask seen = x & ~s & to_mask(g.vertex_set());
  std::vector<Vertex> stack;
  for (Mask m = seen; m; m &= m - 1) stack.push_back(__builtin_ctzll(m));
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (ArcId a : present_arcs(g)) {
      const Arc& arc = g.arc(a);
      Vertex w = -1;
      if (arc.tail == v) w = arc.head;
      if (arc.head == v) w = arc.tail;
      if (w < 0 || (s >> w & 1) || (seen >> w & 1)) continue;
      seen |= Mask{1} << w;
      stack.push_back(w);
    }
  }
  return seen;
}

inline bool separates(const LabeledGraph& g, Mask x, Mask y, Mask s) { return (reach(g, x, s) & y) == 0; }

struct Separator {
  VertexSet separator;
  VertexSet reach;
  friend bool operator<(const Separator& a, const Separator& b) {
    return std::tie(a.separator, a.reach) < std::tie(b.separator, b.reach);
  }
  friend bool operator==(const Separator& a, const Separator& b) {
    return a.separator == b.separator && a.reach == b.reach;
  }
};

// Subsets S of V ∖ (X ∪ Y), |S| <= k, that separate X from Y, are
// inclusion-minimal, and have no separator S' with |S'| <= |S| whose reach
// strictly contains R(S).
inline std::set<Separator> important_separators(const LabeledGraph& g, const VertexSet& xs,
                                                const VertexSet& ys, int k) {
  const Mask x = to_mask(xs), y = to_mask(ys);
  const Mask free = to_mask(g.vertex_set()) & ~x & ~y;
  std::vector<std::pair<Mask, Mask>> seps;  // (S, R(S)) for every separator of size <= k
  for (Mask s = free;; s = (s - 1) & free) {
    if (popcount(s) <= k && separates(g, x, y, s)) seps.emplace_back(s, reach(g, x, s));
    if (s == 0) break;
  }
  std::set<Separator> out;
  for (const auto& [s, r] : seps) {
    bool minimal = true;
    for (Mask m = s; m && minimal; m &= m - 1) minimal = !separates(g, x, y, s & ~(m & (~m + 1)));
    if (!minimal) continue;
    const bool dominated = std::any_of(seps.begin(), seps.end(), [&, s = s, r = r](const auto& o) {
      return popcount(o.first) <= popcount(s) && (o.second & r) == r && o.second != r;
    });
    if (!dominated) out.insert({to_set(s), to_set(r)});
  }
  return out;
}

inline std::vector<std::vector<Mask>> partitions(const std::vector<Vertex>& t) {
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> parts;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == t.size()) {
      out.push_back(parts);
      return;
    }
    for (auto& p : parts) {
      p |= Mask{1} << t[i];
      go(i + 1);
      p &= ~(Mask{1} << t[i]);
    }
    parts.push_back(Mask{1} << t[i]);
    go(i + 1);
    parts.pop_back();
  };
  go(0);
  return out;
}

inline bool is_multiway_cut(const LabeledGraph& g, const std::vector<Mask>& parts, Mask s) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Mask r = reach(g, parts[i], s);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j != i && (r & parts[j])) return false;
    }
  }
  return true;
}

// Union of all inclusion-minimal (P, T)-multiway cuts of size <= t, over every
// partition P of T with at least two parts.
inline Mask multiway_cut_vertices(const LabeledGraph& g, const VertexSet& terminals, int t) {
  const Mask tm = to_mask(terminals);
  const Mask free = to_mask(g.vertex_set()) & ~tm;
  Mask out = 0;
  for (const auto& parts : partitions({terminals.begin(), terminals.end()})) {
    if (parts.size() < 2) continue;
    for (Mask s = free;; s = (s - 1) & free) {
      if (popcount(s) <= t && (s & ~out) && is_multiway_cut(g, parts, s)) {
        bool minimal = true;
        for (Mask m = s; m && minimal; m &= m - 1) minimal = !is_multiway_cut(g, parts, s & ~(m & (~m + 1)));
        if (minimal) out |= s;
      }
      if (s == 0) break;
    }
  }
  return out;
}

struct SPath {
  Mask vertices = 0;
  bool non_null = false;
};

// Every S-path (distinct ends in S, no inner vertex in S), once per
// direction-free arc sequence.
inline std::vector<SPath> s_paths(const LabeledGraph& g, const VertexSet& s) {
  const Mask sm = to_mask(s);
  std::vector<SPath> out;
  std::set<std::vector<ArcId>> seen;
  std::vector<ArcId> trail;
  std::function<void(Vertex, Vertex, Mask, GroupElement)> go = [&](Vertex start, Vertex at, Mask used,
                                                                   GroupElement value) {
    for (ArcId a : present_arcs(g)) {
      const Arc& arc = g.arc(a);
      if (arc.tail == arc.head) continue;
      Vertex next;
      GroupElement step = arc.label;
      if (arc.tail == at) {
        next = arc.head;
      } else if (arc.head == at) {
        next = arc.tail;
        step = inverse(arc.label);
      } else {
        continue;
      }
      if (used >> next & 1) continue;
      trail.push_back(a);
      const GroupElement v2 = value * step;
      if (sm >> next & 1) {
        std::vector<ArcId> key = trail;
        if (next < start) std::reverse(key.begin(), key.end());
        if (seen.insert(key).second) out.push_back({used | Mask{1} << next, !v2.is_identity()});
      } else {
        go(start, next, used | Mask{1} << next, v2);
      }
      trail.pop_back();
    }
  };
  for (Vertex v : s) {
    if (g.has_vertex(v)) go(v, v, Mask{1} << v, identity(g.group()));
  }
  return out;
}

inline int max_disjoint_non_null_s_paths(const LabeledGraph& g, const VertexSet& s) {
  std::vector<Mask> paths;
  for (const SPath& p : s_paths(g, s)) {
    if (p.non_null) paths.push_back(p.vertices);
  }
  int best = 0;
  std::function<void(std::size_t, Mask, int)> go = [&](std::size_t i, Mask used, int count) {
    best = std::max(best, count);
    if (i == paths.size() || count + static_cast<int>(paths.size() - i) <= best) return;
    if (!(paths[i] & used)) go(i + 1, used | paths[i], count + 1);
    go(i + 1, used, count);
  };
  go(0, 0, 0);
  return best;
}

inline bool hits_non_null_s_paths(const LabeledGraph& g, const VertexSet& s, Mask x) {
  for (const SPath& p : s_paths(g, s)) {
    if (p.non_null && !(p.vertices & x)) return false;
  }
  return true;
}

// Smallest set of vertices meeting every non-null S-path.
inline int min_s_path_hitting_set(const LabeledGraph& g, const VertexSet& s) {
  std::vector<Mask> paths;
  for (const SPath& p : s_paths(g, s)) {
    if (p.non_null) paths.push_back(p.vertices);
  }
  const Mask all = to_mask(g.vertex_set());
  int best = popcount(all);
  for (Mask x = all;; x = (x - 1) & all) {
    if (popcount(x) < best &&
        std::all_of(paths.begin(), paths.end(), [x](Mask p) { return (p & x) != 0; })) {
      best = popcount(x);
    }
    if (x == 0) break;
  }
  return best;
}

// Treewidth as the best elimination width over every vertex order.
inline int treewidth(const LabeledGraph& g) {
  std::vector<Vertex> order = g.vertices();
  if (order.empty()) return -1;
  const int n = g.universe_size();
  std::vector<Mask> base(n, 0);
  for (ArcId a : present_arcs(g)) {
    const Arc& arc = g.arc(a);
    if (arc.tail == arc.head) continue;
    base[arc.tail] |= Mask{1} << arc.head;
    base[arc.head] |= Mask{1} << arc.tail;
  }
  int best = n;
  do {
    auto adj = base;
    Mask gone = 0;
    int width = 0;
    for (Vertex v : order) {
      const Mask nb = adj[v] & ~gone;
      width = std::max(width, popcount(nb));
      for (Mask m = nb; m; m &= m - 1) adj[__builtin_ctzll(m)] |= nb & ~(Mask{1} << __builtin_ctzll(m));
      gone |= Mask{1} << v;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// K_ell minor test by assigning every vertex to one of ell branch sets or
// to none. Branch sets are numbered in order of their lowest vertex.
inline bool has_clique_minor(const LabeledGraph& g, int ell) {
  const auto vs = g.vertices();
  std::vector<Mask> adj(g.universe_size(), 0);
  for (ArcId a : present_arcs(g)) {
    const Arc& arc = g.arc(a);
    adj[arc.tail] |= Mask{1} << arc.head;
    adj[arc.head] |= Mask{1} << arc.tail;
  }
  auto neighbours = [&](Mask m) {
    Mask out = 0;
    for (; m; m &= m - 1) out |= adj[__builtin_ctzll(m)];
    return out;
  };
  auto connected = [&](Mask m) {
    Mask seen = m & (~m + 1);
    while (true) {
      const Mask next = (seen | neighbours(seen)) & m;
      if (next == seen) return seen == m;
      seen = next;
    }
  };
  std::vector<Mask> sets(ell, 0);
  std::function<bool(std::size_t, int)> go = [&](std::size_t i, int used) {
    if (i == vs.size()) {
      if (used < ell) return false;
      for (int a = 0; a < ell; ++a) {
        if (!connected(sets[a])) return false;
        const Mask around = neighbours(sets[a]);
        for (int b = a + 1; b < ell; ++b) {
          if (!(around & sets[b])) return false;
        }
      }
      return true;
    }
    if (ell - used > static_cast<int>(vs.size() - i)) return false;
    if (go(i + 1, used)) return true;
    for (int c = 0; c < std::min(used + 1, ell); ++c) {
      sets[c] |= Mask{1} << vs[i];
      const bool found = go(i + 1, std::max(used, c + 1));
      sets[c] &= ~(Mask{1} << vs[i]);
      if (found) return true;
    }
    return false;
  };
  return go(0, 0);
}

}  // namespace brute
