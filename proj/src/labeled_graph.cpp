#include "epkit/labeled_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "epkit/errors.hpp"

namespace epkit {

LabeledGraph::LabeledGraph(GroupSpec group, int vertex_count, std::vector<Arc> arcs)
    : group_(std::move(group)) {
  if (vertex_count < 0) throw InvalidInput("vertex count must be non-negative");
  vertex_present_.assign(vertex_count, 1);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.tail < 0 || a.tail >= vertex_count || a.head < 0 || a.head >= vertex_count) {
      throw InvalidInput("arc " + std::to_string(i) + " has an undeclared endpoint");
    }
    if (a.label.spec() != group_) {
      throw InvalidInput("arc " + std::to_string(i) + " label is not in group " + group_.name());
    }
  }
  arcs_ = std::move(arcs);
  arc_present_.assign(arcs_.size(), 1);
  rebuild_incidence();
}

void LabeledGraph::rebuild_incidence() {
  incidence_.assign(vertex_present_.size(), {});
  vertex_count_ = static_cast<int>(std::count(vertex_present_.begin(), vertex_present_.end(), 1));
  arc_count_ = 0;
  for (ArcId id = 0; id < arc_universe_size(); ++id) {
    if (!arc_present_[id]) continue;
    const Arc& a = arcs_[id];
    if (!vertex_present_[a.tail] || !vertex_present_[a.head]) {
      arc_present_[id] = 0;
      continue;
    }
    ++arc_count_;
    incidence_[a.tail].push_back(id);
    if (a.head != a.tail) incidence_[a.head].push_back(id);
  }
}

std::vector<Vertex> LabeledGraph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(vertex_count_);
  for (Vertex v = 0; v < universe_size(); ++v) {
    if (vertex_present_[v]) out.push_back(v);
  }
  return out;
}

VertexSet LabeledGraph::vertex_set() const {
  const auto vs = vertices();
  return VertexSet(vs.begin(), vs.end());
}

std::vector<ArcId> LabeledGraph::arc_ids() const {
  std::vector<ArcId> out;
  out.reserve(arc_count_);
  for (ArcId a = 0; a < arc_universe_size(); ++a) {
    if (arc_present_[a]) out.push_back(a);
  }
  return out;
}

Vertex LabeledGraph::other_end(ArcId a, Vertex v) const {
  const Arc& arc = arcs_.at(a);
  return arc.tail == v ? arc.head : arc.tail;
}

GroupElement LabeledGraph::traversal_label(ArcId a, Direction dir) const {
  const Arc& arc = arcs_.at(a);
  return dir == Direction::Forward ? arc.label : inverse(arc.label);
}

Direction LabeledGraph::direction_from(ArcId a, Vertex from) const {
  return arcs_.at(a).tail == from ? Direction::Forward : Direction::Reverse;
}

LabeledGraph LabeledGraph::induced_subgraph(const VertexSet& keep) const {
  for (Vertex v : keep) {
    if (!has_vertex(v)) throw InvalidInput("unknown vertex " + std::to_string(v));
  }
  LabeledGraph out = *this;
  std::fill(out.vertex_present_.begin(), out.vertex_present_.end(), 0);
  for (Vertex v : keep) out.vertex_present_[v] = 1;
  out.rebuild_incidence();
  return out;
}

LabeledGraph LabeledGraph::without_vertices(const VertexSet& drop) const {
  LabeledGraph out = *this;
  for (Vertex v : drop) {
    if (v >= 0 && v < universe_size()) out.vertex_present_[v] = 0;
  }
  out.rebuild_incidence();
  return out;
}

LabeledGraph LabeledGraph::without_arcs(const std::vector<ArcId>& drop) const {
  LabeledGraph out = *this;
  for (ArcId a : drop) {
    if (a >= 0 && a < arc_universe_size()) out.arc_present_[a] = 0;
  }
  out.rebuild_incidence();
  return out;
}

LabeledGraph LabeledGraph::relabeled(std::vector<GroupElement> labels) const {
  if (labels.size() != arcs_.size()) throw InvalidInput("relabel: label count mismatch");
  LabeledGraph out = *this;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].spec() != group_) throw InvalidInput("relabel: label in wrong group");
    out.arcs_[i].label = std::move(labels[i]);
  }
  return out;
}

std::vector<Vertex> walk_vertices(const LabeledGraph& g, const Walk& w) {
  std::vector<Vertex> out;
  out.reserve(w.steps.size() + 1);
  if (w.steps.empty()) {
    if (!g.has_vertex(w.start)) throw InvalidInput("walk starts at unknown vertex");
    out.push_back(w.start);
    return out;
  }
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const Step& s = w.steps[i];
    if (!g.has_arc(s.arc)) {
      throw InvalidInput("walk uses missing arc " + std::to_string(s.arc));
    }
    const Arc& a = g.arc(s.arc);
    const Vertex from = s.dir == Direction::Forward ? a.tail : a.head;
    const Vertex to = s.dir == Direction::Forward ? a.head : a.tail;
    if (i == 0) {
      out.push_back(from);
    } else if (out.back() != from) {
      throw InvalidInput("walk is discontinuous at step " + std::to_string(i));
    }
    out.push_back(to);
  }
  return out;
}

GroupElement walk_value(const LabeledGraph& g, const Walk& w) {
  walk_vertices(g, w);  // validates
  GroupElement value = identity(g.group());
  for (const Step& s : w.steps) value = value * g.traversal_label(s.arc, s.dir);
  return value;
}

Walk reversed(const LabeledGraph& g, const Walk& w) {
  const auto vs = walk_vertices(g, w);
  Walk out;
  out.start = vs.back();
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) {
    out.steps.push_back(
        {it->arc, it->dir == Direction::Forward ? Direction::Reverse : Direction::Forward});
  }
  return out;
}

Walk concatenate(const LabeledGraph& g, const Walk& first, const Walk& second) {
  const auto a = walk_vertices(g, first);
  const auto b = walk_vertices(g, second);
  if (a.back() != b.front()) throw InvalidInput("concatenate: endpoints do not match");
  Walk out = first;
  out.start = a.front();
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  return out;
}

namespace {

bool simple_sequence(const LabeledGraph& g, const Walk& w, bool closed) {
  if (w.steps.empty()) return !closed;
  std::vector<Vertex> vs;
  try {
    vs = walk_vertices(g, w);
  } catch (const InvalidInput&) {
    return false;
  }
  if (closed && vs.front() != vs.back()) return false;
  std::vector<Vertex> distinct(vs.begin(), closed ? vs.end() - 1 : vs.end());
  std::sort(distinct.begin(), distinct.end());
  if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end()) return false;
  std::vector<ArcId> arcs;
  for (const Step& s : w.steps) arcs.push_back(s.arc);
  std::sort(arcs.begin(), arcs.end());
  return std::adjacent_find(arcs.begin(), arcs.end()) == arcs.end();
}

}  // namespace

bool is_cycle(const LabeledGraph& g, const Walk& w) { return simple_sequence(g, w, true); }

bool is_path(const LabeledGraph& g, const Walk& w) {
  if (w.steps.empty()) return g.has_vertex(w.start);
  return simple_sequence(g, w, false);
}

bool is_non_null_cycle(const LabeledGraph& g, const Walk& c) {
  if (!is_cycle(g, c)) throw InvalidInput("walk is not a cycle");
  return !walk_value(g, c).is_identity();
}

VertexSet Separation::separator() const {
  VertexSet s;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(s, s.end()));
  return s;
}

bool is_valid_separation(const LabeledGraph& g, const Separation& sep) {
  for (Vertex v : sep.a) {
    if (!g.has_vertex(v)) return false;
  }
  for (Vertex v : sep.b) {
    if (!g.has_vertex(v)) return false;
  }
  for (Vertex v : g.vertices()) {
    if (!sep.a.count(v) && !sep.b.count(v)) return false;
  }
  for (ArcId id : g.arc_ids()) {
    const Arc& a = g.arc(id);
    const bool tail_a_only = sep.a.count(a.tail) && !sep.b.count(a.tail);
    const bool tail_b_only = sep.b.count(a.tail) && !sep.a.count(a.tail);
    const bool head_a_only = sep.a.count(a.head) && !sep.b.count(a.head);
    const bool head_b_only = sep.b.count(a.head) && !sep.a.count(a.head);
    if ((tail_a_only && head_b_only) || (tail_b_only && head_a_only)) return false;
  }
  return true;
}

BlockDecomposition blocks_and_cut_vertices(const LabeledGraph& g) {
  const int n = g.universe_size();
  std::vector<int> disc(n, 0), low(n, 0);
  std::vector<ArcId> stack;
  BlockDecomposition out;
  int timer = 0;

  auto pop_block = [&](ArcId until) {
    Block b;
    while (true) {
      const ArcId a = stack.back();
      stack.pop_back();
      b.arcs.push_back(a);
      b.vertices.insert(g.arc(a).tail);
      b.vertices.insert(g.arc(a).head);
      if (a == until) break;
    }
    std::sort(b.arcs.begin(), b.arcs.end());
    out.blocks.push_back(std::move(b));
  };

  std::function<void(Vertex, ArcId)> dfs = [&](Vertex u, ArcId parent_arc) {
    disc[u] = low[u] = ++timer;
    int children = 0;
    for (ArcId a : g.incident(u)) {
      const Vertex v = g.other_end(a, u);
      if (v == u || a == parent_arc) continue;
      if (disc[v] == 0) {
        ++children;
        stack.push_back(a);
        dfs(v, a);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          if (parent_arc != -1 || children > 1) out.cut_vertices.insert(u);
          pop_block(a);
        }
      } else if (disc[v] < disc[u]) {
        stack.push_back(a);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };

  for (Vertex v : g.vertices()) {
    if (disc[v] != 0) continue;
    bool has_edge = false;
    for (ArcId a : g.incident(v)) {
      if (g.other_end(a, v) != v) {
        has_edge = true;
        break;
      }
    }
    if (!has_edge) {
      disc[v] = ++timer;
      out.blocks.push_back(Block{{v}, {}});
      continue;
    }
    dfs(v, -1);
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const Block& x, const Block& y) { return x.vertices < y.vertices; });
  return out;
}

VertexSet reachable_from(const LabeledGraph& g, const VertexSet& sources) {
  VertexSet seen;
  std::queue<Vertex> q;
  for (Vertex s : sources) {
    if (g.has_vertex(s) && seen.insert(s).second) q.push(s);
  }
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (ArcId a : g.incident(u)) {
      const Vertex v = g.other_end(a, u);
      if (seen.insert(v).second) q.push(v);
    }
  }
  return seen;
}

std::vector<VertexSet> connected_components(const LabeledGraph& g) {
  std::vector<VertexSet> out;
  VertexSet assigned;
  for (Vertex v : g.vertices()) {
    if (assigned.count(v)) continue;
    auto comp = reachable_from(g, {v});
    assigned.insert(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace epkit
