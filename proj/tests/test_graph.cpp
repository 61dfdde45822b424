#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "epkit/cycle_space.hpp"
#include "epkit/errors.hpp"
#include "epkit/oracle.hpp"
#include "helpers.hpp"

using namespace epkit;
using testing::odd_graph;
using testing::zn_graph;
using brute::Mask;

namespace {

Walk forward_cycle(const LabeledGraph& g, const std::vector<ArcId>& arcs) {
  Walk w{g.arc(arcs.front()).tail, {}};
  for (ArcId a : arcs) w.steps.push_back({a, Direction::Forward});
  return w;
}

Walk rotated(const LabeledGraph& g, const Walk& w, std::size_t by) {
  Walk out;
  for (std::size_t i = 0; i < w.steps.size(); ++i) out.steps.push_back(w.steps[(i + by) % w.steps.size()]);
  out.start = walk_vertices(g, w)[by];
  return out;
}

std::set<brute::Cycle> cycle_set(const LabeledGraph& g) {
  const auto cs = brute::cycles(g);
  return {cs.begin(), cs.end()};
}

}  // namespace

TEST_CASE("walk values") {
  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(walk_value(tri, Walk{0, {}}).is_identity());
  const Walk w = forward_cycle(tri, {0, 1, 2});
  CHECK(walk_value(tri, w) == canonical(GroupSpec::cyclic(2), {1}));
  CHECK(is_non_null_cycle(tri, w));

  const auto sq = odd_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_FALSE(is_non_null_cycle(sq, forward_cycle(sq, {0, 1, 2, 3})));
  CHECK_THROWS_AS(is_non_null_cycle(sq, Walk{0, {{0, Direction::Forward}}}), InvalidInput);
}

TEST_CASE("reversal inverts and concatenation multiplies") {
  std::mt19937_64 rng(11);
  const GroupSpec s3 = GroupSpec::symmetric(3);
  for (int round = 0; round < 50; ++round) {
    const auto g = testing::fuzz_graph(rng, 6, 10, s3);
    if (g.arc_count() == 0) continue;
    // random walk of length up to 8
    std::vector<Vertex> with_arcs;
    for (Vertex v : g.vertices()) {
      if (!g.incident(v).empty()) with_arcs.push_back(v);
    }
    Walk w{with_arcs[rng() % with_arcs.size()], {}};
    Vertex at = w.start;
    for (int i = 0; i < 8; ++i) {
      const auto& inc = g.incident(at);
      const ArcId a = inc[rng() % inc.size()];
      const Arc& arc = g.arc(a);
      const Direction d = arc.tail == arc.head ? (rng() % 2 ? Direction::Forward : Direction::Reverse)
                                               : g.direction_from(a, at);
      w.steps.push_back({a, d});
      at = g.other_end(a, at);
    }
    CHECK(walk_value(g, reversed(g, w)) == inverse(walk_value(g, w)));
    Walk first{w.start, {w.steps.begin(), w.steps.begin() + 3}};
    Walk second{walk_vertices(g, first).back(), {w.steps.begin() + 3, w.steps.end()}};
    CHECK(walk_value(g, concatenate(g, first, second)) == walk_value(g, first) * walk_value(g, second));
  }
}

TEST_CASE("Sym3 digon is non-null") {
  const GroupSpec s3 = GroupSpec::symmetric(3);
  const GroupElement a = canonical(s3, {2, 1, 3}), b = canonical(s3, {1, 3, 2});
  const LabeledGraph g(s3, 2, {{0, 1, a}, {0, 1, b}});
  const Walk digon{0, {{0, Direction::Forward}, {1, Direction::Reverse}}};
  CHECK(is_cycle(g, digon));
  // Cayley-table value of a * b^-1
  GroupElement expected = identity(s3);
  for (const auto& x : elements(s3)) {
    if ((x * b).payload() == a.payload()) expected = x;
  }
  CHECK(walk_value(g, digon) == expected);
  CHECK(is_non_null_cycle(g, digon));
}

TEST_CASE("non-nullness is invariant under rotation and reversal") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 8, 11, group);
    for (const Walk& c : enumerate_cycles(g)) {
      const bool base = is_non_null_cycle(g, c);
      for (std::size_t r = 0; r < c.length(); ++r) {
        const Walk rot = rotated(g, c, r);
        CHECK(is_non_null_cycle(g, rot) == base);
        CHECK(is_non_null_cycle(g, reversed(g, rot)) == base);
      }
    }
  }
}

TEST_CASE("induced subgraphs keep ids") {
  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(tri.induced_subgraph(tri.vertex_set()).arc_ids() == tri.arc_ids());
  CHECK(tri.induced_subgraph({}).vertex_count() == 0);
  const auto two = tri.induced_subgraph({1, 2});
  CHECK(two.arc_ids() == std::vector<ArcId>{1});
  CHECK(two.has_vertex(2));
  CHECK_FALSE(two.has_vertex(0));
  CHECK_THROWS_AS(tri.induced_subgraph({7}), InvalidInput);
}

TEST_CASE("blocks and cut vertices") {
  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  auto bd = blocks_and_cut_vertices(tri);
  CHECK(bd.blocks.size() == 1);
  CHECK(bd.cut_vertices.empty());

  const auto bowtie = odd_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  bd = blocks_and_cut_vertices(bowtie);
  CHECK(bd.blocks.size() == 2);
  CHECK(bd.cut_vertices == VertexSet{2});

  const auto path = odd_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  bd = blocks_and_cut_vertices(path);
  CHECK(bd.blocks.size() == 3);
  CHECK(bd.cut_vertices == VertexSet{1, 2});

  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto g = testing::fuzz_graph(rng, 9, 14, GroupSpec::cyclic(2));
    std::map<ArcId, int> owners;
    for (const auto& b : blocks_and_cut_vertices(g).blocks) {
      for (ArcId a : b.arcs) ++owners[a];
    }
    for (ArcId a : g.arc_ids()) {
      if (g.arc(a).tail != g.arc(a).head) CHECK(owners[a] == 1);
    }
  }
}

TEST_CASE("separation validity") {
  const auto path = odd_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_valid_separation(path, {path.vertex_set(), path.vertex_set()}));
  CHECK(is_valid_separation(path, {{0, 1, 2}, {2, 3}}));
  CHECK_FALSE(is_valid_separation(path, {{0, 1}, {2, 3}}));
  CHECK_FALSE(is_valid_separation(path, {{0, 1}, {1, 2}}));
}

TEST_CASE("consistent labelings and witnesses") {
  const auto flat = zn_graph(3, 4, {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}, {2, 3, 0}});
  const auto r = find_consistent_labeling(flat);
  REQUIRE(std::holds_alternative<ConsistentLabeling>(r));
  for (const auto& [v, x] : std::get<ConsistentLabeling>(r).values) CHECK(x.is_identity());

  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto w = find_consistent_labeling(tri);
  REQUIRE(std::holds_alternative<Walk>(w));
  CHECK(cycle_key(std::get<Walk>(w)) == std::vector<ArcId>{0, 1, 2});
}

TEST_CASE("labeling agrees with exhaustive cycle search") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 8, 12, group);
    const bool brute_clean = brute::non_null_cycles(g).empty();
    const auto r = find_consistent_labeling(g);
    CHECK(std::holds_alternative<ConsistentLabeling>(r) == brute_clean);
    if (const auto* lab = std::get_if<ConsistentLabeling>(&r)) {
      for (ArcId a : g.arc_ids()) {
        const Arc& arc = g.arc(a);
        CHECK(lab->values.at(arc.head) == lab->values.at(arc.tail) * arc.label);
      }
    } else {
      CHECK(is_non_null_cycle(g, std::get<Walk>(r)));
    }
  }
}

TEST_CASE("cleanliness") {
  const auto tri = odd_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  CHECK(is_clean(tri, {1, 2, 3}));
  CHECK_FALSE(is_clean(tri, {0, 1, 2}));
  CHECK(is_clean(tri, {}));
}

TEST_CASE("untangling") {
  const auto g = zn_graph(6, 4, {{0, 1, 2}, {1, 2, 5}, {2, 0, 1}, {2, 3, 4}, {3, 0, 3}});
  CHECK(untangle(g, {}).arc_ids() == g.arc_ids());
  for (ArcId a : g.arc_ids()) CHECK(untangle(g, {}).arc(a).label == g.arc(a).label);

  const VertexSet a{0, 1, 3};
  REQUIRE(is_clean(g, a));
  const auto u = untangle(g, a);
  for (ArcId id : u.arc_ids()) {
    if (a.count(u.arc(id).tail) && a.count(u.arc(id).head)) CHECK(u.arc(id).label.is_identity());
  }
  CHECK(cycle_set(u) == cycle_set(g));
  CHECK_THROWS_AS(untangle(odd_graph(3, {{0, 1}, {1, 2}, {2, 0}}), {0, 1, 2}), InvalidInput);
}

TEST_CASE("untangling preserves non-null cycles on random graphs") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 200; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 7, 11, group);
    VertexSet a;
    for (Vertex v : g.vertices()) {
      if (rng() % 2) a.insert(v);
    }
    while (!is_clean(g, a)) a.erase(a.begin());
    const auto u = untangle(g, a);
    CHECK(cycle_set(u) == cycle_set(g));
    for (ArcId id : u.arc_ids()) {
      if (a.count(u.arc(id).tail) && a.count(u.arc(id).head)) CHECK(u.arc(id).label.is_identity());
    }
  }
}

TEST_CASE("gfvs verification") {
  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(verify_gfvs(tri, tri.vertex_set()).verified);
  CHECK(verify_gfvs(tri, {1}).verified);
  CHECK_FALSE(verify_gfvs(tri, {}).verified);
  const auto wall = escher_wall(3);
  CHECK_FALSE(verify_gfvs(wall, {}).verified);
  CHECK(find_non_null_cycle(wall).has_value());
}

TEST_CASE("non-null paths") {
  const auto tri = odd_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_FALSE(non_null_path_exists(tri, 1, 1).has_value());
  const auto digon = zn_graph(2, 2, {{0, 1, 0}, {0, 1, 1}});
  const auto p = non_null_path_exists(digon, 0, 1);
  REQUIRE(p.has_value());
  CHECK(p->steps.size() == 1);
  CHECK(p->steps[0].arc == 1);

  std::mt19937_64 rng(29);
  for (int round = 0; round < 150; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 8, 12, group);
    const auto vs = g.vertices();
    const Vertex u = vs[rng() % vs.size()], v = vs[rng() % vs.size()];
    if (u == v) continue;
    bool expected = false;
    for (const auto& sp : brute::s_paths(g, {u, v})) expected = expected || sp.non_null;
    const auto found = non_null_path_exists(g, u, v);
    CHECK(found.has_value() == expected);
    if (found) {
      CHECK(is_path(g, *found));
      CHECK_FALSE(walk_value(g, *found).is_identity());
    }
  }
}

TEST_CASE("a non-null closed walk yields a non-null cycle") {
  std::mt19937_64 rng(31);
  int non_null_walks = 0;
  for (int round = 0; round < 300; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 7, 12, group);
    const bool clean = is_clean(g);
    for (Vertex start : g.vertices()) {
      if (g.incident(start).empty()) continue;
      Walk w{start, {}};
      Vertex at = start;
      for (int i = 0; i < 12; ++i) {
        const auto& inc = g.incident(at);
        if (inc.empty()) break;
        const ArcId a = inc[rng() % inc.size()];
        w.steps.push_back({a, g.direction_from(a, at)});
        at = g.other_end(a, at);
        if (at == start && !walk_value(g, w).is_identity()) {
          CHECK_FALSE(clean);
          const Walk c = extract_non_null_cycle(g, w);
          CHECK(is_non_null_cycle(g, c));
          ++non_null_walks;
          break;
        }
      }
    }
  }
  CHECK(non_null_walks > 50);
}

TEST_CASE("a non-clean block has a non-null cycle through every pair") {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 6, 10, group);
    const auto cs = brute::non_null_cycles(g);
    for (const auto& b : blocks_and_cut_vertices(g).blocks) {
      if (b.vertices.size() < 2) continue;
      const Mask bm = brute::to_mask(b.vertices);
      bool has = false;
      for (const auto& c : cs) has = has || ((c.vertices & bm) == c.vertices && brute::popcount(c.vertices) > 1);
      if (!has) continue;
      for (Vertex u : b.vertices) {
        for (Vertex v : b.vertices) {
          if (u >= v) continue;
          const Mask pair = (Mask{1} << u) | (Mask{1} << v);
          bool through = false;
          for (const auto& c : cs) through = through || (c.vertices & pair) == pair;
          CHECK(through);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 0);
}
