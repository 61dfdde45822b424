#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "epkit/errors.hpp"
#include "epkit/generators.hpp"
#include "epkit/oracle.hpp"
#include "helpers.hpp"

using namespace epkit;
using testing::odd_graph;

namespace {

LabeledGraph triangle() { return odd_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }

std::set<brute::Mask> cycle_masks(const std::vector<Walk>& ws) {
  std::set<brute::Mask> out;
  for (const Walk& w : ws) {
    brute::Mask m = 0;
    for (const auto& s : w.steps) m |= brute::Mask{1} << s.arc;
    out.insert(m);
  }
  return out;
}

std::set<brute::Mask> cycle_masks(const std::vector<brute::Cycle>& cs) {
  std::set<brute::Mask> out;
  for (const auto& c : cs) {
    brute::Mask m = 0;
    for (ArcId a : c.arcs) m |= brute::Mask{1} << a;
    out.insert(m);
  }
  return out;
}

}  // namespace

TEST_CASE("non-null cycle enumeration") {
  CHECK(enumerate_non_null_cycles(testing::clique(5)).empty());
  CHECK(enumerate_non_null_cycles(triangle()).size() == 1);

  const auto k4 = testing::clique(4, 1);
  CHECK(enumerate_cycles(k4).size() == 7);
  const auto odd = enumerate_non_null_cycles(k4);
  CHECK(odd.size() == 4);
  for (const Walk& c : odd) CHECK(c.steps.size() == 3);

  // canonical form: starts at the lowest vertex, first arc id below last
  const auto k5 = testing::clique(5, 1);
  for (const Walk& c : enumerate_cycles(k5)) {
    const auto vs = walk_vertices(k5, c);
    CHECK(vs.front() == *std::min_element(vs.begin(), vs.end()));
    CHECK(c.steps.front().arc < c.steps.back().arc);
  }
}

TEST_CASE("cycle enumeration matches arc-subset search") {
  std::mt19937_64 rng(83);
  for (int round = 0; round < 150; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 8, 13, group);
    CAPTURE(round);
    CHECK(cycle_masks(enumerate_cycles(g)) == cycle_masks(brute::cycles(g)));
    CHECK(cycle_masks(enumerate_non_null_cycles(g)) == cycle_masks(brute::non_null_cycles(g)));
  }
}

TEST_CASE("min gfvs examples") {
  const auto flat = min_gfvs(testing::clique(5));
  CHECK(flat.size == 0);
  CHECK(flat.witness.empty());

  const auto one = min_gfvs(triangle());
  CHECK(one.size == 1);
  REQUIRE(one.witness.size() == 1);
  CHECK(*one.witness.begin() < 3);

  const auto two = min_gfvs(testing::disjoint_triangles(2));
  CHECK(two.size == 2);
  CHECK(verify_gfvs(testing::disjoint_triangles(2), two.witness).verified);
  int low = 0;
  for (Vertex v : two.witness) low += v < 3;
  CHECK(low == 1);
}

TEST_CASE("max packing examples") {
  CHECK(max_packing(triangle(), Integrality::Integral).size == 1);
  CHECK(max_packing(triangle(), Integrality::HalfIntegral).size == 1);
  const auto tris = testing::disjoint_triangles(3);
  CHECK(max_packing(tris, Integrality::Integral).size == 3);
  const auto k4 = testing::clique(4, 1);
  CHECK(max_packing(k4, Integrality::Integral).size == 1);
  const auto half = max_packing(k4, Integrality::HalfIntegral);
  CHECK(half.size == 2);
  CHECK(packing_violation(k4, half.witness) == "");
}

TEST_CASE("ep predicate examples and monotonicity") {
  const auto flat = testing::clique(4);
  for (int k = 1; k <= 3; ++k) CHECK(ep_predicate(flat, k, 0));
  CHECK_FALSE(ep_predicate(triangle(), 2, 0));
  CHECK(ep_predicate(triangle(), 2, 1));
  CHECK(ep_predicate(triangle(), 1, 0));
  CHECK(ep_predicate(triangle(), 0, 0));

  std::mt19937_64 rng(89);
  for (int round = 0; round < 80; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 9, 14, group);
    const auto r = solve_exact(g);
    for (int k = 1; k <= 4; ++k) {
      for (int p = 0; p <= 4; ++p) {
        if (ep_predicate(r, k, p)) CHECK(ep_predicate(r, k, p + 1));
        if (ep_predicate(r, k + 1, p)) CHECK(ep_predicate(r, k, p));
      }
    }
  }
}

TEST_CASE("exact results match brute force") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 200; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const auto g = testing::fuzz_graph(rng, 9, 14, group);
    const auto r = solve_exact(g);
    CAPTURE(round);
    CHECK(r.gfvs.size == brute::min_gfvs(g));
    CHECK(static_cast<int>(r.gfvs.witness.size()) == r.gfvs.size);
    CHECK(verify_gfvs(g, r.gfvs.witness).verified);
    CHECK(r.integral.size == brute::max_packing(g, 1));
    CHECK(r.half_integral.size == brute::max_packing(g, 2));
    CHECK(r.integral.size <= r.half_integral.size);
    CHECK(r.integral.witness.k() == r.integral.size);
    CHECK(r.half_integral.witness.k() == r.half_integral.size);
    CHECK(r.integral.witness.integrality == Integrality::Integral);
    CHECK(r.half_integral.witness.integrality == Integrality::HalfIntegral);
    if (r.integral.size > 0) CHECK(packing_violation(g, r.integral.witness) == "");
    if (r.half_integral.size > 0) CHECK(packing_violation(g, r.half_integral.witness) == "");
    CHECK(r.non_null_cycles == brute::non_null_cycles(g).size());
  }
}

TEST_CASE("targeted packing search agrees with the maximum") {
  std::mt19937_64 rng(113);
  for (int round = 0; round < 120; ++round) {
    const auto& group = testing::fuzz_groups()[round % 4];
    const bool dense = round % 4 == 0;
    const auto g = dense ? testing::dense_fuzz_graph(rng, group) : testing::fuzz_graph(rng, 9, 14, group);
    CAPTURE(round);
    for (Integrality mode : {Integrality::Integral, Integrality::HalfIntegral}) {
      // the exact maximum is too slow on the dense instances
      const int best = dense ? -1 : max_packing(g, mode).size;
      bool previous = true;
      for (int k = 0; k <= 4; ++k) {
        const auto found = find_packing(g, k, mode);
        if (!dense) CHECK(found.has_value() == (k <= best));
        if (found) CHECK(previous);
        previous = found.has_value();
        if (found && k > 0) {
          CHECK(found->k() == k);
          CHECK(found->integrality == mode);
          CHECK(packing_violation(g, *found) == "");
        }
      }
    }
  }
}

TEST_CASE("escher wall shows an integrality gap") {
  const auto g = escher_wall(3, 3);
  const auto r = solve_exact(g);
  CHECK(r.integral.size < r.half_integral.size);
  CHECK(r.gfvs.size > 2 * r.integral.size);
}

TEST_CASE("oracle guards") {
  const auto big = odd_graph(15, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(min_gfvs(big), GuardExceeded);
  CHECK_THROWS_AS(enumerate_cycles(big), GuardExceeded);
  OracleLimits tight;
  tight.max_cycles = 5;
  CHECK_THROWS_AS(enumerate_cycles(testing::clique(5, 1), tight), GuardExceeded);
  OracleLimits roomy;
  roomy.max_vertices = 16;
  CHECK(min_gfvs(big, roomy).size == 1);
}
