#include "epkit/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

using Mask = std::uint64_t;

void check_size(const LabeledGraph& g, const OracleLimits& limits) {
  if (g.vertex_count() > limits.max_vertices) {
    throw GuardExceeded("oracle is limited to " + std::to_string(limits.max_vertices) + " vertices");
  }
  if (g.universe_size() > 32) throw GuardExceeded("oracle needs vertex ids below 32");
}

class CycleEnumerator {
 public:
  CycleEnumerator(const LabeledGraph& g, const OracleLimits& limits)
      : g_(g), limits_(limits), visited_(g.universe_size(), 0) {}

  std::vector<Walk> run() {
    for (Vertex v : g_.vertices()) {
      for (ArcId a : g_.incident(v)) {
        if (g_.arc(a).tail == g_.arc(a).head) emit(Walk{v, {{a, Direction::Forward}}});
      }
      root_ = v;
      Walk w{v, {}};
      visited_[v] = 1;
      dfs(v, w);
      visited_[v] = 0;
    }
    return std::move(out_);
  }

 private:
  void emit(Walk w) {
    if (out_.size() >= limits_.max_cycles) {
      throw GuardExceeded("more than " + std::to_string(limits_.max_cycles) + " cycles");
    }
    out_.push_back(std::move(w));
  }

  void dfs(Vertex at, Walk& w) {
    if (++steps_ > limits_.max_steps) throw GuardExceeded("cycle enumeration step budget exceeded");
    for (ArcId a : g_.incident(at)) {
      const Vertex next = g_.other_end(a, at);
      if (next == at) continue;
      const Direction dir = g_.direction_from(a, at);
      if (next == root_) {
        if (!w.steps.empty() && w.steps.front().arc < a) {
          w.steps.push_back({a, dir});
          emit(w);
          w.steps.pop_back();
        }
        continue;
      }
      if (next < root_ || visited_[next]) continue;
      visited_[next] = 1;
      w.steps.push_back({a, dir});
      dfs(next, w);
      w.steps.pop_back();
      visited_[next] = 0;
    }
  }

  const LabeledGraph& g_;
  const OracleLimits& limits_;
  std::vector<char> visited_;
  Vertex root_ = 0;
  long steps_ = 0;
  std::vector<Walk> out_;
};

bool walk_less(const Walk& a, const Walk& b) {
  if (a.start != b.start) return a.start < b.start;
  return std::lexicographical_compare(a.steps.begin(), a.steps.end(), b.steps.begin(), b.steps.end(),
                                      [](const Step& x, const Step& y) {
                                        if (x.arc != y.arc) return x.arc < y.arc;
                                        return x.dir < y.dir;
                                      });
}

Mask vertex_mask(const LabeledGraph& g, const Walk& c) {
  Mask m = 0;
  for (Vertex v : walk_vertices(g, c)) m |= Mask{1} << v;
  return m;
}

class PackingSearch {
 public:
  PackingSearch(const LabeledGraph& g, const std::vector<Walk>& cycles, int cap, const OracleLimits& limits)
      : cap_(cap), limits_(limits) {
    for (const Walk& c : cycles) {
      masks_.push_back(vertex_mask(g, c));
      low_.push_back(c.start);
    }
  }

  int best(std::size_t i, std::uint64_t usage) {
    if (i == masks_.size()) return 0;
    usage = forget_below(usage, low_[i]);
    const Key key{usage, i};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++steps_ > limits_.max_steps) throw GuardExceeded("packing search step budget exceeded");
    int value = best(i + 1, usage);
    if (auto taken = take(i, usage)) value = std::max(value, 1 + best(i + 1, *taken));
    memo_[key] = value;
    return value;
  }

  // Indices of `need` cycles fitting on top of `usage`, if any.
  std::optional<std::vector<std::size_t>> reach(std::size_t i, std::uint64_t usage, int need) {
    if (need == 0) return std::vector<std::size_t>{};
    for (; i + need <= masks_.size(); ++i) {
      usage = forget_below(usage, low_[i]);
      const Key key{usage * 8 + static_cast<std::uint64_t>(need), i};
      if (dead_.count(key)) return std::nullopt;
      if (++steps_ > limits_.max_steps) throw GuardExceeded("packing search step budget exceeded");
      if (auto taken = take(i, usage)) {
        if (auto rest = reach(i + 1, *taken, need - 1)) {
          rest->insert(rest->begin(), i);
          return rest;
        }
      }
      dead_.insert(key);
    }
    return std::nullopt;
  }

  std::vector<std::size_t> choice() {
    std::vector<std::size_t> out;
    std::uint64_t usage = 0;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      const int here = best(i, usage);
      if (auto taken = take(i, usage); taken && 1 + best(i + 1, *taken) == here) {
        out.push_back(i);
        usage = *taken;
      }
    }
    return out;
  }

 private:
  // Two bits of usage per vertex.
  static std::uint64_t forget_below(std::uint64_t usage, Vertex v) {
    return v >= 32 ? 0 : usage & ~((std::uint64_t{1} << (2 * v)) - 1);
  }

  std::optional<std::uint64_t> take(std::size_t i, std::uint64_t usage) const {
    for (Mask m = masks_[i]; m; m &= m - 1) {
      const int v = __builtin_ctzll(m);
      const auto used = static_cast<int>((usage >> (2 * v)) & 3u);
      if (used >= cap_) return std::nullopt;
      usage += std::uint64_t{1} << (2 * v);
    }
    return usage;
  }

  int cap_;
  const OracleLimits& limits_;
  std::vector<Mask> masks_;
  std::vector<Vertex> low_;
  using Key = std::pair<std::uint64_t, std::size_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ULL + k.second);
    }
  };
  std::unordered_map<Key, int, KeyHash> memo_;
  std::unordered_set<Key, KeyHash> dead_;
  long steps_ = 0;
};

}  // namespace

std::vector<Walk> enumerate_cycles(const LabeledGraph& g, const OracleLimits& limits) {
  check_size(g, limits);
  auto cycles = CycleEnumerator(g, limits).run();
  std::sort(cycles.begin(), cycles.end(), walk_less);
  return cycles;
}

std::vector<Walk> enumerate_non_null_cycles(const LabeledGraph& g, const OracleLimits& limits) {
  std::vector<Walk> out;
  for (Walk& c : enumerate_cycles(g, limits)) {
    if (!walk_value(g, c).is_identity()) out.push_back(std::move(c));
  }
  return out;
}

MinGfvs min_gfvs(const LabeledGraph& g, const OracleLimits& limits) {
  const auto cycles = enumerate_non_null_cycles(g, limits);
  std::vector<Mask> masks;
  for (const Walk& c : cycles) masks.push_back(vertex_mask(g, c));

  long steps = 0;
  std::function<bool(Mask, int, Mask&)> search = [&](Mask hit, int budget, Mask& found) {
    if (++steps > limits.max_steps) throw GuardExceeded("gfvs search step budget exceeded");
    auto open = std::find_if(masks.begin(), masks.end(), [&](Mask m) { return (m & hit) == 0; });
    if (open == masks.end()) {
      found = hit;
      return true;
    }
    if (budget == 0) return false;
    for (Mask m = *open; m; m &= m - 1) {
      if (search(hit | (m & (~m + 1)), budget - 1, found)) return true;
    }
    return false;
  };

  for (int size = 0;; ++size) {
    Mask found = 0;
    if (search(0, size, found)) {
      MinGfvs r;
      r.size = size;
      for (Mask m = found; m; m &= m - 1) r.witness.insert(__builtin_ctzll(m));
      return r;
    }
  }
}

MaxPacking max_packing(const LabeledGraph& g, Integrality mode, const OracleLimits& limits) {
  const auto cycles = enumerate_non_null_cycles(g, limits);
  PackingSearch search(g, cycles, mode == Integrality::Integral ? 1 : 2, limits);
  MaxPacking r;
  r.size = search.best(0, 0);
  r.witness.integrality = mode;
  for (std::size_t i : search.choice()) r.witness.cycles.push_back(cycles[i]);
  return r;
}

std::optional<PackingCertificate> find_packing(const LabeledGraph& g, int k, Integrality mode,
                                               const OracleLimits& limits) {
  if (k < 0) throw InvalidInput("find_packing: k must be non-negative");
  const auto cycles = enumerate_non_null_cycles(g, limits);
  PackingSearch search(g, cycles, mode == Integrality::Integral ? 1 : 2, limits);
  const auto picked = search.reach(0, 0, k);
  if (!picked) return std::nullopt;
  PackingCertificate out{{}, mode};
  for (std::size_t i : *picked) out.cycles.push_back(cycles[i]);
  return out;
}

ExactResult solve_exact(const LabeledGraph& g, const OracleLimits& limits) {
  ExactResult r;
  r.non_null_cycles = enumerate_non_null_cycles(g, limits).size();
  r.gfvs = min_gfvs(g, limits);
  r.integral = max_packing(g, Integrality::Integral, limits);
  r.half_integral = max_packing(g, Integrality::HalfIntegral, limits);
  return r;
}

bool ep_predicate(const ExactResult& r, int k, int p) {
  return r.half_integral.size >= k || r.gfvs.size <= p;
}

bool ep_predicate(const LabeledGraph& g, int k, int p, const OracleLimits& limits) {
  if (k <= 0) return true;
  return find_packing(g, k, Integrality::HalfIntegral, limits).has_value() || min_gfvs(g, limits).size <= p;
}

}  // namespace epkit
