#include "epkit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epkit/errors.hpp"
#include "epkit/oracle.hpp"

namespace epkit {

namespace {

bool block_clean(const LabeledGraph& g, const Block& b) {
  std::vector<char> inside(g.arc_universe_size(), 0);
  for (ArcId a : b.arcs) inside[a] = 1;
  std::vector<ArcId> others;
  for (ArcId a : g.arc_ids()) {
    if (!inside[a]) others.push_back(a);
  }
  return is_clean(g.without_arcs(others).induced_subgraph(b.vertices));
}

VertexSet minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

class Driver {
 public:
  explicit Driver(const DriverConfig& config) : config_(config) {}

  PackingOrCover run(const LabeledGraph& input, int k, bool top,
                     const std::optional<CliqueExpansion>& carried = std::nullopt) {
    const LabeledGraph g = strip_null_arcs(input);
    const int stripped = input.arc_count() - g.arc_count();
    TreeDecomposition td;
    if (top && config_.td && decomposition_violation(g, *config_.td).empty()) {
      td = *config_.td;
    } else {
      td = tree_decomposition(
          g, g.vertex_count() <= kExactTreewidthLimit ? TwMode::Exact : TwMode::Heuristic);
    }
    const int w = td.width();
    const bool low = config_.thresholds == ThresholdMode::Paper
                         ? std::log2(static_cast<long double>(w + 1)) <= driver_constants(k).log2_w
                         : w <= config_.tw_threshold;
    if (low) {
      PackingOrCover out = packing_or_cover_bounded_tw(g, k, td);
      TrailStep step{"low_treewidth", k, g.vertex_count(), stripped, w, (k - 1) * (w + 1), {}, {}};
      if (auto* cover = std::get_if<GfvsCertificate>(&out)) step.touched = cover->vertices;
      trail.push_back(std::move(step));
      return out;
    }

    std::optional<CliqueExpansion> eta;
    if (top && config_.expansion &&
        verify_expansion(g, *config_.expansion, config_.expansion->order())) {
      eta = config_.expansion;
    } else if (carried && carried->order() >= 2 && verify_expansion(g, *carried, carried->order())) {
      eta = carried;
    } else if (config_.clique_order >= 1 && config_.clique_order <= kCliqueExpansionLimit) {
      try {
        eta = find_clique_expansion(g, config_.clique_order);
      } catch (const GuardExceeded&) {
        eta.reset();
      }
    }
    std::string note = "no clique expansion of order " + std::to_string(config_.clique_order);
    if (eta) {
      try {
        return clique_step(g, k, *eta, w);
      } catch (const PreconditionFailed& e) {
        note = e.what();
      }
    }
    return fallback(g, k, w, note);
  }

  std::vector<TrailStep> trail;
  bool used_fallback = false;

 private:
  PackingOrCover clique_step(const LabeledGraph& g, int k, const CliqueExpansion& eta, int w) {
    const CliqueBranchResult r = clique_branch_separation(g, k, eta, config_.thresholds);
    if (auto* packing = std::get_if<PackingCertificate>(&r.outcome)) {
      trail.push_back({"clique_packing", k, g.vertex_count(), 0, w, -1, {}, to_string(packing->integrality)});
      return *packing;
    }
    const Separation& sep = std::get<Separation>(r.outcome);
    const VertexSet x = sep.separator();

    if (!is_clean(g, sep.a)) {
      Walk cycle = *find_non_null_cycle(g.induced_subgraph(sep.a));
      trail.push_back({"peel", k, g.vertex_count(), 0, w, 3 * k, x, {}});
      if (k == 1) return PackingCertificate{{std::move(cycle)}, Integrality::Integral};
      PackingOrCover sub = run(g.induced_subgraph(minus(sep.b, sep.a)), k - 1, false);
      if (auto* packing = std::get_if<PackingCertificate>(&sub)) {
        packing->cycles.insert(packing->cycles.begin(), std::move(cycle));
        return sub;
      }
      VertexSet cover = std::get<GfvsCertificate>(sub).vertices;
      cover.insert(x.begin(), x.end());
      return verify_gfvs(g, cover);
    }

    std::vector<int> keep;
    for (int i = 0; i < eta.order(); ++i) {
      const auto& node = eta.supernodes[i];
      if (std::none_of(node.begin(), node.end(), [&](Vertex v) { return x.count(v) > 0; })) {
        keep.push_back(i);
      }
    }
    const Vertex v =
        clique_branch_irrelevant(g, k, restrict_expansion(eta, keep), sep, {config_.thresholds, {}});
    trail.push_back({"irrelevant", k, g.vertex_count(), 0, w, 0, {v}, {}});
    std::vector<int> survivors;
    for (int i = 0; i < eta.order(); ++i) {
      if (!eta.supernodes[i].count(v)) survivors.push_back(i);
    }
    PackingOrCover sub = run(g.without_vertices({v}), k, false, restrict_expansion(eta, survivors));
    if (std::holds_alternative<PackingCertificate>(sub)) return sub;
    const VertexSet& q = std::get<GfvsCertificate>(sub).vertices;
    if (GfvsCertificate cert = verify_gfvs(g, q); cert.verified) return cert;
    VertexSet lifted = minus(q, sep.a);
    lifted.insert(x.begin(), x.end());
    if (GfvsCertificate cert = verify_gfvs(g, lifted); cert.verified) return cert;
    if (config_.oracle_fallback) return fallback(g, k, w, "cover of G - v did not lift");
    throw std::logic_error("cover of G - v did not lift to G");
  }

  PackingOrCover fallback(const LabeledGraph& g, int k, int w, const std::string& note) {
    if (!config_.oracle_fallback) {
      throw Unimplemented("wall branch not implemented (width " + std::to_string(w) + " above threshold; " +
                          note + "); use --oracle-fallback");
    }
    used_fallback = true;
    trail.push_back({"oracle_fallback", k, g.vertex_count(), 0, w, -1, {}, note});
    for (Integrality mode : {Integrality::Integral, Integrality::HalfIntegral}) {
      if (auto packing = find_packing(g, k, mode)) return *packing;
    }
    const MinGfvs cover = min_gfvs(g);
    trail.back().touched = cover.witness;
    return verify_gfvs(g, cover.witness);
  }

  const DriverConfig& config_;
};

}  // namespace

LabeledGraph strip_null_arcs(const LabeledGraph& g) {
  LabeledGraph current = g;
  while (true) {
    std::vector<char> keep(current.arc_universe_size(), 0);
    for (const Block& b : blocks_and_cut_vertices(current).blocks) {
      if (b.arcs.empty() || block_clean(current, b)) continue;
      for (ArcId a : b.arcs) keep[a] = 1;
    }
    std::vector<ArcId> drop;
    for (ArcId a : current.arc_ids()) {
      const Arc& arc = current.arc(a);
      if (arc.tail == arc.head && !arc.label.is_identity()) keep[a] = 1;
      if (!keep[a]) drop.push_back(a);
    }
    if (drop.empty()) return current;
    current = current.without_arcs(drop);
  }
}

Certificate solve(const LabeledGraph& g, int k, const DriverConfig& config) {
  if (k < 1) throw InvalidInput("solve: k must be positive");
  if (config.tw_threshold < 1) throw InvalidInput("solve: tw threshold must be at least 1");
  Driver driver(config);
  Certificate cert{driver.run(g, k, true), {}, k, false, config, std::nullopt};
  cert.trail = std::move(driver.trail);
  cert.fallback = driver.used_fallback;
  if (config.thresholds == ThresholdMode::Paper) cert.paper = driver_constants(k);
  if (auto why = certificate_violation(g, cert); !why.empty()) {
    throw std::logic_error("driver produced an invalid certificate: " + why);
  }
  if (cert.paper && !cert.is_packing()) {
    const auto size = std::get<GfvsCertificate>(cert.outcome).vertices.size();
    if (size > 0 && std::log2(static_cast<long double>(size)) > cert.paper->log2_tau) {
      throw std::logic_error("driver cover exceeds tau(k)");
    }
  }
  return cert;
}

std::string certificate_violation(const LabeledGraph& g, const Certificate& cert) {
  if (auto* packing = std::get_if<PackingCertificate>(&cert.outcome)) {
    if (packing->k() != cert.k) {
      return "packing has " + std::to_string(packing->k()) + " cycles, expected " + std::to_string(cert.k);
    }
    return packing_violation(g, *packing);
  }
  const auto& cover = std::get<GfvsCertificate>(cert.outcome);
  for (Vertex v : cover.vertices) {
    if (!g.has_vertex(v)) return "cover names unknown vertex " + std::to_string(v);
  }
  if (!verify_gfvs(g, cover.vertices).verified) return "G - X still has a non-null cycle";
  return {};
}

}  // namespace epkit
