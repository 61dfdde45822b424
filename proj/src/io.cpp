#include "epkit/io.hpp"

#include <fstream>
#include <sstream>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

int node_key(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  bad(std::string(what) + " key \"" + s + "\" is not an integer");
}

Json trail_to_json(const std::vector<TrailStep>& trail) {
  Json out = Json::array();
  for (const TrailStep& s : trail) {
    Json step{{"step", s.step},         {"k", s.k},
              {"vertices", s.vertices}, {"arcs_stripped", s.arcs_stripped},
              {"width", s.width},       {"bound", s.bound},
              {"touched", vertex_set_to_json(s.touched)}};
    if (!s.note.empty()) step["note"] = s.note;
    out.push_back(std::move(step));
  }
  return out;
}

Json magnitude_to_json(const Magnitude& m) {
  Json out{{"log2", static_cast<double>(m.log2)}};
  if (m.exact) out["exact"] = *m.exact;
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json group_to_json(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Cyclic:
      return {{"cyclic", spec.degree()}};
    case GroupSpec::Kind::Symmetric:
      return {{"symmetric", spec.degree()}};
    case GroupSpec::Kind::Product: {
      Json parts = Json::array();
      for (const GroupSpec& f : spec.factors()) parts.push_back(group_to_json(f));
      return {{"product", parts}};
    }
  }
  bad("unknown group kind");
}

GroupSpec group_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("group must be an object with one key");
  if (j.contains("cyclic")) return GroupSpec::cyclic(as_int(j["cyclic"], "cyclic order"));
  if (j.contains("symmetric")) return GroupSpec::symmetric(as_int(j["symmetric"], "symmetric degree"));
  if (j.contains("product")) {
    const Json& parts = j["product"];
    if (!parts.is_array()) bad("product must list factor groups");
    std::vector<GroupSpec> factors;
    for (const Json& p : parts) factors.push_back(group_from_json(p));
    return GroupSpec::product(std::move(factors));
  }
  bad("group kind must be cyclic, symmetric or product");
}

Json graph_to_json(const LabeledGraph& g) {
  Json arcs = Json::array();
  std::vector<ArcId> dropped;
  for (ArcId a = 0; a < g.arc_universe_size(); ++a) {
    const Arc& arc = g.arc(a);
    arcs.push_back(Json::array({arc.tail, arc.head, to_string(arc.label)}));
    if (!g.has_arc(a) && g.has_vertex(arc.tail) && g.has_vertex(arc.head)) dropped.push_back(a);
  }
  Json out{{"group", group_to_json(g.group())}, {"n", g.universe_size()}, {"arcs", arcs}};
  VertexSet removed;
  for (Vertex v = 0; v < g.universe_size(); ++v) {
    if (!g.has_vertex(v)) removed.insert(v);
  }
  if (!removed.empty()) out["removed"] = vertex_set_to_json(removed);
  if (!dropped.empty()) out["removed_arcs"] = dropped;
  return out;
}

LabeledGraph graph_from_json(const Json& j) {
  const GroupSpec group = group_from_json(field(j, "group"));
  const int n = as_int(field(j, "n"), "n");
  if (n < 0) bad("n must be non-negative");
  const Json& list = field(j, "arcs");
  if (!list.is_array()) bad("arcs must be an array");
  std::vector<Arc> arcs;
  for (const Json& a : list) {
    if (!a.is_array() || a.size() != 3 || !a[2].is_string()) bad("arc must be [tail, head, \"label\"]");
    const int t = as_int(a[0], "arc tail"), h = as_int(a[1], "arc head");
    if (t < 0 || t >= n || h < 0 || h >= n) bad("arc endpoint outside [0, n)");
    arcs.push_back({t, h, parse_element(group, a[2].get<std::string>())});
  }
  LabeledGraph g(group, n, std::move(arcs));
  if (j.contains("removed")) {
    VertexSet removed;
    for (const Json& v : j["removed"]) {
      const int x = as_int(v, "removed vertex");
      if (x < 0 || x >= n) bad("removed vertex outside [0, n)");
      removed.insert(x);
    }
    g = g.without_vertices(removed);
  }
  if (j.contains("removed_arcs")) {
    std::vector<ArcId> dropped;
    for (const Json& a : j["removed_arcs"]) {
      const int x = as_int(a, "removed arc");
      if (x < 0 || x >= g.arc_universe_size()) bad("removed arc outside the arc list");
      dropped.push_back(x);
    }
    g = g.without_arcs(dropped);
  }
  return g;
}

Json vertex_set_to_json(const VertexSet& s) { return Json(std::vector<Vertex>(s.begin(), s.end())); }

VertexSet vertex_set_from_json(const LabeledGraph& g, const Json& j) {
  if (!j.is_array()) bad("vertex set must be an array");
  VertexSet out;
  for (const Json& v : j) {
    const int x = as_int(v, "vertex");
    if (!g.has_vertex(x)) bad("unknown vertex " + std::to_string(x));
    if (!out.insert(x).second) bad("vertex " + std::to_string(x) + " listed twice");
  }
  return out;
}

Json walk_to_json(const LabeledGraph& g, const Walk& w) {
  Json arcs = Json::array();
  for (const Step& s : w.steps) arcs.push_back(Json::array({s.arc, s.dir == Direction::Forward ? 1 : -1}));
  return {{"arcs", arcs}, {"vertices", walk_vertices(g, w)}};
}

Walk walk_from_json(const LabeledGraph& g, const Json& j) {
  const Json& arcs = field(j, "arcs");
  if (!arcs.is_array() || arcs.empty()) bad("walk needs a non-empty arcs array");
  Walk w;
  for (const Json& s : arcs) {
    if (!s.is_array() || s.size() != 2) bad("walk step must be [arc_id, dir]");
    const int a = as_int(s[0], "arc id");
    const int d = as_int(s[1], "direction");
    if (!g.has_arc(a)) bad("unknown arc " + std::to_string(a));
    if (d != 1 && d != -1) bad("direction must be 1 or -1");
    w.steps.push_back({a, d == 1 ? Direction::Forward : Direction::Reverse});
  }
  const Arc& first = g.arc(w.steps.front().arc);
  w.start = w.steps.front().dir == Direction::Forward ? first.tail : first.head;
  walk_vertices(g, w);  // continuity check
  return w;
}

Json packing_to_json(const LabeledGraph& g, const PackingCertificate& p) {
  Json cycles = Json::array();
  for (const Walk& c : p.cycles) cycles.push_back(walk_to_json(g, c));
  return {{"kind", "packing"}, {"integrality", to_string(p.integrality)}, {"k", p.k()}, {"cycles", cycles}};
}

Json certificate_to_json(const LabeledGraph& g, const Certificate& cert) {
  Json out;
  if (const auto* p = std::get_if<PackingCertificate>(&cert.outcome)) {
    out = packing_to_json(g, *p);
  } else {
    out = {{"kind", "gfvs"}, {"vertices", vertex_set_to_json(std::get<GfvsCertificate>(cert.outcome).vertices)}};
  }
  out["k"] = cert.k;
  out["fallback"] = cert.fallback;
  out["trail"] = trail_to_json(cert.trail);
  out["thresholds"] = to_string(cert.config.thresholds);
  out["scale"] = cert.config.thresholds == ThresholdMode::Paper ? "paper" : "non-paper-scale";
  out["config"] = {{"tw_threshold", cert.config.tw_threshold},
                   {"oracle_fallback", cert.config.oracle_fallback},
                   {"seed", cert.config.seed},
                   {"clique_order", cert.config.clique_order}};
  if (cert.paper) {
    const DriverConstants& c = *cert.paper;
    out["constants"] = {{"rho", magnitude_to_json(c.rho)},
                        {"rho_prime", magnitude_to_json(c.rho_prime)},
                        {"log2_pi", static_cast<double>(c.log2_pi)},
                        {"log2_sigma", static_cast<double>(c.log2_sigma)},
                        {"log2_sigma_prime", static_cast<double>(c.log2_sigma_prime)},
                        {"log2_w", static_cast<double>(c.log2_w)},
                        {"log2_tau", static_cast<double>(c.log2_tau)}};
  }
  return out;
}

Certificate certificate_from_json(const LabeledGraph& g, const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  Certificate cert{GfvsCertificate{}, {}, 0, false, {}, std::nullopt};
  if (kind == "packing") {
    PackingCertificate p;
    const std::string integrality = field(j, "integrality").is_string() ? j["integrality"].get<std::string>() : "";
    if (integrality == "integral") {
      p.integrality = Integrality::Integral;
    } else if (integrality == "half_integral") {
      p.integrality = Integrality::HalfIntegral;
    } else {
      bad("integrality must be integral or half_integral");
    }
    const Json& cycles = field(j, "cycles");
    if (!cycles.is_array()) bad("cycles must be an array");
    for (const Json& c : cycles) p.cycles.push_back(walk_from_json(g, c));
    cert.k = j.contains("k") ? as_int(j["k"], "k") : p.k();
    cert.outcome = std::move(p);
  } else if (kind == "gfvs") {
    cert.outcome = GfvsCertificate{vertex_set_from_json(g, field(j, "vertices")), false};
    cert.k = j.contains("k") ? as_int(j["k"], "k") : 0;
  } else {
    bad("certificate kind must be packing or gfvs");
  }
  if (j.contains("fallback") && j["fallback"].is_boolean()) cert.fallback = j["fallback"].get<bool>();
  return cert;
}

Json decomposition_to_json(const TreeDecomposition& td) {
  Json parent = Json::object(), bags = Json::object();
  for (const auto& [node, p] : td.parent) parent[std::to_string(node)] = p;
  for (const auto& [node, bag] : td.bags) bags[std::to_string(node)] = vertex_set_to_json(bag);
  return {{"nodes", td.nodes}, {"parent", parent}, {"bags", bags}};
}

TreeDecomposition decomposition_from_json(const Json& j) {
  TreeDecomposition td;
  const Json& nodes = field(j, "nodes");
  if (!nodes.is_array()) bad("nodes must be an array");
  for (const Json& n : nodes) td.nodes.push_back(as_int(n, "node"));
  const Json& parent = field(j, "parent");
  const Json& bags = field(j, "bags");
  if (!parent.is_object() || !bags.is_object()) bad("parent and bags must be objects");
  for (const auto& [key, value] : parent.items()) td.parent[node_key(key, "parent")] = as_int(value, "parent");
  for (const auto& [key, value] : bags.items()) {
    if (!value.is_array()) bad("bag must be an array");
    VertexSet bag;
    for (const Json& v : value) bag.insert(as_int(v, "bag vertex"));
    td.bags[node_key(key, "bags")] = std::move(bag);
  }
  return td;
}

Json expansion_to_json(const CliqueExpansion& eta) {
  Json supernodes = Json::object(), tree = Json::object(), edges = Json::object(), centers = Json::object();
  for (int i = 0; i < eta.order(); ++i) {
    const std::string key = std::to_string(i);
    supernodes[key] = vertex_set_to_json(eta.supernodes[i]);
    tree[key] = i < static_cast<int>(eta.tree_arcs.size()) ? Json(eta.tree_arcs[i]) : Json::array();
    if (i < static_cast<int>(eta.centers.size())) centers[key] = eta.centers[i];
  }
  for (const auto& [pair, arc] : eta.edge_map) {
    edges[std::to_string(pair.first) + "," + std::to_string(pair.second)] = arc;
  }
  return {{"supernodes", supernodes}, {"tree_edges", tree}, {"edge_map", edges}, {"centers", centers}};
}

CliqueExpansion expansion_from_json(const Json& j) {
  const Json& supernodes = field(j, "supernodes");
  const Json& tree = field(j, "tree_edges");
  const Json& edges = field(j, "edge_map");
  const Json& centers = field(j, "centers");
  for (const Json* part : {&supernodes, &tree, &edges, &centers}) {
    if (!part->is_object()) bad("expansion fields must be objects keyed by model vertex");
  }
  const int ell = static_cast<int>(supernodes.size());
  auto index = [ell](const std::string& key) {
    const int i = node_key(key, "model vertex");
    if (i < 0 || i >= ell) bad("model vertex " + key + " outside [0, " + std::to_string(ell) + ")");
    return i;
  };
  CliqueExpansion eta;
  eta.supernodes.resize(ell);
  eta.tree_arcs.resize(ell);
  eta.centers.assign(ell, -1);
  std::vector<char> seen(ell, 0);
  for (const auto& [key, value] : supernodes.items()) {
    const int i = index(key);
    seen[i] = 1;
    if (!value.is_array()) bad("supernode must be an array");
    for (const Json& v : value) eta.supernodes[i].insert(as_int(v, "supernode vertex"));
  }
  for (const auto& [key, value] : tree.items()) {
    if (!value.is_array()) bad("tree_edges entry must be an array");
    for (const Json& a : value) eta.tree_arcs[index(key)].push_back(as_int(a, "tree arc"));
  }
  for (const auto& [key, value] : edges.items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) bad("edge_map key must be \"i,j\"");
    int a = index(key.substr(0, comma)), b = index(key.substr(comma + 1));
    if (a > b) std::swap(a, b);
    eta.edge_map[{a, b}] = as_int(value, "mapped arc");
  }
  for (const auto& [key, value] : centers.items()) eta.centers[index(key)] = as_int(value, "center");
  for (int i = 0; i < ell; ++i) {
    if (eta.centers[i] < 0) bad("model vertex " + std::to_string(i) + " has no center");
  }
  return eta;
}

Json separation_to_json(const Separation& sep) {
  return {{"a", vertex_set_to_json(sep.a)}, {"b", vertex_set_to_json(sep.b)},
          {"separator", vertex_set_to_json(sep.separator())}};
}

Separation separation_from_json(const LabeledGraph& g, const Json& j) {
  return {vertex_set_from_json(g, field(j, "a")), vertex_set_from_json(g, field(j, "b"))};
}

Json exact_to_json(const LabeledGraph& g, const ExactResult& r) {
  return {{"non_null_cycles", r.non_null_cycles},
          {"min_gfvs", r.gfvs.size},
          {"gfvs_witness", vertex_set_to_json(r.gfvs.witness)},
          {"max_integral_packing", r.integral.size},
          {"integral_witness", packing_to_json(g, r.integral.witness)},
          {"max_half_integral_packing", r.half_integral.size},
          {"half_integral_witness", packing_to_json(g, r.half_integral.witness)}};
}

}  // namespace epkit
