#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epkit/cuts.hpp"
#include "epkit/errors.hpp"
#include "epkit/generators.hpp"
#include "epkit/io.hpp"
#include "epkit/oracle.hpp"
#include "epkit/solver.hpp"

using namespace epkit;

namespace {

enum Exit { kOk = 0, kInvalidCert = 1, kInvalid = 2, kGuard = 3, kUnimplemented = 4 };

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << dump(j);
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidInput("cannot write " + out);
  f << dump(j);
}

VertexSet parse_list(const LabeledGraph& g, const std::string& text, const char* what) {
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    Vertex v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": \"" + item + "\" is not a vertex id");
    }
    if (!g.has_vertex(v)) throw InvalidInput(std::string(what) + ": unknown vertex " + std::to_string(v));
    out.insert(v);
  }
  return out;
}

int param(const std::vector<std::string>& params, std::size_t i, const std::string& name) {
  if (i >= params.size()) throw InvalidInput("gen: missing parameter " + name);
  try {
    std::size_t used = 0;
    const int v = std::stoi(params[i], &used);
    if (used == params[i].size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput("gen: parameter " + name + " must be an integer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing-or-cover certificates for non-null cycles in group-labeled graphs"};
  app.require_subcommand(1);

  std::string graph_path, out, cert_path, td_path, expansion_path, thresholds;
  int k = 1;
  DriverConfig config;

  auto* solve_cmd = app.add_subcommand("solve", "Half-integral k-packing or a group feedback vertex set");
  solve_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  solve_cmd->add_option("-k", k, "Number of cycles")->required();
  solve_cmd->add_option("--tw-threshold", config.tw_threshold, "Width handled by the decomposition branch");
  solve_cmd->add_option("--thresholds", thresholds, "paper or small (default small)");
  solve_cmd->add_flag("--oracle-fallback", config.oracle_fallback, "Solve exactly when no branch applies");
  solve_cmd->add_option("--clique-order", config.clique_order, "Clique expansion order searched for");
  solve_cmd->add_option("--expansion-witness", expansion_path, "Clique expansion JSON");
  solve_cmd->add_option("--td", td_path, "Tree decomposition JSON");
  solve_cmd->add_option("--seed", config.seed, "Recorded in the certificate");
  solve_cmd->add_option("--out", out, "Write the certificate here");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact min gfvs and max packings");
  oracle_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  oracle_cmd->add_option("--out", out, "Output file");

  std::string family, group_text = R"({"cyclic":2})", witness_out, gadget = "odd";
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  bool no_subdivide = false;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("family", family, "odd_cycles | escher_wall | zm_grid | random | subdivided_clique")
      ->required();
  gen_cmd->add_option("params", params, "Family parameters (see docs/generators.md)");
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("--group", group_text, "Group JSON for the random family");
  gen_cmd->add_option("--gadget", gadget, "none or odd (subdivided_clique)");
  gen_cmd->add_flag("--no-subdivide", no_subdivide, "Keep clique edges unsubdivided");
  gen_cmd->add_option("--witness-out", witness_out, "Where to write the clique expansion witness");
  gen_cmd->add_option("--out", out, "Output file");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate; exit 0 iff valid");
  verify_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  verify_cmd->add_option("cert", cert_path, "Certificate JSON")->required();

  std::string xs, ys;
  auto* impsep_cmd = app.add_subcommand("impsep", "Important X-Y separators of size at most k");
  impsep_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  impsep_cmd->add_option("--x", xs, "Comma-separated vertex ids")->required();
  impsep_cmd->add_option("--y", ys, "Comma-separated vertex ids")->required();
  impsep_cmd->add_option("-k", k, "Size bound")->required();

  int t = 2, budget = -1;
  std::string terminals, zs;
  auto* twreduce_cmd = app.add_subcommand("twreduce", "Treewidth-reduction set");
  twreduce_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  twreduce_cmd->add_option("-t", t, "Cut size bound")->required();
  twreduce_cmd->add_option("--terminals", terminals, "Comma-separated vertex ids")->required();
  twreduce_cmd->add_option("--z", zs, "Comma-separated vertex ids")->required();
  twreduce_cmd->add_option("--thresholds", thresholds, "paper (default) or small");
  twreduce_cmd->add_option("--budget", budget, "Largest separator considered (default 2t)");

  std::string as, bs;
  int p = 2;
  auto* irrelevant_cmd = app.add_subcommand("irrelevant", "Irrelevant vertex behind a small separation");
  irrelevant_cmd->add_option("graph", graph_path, "Graph JSON")->required();
  irrelevant_cmd->add_option("--a", as, "Side A, comma-separated")->required();
  irrelevant_cmd->add_option("--b", bs, "Side B, comma-separated")->required();
  irrelevant_cmd->add_option("--z", zs, "Comma-separated vertex ids")->required();
  irrelevant_cmd->add_option("-p", p, "Separator bound")->required();
  irrelevant_cmd->add_option("-k", k, "Packing size")->required();
  irrelevant_cmd->add_option("--thresholds", thresholds, "paper (default) or small");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*gen_cmd) {
      Json graph;
      if (family == "odd_cycles") {
        graph = graph_to_json(odd_cycles(param(params, 0, "n"), param(params, 1, "m"), seed));
      } else if (family == "escher_wall") {
        const int h = param(params, 0, "h");
        graph = graph_to_json(escher_wall(h, params.size() > 1 ? param(params, 1, "w") : h));
      } else if (family == "zm_grid") {
        graph = graph_to_json(
            zm_grid(param(params, 0, "m"), param(params, 1, "rows"), param(params, 2, "cols"), seed));
      } else if (family == "random") {
        graph = graph_to_json(random_graph(param(params, 0, "n"), param(params, 1, "m"),
                                           group_from_json(parse_json(group_text)), seed));
      } else if (family == "subdivided_clique") {
        const CliqueInstance inst = subdivided_clique(param(params, 0, "ell"), gadget, !no_subdivide);
        graph = graph_to_json(inst.graph);
        if (!witness_out.empty()) emit(expansion_to_json(inst.expansion), witness_out);
      } else {
        throw InvalidInput("gen: unknown family " + family);
      }
      emit(graph, out);
      return kOk;
    }

    if (thresholds.empty()) thresholds = *solve_cmd ? "small" : "paper";
    const LabeledGraph g = graph_from_json(read_json_file(graph_path));

    if (*solve_cmd) {
      config.thresholds = parse_threshold_mode(thresholds);
      if (!td_path.empty()) config.td = decomposition_from_json(read_json_file(td_path));
      if (!expansion_path.empty()) config.expansion = expansion_from_json(read_json_file(expansion_path));
      emit(certificate_to_json(g, solve(g, k, config)), out);
    } else if (*oracle_cmd) {
      emit(exact_to_json(g, solve_exact(g)), out);
    } else if (*verify_cmd) {
      const Json doc = read_json_file(cert_path);
      std::string why;
      if (doc.is_object() && doc.value("kind", "") == "non_null_cycle") {
        const Walk c = walk_from_json(g, doc);
        if (!is_cycle(g, c)) {
          why = "not a cycle";
        } else if (!is_non_null_cycle(g, c)) {
          why = "cycle is null";
        }
      } else {
        const Certificate cert = certificate_from_json(g, doc);
        why = cert.k > 0 || !cert.is_packing() ? certificate_violation(g, cert) : "k must be positive";
      }
      Json report{{"valid", why.empty()}};
      if (!why.empty()) report["reason"] = why;
      std::cout << dump(report);
      return why.empty() ? kOk : kInvalidCert;
    } else if (*impsep_cmd) {
      const ImportantSeparators r =
          enumerate_important_separators(g, parse_list(g, xs, "--x"), parse_list(g, ys, "--y"), k);
      Json seps = Json::array();
      for (const auto& s : r.separators) {
        seps.push_back({{"separator", vertex_set_to_json(s.separator)}, {"reach", vertex_set_to_json(s.reach)}});
      }
      emit({{"separable", r.separable}, {"count", r.separators.size()}, {"separators", seps}}, out);
    } else if (*twreduce_cmd) {
      TwReductionOptions opts;
      opts.mode = parse_threshold_mode(thresholds);
      opts.separator_budget = budget;
      const TwReduction r =
          tw_reduction_set(g, t, parse_list(g, terminals, "--terminals"), parse_list(g, zs, "--z"), opts);
      Json parts = Json::array();
      for (const auto& pc : r.partitions) {
        Json blocks = Json::array();
        for (const VertexSet& b : pc.partition) blocks.push_back(vertex_set_to_json(b));
        parts.push_back({{"partition", blocks},
                         {"contribution", vertex_set_to_json(pc.contribution)},
                         {"separators", pc.separators}});
      }
      emit({{"set", vertex_set_to_json(r.set)},
            {"partitions", parts},
            {"partitions_enumerated", r.partitions_enumerated},
            {"thresholds", thresholds}},
           out);
    } else if (*irrelevant_cmd) {
      IrrelevantOptions opts;
      opts.mode = parse_threshold_mode(thresholds);
      const Separation sep{parse_list(g, as, "--a"), parse_list(g, bs, "--b")};
      const IrrelevantVertex r = find_irrelevant_vertex(g, sep, parse_list(g, zs, "--z"), p, k, opts);
      emit({{"vertex", r.vertex},
            {"excluded", vertex_set_to_json(r.excluded)},
            {"subsets_examined", r.subsets_examined},
            {"thresholds", thresholds}},
           out);
    }
    return kOk;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const Unimplemented& e) {
    std::cerr << "unimplemented: " << e.what() << "\n";
    return kUnimplemented;
  }
}
