#pragma once

#include <string>

#include <json.hpp>

#include "epkit/decomposition.hpp"
#include "epkit/labeled_graph.hpp"
#include "epkit/oracle.hpp"
#include "epkit/paths_packing.hpp"
#include "epkit/solver.hpp"

namespace epkit {

using Json = nlohmann::json;

// All parsers throw InvalidInput on malformed or inconsistent documents.
// Grammar: docs/format.md.

Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);
// Two-space indent, trailing newline. Keys come out sorted.
std::string dump(const Json& j);

Json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const Json& j);

// Removed vertices are listed under "removed", arcs deleted between present
// vertices under "removed_arcs".
Json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const Json& j);

Json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const LabeledGraph& g, const Json& j);

// {"arcs": [[id, 1 | -1], ...], "vertices": [...]}; vertices are ignored on input.
Json walk_to_json(const LabeledGraph& g, const Walk& w);
Walk walk_from_json(const LabeledGraph& g, const Json& j);

Json packing_to_json(const LabeledGraph& g, const PackingCertificate& p);
Json certificate_to_json(const LabeledGraph& g, const Certificate& cert);
// Reads the outcome and k of a "packing" or "gfvs" document; the trail is
// not restored.
Certificate certificate_from_json(const LabeledGraph& g, const Json& j);

Json decomposition_to_json(const TreeDecomposition& td);
TreeDecomposition decomposition_from_json(const Json& j);

Json expansion_to_json(const CliqueExpansion& eta);
CliqueExpansion expansion_from_json(const Json& j);

Json separation_to_json(const Separation& sep);
Separation separation_from_json(const LabeledGraph& g, const Json& j);

Json exact_to_json(const LabeledGraph& g, const ExactResult& r);

}  // namespace epkit
