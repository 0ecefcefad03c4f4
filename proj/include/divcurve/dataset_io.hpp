#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "divcurve/graph.hpp"

namespace divcurve {

// Edge-list text format: first line "n m", then m lines "u v" (0-indexed,
// single-space separators, LF endings).
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

// TU collection format. `adjacency` holds "u, v" lines with 1-indexed global
// node ids, `graph_indicator` one 1-indexed graph id per global node; labels
// and node attributes are optional single- and comma-separated-value files.
Dataset parse_tu_dataset(const std::string& adjacency, const std::string& graph_indicator,
                         const std::optional<std::string>& labels = std::nullopt,
                         const std::optional<std::string>& node_attributes = std::nullopt);

// JSONL dataset: one object per line,
// {"n": int, "edges": [[u,v],...], "features": [[...],...]?, "label": int?}.
Dataset parse_jsonl_dataset(std::istream& in, const std::string& name = "");
Dataset load_jsonl_dataset(const std::string& path);
void write_jsonl_dataset(std::ostream& out, const Dataset& ds);
void save_jsonl_dataset(const std::string& path, const Dataset& ds);

std::string graph_to_json_line(const Graph& g);

}  // namespace divcurve
