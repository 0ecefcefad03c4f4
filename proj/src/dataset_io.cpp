#include "divcurve/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace divcurve {

namespace {

using nlohmann::json;

ParseError parse_error_at(const std::string& what, int line_no) {
    return ParseError(what + " (line " + std::to_string(line_no) + ")");
}

// Splits on '\n'; a trailing newline does not produce an extra line.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

bool parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == tok.size();
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("edge list: empty input");

    std::istringstream head(lines[0]);
    long long n = -1, m = -1;
    std::string tok_n, tok_m, extra;
    head >> tok_n >> tok_m;
    if (!parse_int(tok_n, n) || !parse_int(tok_m, m) || (head >> extra) || n < 0 || m < 0)
        throw parse_error_at("edge list: expected header \"n m\"", 1);
    if (static_cast<long long>(lines.size()) - 1 < m)
        throw ParseError("edge list: header promises " + std::to_string(m) + " edges, got " +
                         std::to_string(lines.size() - 1) + " lines");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        int line_no = static_cast<int>(i) + 2;
        std::istringstream ls(lines[static_cast<std::size_t>(i) + 1]);
        long long u = -1, v = -1;
        std::string tu, tv;
        ls >> tu >> tv;
        if (!parse_int(tu, u) || !parse_int(tv, v) || (ls >> extra))
            throw parse_error_at("edge list: expected \"u v\"", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw RangeError("edge list: endpoint out of range on line " + std::to_string(line_no));
        if (u == v)
            throw ValidationError("edge list: self-loop on line " + std::to_string(line_no));
        edges.push_back(make_edge(static_cast<int>(u), static_cast<int>(v)));
    }
    return make_graph(static_cast<int>(n), std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

Dataset parse_tu_dataset(const std::string& adjacency, const std::string& graph_indicator,
                         const std::optional<std::string>& labels,
                         const std::optional<std::string>& node_attributes) {
    auto ind_lines = split_lines(graph_indicator);
    const int total_nodes = static_cast<int>(ind_lines.size());

    std::vector<int> node_graph(total_nodes);  // 0-indexed graph id per global node
    int num_graphs = 0;
    for (int i = 0; i < total_nodes; ++i) {
        long long gid;
        if (!parse_int(ind_lines[i], gid) || gid < 1)
            throw parse_error_at("graph indicator: expected 1-indexed graph id", i + 1);
        node_graph[i] = static_cast<int>(gid) - 1;
        num_graphs = std::max<int>(num_graphs, static_cast<int>(gid));
    }
    // Local ids follow global order within each graph; TU ids are contiguous.
    std::vector<int> local_id(total_nodes);
    std::vector<int> graph_size(num_graphs, 0);
    for (int i = 0; i < total_nodes; ++i) local_id[i] = graph_size[node_graph[i]]++;
    for (int gi = 0; gi < num_graphs; ++gi)
        if (graph_size[gi] == 0)
            throw IntegrityError("graph indicator: graph id " + std::to_string(gi + 1) +
                                 " has no nodes");

    std::vector<std::vector<Edge>> edges(num_graphs);
    auto adj_lines = split_lines(adjacency);
    for (std::size_t li = 0; li < adj_lines.size(); ++li) {
        if (adj_lines[li].empty()) continue;
        std::string line = adj_lines[li];
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw parse_error_at("adjacency: expected \"u, v\"", static_cast<int>(li) + 1);
        long long u, v;
        std::string lhs = line.substr(0, comma), rhs = line.substr(comma + 1);
        lhs.erase(std::remove(lhs.begin(), lhs.end(), ' '), lhs.end());
        rhs.erase(std::remove(rhs.begin(), rhs.end(), ' '), rhs.end());
        if (!parse_int(lhs, u) || !parse_int(rhs, v))
            throw parse_error_at("adjacency: expected \"u, v\"", static_cast<int>(li) + 1);
        if (u < 1 || v < 1 || u > total_nodes || v > total_nodes)
            throw IntegrityError("adjacency: node id " + std::to_string(std::max(u, v)) +
                                 " absent from graph indicator");
        int gu = node_graph[u - 1], gv = node_graph[v - 1];
        if (gu != gv)
            throw IntegrityError("adjacency: edge spans graphs " + std::to_string(gu + 1) +
                                 " and " + std::to_string(gv + 1));
        if (u == v)
            throw ValidationError("adjacency: self-loop on line " + std::to_string(li + 1));
        edges[gu].push_back(make_edge(local_id[u - 1], local_id[v - 1]));
    }

    std::vector<std::optional<int>> graph_labels(num_graphs);
    if (labels) {
        auto lab_lines = split_lines(*labels);
        if (static_cast<int>(lab_lines.size()) != num_graphs)
            throw IntegrityError("labels: " + std::to_string(lab_lines.size()) +
                                 " entries for " + std::to_string(num_graphs) + " graphs");
        for (int gi = 0; gi < num_graphs; ++gi) {
            long long lab;
            if (!parse_int(lab_lines[gi], lab))
                throw parse_error_at("labels: expected integer", gi + 1);
            graph_labels[gi] = static_cast<int>(lab);
        }
    }

    std::vector<std::optional<std::vector<std::vector<double>>>> graph_features(num_graphs);
    if (node_attributes) {
        auto attr_lines = split_lines(*node_attributes);
        if (static_cast<int>(attr_lines.size()) != total_nodes)
            throw IntegrityError("node attributes: row count != node count");
        for (int gi = 0; gi < num_graphs; ++gi)
            graph_features[gi].emplace(graph_size[gi]);
        std::size_t dim = 0;
        for (int i = 0; i < total_nodes; ++i) {
            std::vector<double> row;
            std::istringstream ls(attr_lines[i]);
            std::string tok;
            while (std::getline(ls, tok, ',')) {
                try {
                    row.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw parse_error_at("node attributes: expected real", i + 1);
                }
            }
            if (i == 0) dim = row.size();
            if (row.size() != dim || row.empty())
                throw ValidationError("node attributes: ragged rows (line " +
                                      std::to_string(i + 1) + ")");
            (*graph_features[node_graph[i]])[local_id[i]] = std::move(row);
        }
    }

    Dataset ds;
    ds.graphs.reserve(num_graphs);
    for (int gi = 0; gi < num_graphs; ++gi)
        ds.graphs.push_back(make_graph(graph_size[gi], std::move(edges[gi]),
                                       std::move(graph_features[gi]), graph_labels[gi]));
    return ds;
}

Dataset parse_jsonl_dataset(std::istream& in, const std::string& name) {
    Dataset ds;
    ds.name = name;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw parse_error_at(std::string("jsonl: ") + e.what(), line_no);
        }
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw parse_error_at("jsonl: missing integer field \"n\"", line_no);
        int n = j["n"].get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.value("edges", json::array())) {
            if (!e.is_array() || e.size() != 2)
                throw parse_error_at("jsonl: edge must be [u, v]", line_no);
            edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
        }
        std::optional<std::vector<std::vector<double>>> features;
        if (j.contains("features") && !j["features"].is_null())
            features = j["features"].get<std::vector<std::vector<double>>>();
        std::optional<int> label;
        if (j.contains("label") && !j["label"].is_null()) label = j["label"].get<int>();
        try {
            ds.graphs.push_back(make_graph(n, std::move(edges), std::move(features), label));
        } catch (const Error& e) {
            throw ValidationError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
        }
    }
    // Feature dimension must be uniform across the dataset when present.
    std::size_t dim = 0;
    for (const auto& g : ds.graphs) {
        if (!g.features || g.features->empty()) continue;
        if (dim == 0) dim = g.features->front().size();
        if (g.features->front().size() != dim)
            throw ValidationError("jsonl: inconsistent feature dimensions across graphs");
    }
    return ds;
}

Dataset load_jsonl_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);
    return parse_jsonl_dataset(in, path);
}

std::string graph_to_json_line(const Graph& g) {
    json j;
    j["n"] = g.n;
    auto edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    if (g.features) j["features"] = *g.features;
    if (g.label) j["label"] = *g.label;
    return j.dump();
}

void write_jsonl_dataset(std::ostream& out, const Dataset& ds) {
    for (const auto& g : ds.graphs) out << graph_to_json_line(g) << '\n';
}

void save_jsonl_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write dataset file: " + path);
    write_jsonl_dataset(out, ds);
}

}  // namespace divcurve
