#include "divcurve/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "divcurve/metrics.hpp"

namespace divcurve {

namespace {

using nlohmann::json;

std::vector<Edge> induced_edges(const std::vector<Triangle>& triangles) {
    std::set<Edge> edges;
    for (const auto& [a, b, c] : triangles) {
        edges.insert({a, b});
        edges.insert({a, c});
        edges.insert({b, c});
    }
    return {edges.begin(), edges.end()};
}

}  // namespace

const std::vector<Edge>& Triangulation::edges() const {
    if (!edges_built_) {
        edge_cache_ = induced_edges(triangles);
        edges_built_ = true;
    }
    return edge_cache_;
}

Triangulation make_triangulation(int n, std::vector<Triangle> triangles,
                                 std::optional<int> label) {
    if (n < 0) throw ValidationError("triangulation: negative vertex count");
    for (auto& tri : triangles) {
        std::sort(tri.begin(), tri.end());
        if (tri[0] == tri[1] || tri[1] == tri[2])
            throw ValidationError("triangulation: degenerate triangle");
        if (tri[0] < 0 || tri[2] >= n)
            throw RangeError("triangulation: vertex out of range");
    }
    std::sort(triangles.begin(), triangles.end());
    triangles.erase(std::unique(triangles.begin(), triangles.end()), triangles.end());
    Triangulation t;
    t.n = n;
    t.triangles = std::move(triangles);
    t.label = label;
    return t;
}

Eigen::MatrixXi boundary_operator(const Triangulation& t, int k) {
    const auto& edges = t.edges();
    if (k == 1) {
        // boundary of [u, v] = [v] - [u]
        Eigen::MatrixXi b = Eigen::MatrixXi::Zero(t.n, static_cast<int>(edges.size()));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            b(edges[e].first, static_cast<int>(e)) = -1;
            b(edges[e].second, static_cast<int>(e)) = 1;
        }
        return b;
    }
    if (k == 2) {
        // boundary of [a, b, c] = [b, c] - [a, c] + [a, b]
        std::map<Edge, int> edge_index;
        for (std::size_t e = 0; e < edges.size(); ++e) edge_index[edges[e]] = static_cast<int>(e);
        Eigen::MatrixXi b =
            Eigen::MatrixXi::Zero(static_cast<int>(edges.size()), t.triangle_count());
        for (int f = 0; f < t.triangle_count(); ++f) {
            const auto& [a, v, c] = t.triangles[static_cast<std::size_t>(f)];
            b(edge_index[{v, c}], f) = 1;
            b(edge_index[{a, c}], f) = -1;
            b(edge_index[{a, v}], f) = 1;
        }
        return b;
    }
    throw RangeError("boundary_operator: k must be 1 or 2");
}

Eigen::MatrixXd hodge_laplacian(const Triangulation& t, int k) {
    if (k < 0 || k > 2) throw RangeError("hodge_laplacian: k must lie in {0, 1, 2}");
    const int n_simplices = k == 0 ? t.n : (k == 1 ? static_cast<int>(t.edges().size())
                                                   : t.triangle_count());
    if (n_simplices == 0)
        throw SizeLimitError("hodge_laplacian: the complex has no " + std::to_string(k) +
                             "-simplices");
    if (k == 0) {
        Eigen::MatrixXd b1 = boundary_operator(t, 1).cast<double>();
        return b1 * b1.transpose();
    }
    if (k == 1) {
        Eigen::MatrixXd b1 = boundary_operator(t, 1).cast<double>();
        Eigen::MatrixXd lap = b1.transpose() * b1;
        if (t.triangle_count() > 0) {
            Eigen::MatrixXd b2 = boundary_operator(t, 2).cast<double>();
            lap += b2 * b2.transpose();
        }
        return lap;
    }
    Eigen::MatrixXd b2 = boundary_operator(t, 2).cast<double>();
    return b2.transpose() * b2;
}

DistMatrix hodge_heat_distance_matrix(const Triangulation& t, int k, double time) {
    if (time <= 0) throw RangeError("hodge_heat_distance_matrix: time must be positive");
    auto dec = spectral_decomposition(hodge_laplacian(t, k));
    const int s = static_cast<int>(dec.eigenvalues.size());
    DistMatrix d(s, 0.0);
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            double sum = 0.0;
            for (int l = 0; l < s; ++l)
                sum += std::exp(-dec.eigenvalues[static_cast<std::size_t>(l)] * time *
                                dec.eigenvectors(i, l) * dec.eigenvectors(j, l));
            d.set_symmetric(i, j, sum);
        }
    return d;
}

Triangulation triangular_upsample(const Triangulation& t, int target_nodes, Rng& rng) {
    if (target_nodes < t.n) throw RangeError("triangular_upsample: target below current size");
    if (target_nodes > t.n && t.triangles.empty())
        throw ValidationError("triangular_upsample: no triangles to subdivide");

    std::set<Triangle> current(t.triangles.begin(), t.triangles.end());
    int n = t.n;
    std::vector<Triangle> epoch;
    std::size_t pos = 0;
    while (n < target_nodes) {
        if (pos == epoch.size()) {
            epoch.assign(current.begin(), current.end());
            rng.shuffle(epoch);
            pos = 0;
        }
        const Triangle tri = epoch[pos++];
        const int centre = n++;
        current.erase(tri);
        current.insert({tri[0], tri[1], centre});
        current.insert({tri[1], tri[2], centre});
        current.insert({tri[0], tri[2], centre});
    }
    return make_triangulation(n, {current.begin(), current.end()}, t.label);
}

Triangulation barycentric_subdivision(const Triangulation& t) {
    const auto& edges = t.edges();
    std::map<Edge, int> midpoint;
    int next = t.n;
    for (const Edge& e : edges) midpoint[e] = next++;

    std::vector<Triangle> out;
    out.reserve(t.triangles.size() * 6);
    for (const auto& tri : t.triangles) {
        const auto [a, b, c] = tri;
        const int centre = next++;
        const int mab = midpoint[{a, b}], mbc = midpoint[{b, c}], mac = midpoint[{a, c}];
        out.push_back({a, mab, centre});
        out.push_back({mab, b, centre});
        out.push_back({b, mbc, centre});
        out.push_back({mbc, c, centre});
        out.push_back({a, mac, centre});
        out.push_back({mac, c, centre});
    }
    return make_triangulation(next, std::move(out), t.label);
}

Graph one_skeleton(const Triangulation& t) {
    return make_graph(t.n, t.edges(), std::nullopt, t.label);
}

int euler_characteristic(const Triangulation& t) {
    return t.n - static_cast<int>(t.edges().size()) + t.triangle_count();
}

std::vector<Triangulation> parse_jsonl_triangulations(std::istream& in) {
    std::vector<Triangulation> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("triangulation jsonl: " + std::string(e.what()) + " (line " +
                             std::to_string(line_no) + ")");
        }
        std::vector<Triangle> tris;
        for (const auto& tj : j.value("triangles", json::array())) {
            if (!tj.is_array() || tj.size() != 3)
                throw ParseError("triangulation jsonl: triangle must be [a, b, c] (line " +
                                 std::to_string(line_no) + ")");
            tris.push_back({tj[0].get<int>(), tj[1].get<int>(), tj[2].get<int>()});
        }
        std::optional<int> label;
        if (j.contains("label") && !j["label"].is_null()) label = j["label"].get<int>();
        out.push_back(make_triangulation(j.at("n").get<int>(), std::move(tris), label));
    }
    return out;
}

std::vector<Triangulation> load_jsonl_triangulations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open triangulation file: " + path);
    return parse_jsonl_triangulations(in);
}

void write_jsonl_triangulations(std::ostream& out, const std::vector<Triangulation>& ts) {
    for (const auto& t : ts) {
        json j;
        j["n"] = t.n;
        auto arr = json::array();
        for (const auto& tri : t.triangles) arr.push_back(json::array({tri[0], tri[1], tri[2]}));
        j["triangles"] = std::move(arr);
        if (t.label) j["label"] = *t.label;
        out << j.dump() << '\n';
    }
}

}  // namespace divcurve
