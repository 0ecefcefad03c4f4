#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "divcurve/dist_matrix.hpp"
#include "divcurve/graph.hpp"
#include "divcurve/rng.hpp"

namespace divcurve {

using Triangle = std::array<int, 3>;  // vertex triple, ascending

// Two-dimensional simplicial complex: triangles plus the induced edges.
// Simplices are stored with ascending vertex order; boundary signs follow the
// alternating-sum convention, which is all the Laplacians depend on.
struct Triangulation {
    int n = 0;
    std::vector<Triangle> triangles;  // sorted lexicographically, unique
    std::optional<int> label;

    const std::vector<Edge>& edges() const;  // derived, cached
    int triangle_count() const { return static_cast<int>(triangles.size()); }

private:
    mutable std::vector<Edge> edge_cache_;
    mutable bool edges_built_ = false;
};

Triangulation make_triangulation(int n, std::vector<Triangle> triangles,
                                 std::optional<int> label = std::nullopt);

// Signed incidence matrix of dimension k in {1, 2}: B1 is |V| x |E|, B2 is
// |E| x |T|; B1 * B2 = 0 exactly in integer arithmetic.
Eigen::MatrixXi boundary_operator(const Triangulation& t, int k);

// L_k = B_k^T B_k + B_{k+1} B_{k+1}^T with B_0 and B_3 the zero maps.
Eigen::MatrixXd hodge_laplacian(const Triangulation& t, int k);

// entry(ci, cj) = sum_l exp(-lambda_l * time * psi_l(ci) * psi_l(cj)) over the
// spectrum of L_k, the product kept inside the exponent verbatim.
DistMatrix hodge_heat_distance_matrix(const Triangulation& t, int k, double time);

// Grows the complex to `target_nodes` by subdividing uniformly picked
// triangles (central vertex joined to all three corners); every triangle is
// picked once before any repeat, so each pass sweeps the current surface.
Triangulation triangular_upsample(const Triangulation& t, int target_nodes, Rng& rng);

// Standard barycentric subdivision of the 2-complex: one midpoint vertex per
// edge, one centre vertex per triangle, six triangles per triangle.
Triangulation barycentric_subdivision(const Triangulation& t);

Graph one_skeleton(const Triangulation& t);

// V - E + F.
int euler_characteristic(const Triangulation& t);

// JSONL: {"n": int, "triangles": [[a,b,c],...], "label": int?} per line.
std::vector<Triangulation> parse_jsonl_triangulations(std::istream& in);
std::vector<Triangulation> load_jsonl_triangulations(const std::string& path);
void write_jsonl_triangulations(std::ostream& out, const std::vector<Triangulation>& ts);

}  // namespace divcurve
