#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "divcurve/genperturb.hpp"
#include "fixtures.hpp"

using namespace divcurve;

TEST_CASE("generators at probability extremes") {
    Rng rng(71);
    Graph empty = generate_graph(ErModel{0.0}, 8, rng);
    CHECK(empty.edge_count() == 0);
    Graph full = generate_graph(ErModel{1.0}, 8, rng);
    CHECK(full.edge_count() == 28);
}

TEST_CASE("ER edge count matches the binomial moment") {
    const int n = 20, samples = 200;
    const double p = 0.75;
    double total = 0.0;
    for (int s = 0; s < samples; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        total += generate_graph(ErModel{p}, n, rng).edge_count();
    }
    const double pairs = n * (n - 1) / 2.0;
    const double mean = total / samples;
    const double sigma = std::sqrt(pairs * p * (1 - p) / samples);
    CHECK(std::abs(mean - p * pairs) < 3.0 * sigma);
}

TEST_CASE("generators are seed-deterministic") {
    for (const GraphModel& model :
         {GraphModel{ErModel{0.4}}, GraphModel{RpModel{}}, GraphModel{RgModel{0.3}},
          GraphModel{SbmModel{}}}) {
        Rng r1(123), r2(123);
        Graph a = generate_graph(model, 15, r1, 0);
        Graph b = generate_graph(model, 15, r2, 0);
        CHECK(a.edges == b.edges);
        CHECK(a.label == 0);
    }
}

TEST_CASE("partition models populate communities") {
    Rng rng(72);
    Graph rp = generate_graph(RpModel{3, 1.0, 0.0}, 9, rng);
    // p_in=1, p_out=0: three disjoint triangles.
    CHECK(connected_components(rp).first == 3);
    CHECK(rp.edge_count() == 9);

    CHECK_THROWS_AS(generate_graph(RpModel{5, 0.5, 0.5}, 3, rng), ValidationError);
    CHECK_THROWS_AS(generate_graph(ErModel{1.5}, 3, rng), ValidationError);
}

TEST_CASE("RG keeps coordinates only when asked") {
    Rng r1(9), r2(9);
    Graph plain = generate_graph(RgModel{0.5, false}, 10, r1);
    Graph with = generate_graph(RgModel{0.5, true}, 10, r2);
    CHECK_FALSE(plain.features.has_value());
    REQUIRE(with.features.has_value());
    CHECK(with.features->at(0).size() == 2);
    CHECK(plain.edges == with.edges);
}

TEST_CASE("perturb p=0 is the identity") {
    Rng gen(73);
    Graph g = fixtures::random_connected_graph(12, 0.3, gen);
    for (auto kind : {PerturbKind::kAddEdge, PerturbKind::kRemoveEdge, PerturbKind::kRewireEdge,
                      PerturbKind::kSwapEdge}) {
        Rng rng(5);
        Graph p = perturb(g, {kind, 0.0}, rng);
        CHECK(p.edges == g.edges);
    }
}

TEST_CASE("add_edge") {
    Rng gen(74);
    Graph g = fixtures::random_graph(10, 0.3, gen);
    const int missing = 45 - g.edge_count();

    SUBCASE("p=1 completes the graph") {
        Rng rng(1);
        CHECK(perturb(g, {PerturbKind::kAddEdge, 1.0}, rng).edge_count() == 45);
    }
    SUBCASE("edge count is m + floor(p * missing)") {
        for (double p : {0.1, 0.25, 0.5, 0.9}) {
            Rng rng(2);
            Graph out = perturb(g, {PerturbKind::kAddEdge, p}, rng);
            CHECK(out.edge_count() ==
                  g.edge_count() + static_cast<int>(std::floor(p * missing)));
        }
    }
}

TEST_CASE("remove_edge protects bridges") {
    Rng gen(75);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = fixtures::random_graph(12, 0.3, gen);
        Rng rng(static_cast<std::uint64_t>(trial));
        PerturbStats stats;
        Graph out = perturb(g, {PerturbKind::kRemoveEdge, 1.0}, rng, &stats);
        CHECK(connected_components(out).first == connected_components(g).first);
        // p=1 removes the full cycle rank, down to a spanning forest.
        const int c = connected_components(g).first;
        CHECK(out.edge_count() == g.n - c);
        CHECK(stats.applied == g.edge_count() - (g.n - c));
    }
}

TEST_CASE("remove_edge on a tree is a no-op with zero budget") {
    Rng gen(76);
    Graph tree = fixtures::random_connected_graph(8, 0.0, gen);
    REQUIRE(tree.edge_count() == 7);
    Rng rng(3);
    PerturbStats stats;
    Graph out = perturb(tree, {PerturbKind::kRemoveEdge, 1.0}, rng, &stats);
    CHECK(out.edges == tree.edges);
    CHECK(stats.requested == 0);
    CHECK(stats.applied == 0);
}

TEST_CASE("bridge detection") {
    auto bridges = bridge_edges(fixtures::path(4));
    CHECK(bridges.size() == 3);
    CHECK(bridge_edges(fixtures::cycle(5)).empty());
    Graph barbell = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
    auto b = bridge_edges(barbell);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Edge{2, 3});
}

TEST_CASE("rewire keeps the edge count") {
    Rng gen(77);
    Graph g = fixtures::random_connected_graph(12, 0.25, gen);
    Rng rng(4);
    PerturbStats stats;
    Graph out = perturb(g, {PerturbKind::kRewireEdge, 0.5}, rng, &stats);
    CHECK(out.edge_count() == g.edge_count());
    CHECK(stats.requested == static_cast<int>(std::floor(0.5 * g.edge_count())));
}

TEST_CASE("swap preserves the degree sequence") {
    Rng gen(78);
    Graph g = fixtures::random_connected_graph(14, 0.3, gen);
    auto before = degrees(g);
    std::sort(before.begin(), before.end());
    Rng rng(6);
    Graph out = perturb(g, {PerturbKind::kSwapEdge, 0.8}, rng);
    auto after = degrees(out);
    std::sort(after.begin(), after.end());
    CHECK(before == after);
    CHECK(out.edge_count() == g.edge_count());
}

TEST_CASE("perturb rejects out-of-range degrees") {
    Rng rng(7);
    CHECK_THROWS_AS(perturb(fixtures::cycle(4), {PerturbKind::kAddEdge, 1.5}, rng), RangeError);
    CHECK_THROWS_AS(perturb(fixtures::cycle(4), {PerturbKind::kAddEdge, -0.1}, rng), RangeError);
}

TEST_CASE("perturbation sweep correlations") {
    // Small-scale version of the tracking experiment: removals push the mean
    // curve norm strictly up, additions push it down.
    Dataset ds;
    for (int i = 0; i < 8; ++i) {
        Rng rng(static_cast<std::uint64_t>(i) + 500);
        ds.graphs.push_back(generate_graph(ErModel{0.4}, 16, rng, 0));
    }
    CoarseningConfig cfg;
    cfg.seed = 31;
    std::vector<int> scales;
    for (int s = 1; s <= 16; ++s) scales.push_back(s);

    auto removed = perturbation_sweep(ds, PerturbKind::kRemoveEdge,
                                      {0.2, 0.4, 0.6, 0.8, 1.0}, scales, cfg, 2);
    CHECK(removed.rho == doctest::Approx(1.0));

    auto added = perturbation_sweep(ds, PerturbKind::kAddEdge, {0.2, 0.4, 0.6, 0.8, 1.0},
                                    scales, cfg, 2);
    CHECK(added.rho < -0.8);

    CHECK_THROWS_AS(perturbation_sweep(ds, PerturbKind::kAddEdge, {0.5}, scales, cfg, 1),
                    ValidationError);
}
