#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <queue>

#include "cheegraph/cheegraph.hpp"
#include "helpers.hpp"

using namespace cheegraph;

TEST_CASE("sphere orientation on P3 points away from the root") {
    const WeightedGraph g = testutil::p3(1.0);
    const Orientation o = sphere_orientation(g, 0);
    REQUIRE(o.sign(g, 0, 1) == 1);
    REQUIRE(o.sign(g, 1, 0) == -1);
    REQUIRE(o.sign(g, 1, 2) == 1);
    REQUIRE(o.sign(g, 2, 1) == -1);
    REQUIRE(o.sphere() == std::vector<int>{0, 1, 2});
}

TEST_CASE("antitrees have every edge oriented") {
    GraphFamily fam;
    fam.kind = FamilyKind::antitree;
    fam.radius = 3;
    const FamilyGraph fg = generate(fam);
    const Orientation o = sphere_orientation(fg.graph, fg.root);
    for (VertexId x = 0; x < fg.graph.size(); ++x)
        for (const auto& [y, w] : fg.graph.neighbors(x)) {
            if (!(w > 0.0)) continue;
            REQUIRE(o.sign(fg.graph, x, y) != 0);
            REQUIRE(o.sign(fg.graph, x, y) == -o.sign(fg.graph, y, x));
        }
}

TEST_CASE("same-sphere edges stay unoriented") {
    GraphFamily fam;
    fam.kind = FamilyKind::tree_with_sphere_edges;
    fam.branching = 2;
    fam.radius = 3;
    const FamilyGraph fg = generate(fam);
    const Orientation o = sphere_orientation(fg.graph, fg.root);
    int unoriented = 0;
    for (VertexId x = 0; x < fg.graph.size(); ++x)
        for (const auto& [y, w] : fg.graph.neighbors(x)) {
            if (!(w > 0.0) || y <= x) continue;
            const bool same_sphere = fg.sphere[static_cast<std::size_t>(x)] ==
                                     fg.sphere[static_cast<std::size_t>(y)];
            if (same_sphere) {
                REQUIRE(o.sign(fg.graph, x, y) == 0);
                ++unoriented;
            } else {
                REQUIRE(o.sign(fg.graph, x, y) != 0);
            }
        }
    REQUIRE(unoriented > 0);
}

TEST_CASE("sphere orientation requires a connected graph") {
    const WeightedGraph g(std::vector<double>(4, 1.0), {{0, 1, 1.0}, {2, 3, 1.0}});
    REQUIRE_THROWS_AS(sphere_orientation(g, 0), PreconditionError);
}

TEST_CASE("curvature matches the degree formula on unweighted graphs with m = n") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        // unweighted connected-ish random graph
        std::mt19937_64 rng(seed);
        const int n = 5 + static_cast<int>(rng() % 8);
        std::vector<EdgeInput> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((rng() >> 11) * 0x1.0p-53 < 0.45) edges.push_back({u, v, 1.0});
        for (int u = 1; u < n; ++u) {
            bool has = false;
            for (const auto& e : edges)
                if (e.u == u || e.v == u) has = true;
            if (!has) edges.push_back({u - 1, u, 1.0});
        }
        WeightedGraph g(std::vector<double>(static_cast<std::size_t>(n), 1.0), edges);
        g = g.with_degree_measure();
        // ensure connectivity from 0 for the orientation; skip if not
        try {
            const Orientation o = sphere_orientation(g, 0);
            const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
            const CurvatureField field = curvature(g, metric, o, full_vertex_set(g));
            for (VertexId x = 0; x < g.size(); ++x) {
                int n_plus = 0, n_minus = 0;
                for (const auto& [y, w] : g.neighbors(x)) {
                    if (!(w > 0.0)) continue;
                    if (o.sphere()[static_cast<std::size_t>(y)] ==
                        o.sphere()[static_cast<std::size_t>(x)] + 1)
                        ++n_plus;
                    if (o.sphere()[static_cast<std::size_t>(y)] ==
                        o.sphere()[static_cast<std::size_t>(x)] - 1)
                        ++n_minus;
                }
                const double expected = (n_minus - n_plus) / g.weighted_degree(x);
                REQUIRE(field.K[static_cast<std::size_t>(x)] == expected);
            }
        } catch (const PreconditionError&) {
            continue;
        }
    }
}

TEST_CASE("k-regular tree interior curvature is (1-k)/(k+1)") {
    for (const int k : {2, 3, 4}) {
        GraphFamily fam;
        fam.kind = FamilyKind::k_regular_tree;
        fam.branching = k;
        fam.radius = 3;
        fam.measure = MeasureConvention::weighted_degree;
        const FamilyGraph fg = generate(fam);
        const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
        const Orientation o = sphere_orientation(fg.graph, fg.root);
        const Subset inner = interior(fg);
        const CurvatureField field = curvature(fg.graph, metric, o, inner);
        for (VertexId x : inner) {
            if (x == fg.root) {
                REQUIRE(-field.K[static_cast<std::size_t>(x)] == 1.0);
            } else {
                REQUIRE(field.K[static_cast<std::size_t>(x)] == (1.0 - k) / (k + 1.0));
            }
        }
        REQUIRE(field.k_lower == (k - 1.0) / (k + 1.0));  // exact
    }
}

TEST_CASE("reversing the orientation negates the curvature") {
    const WeightedGraph g = testutil::random_graph(11, 5, 10);
    const Orientation o = sphere_orientation(g, 0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
    const CurvatureField field = curvature(g, metric, o, full_vertex_set(g));
    const CurvatureField reversed = curvature(g, metric, o.reversed(), full_vertex_set(g));
    for (VertexId x = 0; x < g.size(); ++x)
        REQUIRE(reversed.K[static_cast<std::size_t>(x)] == -field.K[static_cast<std::size_t>(x)]);
}

TEST_CASE("fully oriented graphs telescope: sum m K = 0") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 5, 12);
        std::vector<std::pair<VertexId, VertexId>> plus;
        for (VertexId x = 0; x < g.size(); ++x)
            for (const auto& [y, w] : g.neighbors(x))
                if (w > 0.0 && y > x) plus.push_back({x, y});
        const Orientation o = Orientation::from_positive_pairs(g, plus);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        const CurvatureField field = curvature(g, metric, o, full_vertex_set(g));
        double total = 0.0, scale = 0.0;
        for (VertexId x = 0; x < g.size(); ++x) {
            total += g.measure(x) * field.K[static_cast<std::size_t>(x)];
            scale += std::abs(g.measure(x) * field.K[static_cast<std::size_t>(x)]);
        }
        REQUIRE(std::abs(total) <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("per-set chain holds on random triples") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 4, 12);
        std::mt19937_64 rng(seed + 13);
        // random orientation: each undirected edge +1 / -1 / unoriented
        std::vector<std::pair<VertexId, VertexId>> plus;
        for (VertexId x = 0; x < g.size(); ++x)
            for (const auto& [y, w] : g.neighbors(x)) {
                if (!(w > 0.0) || y <= x) continue;
                switch (rng() % 3) {
                    case 0: plus.push_back({x, y}); break;
                    case 1: plus.push_back({y, x}); break;
                    default: break;
                }
            }
        const Orientation o = Orientation::from_positive_pairs(g, plus);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        const CurvatureField field = curvature(g, metric, o, full_vertex_set(g));
        const int wsize = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g.size()));
        const Subset w = testutil::random_subset_of(rng, g.size(), wsize);
        double min_minus_k = std::numeric_limits<double>::infinity();
        for (VertexId x : w) min_minus_k = std::min(min_minus_k, -field.K[static_cast<std::size_t>(x)]);
        const auto [bnd, vol] = testutil::brute_boundary(g, metric, w);
        REQUIRE(min_minus_k * vol <= bnd + 1e-9);
        ++checked;
    }
    REQUIRE(checked == 200);
}

TEST_CASE("verify_curvature_bound on the binary tree interior") {
    GraphFamily fam;
    fam.kind = FamilyKind::k_regular_tree;
    fam.branching = 2;
    fam.radius = 3;
    fam.measure = MeasureConvention::weighted_degree;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    const Orientation o = sphere_orientation(fg.graph, fg.root);
    const CertificateRecord record = verify_curvature_bound(fg.graph, metric, o, interior(fg));
    REQUIRE(record.passed);
    REQUIRE(record.applicable);
    REQUIRE(record.rhs == Catch::Approx(1.0 / 3.0));
    REQUIRE(record.lhs >= record.rhs - 1e-9);  // alpha(U) >= 1/3
    REQUIRE(record.context["chain_violations"].get<std::uint64_t>() == 0);
}

TEST_CASE("empty orientation certifies the trivial bound") {
    const WeightedGraph g = testutil::p3(1.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const Orientation o = Orientation::empty_orientation(g);
    const CertificateRecord record = verify_curvature_bound(g, metric, o, {0, 1, 2});
    REQUIRE(record.passed);
    REQUIRE(record.rhs == 0.0);  // K = 0 everywhere
}

TEST_CASE("antitree curvature bound is positive and certified") {
    GraphFamily fam;
    fam.kind = FamilyKind::antitree;
    fam.radius = 4;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::inverse_degree);
    const Orientation o = sphere_orientation(fg.graph, fg.root);
    const CertificateRecord record = verify_curvature_bound(fg.graph, metric, o, interior(fg));
    REQUIRE(record.applicable);
    REQUIRE(record.passed);
    REQUIRE(record.context["k_lower"].get<double>() > 0.0);
}

TEST_CASE("vacuous curvature hypothesis yields a not-applicable record") {
    GraphFamily fam;
    fam.kind = FamilyKind::k_regular_tree;
    fam.branching = 2;
    fam.radius = 3;
    fam.measure = MeasureConvention::weighted_degree;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    const Orientation o = sphere_orientation(fg.graph, fg.root).reversed();
    const CertificateRecord record = verify_curvature_bound(fg.graph, metric, o, interior(fg));
    REQUIRE_FALSE(record.applicable);
    REQUIRE(record.passed);
}

TEST_CASE("curvature bound respects the capacity budget") {
    GraphFamily fam;
    fam.kind = FamilyKind::k_regular_tree;
    fam.branching = 2;
    fam.radius = 5;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    const Orientation o = sphere_orientation(fg.graph, fg.root);
    REQUIRE_THROWS_AS(verify_curvature_bound(fg.graph, metric, o, interior(fg)), CapacityError);
}

TEST_CASE("orientation construction rejects non-edges and conflicts") {
    const WeightedGraph g = testutil::p3(1.0);
    REQUIRE_THROWS_AS(Orientation::from_positive_pairs(g, {{0, 2}}), InputError);
    REQUIRE_THROWS_AS(Orientation::from_positive_pairs(g, {{0, 1}, {1, 0}}), InputError);
}
