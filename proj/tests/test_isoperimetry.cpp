#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "cheegraph/cheegraph.hpp"
#include "helpers.hpp"

using namespace cheegraph;

TEST_CASE("boundary of a single-edge graph") {
    const WeightedGraph g = testutil::single_edge();
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CutReport cut = boundary(g, metric, {0});
    REQUIRE(cut.boundary_measure == Catch::Approx(1.0));
    REQUIRE(cut.volume == Catch::Approx(1.0));
    REQUIRE(cut.ratio == Catch::Approx(1.0));
}

TEST_CASE("boundary on P3 counts ordered pairs once") {
    const WeightedGraph g = testutil::p3(2.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CutReport cut = boundary(g, metric, {0, 1});
    REQUIRE(cut.boundary_measure == Catch::Approx(1.0));  // only (1, 2)
    REQUIRE(cut.volume == Catch::Approx(4.0));
    REQUIRE(cut.ratio == Catch::Approx(0.25));
}

TEST_CASE("boundary of the whole vertex set is empty") {
    const WeightedGraph g = testutil::p3(2.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CutReport cut = boundary(g, metric, {0, 1, 2});
    REQUIRE(cut.boundary_measure == 0.0);
    REQUIRE(cut.ratio == 0.0);
}

TEST_CASE("boundary rejects the empty set") {
    const WeightedGraph g = testutil::p3(2.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    REQUIRE_THROWS_AS(boundary(g, metric, {}), InputError);
}

TEST_CASE("cheeger_exact on P3 subsets") {
    const WeightedGraph g = testutil::p3(2.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    SECTION("U = {b}") {
        const CheegerResult r = cheeger_exact(g, metric, {1});
        REQUIRE(r.alpha == Catch::Approx(1.0));
        REQUIRE(r.optimal_W == Subset{1});
        REQUIRE(r.enumeration_count == 1);
    }
    SECTION("U = {a, b}: ratios 1/2, 1, 1/4") {
        const CheegerResult r = cheeger_exact(g, metric, {0, 1});
        REQUIRE(r.alpha == Catch::Approx(0.25));
        REQUIRE(r.optimal_W == Subset{0, 1});
        REQUIRE(r.enumeration_count == 3);
    }
    SECTION("U = X gives alpha = 0 via W = X") {
        const CheegerResult r = cheeger_exact(g, metric, {0, 1, 2});
        REQUIRE(r.alpha == 0.0);
        REQUIRE(r.optimal_W == Subset{0, 1, 2});
    }
}

TEST_CASE("cheeger_exact enforces the capacity budget") {
    GraphFamily fam;
    fam.kind = FamilyKind::k_regular_tree;
    fam.branching = 2;
    fam.radius = 4;  // 31 vertices
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    REQUIRE_THROWS_AS(cheeger_exact(fg.graph, metric, full_vertex_set(fg.graph)), CapacityError);
    REQUIRE_THROWS_WITH(cheeger_exact(fg.graph, metric, full_vertex_set(fg.graph)),
                        Catch::Matchers::ContainsSubstring("heuristic"));
}

TEST_CASE("gray-code enumeration matches brute force") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 4, 10);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        std::mt19937_64 rng(seed + 1000);
        const int usize = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g.size()));
        const Subset u = testutil::random_subset_of(rng, g.size(), usize);
        const CheegerResult fast = cheeger_exact(g, metric, u);
        const auto [alpha, w] = testutil::brute_cheeger(g, metric, u);
        INFO("seed " << seed);
        REQUIRE(fast.alpha == Catch::Approx(alpha).margin(1e-12));
        REQUIRE(fast.optimal_W == w);
    }
}

TEST_CASE("boundary agrees with the brute-force definition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 4, 12);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        std::mt19937_64 rng(seed + 99);
        const int wsize = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g.size()));
        const Subset w = testutil::random_subset_of(rng, g.size(), wsize);
        const CutReport cut = boundary(g, metric, w);
        const auto [bnd, vol] = testutil::brute_boundary(g, metric, w);
        REQUIRE(cut.boundary_measure == Catch::Approx(bnd).margin(1e-12));
        REQUIRE(cut.volume == Catch::Approx(vol).margin(1e-12));
    }
}

TEST_CASE("ball covering the whole graph has ratio zero") {
    const WeightedGraph g = testutil::p3(1.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const auto reports = cheeger_balls(g, metric, 0, {5.0});
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].ratio == 0.0);
}

TEST_CASE("small ball around one endpoint") {
    const WeightedGraph g = testutil::single_edge();
    const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
    const auto reports = cheeger_balls(g, metric, 0, {0.5});  // r < d(a, b) = 1
    REQUIRE(reports[0].W == Subset{0});
    REQUIRE(reports[0].ratio == Catch::Approx(1.0));
}

TEST_CASE("ball radii must be positive") {
    const WeightedGraph g = testutil::single_edge();
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    REQUIRE_THROWS_AS(cheeger_balls(g, metric, 0, {0.0}), InputError);
}

TEST_CASE("sphere-edge tree ball ratios decay below the power bound") {
    GraphFamily fam;
    fam.kind = FamilyKind::tree_with_sphere_edges;
    fam.branching = 2;
    fam.radius = 7;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::inverse_degree);
    const MetricAssignment combinatorial = build_metric(fg.graph, MetricRecipe::natural);
    const std::vector<double> radii{2, 3, 4, 5, 6};
    const auto reports = cheeger_balls(fg.graph, metric, fg.root, radii, &combinatorial);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        INFO("r = " << radii[i]);
        REQUIRE(reports[i].ratio <= std::pow(2.0, -(radii[i] - 1.0) / 2.0));
    }
}

TEST_CASE("superlevel sets of an indicator") {
    const WeightedGraph g = testutil::p3(1.0);
    const auto pieces = superlevel_sets(g, {1.0, 0.0, 1.0});
    REQUIRE(pieces.size() == 1);
    REQUIRE(pieces[0].t_lo == 0.0);
    REQUIRE(pieces[0].t_hi == 1.0);
    REQUIRE(pieces[0].set == Subset{0, 2});
}

TEST_CASE("superlevel sets of a constant function") {
    const WeightedGraph g = testutil::p3(1.0);
    const auto pieces = superlevel_sets(g, {2.5, 2.5, 2.5});
    REQUIRE(pieces.size() == 1);
    REQUIRE(pieces[0].t_hi == 2.5);
    REQUIRE(pieces[0].set == Subset{0, 1, 2});
}

TEST_CASE("superlevel sets of an injective function nest") {
    const WeightedGraph g(std::vector<double>(4, 1.0), {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    const auto pieces = superlevel_sets(g, {0.5, 2.0, 1.0, 3.0});
    REQUIRE(pieces.size() == 4);
    REQUIRE(pieces[0].set.size() == 4);
    REQUIRE(pieces[1].set.size() == 3);
    REQUIRE(pieces[2].set.size() == 2);
    REQUIRE(pieces[3].set == Subset{3});
    for (std::size_t i = 1; i < pieces.size(); ++i)
        REQUIRE(std::includes(pieces[i - 1].set.begin(), pieces[i - 1].set.end(),
                              pieces[i].set.begin(), pieces[i].set.end()));
}

TEST_CASE("superlevel sets reject negative values") {
    const WeightedGraph g = testutil::p3(1.0);
    REQUIRE_THROWS_AS(superlevel_sets(g, {1.0, -0.1, 0.0}), InputError);
}

TEST_CASE("co-area formula on an indicator reduces to the boundary") {
    const WeightedGraph g = testutil::p3(2.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CoareaCheck check = coarea_check(g, metric, {1.0, 1.0, 0.0});
    const CutReport cut = boundary(g, metric, {0, 1});
    REQUIRE(check.lhs_edge_sum == Catch::Approx(cut.boundary_measure).margin(1e-14));
    REQUIRE(check.rhs_integral == Catch::Approx(cut.boundary_measure).margin(1e-14));
    REQUIRE(check.volume_lhs == Catch::Approx(cut.volume).margin(1e-14));
    REQUIRE(check.volume_rhs == Catch::Approx(cut.volume).margin(1e-14));
}

TEST_CASE("co-area of the zero function vanishes") {
    const WeightedGraph g = testutil::p3(1.0);
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CoareaCheck check = coarea_check(g, metric, {0.0, 0.0, 0.0});
    REQUIRE(check.lhs_edge_sum == 0.0);
    REQUIRE(check.rhs_integral == 0.0);
    REQUIRE(check.volume_lhs == 0.0);
    REQUIRE(check.volume_rhs == 0.0);
}

TEST_CASE("co-area identities hold on random instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 3, 12);
        const MetricAssignment metric = build_metric(
            g, seed % 2 ? MetricRecipe::canonical : MetricRecipe::inverse_degree);
        std::mt19937_64 rng(seed + 7);
        std::vector<double> f(static_cast<std::size_t>(g.size()));
        for (double& v : f) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            v = u < 0.15 ? 0.0 : 2.0 * u;
        }
        const CoareaCheck check = coarea_check(g, metric, f);
        REQUIRE(std::abs(check.lhs_edge_sum - check.rhs_integral) <=
                1e-9 * (1.0 + std::abs(check.lhs_edge_sum)));
        REQUIRE(std::abs(check.volume_lhs - check.volume_rhs) <=
                1e-9 * (1.0 + std::abs(check.volume_lhs)));
    }
}

TEST_CASE("monotone exhaustion: alpha grows when U shrinks") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 5, 12);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        std::mt19937_64 rng(seed + 31);
        const int big = std::min(12, g.size());
        const Subset u = testutil::random_subset_of(rng, g.size(), big);
        Subset u_small(u.begin(), u.begin() + 1 + static_cast<int>(rng() % (u.size())));
        const double alpha_big = cheeger_exact(g, metric, u).alpha;
        const double alpha_small = cheeger_exact(g, metric, u_small).alpha;
        REQUIRE(alpha_small >= alpha_big - 1e-12);
    }
}

TEST_CASE("heuristic modes dominate the exact constant") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 5, 12);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        const Subset u = full_vertex_set(g);
        const double exact = cheeger_exact(g, metric, u).alpha;
        const auto balls = cheeger_balls(g, metric, 0, {0.5, 1.0, 2.0});
        for (const auto& b : balls) REQUIRE(b.ratio >= exact - 1e-12);
        const SpectralResult spec = lambda0(assemble(g, u));
        const CheegerResult sweep = cheeger_sweep(g, metric, u, spec.eigenvector);
        REQUIRE(sweep.alpha >= exact - 1e-12);
        REQUIRE(sweep.mode == CheegerMode::sweep);
    }
}

TEST_CASE("scaling the metric scales alpha and keeps the argmin") {
    const double s = 3.7;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const WeightedGraph g = testutil::random_graph(seed, 4, 10);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        std::mt19937_64 rng(seed + 5);
        const int usize = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g.size()));
        const Subset u = testutil::random_subset_of(rng, g.size(), usize);
        const CheegerResult base = cheeger_exact(g, metric, u);
        const CheegerResult scaled = cheeger_exact(g, metric.scaled(s), u);
        REQUIRE(scaled.alpha == Catch::Approx(s * base.alpha).margin(1e-10));
        REQUIRE(scaled.optimal_W == base.optimal_W);
    }
}

TEST_CASE("cheeger_at_infinity is nondecreasing in exact mode") {
    GraphFamily fam;
    fam.kind = FamilyKind::k_regular_tree;
    fam.branching = 2;
    fam.radius = 4;
    fam.measure = MeasureConvention::weighted_degree;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    const auto series = cheeger_at_infinity(fg, metric, {0, 1, 2});
    REQUIRE(series.size() == 3);
    for (const auto& [k, result] : series) REQUIRE(result.mode == CheegerMode::exact);
    for (std::size_t i = 1; i < series.size(); ++i)
        REQUIRE(series[i].second.alpha >= series[i - 1].second.alpha - 1e-12);
}

TEST_CASE("cheeger_at_infinity single remaining layer matches cheeger_exact") {
    GraphFamily fam;
    fam.kind = FamilyKind::path;
    fam.radius = 5;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    const auto series = cheeger_at_infinity(fg, metric, {3});
    REQUIRE(series.size() == 1);
    const Subset expected{4};  // interior is {0..4}, minus B_3 leaves {4}
    REQUIRE(series[0].second.alpha ==
            Catch::Approx(cheeger_exact(fg.graph, metric, expected).alpha));
}

TEST_CASE("cheeger_at_infinity skips empty exhausted sets") {
    GraphFamily fam;
    fam.kind = FamilyKind::path;
    fam.radius = 3;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
    REQUIRE(cheeger_at_infinity(fg, metric, {10}).empty());
}

TEST_CASE("antitree exhaustion keeps positive estimates") {
    GraphFamily fam;
    fam.kind = FamilyKind::antitree;
    fam.radius = 4;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::inverse_degree);
    const auto series = cheeger_at_infinity(fg, metric, {0, 1});
    REQUIRE(series.size() == 2);
    for (const auto& [k, result] : series) REQUIRE(result.alpha > 0.0);
}

TEST_CASE("ties resolve to the lexicographically smallest subset") {
    // star K_{1,3} with unit weights and measures: every nonempty subset of
    // the leaves has ratio 1, so the tie-break must pick {1}
    const WeightedGraph g(std::vector<double>(4, 1.0),
                          {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
    const CheegerResult r = cheeger_exact(g, metric, {1, 2, 3});
    REQUIRE(r.alpha == Catch::Approx(1.0));
    REQUIRE(r.optimal_W == Subset{1});
    const auto [alpha, w] = testutil::brute_cheeger(g, metric, {1, 2, 3});
    REQUIRE(alpha == Catch::Approx(1.0));
    REQUIRE(w == Subset{1});
}
