#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cheegraph/curvature.hpp"
#include "cheegraph/families.hpp"
#include "cheegraph/growth.hpp"
#include "cheegraph/io.hpp"
#include "cheegraph/isoperimetry.hpp"
#include "cheegraph/metrics.hpp"
#include "cheegraph/potentials.hpp"
#include "cheegraph/spectral.hpp"
#include "cheegraph/verification.hpp"

namespace cheegraph {

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<CertificateRecord> records;
    nlohmann::json summary = nlohmann::json::object();

    bool passed() const { return all_passed(records); }

    nlohmann::json to_json() const {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : records) recs.push_back(r.to_json());
        return {{"name", name},
                {"seed", seed},
                {"passed", passed()},
                {"summary", summary},
                {"records", recs}};
    }
};

namespace detail {

inline std::uint64_t instance_seed(std::uint64_t master, std::uint64_t i) {
    // splitmix64 of (master, i) so per-instance streams are independent
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline WeightedGraph random_suite_graph(std::uint64_t seed, int n_min, int n_max,
                                        MeasureConvention measure, double c_max = 0.0) {
    std::mt19937_64 rng(seed);
    GraphFamily fam;
    fam.kind = FamilyKind::random_weighted;
    fam.seed = rng();
    fam.measure = measure;
    fam.random.n = uniform_int(rng, n_min, n_max);
    fam.random.edge_prob = uniform_real(rng, 0.25, 0.7);
    fam.random.b_min = 0.3;
    fam.random.b_max = 2.5;
    fam.random.m_min = 0.4;
    fam.random.m_max = 2.5;
    fam.random.c_max = c_max;
    return generate(fam).graph;
}

inline Subset random_subset(std::mt19937_64& rng, int n, int size) {
    std::vector<VertexId> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) std::swap(ids[static_cast<std::size_t>(i)],
                                              ids[static_cast<std::size_t>(uniform_int(rng, 0, i))]);
    Subset out(ids.begin(), ids.begin() + size);
    std::sort(out.begin(), out.end());
    return out;
}

inline Subset random_proper_subset(std::mt19937_64& rng, int n) {
    const int size = uniform_int(rng, 1, n - 1);
    return random_subset(rng, n, size);
}

}  // namespace detail

/// 200 seeded random weighted graphs (<= 14 vertices), canonical intrinsic
/// metric, random proper U: lambda0(L_U) >= alpha(U)^2/2 - 1e-9 with exact
/// alpha.
inline SuiteResult run_suite_cheeger(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "cheeger";
    suite.seed = seed;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::uint64_t s = detail::instance_seed(seed, i);
        std::mt19937_64 rng(s);
        const WeightedGraph g = detail::random_suite_graph(rng(), 4, 14, MeasureConvention::custom);
        const MetricAssignment metric = build_metric(g, MetricRecipe::canonical);
        const Subset u = detail::random_proper_subset(rng, g.size());
        CertificateRecord record = verify_cheeger(g, metric, u);
        record.context["instance"] = i;
        record.context["instance_seed"] = s;
        suite.records.push_back(std::move(record));
    }
    suite.summary["instances"] = 200;
    return suite;
}

/// 100 seeded graphs with m = n and the natural metric: the stronger bound
/// lambda0 >= 1 - sqrt(1 - alpha^2) - 1e-9, plus the P3 fixture where both
/// sides equal 1 to 1e-12.
inline SuiteResult run_suite_strong_form(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "strong_form";
    suite.seed = seed;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::uint64_t s = detail::instance_seed(seed, i);
        std::mt19937_64 rng(s);
        const WeightedGraph g =
            detail::random_suite_graph(rng(), 4, 14, MeasureConvention::weighted_degree);
        const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
        const Subset u = detail::random_proper_subset(rng, g.size());
        CertificateRecord record = verify_cheeger(g, metric, u);
        record.context["instance"] = i;
        record.context["instance_seed"] = s;
        if (!record.context.value("strong_form_applicable", false)) {
            record.passed = false;
            record.context["error"] = "strong form hypothesis unexpectedly not met";
        }
        suite.records.push_back(std::move(record));
    }
    {
        // P3 with m = 2, U = {middle}: lambda0 = alpha = 1 and the strong
        // bound is attained with equality.
        GraphFamily fam;
        fam.kind = FamilyKind::path;
        fam.radius = 2;
        fam.measure = MeasureConvention::custom;
        fam.custom_measure = 2.0;
        const FamilyGraph fg = generate(fam);
        const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
        const SpectralResult spec = lambda0(assemble(fg.graph, {1}));
        const CheegerResult cheeger = cheeger_exact(fg.graph, metric, {1});
        const double strong_rhs =
            1.0 - std::sqrt(std::max(0.0, 1.0 - cheeger.alpha * cheeger.alpha));
        CertificateRecord record;
        record.claim = "P3 fixture: lambda0 = 1 - sqrt(1 - alpha^2) = 1, equality to 1e-12";
        record.lhs = spec.lambda0;
        record.rhs = strong_rhs;
        record.margin = std::abs(spec.lambda0 - strong_rhs);
        record.passed =
            std::abs(spec.lambda0 - 1.0) <= 1e-12 && std::abs(strong_rhs - 1.0) <= 1e-12;
        record.context["alpha"] = cheeger.alpha;
        suite.records.push_back(std::move(record));
    }
    suite.summary["instances"] = 101;
    return suite;
}

/// 500 random (graph, metric, f >= 0) triples: both co-area identities hold to
/// 1e-9 relative.
inline SuiteResult run_suite_coarea(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "coarea";
    suite.seed = seed;
    const MetricRecipe recipes[] = {MetricRecipe::natural, MetricRecipe::canonical,
                                    MetricRecipe::inverse_degree};
    for (std::uint64_t i = 0; i < 500; ++i) {
        const std::uint64_t s = detail::instance_seed(seed, i);
        std::mt19937_64 rng(s);
        const WeightedGraph g = detail::random_suite_graph(rng(), 3, 12, MeasureConvention::custom);
        const MetricAssignment metric = build_metric(g, recipes[i % 3]);
        std::vector<double> f(static_cast<std::size_t>(g.size()));
        for (double& v : f)
            v = detail::uniform_real(rng, 0.0, 1.0) < 0.15 ? 0.0
                                                           : detail::uniform_real(rng, 0.0, 2.0);
        const CoareaCheck check = coarea_check(g, metric, f);
        const double gap_boundary =
            std::abs(check.lhs_edge_sum - check.rhs_integral) / (1.0 + std::abs(check.lhs_edge_sum));
        const double gap_volume =
            std::abs(check.volume_lhs - check.volume_rhs) / (1.0 + std::abs(check.volume_lhs));
        CertificateRecord record;
        record.claim = "co-area and area formulae agree to 1e-9 relative";
        record.lhs = std::max(gap_boundary, gap_volume);
        record.rhs = 1e-9;
        record.margin = record.rhs - record.lhs;
        record.passed = record.lhs <= record.rhs;
        record.context["instance"] = i;
        record.context["instance_seed"] = s;
        record.context["recipe"] = to_string(recipes[i % 3]);
        suite.records.push_back(std::move(record));
    }
    suite.summary["instances"] = 500;
    return suite;
}

/// Counterexample fixture: the k = 2 tree with same-sphere edges under the
/// inverse-degree metric. Combinatorial ball ratios decay below
/// 2^{-(r-1)/2} while the Dirichlet bottom eigenvalue on B_R stays above
/// 3 - 2 sqrt(2), nonincreasing in R.
inline SuiteResult run_suite_counterexample(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "counterexample";
    suite.seed = seed;
    GraphFamily fam;
    fam.kind = FamilyKind::tree_with_sphere_edges;
    fam.branching = 2;
    fam.radius = 7;  // ball quantities for r <= 6 then match the infinite graph
    fam.measure = MeasureConvention::unit;
    const FamilyGraph fg = generate(fam);
    const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::inverse_degree);
    const MetricAssignment combinatorial = build_metric(fg.graph, MetricRecipe::natural);

    const std::vector<double> radii{2, 3, 4, 5, 6};
    const std::vector<CutReport> balls =
        cheeger_balls(fg.graph, metric, fg.root, radii, &combinatorial);
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const double bound = std::pow(2.0, -(radii[i] - 1.0) / 2.0);
        CertificateRecord record;
        record.claim = "|dB_r|/m(B_r) <= 2^{-(r-1)/2}";
        record.lhs = balls[i].ratio;
        record.rhs = bound;
        record.margin = bound - balls[i].ratio;
        record.passed = balls[i].ratio <= bound;
        record.context["r"] = radii[i];
        record.context["ball_size"] = balls[i].W.size();
        suite.records.push_back(std::move(record));
    }

    const double floor_value = 3.0 - 2.0 * std::sqrt(2.0);
    std::vector<double> lambdas;
    for (int r = 2; r <= 6; ++r) {
        const SpectralResult spec = lambda0(assemble(fg.graph, combinatorial_ball(fg, r)));
        lambdas.push_back(spec.lambda0);
        CertificateRecord record;
        record.claim = "lambda0(Dirichlet on B_R) >= 3 - 2 sqrt(2) - 1e-8";
        record.lhs = spec.lambda0;
        record.rhs = floor_value;
        record.margin = spec.lambda0 - floor_value;
        record.passed = spec.lambda0 >= floor_value - 1e-8;
        record.context["R"] = r;
        suite.records.push_back(std::move(record));
    }
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        CertificateRecord record;
        record.claim = "lambda0(B_R) is nonincreasing in R";
        record.lhs = lambdas[i + 1];
        record.rhs = lambdas[i];
        record.margin = lambdas[i] - lambdas[i + 1];
        record.passed = lambdas[i + 1] <= lambdas[i] + 1e-10;
        record.context["R_from"] = i + 2;
        record.context["R_to"] = i + 3;
        suite.records.push_back(std::move(record));
    }
    suite.summary["graph_size"] = fg.graph.size();
    return suite;
}

/// Curvature bounds: k-regular trees (m = n, natural metric, sphere
/// orientation) have interior k_lower = (k-1)/(k+1) exactly and exact
/// alpha(interior) >= k_lower; the quadratic antitree under the
/// inverse-degree metric has k_lower > 0 with every per-set chain passing.
inline SuiteResult run_suite_curvature(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "curvature";
    suite.seed = seed;
    struct TreeCase {
        int k;
        int radius;
    };
    for (const TreeCase tc : {TreeCase{2, 4}, TreeCase{3, 3}, TreeCase{4, 2}}) {
        GraphFamily fam;
        fam.kind = FamilyKind::k_regular_tree;
        fam.branching = tc.k;
        fam.radius = tc.radius;
        fam.measure = MeasureConvention::weighted_degree;
        const FamilyGraph fg = generate(fam);
        const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
        const Orientation orientation = sphere_orientation(fg.graph, fg.root);
        const Subset u = interior(fg);
        const CurvatureField field = curvature(fg.graph, metric, orientation, u);
        const double expected = (tc.k - 1.0) / (tc.k + 1.0);
        {
            CertificateRecord record;
            record.claim = "interior k_lower equals (k-1)/(k+1) exactly";
            record.lhs = field.k_lower;
            record.rhs = expected;
            record.margin = field.k_lower - expected;
            record.passed = field.k_lower == expected;
            record.context["k"] = tc.k;
            record.context["radius"] = tc.radius;
            suite.records.push_back(std::move(record));
        }
        CertificateRecord bound = verify_curvature_bound(fg.graph, metric, orientation, u);
        bound.context["k"] = tc.k;
        bound.context["radius"] = tc.radius;
        suite.records.push_back(std::move(bound));
    }
    {
        // Quadratic antitree: k_lower over the first six spheres of a deep
        // truncation (so every needed degree is untruncated), chains on the
        // interior of a small truncation.
        GraphFamily deep;
        deep.kind = FamilyKind::antitree;
        deep.radius = 8;
        const FamilyGraph fg_deep = generate(deep);
        const MetricAssignment metric_deep = build_metric(fg_deep.graph, MetricRecipe::inverse_degree);
        const Orientation orient_deep = sphere_orientation(fg_deep.graph, fg_deep.root);
        Subset first_six;
        for (VertexId x = 0; x < fg_deep.graph.size(); ++x)
            if (fg_deep.sphere[static_cast<std::size_t>(x)] <= 5) first_six.push_back(x);
        const CurvatureField field = curvature(fg_deep.graph, metric_deep, orient_deep, first_six);
        CertificateRecord record;
        record.claim = "antitree (#S_{r-1} = r^2): k_lower > 0 on the first six spheres";
        record.lhs = field.k_lower;
        record.rhs = 0.0;
        record.margin = field.k_lower;
        record.passed = field.k_lower > 0.0;
        record.context["vertex_count"] = first_six.size();
        suite.records.push_back(std::move(record));

        GraphFamily small;
        small.kind = FamilyKind::antitree;
        small.radius = 4;
        const FamilyGraph fg_small = generate(small);
        const MetricAssignment metric_small =
            build_metric(fg_small.graph, MetricRecipe::inverse_degree);
        const Orientation orient_small = sphere_orientation(fg_small.graph, fg_small.root);
        CertificateRecord bound =
            verify_curvature_bound(fg_small.graph, metric_small, orient_small, interior(fg_small));
        bound.context["family"] = "antitree";
        suite.records.push_back(std::move(bound));
    }
    return suite;
}

/// 50 seeded (graph, potential) pairs: the doubled-graph form identity to
/// 1e-12 on 100 random test functions each, and the potential Cheeger bound
/// lambda0(L_{b,c,U}) >= alpha_dot(U)^2/2 - 1e-9 on |U| <= 12.
inline SuiteResult run_suite_potentials(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "potentials";
    suite.seed = seed;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const std::uint64_t s = detail::instance_seed(seed, i);
        std::mt19937_64 rng(s);
        WeightedGraph g = detail::random_suite_graph(rng(), 4, 12, MeasureConvention::custom);
        std::vector<double> c(static_cast<std::size_t>(g.size()), 0.0);
        for (double& v : c)
            if (detail::uniform_real(rng, 0.0, 1.0) > 0.4) v = detail::uniform_real(rng, 0.1, 1.5);
        g = g.with_potential(std::move(c));
        const MetricAssignment metric = build_metric(g, MetricRecipe::potential_adapted);
        const std::vector<double> delta = adapt_delta(g, metric);
        const DoubledGraph dg = double_graph(g, metric, delta);

        CertificateRecord identity = verify_potential_form_identity(dg, 100, rng());
        identity.context["instance"] = i;
        identity.context["instance_seed"] = s;
        suite.records.push_back(std::move(identity));

        const int usize = detail::uniform_int(rng, 1, std::min(12, g.size()));
        const Subset u = detail::random_subset(rng, g.size(), usize);
        CertificateRecord cheeger = verify_potential_cheeger(dg, u, {.max_size = 12});
        cheeger.context["instance"] = i;
        cheeger.context["instance_seed"] = s;
        suite.records.push_back(std::move(cheeger));
    }
    suite.summary["instances"] = 50;
    return suite;
}

/// 100 random graphs with the natural metric (delta = 1) and a random test
/// set W: the chain delta Q(1_W) <= |dW| + 1e-9.
inline SuiteResult run_suite_upper_bound(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "upper_bound";
    suite.seed = seed;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::uint64_t s = detail::instance_seed(seed, i);
        std::mt19937_64 rng(s);
        const WeightedGraph g = detail::random_suite_graph(rng(), 3, 14, MeasureConvention::custom);
        const MetricAssignment metric = build_metric(g, MetricRecipe::natural);
        const int wsize = detail::uniform_int(rng, 1, g.size());
        const Subset w = detail::random_subset(rng, g.size(), wsize);
        std::vector<CertificateRecord> records = verify_upper_bound(g, metric, 1.0, {w});
        records[0].context["instance"] = i;
        records[0].context["instance_seed"] = s;
        suite.records.push_back(std::move(records[0]));
    }
    suite.summary["instances"] = 100;
    return suite;
}

/// Growth consistency on k-regular trees at depth 10 (m = n, natural metric):
/// 2 k_lower <= mu_hat + 0.05, with k_lower certified by curvature and radii
/// capped at depth - 1 so every ball mass is untruncated.
inline SuiteResult run_suite_growth(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "growth";
    suite.seed = seed;
    for (const int k : {2, 3, 4}) {
        GraphFamily fam;
        fam.kind = FamilyKind::k_regular_tree;
        fam.branching = k;
        fam.radius = 10;
        fam.measure = MeasureConvention::weighted_degree;
        const FamilyGraph fg = generate(fam);
        const MetricAssignment metric = build_metric(fg.graph, MetricRecipe::natural);
        const Orientation orientation = sphere_orientation(fg.graph, fg.root);
        const CurvatureField field = curvature(fg.graph, metric, orientation, interior(fg));
        std::vector<double> radii;
        for (int r = 1; r < fam.radius; ++r) radii.push_back(r);
        CertificateRecord record = verify_growth_bound(fg, metric, field.k_lower, radii, 0.05);
        record.context["k"] = k;
        record.context["depth"] = fam.radius;
        suite.records.push_back(std::move(record));
    }
    return suite;
}

using SuiteRunner = std::function<SuiteResult(std::uint64_t)>;

inline const std::vector<std::pair<std::string, SuiteRunner>>& suite_registry() {
    static const std::vector<std::pair<std::string, SuiteRunner>> registry = {
        {"cheeger", run_suite_cheeger},
        {"strong_form", run_suite_strong_form},
        {"coarea", run_suite_coarea},
        {"counterexample", run_suite_counterexample},
        {"curvature", run_suite_curvature},
        {"potentials", run_suite_potentials},
        {"upper_bound", run_suite_upper_bound},
        {"growth", run_suite_growth},
    };
    return registry;
}

/// Re-runs every suite with its seed and checks the serialized reports are
/// identical.
inline SuiteResult run_suite_determinism(std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "determinism";
    suite.seed = seed;
    for (const auto& [name, runner] : suite_registry()) {
        const std::string first = runner(seed).to_json().dump();
        const std::string second = runner(seed).to_json().dump();
        CertificateRecord record;
        record.claim = "re-running suite '" + name + "' with the same seed is byte-identical";
        record.lhs = first == second ? 1.0 : 0.0;
        record.rhs = 1.0;
        record.margin = 0.0;
        record.passed = first == second;
        record.context["suite"] = name;
        suite.records.push_back(std::move(record));
    }
    return suite;
}

inline std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteResult> results;
    for (const auto& [name, runner] : suite_registry()) results.push_back(runner(seed));
    results.push_back(run_suite_determinism(seed));
    return results;
}

inline nlohmann::json suites_report(const std::vector<SuiteResult>& suites, std::uint64_t seed) {
    nlohmann::json arr = nlohmann::json::array();
    bool ok = true;
    for (const auto& s : suites) {
        arr.push_back(s.to_json());
        ok = ok && s.passed();
    }
    return {{"seed", seed}, {"suites", arr}, {"passed", ok}};
}

}  // namespace cheegraph
