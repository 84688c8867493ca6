#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheegraph/certificates.hpp"
#include "cheegraph/families.hpp"
#include "cheegraph/isoperimetry.hpp"
#include "cheegraph/metrics.hpp"
#include "cheegraph/spectral.hpp"

namespace cheegraph {

struct VerifyOptions {
    int max_size = 20;
    double margin_tolerance = 1e-9;
    SolveOptions solve;
};

namespace detail {

inline bool measure_dominates_degree(const WeightedGraph& g) {
    for (VertexId x = 0; x < g.size(); ++x)
        if (g.measure(x) < g.weighted_degree(x)) return false;
    return true;
}

// Checks d >= 1 or d <= 1 on every edge, with exact comparisons on the closed
// distances. Mixed graphs satisfy neither.
inline bool edge_dist_one_sided(const WeightedGraph& g, const MetricAssignment& metric) {
    bool all_geq = true, all_leq = true;
    for (VertexId x = 0; x < g.size(); ++x)
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y <= x) continue;
            const double d = metric.dist(x, y);
            if (d < 1.0) all_geq = false;
            if (d > 1.0) all_leq = false;
        }
    return all_geq || all_leq;
}

}  // namespace detail

/// Certifies lambda0(L_U, Dirichlet) >= alpha(U)^2 / 2 with alpha exact, and
/// additionally lambda0 >= 1 - sqrt(1 - alpha^2) when m >= n pointwise and the
/// edge distances are one-sided around 1. Requires an intrinsic metric.
inline CertificateRecord verify_cheeger(const WeightedGraph& g, const MetricAssignment& metric,
                                        const Subset& U, VerifyOptions opts = {}) {
    const IntrinsicCertificate cert = certify_intrinsic(g, metric);
    if (!cert.is_intrinsic)
        throw PreconditionError("verify_cheeger: metric is not intrinsic (worst vertex " +
                                std::to_string(cert.worst_vertex) + ")");
    const SpectralResult spec = lambda0(assemble(g, U), opts.solve);
    const CheegerResult cheeger = cheeger_exact(g, metric, U, {opts.max_size});
    const double alpha = cheeger.alpha;
    const double weak_rhs = alpha * alpha / 2.0;

    CertificateRecord record;
    record.lhs = spec.lambda0;
    record.rhs = weak_rhs;
    record.margin = spec.lambda0 - weak_rhs;
    record.passed = spec.lambda0 >= weak_rhs - opts.margin_tolerance;
    record.claim = "lambda0(L_U) >= alpha(U)^2/2";
    record.context["alpha"] = alpha;
    record.context["subset_size"] = U.size();
    record.context["lambda0_method"] = to_string(spec.method);

    const bool strong_applies =
        detail::measure_dominates_degree(g) && detail::edge_dist_one_sided(g, metric);
    record.context["strong_form_applicable"] = strong_applies;
    if (strong_applies) {
        const double strong_rhs = 1.0 - std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
        record.context["strong_rhs"] = strong_rhs;
        record.claim += " and lambda0(L_U) >= 1 - sqrt(1 - alpha(U)^2)";
        if (strong_rhs > record.rhs) {
            record.rhs = strong_rhs;
            record.margin = spec.lambda0 - strong_rhs;
        }
        record.passed = record.passed && spec.lambda0 >= strong_rhs - opts.margin_tolerance;
    }
    return record;
}

namespace detail {

inline Subset exhausted_set(const FamilyGraph& fg, int ball_radius) {
    Subset out;
    for (VertexId x : interior(fg))
        if (fg.sphere[static_cast<std::size_t>(x)] > ball_radius) out.push_back(x);
    return out;
}

// alpha(U) exact when |U| fits the budget, otherwise the sweep heuristic fed
// by the Dirichlet ground state on U.
inline CheegerResult alpha_for(const WeightedGraph& g, const MetricAssignment& metric,
                               const Subset& U, const SpectralResult& spec,
                               const VerifyOptions& opts) {
    if (static_cast<int>(U.size()) <= opts.max_size)
        return cheeger_exact(g, metric, U, {opts.max_size});
    return cheeger_sweep(g, metric, U, spec.eigenvector);
}

}  // namespace detail

/// Finite-truncation surrogate for the essential-spectrum bound: for each
/// exhaustion radius k it pairs lambda0 of the Dirichlet restriction to
/// interior \ B_k with alpha of the same set and asserts the alpha^2/2 bound.
inline std::vector<CertificateRecord> verify_essential(const FamilyGraph& fg,
                                                       const MetricAssignment& metric,
                                                       const std::vector<int>& exhaustion_radii,
                                                       VerifyOptions opts = {}) {
    std::vector<CertificateRecord> records;
    for (int k : exhaustion_radii) {
        const Subset u = detail::exhausted_set(fg, k);
        if (u.empty()) continue;
        const SpectralResult spec = lambda0(assemble(fg.graph, u), opts.solve);
        const CheegerResult cheeger = detail::alpha_for(fg.graph, metric, u, spec, opts);
        const double rhs = cheeger.alpha * cheeger.alpha / 2.0;
        CertificateRecord record;
        record.claim = "lambda0(L_{interior \\ B_k}) >= alpha(interior \\ B_k)^2/2";
        record.lhs = spec.lambda0;
        record.rhs = rhs;
        record.margin = spec.lambda0 - rhs;
        record.passed = spec.lambda0 >= rhs - opts.margin_tolerance;
        record.context["exhaustion_radius"] = k;
        record.context["subset_size"] = u.size();
        record.context["alpha"] = cheeger.alpha;
        record.context["alpha_mode"] = to_string(cheeger.mode);
        record.context["note"] =
            "finite-truncation surrogate for lambda0_ess and alpha_infinity";
        records.push_back(std::move(record));
    }
    return records;
}

/// alpha(interior \ B_k) for each exhaustion radius, exact when small enough,
/// sweep otherwise. Empty exhausted sets are skipped.
inline std::vector<std::pair<int, CheegerResult>> cheeger_at_infinity(
    const FamilyGraph& fg, const MetricAssignment& metric, const std::vector<int>& exhaustion_radii,
    VerifyOptions opts = {}) {
    std::vector<std::pair<int, CheegerResult>> out;
    for (int k : exhaustion_radii) {
        const Subset u = detail::exhausted_set(fg, k);
        if (u.empty()) continue;
        if (static_cast<int>(u.size()) <= opts.max_size) {
            out.emplace_back(k, cheeger_exact(fg.graph, metric, u, {opts.max_size}));
        } else {
            const SpectralResult spec = lambda0(assemble(fg.graph, u), opts.solve);
            out.emplace_back(k, cheeger_sweep(fg.graph, metric, u, spec.eigenvector));
        }
    }
    return out;
}

/// Upper-bound chain for uniformly discrete metrics: asserts
/// delta * Q(1_W) <= |dW| per test set and compares the implied bound
/// |dW| / (delta m(W)) against lambda0 of the whole graph.
inline std::vector<CertificateRecord> verify_upper_bound(const WeightedGraph& g,
                                                         const MetricAssignment& metric,
                                                         double delta,
                                                         const std::vector<Subset>& subsets,
                                                         VerifyOptions opts = {}) {
    if (!(delta > 0.0)) throw InputError("verify_upper_bound: delta must be positive");
    if (g.has_potential())
        throw PreconditionError("verify_upper_bound: chain applies to graphs without potential");
    for (VertexId x = 0; x < g.size(); ++x)
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y <= x) continue;
            if (metric.dist(x, y) < delta)
                throw PreconditionError("verify_upper_bound: edge (" + std::to_string(x) + "," +
                                        std::to_string(y) + ") has dist < delta");
        }
    const SpectralResult full = lambda0(assemble(g, full_vertex_set(g)), opts.solve);

    std::vector<CertificateRecord> records;
    for (const Subset& w_set : subsets) {
        const CutReport cut = boundary(g, metric, w_set);
        std::vector<char> in_w(static_cast<std::size_t>(g.size()), 0);
        for (VertexId x : w_set) in_w[static_cast<std::size_t>(x)] = 1;
        double q_indicator = 0.0;  // Q(1_W) = sum of b over ordered boundary pairs
        for (VertexId x : w_set)
            for (const auto& [y, w] : g.neighbors(x))
                if (w > 0.0 && !in_w[static_cast<std::size_t>(y)]) q_indicator += w;

        const double upper = cut.boundary_measure / (delta * cut.volume);
        CertificateRecord record;
        record.claim = "delta Q(1_W) <= |dW| and lambda0(L) <= |dW|/(delta m(W))";
        record.lhs = delta * q_indicator;
        record.rhs = cut.boundary_measure;
        record.margin = record.rhs - record.lhs;
        const bool chain = record.lhs <= record.rhs + opts.margin_tolerance;
        const bool bound = full.lambda0 <= upper + opts.margin_tolerance;
        record.passed = chain && bound;
        record.context["lambda0_full"] = full.lambda0;
        record.context["implied_upper_bound"] = upper;
        record.context["subset_size"] = w_set.size();
        record.context["delta"] = delta;
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace cheegraph
