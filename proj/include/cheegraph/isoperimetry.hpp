#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cheegraph/graph.hpp"
#include "cheegraph/metrics.hpp"

namespace cheegraph {

/// One test set W with its boundary measure |dW| = sum over ordered pairs
/// (x,y), x in W, y outside, of b(x,y) d(x,y), its volume m(W), and the ratio.
struct CutReport {
    Subset W;
    double boundary_measure = 0.0;
    double volume = 0.0;
    double ratio = 0.0;
};

enum class CheegerMode { exact, balls, sweep };

inline std::string to_string(CheegerMode m) {
    switch (m) {
        case CheegerMode::exact: return "exact";
        case CheegerMode::balls: return "balls";
        case CheegerMode::sweep: return "sweep";
    }
    return "?";
}

struct CheegerResult {
    double alpha = 0.0;
    Subset optimal_W;
    CheegerMode mode = CheegerMode::exact;
    std::uint64_t enumeration_count = 0;
};

struct CheegerOptions {
    int max_size = 20;
};

inline CutReport boundary(const WeightedGraph& g, const MetricAssignment& metric, const Subset& W) {
    if (W.empty()) throw InputError("boundary: W must be nonempty");
    if (metric.size() != g.size()) throw InputError("boundary: metric does not match graph");
    std::vector<char> in_w(static_cast<std::size_t>(g.size()), 0);
    for (VertexId x : W) in_w[static_cast<std::size_t>(x)] = 1;
    CutReport report;
    report.W = W;
    for (VertexId x : W) {
        report.volume += g.measure(x);
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || in_w[static_cast<std::size_t>(y)]) continue;
            report.boundary_measure += w * metric.dist(x, y);
        }
    }
    report.ratio = report.boundary_measure / report.volume;
    return report;
}

namespace detail {

// Lexicographic order on subsets encoded as bitmasks over an ascending vertex
// list: compares the sorted id sequences, shorter prefix first.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    const int t = std::countr_zero(a ^ b);
    if ((a >> t) & 1u) return (b >> t) != 0;  // b still has larger elements -> a first
    return (a >> t) == 0;                     // a exhausted -> a is a proper prefix
}

inline Subset mask_to_subset(std::uint64_t mask, const Subset& U) {
    Subset out;
    for (std::size_t i = 0; i < U.size(); ++i)
        if ((mask >> i) & 1u) out.push_back(U[i]);
    return out;
}

}  // namespace detail

/// Exact Cheeger constant alpha(U): minimum of |dW|/m(W) over all 2^|U|-1
/// nonempty subsets W of U, disconnected sets included. Ties resolve to the
/// lexicographically smallest subset in vertex order.
inline CheegerResult cheeger_exact(const WeightedGraph& g, const MetricAssignment& metric,
                                   const Subset& U, CheegerOptions opts = {}) {
    if (U.empty()) throw InputError("cheeger_exact: U must be nonempty");
    if (!is_sorted_unique(U)) throw InputError("cheeger_exact: U must be sorted and duplicate-free");
    const int k = static_cast<int>(U.size());
    if (k > opts.max_size)
        throw CapacityError("cheeger_exact: |U| = " + std::to_string(k) + " exceeds max_size " +
                            std::to_string(opts.max_size) + "; use a heuristic mode (balls, sweep)");
    if (metric.size() != g.size()) throw InputError("cheeger_exact: metric does not match graph");

    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(U[static_cast<std::size_t>(i)])] = i;

    // ext[i]: boundary mass from U[i] to vertices outside U (constant in W).
    // intra[i][j]: b*d between members of U. row_total[i] = sum_j intra[i][j].
    std::vector<double> ext(static_cast<std::size_t>(k), 0.0);
    std::vector<double> mass(static_cast<std::size_t>(k), 0.0);
    std::vector<double> intra(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
    std::vector<double> row_total(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        const VertexId x = U[static_cast<std::size_t>(i)];
        mass[static_cast<std::size_t>(i)] = g.measure(x);
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            const double bd = w * metric.dist(x, y);
            const int j = local[static_cast<std::size_t>(y)];
            if (j < 0) {
                ext[static_cast<std::size_t>(i)] += bd;
            } else {
                intra[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(j)] = bd;
                row_total[static_cast<std::size_t>(i)] += bd;
            }
        }
    }

    const std::uint64_t count = (std::uint64_t{1} << k) - 1;
    std::uint64_t mask = 0;
    double bnd = 0.0, vol = 0.0;
    double best_ratio = std::numeric_limits<double>::infinity();
    std::uint64_t best_mask = 0;
    for (std::uint64_t i = 1; i <= count; ++i) {
        const int z = std::countr_zero(i);
        const bool adding = ((mask >> z) & 1u) == 0;
        if (!adding) mask ^= std::uint64_t{1} << z;  // drop z before summing over W
        double s_in = 0.0;
        const double* row = intra.data() + static_cast<std::size_t>(z) * static_cast<std::size_t>(k);
        for (int j = 0; j < k; ++j)
            if ((mask >> j) & 1u) s_in += row[j];
        const double delta = ext[static_cast<std::size_t>(z)] +
                             (row_total[static_cast<std::size_t>(z)] - s_in) - s_in;
        if (adding) {
            mask ^= std::uint64_t{1} << z;
            bnd += delta;
            vol += mass[static_cast<std::size_t>(z)];
        } else {
            bnd -= delta;
            vol -= mass[static_cast<std::size_t>(z)];
        }
        const double ratio = bnd / vol;
        if (ratio < best_ratio ||
            (ratio == best_ratio && detail::mask_lex_less(mask, best_mask))) {
            best_ratio = ratio;
            best_mask = mask;
        }
    }

    CheegerResult result;
    result.mode = CheegerMode::exact;
    result.enumeration_count = count;
    result.optimal_W = detail::mask_to_subset(best_mask, U);
    // Recompute the winning ratio directly so incremental drift never leaks
    // into the reported constant.
    result.alpha = boundary(g, metric, result.optimal_W).ratio;
    return result;
}

/// Ball test sets around a center: W = B_r = {y : dist(center, y) <= r} for
/// each radius, reported with boundary measured in `metric`. Ball membership
/// may use a different metric (e.g. combinatorial balls via the natural
/// metric) through `ball_metric`.
inline std::vector<CutReport> cheeger_balls(const WeightedGraph& g, const MetricAssignment& metric,
                                            VertexId center, const std::vector<double>& radii,
                                            const MetricAssignment* ball_metric = nullptr) {
    if (center < 0 || center >= g.size()) throw InputError("cheeger_balls: bad center");
    const MetricAssignment& bm = ball_metric ? *ball_metric : metric;
    if (bm.size() != g.size()) throw InputError("cheeger_balls: ball metric does not match graph");
    const std::vector<double> row = bm.distances_from(center);
    std::vector<CutReport> reports;
    reports.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0)) throw InputError("cheeger_balls: radii must be positive");
        Subset W;
        for (VertexId y = 0; y < g.size(); ++y)
            if (row[static_cast<std::size_t>(y)] <= r) W.push_back(y);
        reports.push_back(boundary(g, metric, W));
    }
    return reports;
}

/// One piece of the piecewise-constant map t -> {f > t}: the set is constant
/// on [t_lo, t_hi). Pieces with empty sets are omitted.
struct SuperlevelPiece {
    double t_lo = 0.0;
    double t_hi = 0.0;
    Subset set;
};

inline std::vector<SuperlevelPiece> superlevel_sets(const WeightedGraph& g,
                                                    const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != g.size())
        throw InputError("superlevel_sets: f length does not match vertex count");
    for (double v : f)
        if (v < 0.0) throw InputError("superlevel_sets: f must be nonnegative");
    std::vector<double> cuts = f;
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<SuperlevelPiece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        SuperlevelPiece piece;
        piece.t_lo = cuts[i];
        piece.t_hi = cuts[i + 1];
        for (VertexId x = 0; x < g.size(); ++x)
            if (f[static_cast<std::size_t>(x)] > piece.t_lo) piece.set.push_back(x);
        if (!piece.set.empty()) pieces.push_back(std::move(piece));
    }
    return pieces;
}

struct CoareaCheck {
    double lhs_edge_sum = 0.0;   // (1/2) sum b(x,y) d(x,y) |f(x)-f(y)|
    double rhs_integral = 0.0;   // integral of |d Omega_t| dt over the pieces
    double volume_lhs = 0.0;     // sum f(x) m(x)
    double volume_rhs = 0.0;     // integral of m(Omega_t) dt
};

/// Evaluates both sides of the co-area and area formulae. The two sides are
/// computed along independent routes: direct edge/vertex sums on the left,
/// exact integration over the superlevel decomposition on the right.
inline CoareaCheck coarea_check(const WeightedGraph& g, const MetricAssignment& metric,
                                const std::vector<double>& f) {
    const std::vector<SuperlevelPiece> pieces = superlevel_sets(g, f);
    CoareaCheck out;
    for (VertexId x = 0; x < g.size(); ++x) {
        out.volume_lhs += f[static_cast<std::size_t>(x)] * g.measure(x);
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            out.lhs_edge_sum += 0.5 * w * metric.dist(x, y) *
                                std::abs(f[static_cast<std::size_t>(x)] -
                                         f[static_cast<std::size_t>(y)]);
        }
    }
    for (const auto& piece : pieces) {
        const double width = piece.t_hi - piece.t_lo;
        const CutReport cut = boundary(g, metric, piece.set);
        out.rhs_integral += width * cut.boundary_measure;
        out.volume_rhs += width * cut.volume;
    }
    return out;
}

/// Sweep heuristic: ratios of the superlevel sets of u^2 for a function u
/// supported in U (values aligned with U's order). Returns the best ratio
/// found; an upper bound for the exact constant on U.
inline CheegerResult cheeger_sweep(const WeightedGraph& g, const MetricAssignment& metric,
                                   const Subset& U, const std::vector<double>& u_on_U) {
    if (U.size() != u_on_U.size())
        throw InputError("cheeger_sweep: function length does not match |U|");
    std::vector<double> f(static_cast<std::size_t>(g.size()), 0.0);
    for (std::size_t i = 0; i < U.size(); ++i)
        f[static_cast<std::size_t>(U[i])] = u_on_U[i] * u_on_U[i];
    const std::vector<SuperlevelPiece> pieces = superlevel_sets(g, f);
    if (pieces.empty()) throw PreconditionError("cheeger_sweep: function is identically zero");
    CheegerResult result;
    result.mode = CheegerMode::sweep;
    result.enumeration_count = pieces.size();
    result.alpha = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces) {
        const CutReport cut = boundary(g, metric, piece.set);
        if (cut.ratio < result.alpha) {
            result.alpha = cut.ratio;
            result.optimal_W = piece.set;
        }
    }
    return result;
}

}  // namespace cheegraph
