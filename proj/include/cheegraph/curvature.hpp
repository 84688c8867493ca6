#pragma once

#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "cheegraph/certificates.hpp"
#include "cheegraph/isoperimetry.hpp"
#include "cheegraph/metrics.hpp"
#include "cheegraph/verification.hpp"

namespace cheegraph {

/// Antisymmetric edge orientation: sign(x,y) in {+1,-1,0}, nonzero only on
/// edges, with sign(x,y) = -sign(y,x). Signs are stored aligned with the
/// graph's adjacency rows.
class Orientation {
public:
    Orientation() = default;

    int sign(const WeightedGraph& g, VertexId x, VertexId y) const {
        const auto& row = g.neighbors(x);
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i].first == y) return signs_[static_cast<std::size_t>(x)][i];
        return 0;
    }

    const std::vector<int8_t>& signs_at(VertexId x) const {
        return signs_[static_cast<std::size_t>(x)];
    }

    const std::string& origin() const { return origin_; }

    // Sphere index from the orienting BFS; empty for non-sphere orientations.
    const std::vector<int>& sphere() const { return sphere_; }

    Orientation reversed() const {
        Orientation out = *this;
        for (auto& row : out.signs_)
            for (auto& s : row) s = static_cast<int8_t>(-s);
        out.origin_ = origin_ + " (reversed)";
        return out;
    }

    static Orientation empty_orientation(const WeightedGraph& g) {
        Orientation o;
        o.origin_ = "empty";
        o.signs_.resize(static_cast<std::size_t>(g.size()));
        for (VertexId x = 0; x < g.size(); ++x)
            o.signs_[static_cast<std::size_t>(x)].assign(g.neighbors(x).size(), 0);
        return o;
    }

    // Builds from explicit +1 pairs; the opposite direction becomes -1.
    static Orientation from_positive_pairs(const WeightedGraph& g,
                                           const std::vector<std::pair<VertexId, VertexId>>& plus) {
        Orientation o = empty_orientation(g);
        o.origin_ = "explicit";
        for (const auto& [x, y] : plus) {
            if (!g.adjacent(x, y))
                throw InputError("orientation: (" + std::to_string(x) + "," + std::to_string(y) +
                                 ") is not an edge");
            if (o.sign(g, x, y) != 0)
                throw InputError("orientation: conflicting sign on (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
            o.set(g, x, y, 1);
            o.set(g, y, x, -1);
        }
        return o;
    }

private:
    friend Orientation sphere_orientation(const WeightedGraph&, VertexId);

    void set(const WeightedGraph& g, VertexId x, VertexId y, int8_t s) {
        const auto& row = g.neighbors(x);
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i].first == y) {
                signs_[static_cast<std::size_t>(x)][i] = s;
                return;
            }
    }

    std::string origin_;
    std::vector<std::vector<int8_t>> signs_;
    std::vector<int> sphere_;
};

/// Orients edges outward from the BFS spheres around a root: edges from
/// S_{r-1} to S_r get +1, same-sphere edges stay unoriented. Every vertex must
/// be reachable from the root.
inline Orientation sphere_orientation(const WeightedGraph& g, VertexId root) {
    if (root < 0 || root >= g.size()) throw InputError("sphere_orientation: bad root");
    std::vector<int> depth(static_cast<std::size_t>(g.size()), -1);
    std::queue<VertexId> queue;
    depth[static_cast<std::size_t>(root)] = 0;
    queue.push(root);
    while (!queue.empty()) {
        const VertexId x = queue.front();
        queue.pop();
        for (const auto& [y, w] : g.neighbors(x))
            if (w > 0.0 && depth[static_cast<std::size_t>(y)] < 0) {
                depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
                queue.push(y);
            }
    }
    for (VertexId x = 0; x < g.size(); ++x)
        if (depth[static_cast<std::size_t>(x)] < 0)
            throw PreconditionError("sphere_orientation: vertex " + std::to_string(x) +
                                    " is not reachable from the root");
    Orientation o = Orientation::empty_orientation(g);
    o.origin_ = "sphere orientation around vertex " + std::to_string(root);
    o.sphere_ = depth;
    for (VertexId x = 0; x < g.size(); ++x) {
        const auto& row = g.neighbors(x);
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& [y, w] = row[i];
            if (!(w > 0.0) || y == x) continue;
            const int dx = depth[static_cast<std::size_t>(x)];
            const int dy = depth[static_cast<std::size_t>(y)];
            if (dy == dx + 1)
                o.signs_[static_cast<std::size_t>(x)][i] = 1;
            else if (dy == dx - 1)
                o.signs_[static_cast<std::size_t>(x)][i] = -1;
        }
    }
    return o;
}

/// Oriented curvature K(x) = (sum_{E-} b d - sum_{E+} b d) / m(x) with d the
/// path-closed distance on edges; unoriented edges contribute nothing.
/// k_lower is min over the designated vertex set of -K.
struct CurvatureField {
    std::vector<double> K;  // one value per vertex, full-graph incidence
    double k_lower = 0.0;
    Subset vertex_set;
};

inline CurvatureField curvature(const WeightedGraph& g, const MetricAssignment& metric,
                                const Orientation& orientation, const Subset& vertex_set) {
    if (metric.size() != g.size()) throw InputError("curvature: metric does not match graph");
    CurvatureField field;
    field.vertex_set = vertex_set;
    std::vector<double> numerator(static_cast<std::size_t>(g.size()), 0.0);
    for (VertexId x = 0; x < g.size(); ++x) {
        const auto& row = g.neighbors(x);
        const auto& signs = orientation.signs_at(x);
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& [y, w] = row[i];
            if (!(w > 0.0) || y <= x) continue;  // one pass per undirected edge
            const int s = signs[i];
            if (s == 0) continue;
            const double bd = w * metric.dist(x, y);
            numerator[static_cast<std::size_t>(x)] -= s * bd;
            numerator[static_cast<std::size_t>(y)] += s * bd;
        }
    }
    field.K.resize(static_cast<std::size_t>(g.size()));
    for (VertexId x = 0; x < g.size(); ++x)
        field.K[static_cast<std::size_t>(x)] = numerator[static_cast<std::size_t>(x)] / g.measure(x);
    field.k_lower = std::numeric_limits<double>::infinity();
    for (VertexId x : vertex_set)
        field.k_lower = std::min(field.k_lower, -field.K[static_cast<std::size_t>(x)]);
    return field;
}

/// Certifies the curvature lower bound on U: when k_lower(U) >= 0, every
/// nonempty W inside U satisfies |dW|/m(W) >= min_{x in W} (-K(x)), and hence
/// alpha(U) >= k_lower(U). K always uses full-graph incidence. A negative
/// k_lower makes the bound vacuous and yields a not-applicable record.
inline CertificateRecord verify_curvature_bound(const WeightedGraph& g,
                                                const MetricAssignment& metric,
                                                const Orientation& orientation, const Subset& U,
                                                VerifyOptions opts = {}) {
    if (U.empty()) throw InputError("verify_curvature_bound: U must be nonempty");
    const int k = static_cast<int>(U.size());
    if (k > opts.max_size)
        throw CapacityError("verify_curvature_bound: |U| = " + std::to_string(k) +
                            " exceeds max_size " + std::to_string(opts.max_size));
    const CurvatureField field = curvature(g, metric, orientation, U);

    CertificateRecord record;
    record.context["k_lower"] = field.k_lower;
    record.context["subset_size"] = U.size();
    if (field.k_lower < 0.0) {
        record.claim = "curvature bound not applicable: min(-K) < 0 on U";
        record.applicable = false;
        record.passed = true;
        record.lhs = 0.0;
        record.rhs = field.k_lower;
        record.margin = 0.0;
        return record;
    }

    // Gray-code pass over all nonempty W in U, checking the per-set chain.
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(U[static_cast<std::size_t>(i)])] = i;
    std::vector<double> ext(static_cast<std::size_t>(k), 0.0), mass(static_cast<std::size_t>(k)),
        minus_k(static_cast<std::size_t>(k));
    std::vector<double> intra(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
    std::vector<double> row_total(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        const VertexId x = U[static_cast<std::size_t>(i)];
        mass[static_cast<std::size_t>(i)] = g.measure(x);
        minus_k[static_cast<std::size_t>(i)] = -field.K[static_cast<std::size_t>(x)];
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            const double bd = w * metric.dist(x, y);
            const int j = local[static_cast<std::size_t>(y)];
            if (j < 0)
                ext[static_cast<std::size_t>(i)] += bd;
            else {
                intra[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(j)] = bd;
                row_total[static_cast<std::size_t>(i)] += bd;
            }
        }
    }

    std::uint64_t mask = 0;
    double bnd = 0.0, vol = 0.0;
    std::multiset<double> in_set;
    std::uint64_t violations = 0;
    double worst_chain_margin = std::numeric_limits<double>::infinity();
    const std::uint64_t count = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t i = 1; i <= count; ++i) {
        const int z = std::countr_zero(i);
        const bool adding = ((mask >> z) & 1u) == 0;
        if (!adding) mask ^= std::uint64_t{1} << z;
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
            in_set.insert(minus_k[static_cast<std::size_t>(z)]);
        } else {
            bnd -= delta;
            vol -= mass[static_cast<std::size_t>(z)];
            in_set.erase(in_set.find(minus_k[static_cast<std::size_t>(z)]));
        }
        const double chain_min = *in_set.begin();
        const double margin = bnd / vol - chain_min;
        worst_chain_margin = std::min(worst_chain_margin, margin);
        if (margin < -opts.margin_tolerance) ++violations;
    }

    const CheegerResult cheeger = cheeger_exact(g, metric, U, {opts.max_size});
    record.claim = "alpha(U) >= k_lower(U) and |dW|/m(W) >= min_W(-K) for every W in U";
    record.lhs = cheeger.alpha;
    record.rhs = field.k_lower;
    record.margin = cheeger.alpha - field.k_lower;
    record.passed = violations == 0 && cheeger.alpha >= field.k_lower - opts.margin_tolerance;
    record.context["alpha"] = cheeger.alpha;
    record.context["subsets_checked"] = count;
    record.context["chain_violations"] = violations;
    record.context["worst_chain_margin"] = worst_chain_margin;
    return record;
}

}  // namespace cheegraph
