#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cheegraph/errors.hpp"

namespace cheegraph {

using VertexId = int;

// Sorted list of distinct vertex ids.
using Subset = std::vector<VertexId>;

struct EdgeInput {
    VertexId u;
    VertexId v;
    double b;
};

/// Weighted graph over a discrete measure space: vertices 0..n-1, a positive
/// measure m, symmetric nonnegative edge weights b with zero diagonal, and an
/// optional nonnegative potential c. Immutable after construction.
class WeightedGraph {
public:
    WeightedGraph() = default;

    // Builds from edges listed once per unordered pair; stores both directions.
    WeightedGraph(std::vector<double> measure, const std::vector<EdgeInput>& edges,
                  std::vector<double> potential = {}, std::vector<std::string> labels = {}) {
        init(std::move(measure), std::move(potential), std::move(labels));
        for (const auto& e : edges) {
            check_ids(e.u, e.v);
            insert_entry(e.u, e.v, e.b);
            if (e.u != e.v) insert_entry(e.v, e.u, e.b);
        }
        finalize();
    }

    // Builds from directed entries verbatim, without symmetrization. Intended
    // for diagnostics: the result may fail validate().
    static WeightedGraph from_directed(std::vector<double> measure,
                                       const std::vector<EdgeInput>& entries,
                                       std::vector<double> potential = {},
                                       std::vector<std::string> labels = {}) {
        WeightedGraph g;
        g.init(std::move(measure), std::move(potential), std::move(labels));
        for (const auto& e : entries) {
            g.check_ids(e.u, e.v);
            g.insert_entry(e.u, e.v, e.b);
        }
        g.finalize();
        return g;
    }

    int size() const { return static_cast<int>(m_.size()); }

    double measure(VertexId x) const { return m_[static_cast<std::size_t>(x)]; }
    double potential(VertexId x) const { return c_[static_cast<std::size_t>(x)]; }
    bool has_potential() const { return has_potential_; }

    // Weighted degree n(x), cached at construction.
    double weighted_degree(VertexId x) const { return n_[static_cast<std::size_t>(x)]; }

    // b(u,v); 0 when u,v are not neighbors.
    double edge_weight(VertexId u, VertexId v) const {
        for (const auto& [y, w] : adj_[static_cast<std::size_t>(u)])
            if (y == v) return w;
        return 0.0;
    }

    bool adjacent(VertexId u, VertexId v) const { return edge_weight(u, v) > 0.0; }

    // True when a stored entry u -> v exists, even with weight 0.
    bool has_entry(VertexId u, VertexId v) const {
        for (const auto& [y, w] : adj_[static_cast<std::size_t>(u)])
            if (y == v) return true;
        return false;
    }

    // Neighbors of x with weights, sorted by neighbor id.
    const std::vector<std::pair<VertexId, double>>& neighbors(VertexId x) const {
        return adj_[static_cast<std::size_t>(x)];
    }

    const std::string& label(VertexId x) const { return labels_[static_cast<std::size_t>(x)]; }

    // Directed edge count (each unordered pair counts twice).
    std::size_t directed_edge_count() const {
        std::size_t c = 0;
        for (const auto& row : adj_) c += row.size();
        return c;
    }

    double total_measure() const {
        double s = 0.0;
        for (double v : m_) s += v;
        return s;
    }

    double subset_measure(const Subset& W) const {
        double s = 0.0;
        for (VertexId x : W) s += measure(x);
        return s;
    }

    // Copy of this graph with the measure replaced by the weighted degree n.
    WeightedGraph with_degree_measure() const {
        WeightedGraph g = *this;
        g.m_ = g.n_;
        return g;
    }

    WeightedGraph with_measure(std::vector<double> measure) const {
        if (static_cast<int>(measure.size()) != size())
            throw InputError("with_measure: measure length does not match vertex count");
        WeightedGraph g = *this;
        g.m_ = std::move(measure);
        return g;
    }

    WeightedGraph with_potential(std::vector<double> potential) const {
        if (static_cast<int>(potential.size()) != size())
            throw InputError("with_potential: potential length does not match vertex count");
        WeightedGraph g = *this;
        g.c_ = std::move(potential);
        g.has_potential_ = false;
        for (double v : g.c_)
            if (v != 0.0) g.has_potential_ = true;
        return g;
    }

private:
    void init(std::vector<double> measure, std::vector<double> potential,
              std::vector<std::string> labels) {
        m_ = std::move(measure);
        const std::size_t n = m_.size();
        c_ = potential.empty() ? std::vector<double>(n, 0.0) : std::move(potential);
        if (c_.size() != n) throw InputError("potential length does not match vertex count");
        labels_ = labels.empty() ? std::vector<std::string>(n) : std::move(labels);
        if (labels_.size() != n) throw InputError("label list length does not match vertex count");
        adj_.assign(n, {});
        for (double v : c_)
            if (v != 0.0) has_potential_ = true;
    }

    void check_ids(VertexId u, VertexId v) const {
        if (u < 0 || v < 0 || u >= size() || v >= size())
            throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
    }

    void insert_entry(VertexId u, VertexId v, double w) {
        auto& row = adj_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(row.begin(), row.end(), v,
                                   [](const auto& p, VertexId id) { return p.first < id; });
        if (it != row.end() && it->first == v)
            throw InputError("duplicate edge entry (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
        row.insert(it, {v, w});
    }

    void finalize() {
        n_.assign(m_.size(), 0.0);
        for (std::size_t x = 0; x < adj_.size(); ++x)
            for (const auto& [y, w] : adj_[x]) n_[x] += w;
    }

    std::vector<double> m_;
    std::vector<double> c_;
    std::vector<double> n_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<VertexId, double>>> adj_;
    bool has_potential_ = false;
};

enum class ViolationKind {
    asymmetry,
    nonzero_diagonal,
    negative_weight,
    nonpositive_measure,
    negative_potential,
    isolated_vertex,
};

struct Violation {
    ViolationKind kind;
    VertexId u = -1;
    VertexId v = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(ViolationKind k) const {
        for (const auto& v : violations)
            if (v.kind == k) return true;
        return false;
    }
};

// Diagnostic check of the standing assumptions: symmetric b with zero
// diagonal, nonnegative weights, positive measure, nonnegative potential, no
// isolated vertices. Reports every violation; never throws.
inline ValidationReport validate(const WeightedGraph& g) {
    ValidationReport report;
    auto add = [&](ViolationKind k, VertexId u, VertexId v, std::string msg) {
        report.violations.push_back({k, u, v, std::move(msg)});
    };
    for (VertexId x = 0; x < g.size(); ++x) {
        if (!(g.measure(x) > 0.0))
            add(ViolationKind::nonpositive_measure, x, -1,
                "m(" + std::to_string(x) + ") = " + std::to_string(g.measure(x)));
        if (g.potential(x) < 0.0)
            add(ViolationKind::negative_potential, x, -1,
                "c(" + std::to_string(x) + ") = " + std::to_string(g.potential(x)));
        if (g.neighbors(x).empty())
            add(ViolationKind::isolated_vertex, x, -1,
                "vertex " + std::to_string(x) + " has no neighbor");
        for (const auto& [y, w] : g.neighbors(x)) {
            if (y == x && w != 0.0)
                add(ViolationKind::nonzero_diagonal, x, x,
                    "b(" + std::to_string(x) + "," + std::to_string(x) + ") = " +
                        std::to_string(w));
            if (w < 0.0)
                add(ViolationKind::negative_weight, x, y,
                    "b(" + std::to_string(x) + "," + std::to_string(y) + ") < 0");
            if (y != x && x < y) {
                const double back = g.edge_weight(y, x);
                if (back != w)
                    add(ViolationKind::asymmetry, x, y,
                        "b(" + std::to_string(x) + "," + std::to_string(y) + ") = " +
                            std::to_string(w) + " but b(" + std::to_string(y) + "," +
                            std::to_string(x) + ") = " + std::to_string(back));
            }
            if (y != x && x > y && w != 0.0 && !g.has_entry(y, x)) {
                // Entry present here but missing in the lower row: the x < y
                // scan above cannot see it, so flag the pair from this side.
                add(ViolationKind::asymmetry, y, x,
                    "b(" + std::to_string(x) + "," + std::to_string(y) + ") = " +
                        std::to_string(w) + " but b(" + std::to_string(y) + "," +
                        std::to_string(x) + ") is absent");
            }
        }
    }
    return report;
}

inline bool is_sorted_unique(const Subset& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1]) return false;
    return true;
}

inline Subset full_vertex_set(const WeightedGraph& g) {
    Subset all(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
}

}  // namespace cheegraph
