#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cheegraph/graph.hpp"

namespace cheegraph {

enum class MetricRecipe { natural, canonical, inverse_degree, potential_adapted, custom };

inline std::string to_string(MetricRecipe r) {
    switch (r) {
        case MetricRecipe::natural: return "natural";
        case MetricRecipe::canonical: return "canonical";
        case MetricRecipe::inverse_degree: return "inverse_degree";
        case MetricRecipe::potential_adapted: return "potential_adapted";
        case MetricRecipe::custom: return "custom";
    }
    return "?";
}

struct EdgeLength {
    VertexId u;
    VertexId v;
    double d;
};

struct MetricOptions {
    // Full all-pairs closure is materialized up to this vertex count; larger
    // graphs answer distance queries by on-demand Dijkstra.
    int dense_limit = 512;
};

inline int worker_thread_count() {
    if (const char* env = std::getenv("CHEEGRAPH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Symmetric nonnegative edge lengths together with their shortest-path
/// closure. Self-contained: owns a copy of the adjacency structure, so it
/// stays valid independently of the graph it was built from.
class MetricAssignment {
public:
    MetricAssignment() = default;

    MetricRecipe recipe() const { return recipe_; }
    int size() const { return static_cast<int>(adj_.size()); }
    bool dense() const { return !dist_.empty(); }

    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

    const std::vector<std::pair<VertexId, double>>& edge_lengths_at(VertexId x) const {
        return adj_[static_cast<std::size_t>(x)];
    }

    // Raw assigned length of the edge (u,v); throws if not an edge.
    double edge_length(VertexId u, VertexId v) const {
        for (const auto& [y, d] : adj_[static_cast<std::size_t>(u)])
            if (y == v) return d;
        throw InputError("edge_length: (" + std::to_string(u) + "," + std::to_string(v) +
                         ") is not an edge");
    }

    // Path-closed pseudo-distance; +infinity for disconnected pairs. The
    // value for a pair is always the one computed from its smaller endpoint,
    // so symmetry holds exactly despite floating-point rounding.
    double dist(VertexId u, VertexId v) const {
        if (u == v) return 0.0;
        if (u > v) std::swap(u, v);
        if (dense()) return dist_[static_cast<std::size_t>(u) * static_cast<std::size_t>(size()) +
                                  static_cast<std::size_t>(v)];
        return bounded_dijkstra(u, v);
    }

    // Full single-source closure row.
    std::vector<double> distances_from(VertexId s) const {
        if (dense()) {
            const std::size_t n = static_cast<std::size_t>(size());
            return {dist_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * n),
                    dist_.begin() + static_cast<std::ptrdiff_t>((static_cast<std::size_t>(s) + 1) * n)};
        }
        return dijkstra(s);
    }

    // Same metric with every edge length multiplied by s.
    MetricAssignment scaled(double s) const {
        if (!(s > 0.0)) throw InputError("scaled: factor must be positive");
        MetricAssignment out = *this;
        out.recipe_ = MetricRecipe::custom;
        for (auto& row : out.adj_)
            for (auto& [y, d] : row) d *= s;
        for (double& v : out.dist_) v *= s;
        return out;
    }

private:
    friend MetricAssignment build_metric(const WeightedGraph&, MetricRecipe, MetricOptions);
    friend MetricAssignment build_custom_metric(const WeightedGraph&, const std::vector<EdgeLength>&,
                                                MetricOptions);

    std::vector<double> dijkstra(VertexId s) const {
        std::vector<double> dist(adj_.size(), infinity());
        using Item = std::pair<double, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist[static_cast<std::size_t>(s)] = 0.0;
        heap.push({0.0, s});
        while (!heap.empty()) {
            const auto [d, x] = heap.top();
            heap.pop();
            if (d > dist[static_cast<std::size_t>(x)]) continue;
            for (const auto& [y, len] : adj_[static_cast<std::size_t>(x)]) {
                const double nd = d + len;
                if (nd < dist[static_cast<std::size_t>(y)]) {
                    dist[static_cast<std::size_t>(y)] = nd;
                    heap.push({nd, y});
                }
            }
        }
        return dist;
    }

    // Dijkstra from u that stops once v is settled. Labels live in a hash map
    // so local queries on large graphs do not pay an O(n) init.
    double bounded_dijkstra(VertexId u, VertexId v) const {
        std::unordered_map<VertexId, double> dist;
        using Item = std::pair<double, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist[u] = 0.0;
        heap.push({0.0, u});
        while (!heap.empty()) {
            const auto [d, x] = heap.top();
            heap.pop();
            const auto it = dist.find(x);
            if (it != dist.end() && d > it->second) continue;
            if (x == v) return d;
            for (const auto& [y, len] : adj_[static_cast<std::size_t>(x)]) {
                const double nd = d + len;
                const auto jt = dist.find(y);
                if (jt == dist.end() || nd < jt->second) {
                    dist[y] = nd;
                    heap.push({nd, y});
                }
            }
        }
        return infinity();
    }

    void close(const MetricOptions& opts) {
        const int n = size();
        if (n > opts.dense_limit) return;
        dist_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), infinity());
        const int threads = std::min(worker_thread_count(), n == 0 ? 1 : n);
        auto run = [&](int begin, int end) {
            for (int s = begin; s < end; ++s) {
                const std::vector<double> row = dijkstra(s);
                std::copy(row.begin(), row.end(),
                          dist_.begin() + static_cast<std::ptrdiff_t>(
                                              static_cast<std::size_t>(s) * static_cast<std::size_t>(n)));
            }
        };
        if (threads <= 1 || n < 64) {
            run(0, n);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (n + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                const int begin = t * chunk;
                const int end = std::min(n, begin + chunk);
                if (begin < end) pool.emplace_back(run, begin, end);
            }
            for (auto& th : pool) th.join();
        }
        // Mirror the strict upper triangle so dist(u, v) is exactly symmetric.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                dist_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(i)] =
                    dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(j)];
    }

    MetricRecipe recipe_ = MetricRecipe::natural;
    std::vector<std::vector<std::pair<VertexId, double>>> adj_;  // (neighbor, edge length)
    std::vector<double> dist_;                                   // row-major closure when dense
};

/// Builds a metric from one of the named recipes and closes it under shortest
/// paths. Lengths are assigned per edge (b > 0); the potential enters only the
/// potential_adapted recipe.
inline MetricAssignment build_metric(const WeightedGraph& g, MetricRecipe recipe,
                                     MetricOptions opts = {}) {
    if (recipe == MetricRecipe::custom)
        throw InputError("build_metric: custom recipe requires explicit lengths");
    MetricAssignment metric;
    metric.recipe_ = recipe;
    metric.adj_.assign(static_cast<std::size_t>(g.size()), {});
    auto ratio = [&](VertexId x) { return g.measure(x) / g.weighted_degree(x); };
    auto adapted_ratio = [&](VertexId x) {
        return g.measure(x) / (g.weighted_degree(x) + g.potential(x));
    };
    for (VertexId x = 0; x < g.size(); ++x) {
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            double len = 1.0;
            switch (recipe) {
                case MetricRecipe::natural: len = 1.0; break;
                case MetricRecipe::canonical:
                    len = std::sqrt(std::min(ratio(x), ratio(y)));
                    break;
                case MetricRecipe::inverse_degree:
                    len = 1.0 / std::sqrt(std::max(g.weighted_degree(x), g.weighted_degree(y)));
                    break;
                case MetricRecipe::potential_adapted:
                    len = std::sqrt(std::min(adapted_ratio(x), adapted_ratio(y)));
                    break;
                case MetricRecipe::custom: break;
            }
            metric.adj_[static_cast<std::size_t>(x)].push_back({y, len});
        }
    }
    metric.close(opts);
    return metric;
}

/// Builds a metric from caller-supplied lengths, one entry per unordered edge.
/// Rejects negative lengths, conflicting duplicates, entries on non-edges, and
/// edges left without a length.
inline MetricAssignment build_custom_metric(const WeightedGraph& g,
                                            const std::vector<EdgeLength>& lengths,
                                            MetricOptions opts = {}) {
    MetricAssignment metric;
    metric.recipe_ = MetricRecipe::custom;
    metric.adj_.assign(static_cast<std::size_t>(g.size()), {});
    auto find = [&](VertexId u, VertexId v) -> double* {
        for (auto& [y, d] : metric.adj_[static_cast<std::size_t>(u)])
            if (y == v) return &d;
        return nullptr;
    };
    const double unset = -1.0;
    for (VertexId x = 0; x < g.size(); ++x)
        for (const auto& [y, w] : g.neighbors(x))
            if (w > 0.0 && y != x) metric.adj_[static_cast<std::size_t>(x)].push_back({y, unset});
    for (const auto& e : lengths) {
        if (e.u < 0 || e.v < 0 || e.u >= g.size() || e.v >= g.size() || !g.adjacent(e.u, e.v))
            throw InputError("metric error: (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") is not an edge of the graph");
        if (e.d < 0.0)
            throw InputError("metric error: negative length on (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
        double* fwd = find(e.u, e.v);
        double* bwd = find(e.v, e.u);
        if (*fwd != unset && *fwd != e.d)
            throw InputError("metric error: asymmetric lengths on (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
        *fwd = e.d;
        *bwd = e.d;
    }
    for (VertexId x = 0; x < g.size(); ++x)
        for (const auto& [y, d] : metric.adj_[static_cast<std::size_t>(x)])
            if (d == unset)
                throw InputError("metric error: edge (" + std::to_string(x) + "," +
                                 std::to_string(y) + ") has no assigned length");
    metric.close(opts);
    return metric;
}

struct IntrinsicCertificate {
    std::vector<double> slack;  // slack(x) = m(x) - sum_y b(x,y) d(x,y)^2
    bool is_intrinsic = false;
    VertexId worst_vertex = -1;
    double relative_tolerance = 1e-12;
};

/// Evaluates the intrinsic-metric condition sum_y b(x,y) d(x,y)^2 <= m(x) at
/// every vertex, with d the path-closed distance on edges. The tolerance is
/// relative to m(x).
inline IntrinsicCertificate certify_intrinsic(const WeightedGraph& g,
                                              const MetricAssignment& metric,
                                              double relative_tolerance = 1e-12) {
    if (metric.size() != g.size())
        throw InputError("certify_intrinsic: metric does not match graph size");
    IntrinsicCertificate cert;
    cert.relative_tolerance = relative_tolerance;
    cert.slack.resize(static_cast<std::size_t>(g.size()));
    cert.is_intrinsic = true;
    double worst_rel = std::numeric_limits<double>::infinity();
    for (VertexId x = 0; x < g.size(); ++x) {
        double s = 0.0;
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            const double d = metric.dist(x, y);
            s += w * d * d;
        }
        const double slack = g.measure(x) - s;
        cert.slack[static_cast<std::size_t>(x)] = slack;
        const double rel = slack / g.measure(x);
        if (rel < worst_rel) {
            worst_rel = rel;
            cert.worst_vertex = x;
        }
        if (slack < -relative_tolerance * g.measure(x)) cert.is_intrinsic = false;
    }
    return cert;
}

}  // namespace cheegraph
