#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles recompute quantities by direct definition-level loops and must
// stay independent of the library's optimized paths.

#include <cstdint>
#include <random>
#include <vector>

#include "cheegraph/cheegraph.hpp"

namespace testutil {

using namespace cheegraph;

// Path a-b-c with b = 1 and a constant measure.
inline WeightedGraph p3(double measure = 2.0) {
    return WeightedGraph(std::vector<double>(3, measure), {{0, 1, 1.0}, {1, 2, 1.0}});
}

inline WeightedGraph single_edge(double measure = 1.0, double weight = 1.0) {
    return WeightedGraph(std::vector<double>(2, measure), {{0, 1, weight}});
}

inline WeightedGraph random_graph(std::uint64_t seed, int n_min = 4, int n_max = 12,
                                  MeasureConvention measure = MeasureConvention::custom,
                                  double c_max = 0.0) {
    std::mt19937_64 rng(seed);
    GraphFamily fam;
    fam.kind = FamilyKind::random_weighted;
    fam.seed = rng();
    fam.measure = measure;
    fam.random.n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
    fam.random.edge_prob = 0.25 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    fam.random.b_min = 0.3;
    fam.random.b_max = 2.5;
    fam.random.m_min = 0.4;
    fam.random.m_max = 2.5;
    fam.random.c_max = c_max;
    return generate(fam).graph;
}

inline Subset random_subset_of(std::mt19937_64& rng, int n, int size) {
    std::vector<VertexId> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(ids[static_cast<std::size_t>(i)],
                  ids[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
    Subset out(ids.begin(), ids.begin() + size);
    std::sort(out.begin(), out.end());
    return out;
}

// |dW| and m(W) by the raw definition: ordered boundary pairs, d on edges.
inline std::pair<double, double> brute_boundary(const WeightedGraph& g,
                                                const MetricAssignment& metric, const Subset& w) {
    std::vector<char> in_w(static_cast<std::size_t>(g.size()), 0);
    for (VertexId x : w) in_w[static_cast<std::size_t>(x)] = 1;
    double bnd = 0.0, vol = 0.0;
    for (VertexId x : w) {
        vol += g.measure(x);
        for (const auto& [y, wt] : g.neighbors(x))
            if (wt > 0.0 && !in_w[static_cast<std::size_t>(y)]) bnd += wt * metric.dist(x, y);
    }
    return {bnd, vol};
}

// Exact Cheeger constant by direct enumeration with explicit subset lists and
// lexicographic tie-breaking on the vertex sequences.
inline std::pair<double, Subset> brute_cheeger(const WeightedGraph& g,
                                               const MetricAssignment& metric, const Subset& u) {
    const int k = static_cast<int>(u.size());
    double best = std::numeric_limits<double>::infinity();
    Subset best_w;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        Subset w;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1u) w.push_back(u[static_cast<std::size_t>(i)]);
        const auto [bnd, vol] = brute_boundary(g, metric, w);
        const double ratio = bnd / vol;
        if (ratio < best || (ratio == best && std::lexicographical_compare(
                                                  w.begin(), w.end(), best_w.begin(), best_w.end()))) {
            best = ratio;
            best_w = w;
        }
    }
    return {best, best_w};
}

}  // namespace testutil
