#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cheegraph/graph.hpp"

namespace cheegraph {

enum class FamilyKind { k_regular_tree, antitree, tree_with_sphere_edges, path, random_weighted };

enum class MeasureConvention { unit, weighted_degree, custom };

inline std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::k_regular_tree: return "k_regular_tree";
        case FamilyKind::antitree: return "antitree";
        case FamilyKind::tree_with_sphere_edges: return "tree_with_sphere_edges";
        case FamilyKind::path: return "path";
        case FamilyKind::random_weighted: return "random_weighted";
    }
    return "?";
}

inline std::string to_string(MeasureConvention m) {
    switch (m) {
        case MeasureConvention::unit: return "unit";
        case MeasureConvention::weighted_degree: return "weighted_degree";
        case MeasureConvention::custom: return "custom";
    }
    return "?";
}

struct RandomGraphParams {
    int n = 10;
    double edge_prob = 0.35;
    double b_min = 0.5, b_max = 2.0;
    double m_min = 0.5, m_max = 2.0;
    double c_min = 0.0, c_max = 0.0;
};

struct GraphFamily {
    FamilyKind kind = FamilyKind::k_regular_tree;
    int branching = 2;  // forward-neighbor count k for tree kinds
    int radius = 3;     // truncation depth (trees, path); sphere count (antitree)
    // Antitree sphere-size law #S_{r-1} = round(r^sphere_exponent), r = 1..radius;
    // explicit sphere_sizes overrides the law when nonempty.
    double sphere_exponent = 2.0;
    std::vector<int> sphere_sizes;
    MeasureConvention measure = MeasureConvention::unit;
    double custom_measure = 1.0;
    RandomGraphParams random;
    std::uint64_t seed = 0;
};

// A generated truncation: the finite graph plus the breadth-first structure
// needed to identify which vertices still see their full neighborhood.
struct FamilyGraph {
    WeightedGraph graph;
    GraphFamily family;
    VertexId root = 0;
    std::vector<int> sphere;  // combinatorial distance from the root
    int depth = 0;            // largest sphere index present
};

namespace detail {

// mt19937_64 draws mapped by hand so that sequences are pinned by the seed
// alone, not by the standard library's distribution implementations.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

inline WeightedGraph apply_measure(WeightedGraph g, const GraphFamily& fam) {
    switch (fam.measure) {
        case MeasureConvention::unit: return g;
        case MeasureConvention::weighted_degree: return g.with_degree_measure();
        case MeasureConvention::custom:
            if (!(fam.custom_measure > 0.0)) throw InputError("custom_measure must be positive");
            return g.with_measure(std::vector<double>(static_cast<std::size_t>(g.size()),
                                                      fam.custom_measure));
    }
    return g;
}

inline std::vector<int> antitree_sphere_sizes(const GraphFamily& fam) {
    if (!fam.sphere_sizes.empty()) {
        if (static_cast<int>(fam.sphere_sizes.size()) != fam.radius)
            throw InputError("sphere_sizes length must equal radius");
        for (int s : fam.sphere_sizes)
            if (s < 1) throw InputError("sphere_sizes entries must be >= 1");
        return fam.sphere_sizes;
    }
    std::vector<int> sizes;
    sizes.reserve(static_cast<std::size_t>(fam.radius));
    for (int r = 1; r <= fam.radius; ++r) {
        const double v = std::pow(static_cast<double>(r), fam.sphere_exponent);
        sizes.push_back(std::max(1, static_cast<int>(std::llround(v))));
    }
    return sizes;
}

inline FamilyGraph generate_tree(const GraphFamily& fam, bool sphere_edges) {
    if (fam.branching < 2) throw InputError("branching must be >= 2");
    if (fam.radius < 1) throw InputError("radius must be >= 1");
    const int k = fam.branching;
    const int R = fam.radius;

    std::vector<std::size_t> sphere_size(static_cast<std::size_t>(R) + 1);
    sphere_size[0] = 1;
    std::size_t total = 1;
    for (int r = 1; r <= R; ++r) {
        sphere_size[static_cast<std::size_t>(r)] =
            sphere_size[static_cast<std::size_t>(r - 1)] * static_cast<std::size_t>(k);
        total += sphere_size[static_cast<std::size_t>(r)];
        if (total > 50'000'000) throw InputError("radius too large for branching factor");
    }

    std::vector<int> sphere(total);
    std::vector<EdgeInput> edges;
    edges.reserve(total - 1);
    sphere[0] = 0;
    VertexId next = 1;
    VertexId level_begin = 0;
    for (int r = 0; r < R; ++r) {
        const VertexId level_end = next;
        for (VertexId parent = level_begin; parent < level_end; ++parent) {
            for (int c = 0; c < k; ++c) {
                sphere[static_cast<std::size_t>(next)] = r + 1;
                edges.push_back({parent, next, 1.0});
                ++next;
            }
        }
        level_begin = level_end;
    }

    if (sphere_edges) {
        VertexId begin = 1;
        for (int r = 1; r <= R; ++r) {
            const VertexId end = begin + static_cast<VertexId>(sphere_size[static_cast<std::size_t>(r)]);
            for (VertexId u = begin; u < end; ++u)
                for (VertexId v = u + 1; v < end; ++v) edges.push_back({u, v, 1.0});
            begin = end;
        }
    }

    FamilyGraph fg;
    fg.family = fam;
    fg.root = 0;
    fg.sphere = std::move(sphere);
    fg.depth = R;
    fg.graph = apply_measure(WeightedGraph(std::vector<double>(total, 1.0), edges), fam);
    return fg;
}

inline FamilyGraph generate_antitree(const GraphFamily& fam) {
    if (fam.radius < 1) throw InputError("radius must be >= 1");
    const std::vector<int> sizes = antitree_sphere_sizes(fam);
    std::size_t total = 0;
    for (int s : sizes) total += static_cast<std::size_t>(s);

    std::vector<int> sphere(total);
    std::vector<VertexId> sphere_begin(sizes.size() + 1, 0);
    for (std::size_t r = 0; r < sizes.size(); ++r)
        sphere_begin[r + 1] = sphere_begin[r] + sizes[r];
    for (std::size_t r = 0; r < sizes.size(); ++r)
        for (VertexId x = sphere_begin[r]; x < sphere_begin[r + 1]; ++x)
            sphere[static_cast<std::size_t>(x)] = static_cast<int>(r);

    std::vector<EdgeInput> edges;
    for (std::size_t r = 0; r + 1 < sizes.size(); ++r)
        for (VertexId u = sphere_begin[r]; u < sphere_begin[r + 1]; ++u)
            for (VertexId v = sphere_begin[r + 1]; v < sphere_begin[r + 2]; ++v)
                edges.push_back({u, v, 1.0});

    FamilyGraph fg;
    fg.family = fam;
    fg.root = 0;
    fg.sphere = std::move(sphere);
    fg.depth = static_cast<int>(sizes.size()) - 1;
    fg.graph = apply_measure(WeightedGraph(std::vector<double>(total, 1.0), edges), fam);
    return fg;
}

inline FamilyGraph generate_path(const GraphFamily& fam) {
    if (fam.radius < 1) throw InputError("radius must be >= 1");
    const int R = fam.radius;
    std::vector<EdgeInput> edges;
    std::vector<int> sphere(static_cast<std::size_t>(R) + 1);
    for (int i = 0; i < R; ++i) {
        edges.push_back({i, i + 1, 1.0});
        sphere[static_cast<std::size_t>(i)] = i;
    }
    sphere[static_cast<std::size_t>(R)] = R;

    FamilyGraph fg;
    fg.family = fam;
    fg.root = 0;
    fg.sphere = std::move(sphere);
    fg.depth = R;
    fg.graph = apply_measure(
        WeightedGraph(std::vector<double>(static_cast<std::size_t>(R) + 1, 1.0), edges), fam);
    return fg;
}

inline FamilyGraph generate_random(const GraphFamily& fam) {
    const RandomGraphParams& p = fam.random;
    if (p.n < 2) throw InputError("random.n must be >= 2");
    if (p.edge_prob < 0.0 || p.edge_prob > 1.0)
        throw InputError("random.edge_prob must lie in [0,1]");
    if (!(p.b_min > 0.0) || p.b_max < p.b_min)
        throw InputError("random.b range must be positive and ordered");
    if (!(p.m_min > 0.0) || p.m_max < p.m_min)
        throw InputError("random.m range must be positive and ordered");
    if (p.c_min < 0.0 || p.c_max < p.c_min)
        throw InputError("random.c range must be nonnegative and ordered");

    std::mt19937_64 rng(fam.seed);
    const int n = p.n;
    std::vector<EdgeInput> edges;
    std::vector<char> has_edge(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform_real(rng, 0.0, 1.0) < p.edge_prob) {
                edges.push_back({u, v, uniform_real(rng, p.b_min, p.b_max)});
                has_edge[static_cast<std::size_t>(u)] = has_edge[static_cast<std::size_t>(v)] = 1;
            }
    for (int u = 0; u < n; ++u) {
        if (has_edge[static_cast<std::size_t>(u)]) continue;
        int v = uniform_int(rng, 0, n - 2);
        if (v >= u) ++v;
        edges.push_back({u, v, uniform_real(rng, p.b_min, p.b_max)});
        has_edge[static_cast<std::size_t>(u)] = has_edge[static_cast<std::size_t>(v)] = 1;
    }

    std::vector<double> m(static_cast<std::size_t>(n), 1.0);
    if (fam.measure == MeasureConvention::custom)
        for (double& v : m) v = uniform_real(rng, p.m_min, p.m_max);
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    if (p.c_max > 0.0)
        for (double& v : c) v = uniform_real(rng, p.c_min, p.c_max);

    WeightedGraph g(std::move(m), edges, std::move(c));
    if (fam.measure == MeasureConvention::weighted_degree) g = g.with_degree_measure();

    FamilyGraph fg;
    fg.family = fam;
    fg.root = 0;
    fg.graph = std::move(g);
    fg.sphere.assign(static_cast<std::size_t>(n), -1);
    fg.depth = 0;
    return fg;
}

}  // namespace detail

/// Generates the radius-R truncation of the requested family. Deterministic
/// given (kind, parameters, seed); vertex ids are assigned breadth-first from
/// the root so smaller truncations are prefixes of larger ones.
inline FamilyGraph generate(const GraphFamily& family) {
    switch (family.kind) {
        case FamilyKind::k_regular_tree: return detail::generate_tree(family, false);
        case FamilyKind::tree_with_sphere_edges: return detail::generate_tree(family, true);
        case FamilyKind::antitree: return detail::generate_antitree(family);
        case FamilyKind::path: return detail::generate_path(family);
        case FamilyKind::random_weighted: return detail::generate_random(family);
    }
    throw InputError("unknown family kind");
}

/// Vertices of a truncation whose full neighborhood is present, i.e. everything
/// except the outermost sphere. Dirichlet quantities on this set agree with the
/// untruncated family.
inline Subset interior(const FamilyGraph& fg) {
    if (fg.family.kind == FamilyKind::random_weighted)
        throw PreconditionError("interior: graph is not a family truncation");
    Subset result;
    for (VertexId x = 0; x < fg.graph.size(); ++x)
        if (fg.sphere[static_cast<std::size_t>(x)] < fg.depth) result.push_back(x);
    return result;
}

/// Vertices at combinatorial distance <= r from the root, in id order.
inline Subset combinatorial_ball(const FamilyGraph& fg, int r) {
    Subset result;
    for (VertexId x = 0; x < fg.graph.size(); ++x)
        if (fg.sphere[static_cast<std::size_t>(x)] >= 0 &&
            fg.sphere[static_cast<std::size_t>(x)] <= r)
            result.push_back(x);
    return result;
}

}  // namespace cheegraph
