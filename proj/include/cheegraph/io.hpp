#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cheegraph/curvature.hpp"
#include "cheegraph/families.hpp"
#include "cheegraph/graph.hpp"
#include "cheegraph/growth.hpp"
#include "cheegraph/isoperimetry.hpp"
#include "cheegraph/metrics.hpp"
#include "cheegraph/potentials.hpp"
#include "cheegraph/spectral.hpp"

namespace cheegraph {

using nlohmann::json;

inline MetricRecipe recipe_from_string(const std::string& s) {
    if (s == "natural") return MetricRecipe::natural;
    if (s == "canonical") return MetricRecipe::canonical;
    if (s == "inverse_degree") return MetricRecipe::inverse_degree;
    if (s == "potential_adapted") return MetricRecipe::potential_adapted;
    if (s == "custom") return MetricRecipe::custom;
    throw InputError("unknown metric recipe: " + s);
}

inline FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "k_regular_tree" || s == "tree") return FamilyKind::k_regular_tree;
    if (s == "antitree") return FamilyKind::antitree;
    if (s == "tree_with_sphere_edges" || s == "sphere_tree")
        return FamilyKind::tree_with_sphere_edges;
    if (s == "path") return FamilyKind::path;
    if (s == "random_weighted" || s == "random") return FamilyKind::random_weighted;
    throw InputError("unknown family kind: " + s);
}

inline MeasureConvention measure_convention_from_string(const std::string& s) {
    if (s == "unit") return MeasureConvention::unit;
    if (s == "weighted_degree" || s == "degree") return MeasureConvention::weighted_degree;
    if (s == "custom") return MeasureConvention::custom;
    throw InputError("unknown measure convention: " + s);
}

// ---- graph ----------------------------------------------------------------

inline json graph_to_json(const WeightedGraph& g) {
    json vertices = json::array();
    for (VertexId x = 0; x < g.size(); ++x) {
        json v{{"id", x}, {"m", g.measure(x)}, {"c", g.potential(x)}};
        if (!g.label(x).empty()) v["label"] = g.label(x);
        vertices.push_back(std::move(v));
    }
    json edges = json::array();
    for (VertexId x = 0; x < g.size(); ++x)
        for (const auto& [y, w] : g.neighbors(x))
            if (y > x) edges.push_back({{"u", x}, {"v", y}, {"b", w}});
    return {{"vertices", vertices}, {"edges", edges}};
}

// Loads the graph schema; vertex ids may be arbitrary distinct integers and
// are mapped to dense indices in order of appearance. Edges are listed once
// per unordered pair and symmetrized here.
inline WeightedGraph graph_from_json(const json& j) {
    try {
        const json& vertices = j.at("vertices");
        const json& edges = j.at("edges");
        std::unordered_map<long long, VertexId> id_map;
        std::vector<double> m, c;
        std::vector<std::string> labels;
        for (const json& v : vertices) {
            const long long id = v.at("id").get<long long>();
            if (id_map.count(id)) throw InputError("duplicate vertex id " + std::to_string(id));
            id_map[id] = static_cast<VertexId>(m.size());
            m.push_back(v.at("m").get<double>());
            c.push_back(v.value("c", 0.0));
            labels.push_back(v.value("label", std::string{}));
        }
        std::vector<EdgeInput> edge_list;
        for (const json& e : edges) {
            const long long u = e.at("u").get<long long>();
            const long long v = e.at("v").get<long long>();
            if (!id_map.count(u) || !id_map.count(v))
                throw InputError("edge references unknown vertex id");
            edge_list.push_back({id_map[u], id_map[v], e.at("b").get<double>()});
        }
        return WeightedGraph(std::move(m), edge_list, std::move(c), std::move(labels));
    } catch (const json::exception& e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
}

inline json family_to_json(const GraphFamily& fam) {
    json out{{"kind", to_string(fam.kind)},
             {"measure", to_string(fam.measure)},
             {"seed", fam.seed}};
    switch (fam.kind) {
        case FamilyKind::k_regular_tree:
        case FamilyKind::tree_with_sphere_edges:
            out["branching"] = fam.branching;
            out["radius"] = fam.radius;
            break;
        case FamilyKind::antitree:
            out["radius"] = fam.radius;
            out["sphere_exponent"] = fam.sphere_exponent;
            if (!fam.sphere_sizes.empty()) out["sphere_sizes"] = fam.sphere_sizes;
            break;
        case FamilyKind::path:
            out["radius"] = fam.radius;
            break;
        case FamilyKind::random_weighted:
            out["n"] = fam.random.n;
            out["edge_prob"] = fam.random.edge_prob;
            out["b_range"] = {fam.random.b_min, fam.random.b_max};
            out["m_range"] = {fam.random.m_min, fam.random.m_max};
            out["c_range"] = {fam.random.c_min, fam.random.c_max};
            break;
    }
    if (fam.measure == MeasureConvention::custom && fam.kind != FamilyKind::random_weighted)
        out["custom_measure"] = fam.custom_measure;
    return out;
}

inline GraphFamily family_from_json(const json& j) {
    try {
        GraphFamily fam;
        fam.kind = family_kind_from_string(j.at("kind").get<std::string>());
        fam.measure = measure_convention_from_string(j.value("measure", std::string{"unit"}));
        fam.seed = j.value("seed", std::uint64_t{0});
        fam.branching = j.value("branching", 2);
        fam.radius = j.value("radius", 3);
        fam.sphere_exponent = j.value("sphere_exponent", 2.0);
        if (j.contains("sphere_sizes")) fam.sphere_sizes = j["sphere_sizes"].get<std::vector<int>>();
        fam.custom_measure = j.value("custom_measure", 1.0);
        if (fam.kind == FamilyKind::random_weighted) {
            fam.random.n = j.value("n", 10);
            fam.random.edge_prob = j.value("edge_prob", 0.35);
            if (j.contains("b_range")) {
                fam.random.b_min = j["b_range"][0].get<double>();
                fam.random.b_max = j["b_range"][1].get<double>();
            }
            if (j.contains("m_range")) {
                fam.random.m_min = j["m_range"][0].get<double>();
                fam.random.m_max = j["m_range"][1].get<double>();
            }
            if (j.contains("c_range")) {
                fam.random.c_min = j["c_range"][0].get<double>();
                fam.random.c_max = j["c_range"][1].get<double>();
            }
        }
        return fam;
    } catch (const json::exception& e) {
        throw InputError(std::string("family JSON: ") + e.what());
    }
}

// Family graphs embed their generator parameters so exhaustion-based
// operations can recover the truncation structure on load.
inline json family_graph_to_json(const FamilyGraph& fg) {
    json out = graph_to_json(fg.graph);
    out["family"] = family_to_json(fg.family);
    return out;
}

inline FamilyGraph family_graph_from_json(const json& j) {
    if (!j.contains("family"))
        throw InputError("graph JSON carries no family block; regenerate with `gen`");
    FamilyGraph fg = generate(family_from_json(j["family"]));
    const WeightedGraph loaded = graph_from_json(j);
    if (loaded.size() != fg.graph.size())
        throw InputError("family block does not match the stored graph");
    fg.graph = loaded;  // keep any edited measures/potentials from the file
    return fg;
}

// ---- metric ---------------------------------------------------------------

inline json metric_to_json(const MetricAssignment& metric) {
    json lengths = json::array();
    for (VertexId x = 0; x < metric.size(); ++x)
        for (const auto& [y, d] : metric.edge_lengths_at(x))
            if (y > x) lengths.push_back({{"u", x}, {"v", y}, {"d", d}});
    return {{"recipe", to_string(metric.recipe())}, {"edge_lengths", lengths}};
}

inline MetricAssignment metric_from_json(const WeightedGraph& g, const json& j,
                                         MetricOptions opts = {}) {
    try {
        std::vector<EdgeLength> lengths;
        for (const json& e : j.at("edge_lengths"))
            lengths.push_back({e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                               e.at("d").get<double>()});
        return build_custom_metric(g, lengths, opts);
    } catch (const json::exception& e) {
        throw InputError(std::string("metric JSON: ") + e.what());
    }
}

// ---- results --------------------------------------------------------------

inline json to_json(const CutReport& r) {
    return {{"W", r.W}, {"boundary", r.boundary_measure}, {"volume", r.volume}, {"ratio", r.ratio}};
}

inline json to_json(const DottedCutReport& r) {
    return {{"W", r.W},
            {"boundary", r.boundary_measure},
            {"potential_term", r.potential_term},
            {"volume", r.volume},
            {"ratio", r.ratio}};
}

inline json to_json(const CheegerResult& r) {
    return {{"alpha", r.alpha},
            {"optimal_W", r.optimal_W},
            {"mode", to_string(r.mode)},
            {"enumeration_count", r.enumeration_count}};
}

inline json to_json(const SpectralResult& r) {
    return {{"lambda0", r.lambda0},
            {"eigenvector", r.eigenvector},
            {"residual", r.residual},
            {"method", to_string(r.method)},
            {"iterations", r.iterations}};
}

inline json to_json(const IntrinsicCertificate& c) {
    return {{"is_intrinsic", c.is_intrinsic},
            {"worst_vertex", c.worst_vertex},
            {"slack", c.slack},
            {"relative_tolerance", c.relative_tolerance}};
}

inline json orientation_to_json(const WeightedGraph& g, const Orientation& o) {
    json edges = json::array();
    for (VertexId x = 0; x < g.size(); ++x) {
        const auto& row = g.neighbors(x);
        const auto& signs = o.signs_at(x);
        for (std::size_t i = 0; i < row.size(); ++i)
            if (signs[i] == 1) edges.push_back({{"u", x}, {"v", row[i].first}, {"sign", 1}});
    }
    return {{"origin", o.origin()}, {"oriented_edges", edges}};
}

inline json doubled_graph_to_json(const DoubledGraph& dg) {
    json out = graph_to_json(dg.doubled);
    json pairing = json::array();
    for (VertexId x = 0; x < dg.base.size(); ++x)
        pairing.push_back({{"x", x}, {"x_prime", dg.pairing[static_cast<std::size_t>(x)]}});
    out["pairing"] = pairing;
    out["delta"] = dg.delta;
    return out;
}

// ---- CSV ------------------------------------------------------------------

inline void write_balls_csv(std::ostream& os, const std::vector<double>& radii,
                            const std::vector<CutReport>& reports, std::uint64_t seed) {
    os << "# seed=" << seed << "\n";
    os << "r,boundary,volume,ratio\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
        os << radii[i] << "," << reports[i].boundary_measure << "," << reports[i].volume << ","
           << reports[i].ratio << "\n";
}

inline void write_growth_csv(std::ostream& os, const GrowthEstimate& estimate,
                             std::uint64_t seed) {
    os << "# seed=" << seed << "\n";
    os << "r,inf_value\n";
    for (const auto& [r, v] : estimate.per_radius) os << r << "," << v << "\n";
}

inline void write_curvature_csv(std::ostream& os, const WeightedGraph& g, const Orientation& o,
                                const CurvatureField& field, std::uint64_t seed) {
    os << "# seed=" << seed << "\n";
    os << "vertex,sphere,K,minus_K\n";
    for (VertexId x = 0; x < g.size(); ++x) {
        const int sphere = o.sphere().empty() ? -1 : o.sphere()[static_cast<std::size_t>(x)];
        os << x << "," << sphere << "," << field.K[static_cast<std::size_t>(x)] << ","
           << -field.K[static_cast<std::size_t>(x)] << "\n";
    }
}

// ---- files ----------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw InputError("parse error in " + path + ": " + e.what());
    }
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << text;
}

}  // namespace cheegraph
