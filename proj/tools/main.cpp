// cheegraph CLI: generate graph families, build intrinsic metrics, compute
// isoperimetric and spectral quantities, and run the verification suites.
//
// Exit codes: 0 success, 1 certificate failure, 2 input error,
// 3 capacity/precondition error.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cheegraph/cheegraph.hpp"

namespace cg = cheegraph;
using nlohmann::json;

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

cg::Subset parse_subset(const std::string& csv) {
    cg::Subset out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw cg::InputError("cannot parse vertex id: " + item);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw cg::InputError("empty subset");
    return out;
}

std::vector<double> parse_radii(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw cg::InputError("cannot parse radius: " + item);
        }
    }
    if (out.empty()) throw cg::InputError("empty radius list");
    return out;
}

void write_json(const std::string& path, const json& j) {
    cg::save_text_file(path, j.dump(2) + "\n");
}

cg::MetricAssignment metric_from_flags(const cg::WeightedGraph& g, const std::string& recipe,
                                       const std::string& metric_file) {
    if (!metric_file.empty()) return cg::metric_from_json(g, cg::load_json_file(metric_file));
    return cg::build_metric(g, cg::recipe_from_string(recipe));
}

struct GenFlags {
    std::string family = "tree";
    int k = 2;
    int radius = 3;
    std::string measure = "unit";
    double measure_value = 1.0;
    double sphere_exponent = 2.0;
    std::uint64_t seed = 0;
    int n = 10;
    double edge_prob = 0.35;
    std::vector<double> b_range{0.5, 2.0};
    std::vector<double> m_range{0.5, 2.0};
    std::vector<double> c_range{0.0, 0.0};
    std::string output;
};

cg::GraphFamily family_from_flags(const GenFlags& f) {
    cg::GraphFamily fam;
    fam.kind = cg::family_kind_from_string(f.family);
    fam.branching = f.k;
    fam.radius = f.radius;
    fam.measure = cg::measure_convention_from_string(f.measure);
    fam.custom_measure = f.measure_value;
    fam.sphere_exponent = f.sphere_exponent;
    fam.seed = f.seed;
    fam.random.n = f.n;
    fam.random.edge_prob = f.edge_prob;
    fam.random.b_min = f.b_range.at(0);
    fam.random.b_max = f.b_range.at(1);
    fam.random.m_min = f.m_range.at(0);
    fam.random.m_max = f.m_range.at(1);
    fam.random.c_min = f.c_range.at(0);
    fam.random.c_max = f.c_range.at(1);
    return fam;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"intrinsic-metric Cheeger bounds for weighted graph Laplacians"};
    app.require_subcommand(1);

    // ---- gen ----
    GenFlags gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a graph family truncation");
    cmd_gen->add_option("--family", gen.family,
                        "tree | antitree | sphere_tree | path | random");
    cmd_gen->add_option("--k", gen.k, "branching factor for tree families");
    cmd_gen->add_option("--radius", gen.radius, "truncation depth / sphere count");
    cmd_gen->add_option("--measure", gen.measure, "unit | degree | custom");
    cmd_gen->add_option("--measure-value", gen.measure_value, "constant measure for custom");
    cmd_gen->add_option("--sphere-exponent", gen.sphere_exponent, "antitree sphere-size law r^p");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen->add_option("--n", gen.n, "vertex count (random family)");
    cmd_gen->add_option("--edge-prob", gen.edge_prob, "edge probability (random family)");
    cmd_gen->add_option("--b-range", gen.b_range, "edge weight range (random family)")
        ->expected(2);
    cmd_gen->add_option("--m-range", gen.m_range, "measure range (random family)")->expected(2);
    cmd_gen->add_option("--c-range", gen.c_range, "potential range (random family)")->expected(2);
    cmd_gen->add_option("-o,--output", gen.output, "output graph JSON")->required();

    // ---- metric ----
    std::string metric_input, metric_recipe = "canonical", metric_output;
    bool metric_certify = false;
    CLI::App* cmd_metric = app.add_subcommand("metric", "build a metric and close it under paths");
    cmd_metric->add_option("-i,--input", metric_input, "graph JSON")->required();
    cmd_metric->add_option("--recipe", metric_recipe,
                           "natural | canonical | inverse_degree | potential_adapted");
    cmd_metric->add_flag("--certify", metric_certify, "attach the intrinsic certificate");
    cmd_metric->add_option("-o,--output", metric_output, "output metric JSON")->required();

    // ---- cheeger ----
    std::string ch_input, ch_metric_file, ch_recipe = "canonical", ch_mode = "exact";
    std::string ch_subset, ch_radii, ch_ball_recipe, ch_output;
    int ch_center = 0, ch_max_size = 20;
    bool ch_csv = false;
    CLI::App* cmd_cheeger = app.add_subcommand("cheeger", "isoperimetric ratios and constants");
    cmd_cheeger->add_option("-i,--input", ch_input, "graph JSON")->required();
    cmd_cheeger->add_option("--metric", ch_metric_file, "metric JSON (overrides --recipe)");
    cmd_cheeger->add_option("--recipe", ch_recipe, "metric recipe");
    cmd_cheeger->add_option("--mode", ch_mode, "exact | balls | sweep");
    cmd_cheeger->add_option("--subset", ch_subset, "comma-separated U (exact/sweep)");
    cmd_cheeger->add_option("--center", ch_center, "ball center (balls mode)");
    cmd_cheeger->add_option("--radii", ch_radii, "comma-separated radii (balls mode)");
    cmd_cheeger->add_option("--ball-recipe", ch_ball_recipe,
                            "metric recipe for ball membership (balls mode)");
    cmd_cheeger->add_option("--max-size", ch_max_size, "exact enumeration budget");
    cmd_cheeger->add_flag("--csv", ch_csv, "CSV table for ball sequences");
    cmd_cheeger->add_option("-o,--output", ch_output, "output path")->required();

    // ---- lambda0 ----
    std::string l0_input, l0_subset, l0_output;
    CLI::App* cmd_lambda0 = app.add_subcommand("lambda0", "bottom Dirichlet eigenvalue");
    cmd_lambda0->add_option("-i,--input", l0_input, "graph JSON")->required();
    cmd_lambda0->add_option("--subset", l0_subset, "comma-separated U (default: all vertices)");
    cmd_lambda0->add_option("-o,--output", l0_output, "output JSON")->required();

    // ---- curvature ----
    std::string cv_input, cv_metric_file, cv_recipe = "natural", cv_set = "all", cv_output;
    std::string cv_orientation_out;
    int cv_root = 0;
    CLI::App* cmd_curv = app.add_subcommand("curvature", "sphere orientation and curvature K");
    cmd_curv->add_option("-i,--input", cv_input, "graph JSON")->required();
    cmd_curv->add_option("--metric", cv_metric_file, "metric JSON (overrides --recipe)");
    cmd_curv->add_option("--recipe", cv_recipe, "metric recipe");
    cmd_curv->add_option("--root", cv_root, "orientation root");
    cmd_curv->add_option("--vertex-set", cv_set, "all | interior | comma-separated ids");
    cmd_curv->add_option("--orientation-out", cv_orientation_out, "signed edge list JSON");
    cmd_curv->add_option("-o,--output", cv_output, "curvature CSV")->required();

    // ---- growth ----
    std::string gr_input, gr_metric_file, gr_recipe = "natural", gr_centers = "root", gr_radii;
    std::string gr_output;
    CLI::App* cmd_growth = app.add_subcommand("growth", "exponential volume growth estimates");
    cmd_growth->add_option("-i,--input", gr_input, "graph JSON")->required();
    cmd_growth->add_option("--metric", gr_metric_file, "metric JSON (overrides --recipe)");
    cmd_growth->add_option("--recipe", gr_recipe, "metric recipe");
    cmd_growth->add_option("--centers", gr_centers, "root | all | comma-separated ids");
    cmd_growth->add_option("--radii", gr_radii, "comma-separated radii")->required();
    cmd_growth->add_option("-o,--output", gr_output, "growth CSV")->required();

    // ---- potential ----
    std::string pt_input, pt_recipe = "potential_adapted", pt_output;
    int pt_trials = 100;
    std::uint64_t pt_seed = 0;
    CLI::App* cmd_pot = app.add_subcommand("potential", "doubled-graph construction for potentials");
    cmd_pot->add_option("-i,--input", pt_input, "graph JSON (with potential c)")->required();
    cmd_pot->add_option("--recipe", pt_recipe, "metric recipe for the adapted delta");
    cmd_pot->add_option("--identity-trials", pt_trials, "random test functions for the form identity");
    cmd_pot->add_option("--seed", pt_seed, "RNG seed for the identity check");
    cmd_pot->add_option("-o,--output", pt_output, "doubled graph JSON")->required();

    // ---- verify ----
    std::string vf_suite = "all", vf_output;
    std::uint64_t vf_seed = 20240901;
    CLI::App* cmd_verify = app.add_subcommand("verify", "run verification suites");
    cmd_verify->add_option("--suite", vf_suite,
                           "cheeger | strong_form | coarea | counterexample | curvature | "
                           "potentials | upper_bound | growth | determinism | all");
    cmd_verify->add_option("--seed", vf_seed, "master seed");
    cmd_verify->add_option("-o,--output", vf_output, "report JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_gen->parsed()) {
            const cg::FamilyGraph fg = cg::generate(family_from_flags(gen));
            json out = cg::family_graph_to_json(fg);
            out["seed"] = gen.seed;
            write_json(gen.output, out);
            std::cout << "wrote " << gen.output << " (" << fg.graph.size() << " vertices)\n";
        } else if (cmd_metric->parsed()) {
            const cg::WeightedGraph g = cg::graph_from_json(cg::load_json_file(metric_input));
            const cg::MetricAssignment metric =
                cg::build_metric(g, cg::recipe_from_string(metric_recipe));
            json out = cg::metric_to_json(metric);
            out["seed"] = 0;
            if (metric_certify) out["certificate"] = cg::to_json(cg::certify_intrinsic(g, metric));
            write_json(metric_output, out);
            std::cout << "wrote " << metric_output << "\n";
        } else if (cmd_cheeger->parsed()) {
            const cg::WeightedGraph g = cg::graph_from_json(cg::load_json_file(ch_input));
            const cg::MetricAssignment metric = metric_from_flags(g, ch_recipe, ch_metric_file);
            if (ch_mode == "exact" || ch_mode == "sweep") {
                const cg::Subset u =
                    ch_subset.empty() ? cg::full_vertex_set(g) : parse_subset(ch_subset);
                cg::CheegerResult result;
                if (ch_mode == "exact") {
                    result = cg::cheeger_exact(g, metric, u, {ch_max_size});
                } else {
                    const cg::SpectralResult spec = cg::lambda0(cg::assemble(g, u));
                    result = cg::cheeger_sweep(g, metric, u, spec.eigenvector);
                }
                json line = cg::to_json(result);
                line["seed"] = 0;
                std::ostringstream os;
                os << line.dump() << "\n"
                   << cg::to_json(cg::boundary(g, metric, result.optimal_W)).dump() << "\n";
                cg::save_text_file(ch_output, os.str());
            } else if (ch_mode == "balls") {
                if (ch_radii.empty()) throw cg::InputError("balls mode requires --radii");
                const std::vector<double> radii = parse_radii(ch_radii);
                cg::MetricAssignment ball_metric;
                const cg::MetricAssignment* ball_ptr = nullptr;
                if (!ch_ball_recipe.empty()) {
                    ball_metric = cg::build_metric(g, cg::recipe_from_string(ch_ball_recipe));
                    ball_ptr = &ball_metric;
                }
                const std::vector<cg::CutReport> reports =
                    cg::cheeger_balls(g, metric, ch_center, radii, ball_ptr);
                std::ostringstream os;
                if (ch_csv) {
                    cg::write_balls_csv(os, radii, reports, 0);
                } else {
                    for (const auto& r : reports) os << cg::to_json(r).dump() << "\n";
                }
                cg::save_text_file(ch_output, os.str());
            } else {
                throw cg::InputError("unknown cheeger mode: " + ch_mode);
            }
            std::cout << "wrote " << ch_output << "\n";
        } else if (cmd_lambda0->parsed()) {
            const cg::WeightedGraph g = cg::graph_from_json(cg::load_json_file(l0_input));
            const cg::Subset u = l0_subset.empty() ? cg::full_vertex_set(g) : parse_subset(l0_subset);
            const cg::SpectralResult result = cg::lambda0(cg::assemble(g, u));
            json out = cg::to_json(result);
            out["subset"] = u;
            out["seed"] = 0;
            write_json(l0_output, out);
            std::cout << "lambda0 = " << result.lambda0 << "\n";
        } else if (cmd_curv->parsed()) {
            const json j = cg::load_json_file(cv_input);
            const cg::WeightedGraph g = cg::graph_from_json(j);
            const cg::MetricAssignment metric = metric_from_flags(g, cv_recipe, cv_metric_file);
            const cg::Orientation orientation = cg::sphere_orientation(g, cv_root);
            cg::Subset set;
            if (cv_set == "all") {
                set = cg::full_vertex_set(g);
            } else if (cv_set == "interior") {
                set = cg::interior(cg::family_graph_from_json(j));
            } else {
                set = parse_subset(cv_set);
            }
            const cg::CurvatureField field = cg::curvature(g, metric, orientation, set);
            std::ostringstream os;
            cg::write_curvature_csv(os, g, orientation, field, 0);
            cg::save_text_file(cv_output, os.str());
            if (!cv_orientation_out.empty())
                write_json(cv_orientation_out, cg::orientation_to_json(g, orientation));
            std::cout << "k_lower = " << field.k_lower << "\n";
        } else if (cmd_growth->parsed()) {
            const json j = cg::load_json_file(gr_input);
            const cg::WeightedGraph g = cg::graph_from_json(j);
            const cg::MetricAssignment metric = metric_from_flags(g, gr_recipe, gr_metric_file);
            cg::Subset centers;
            if (gr_centers == "root") {
                centers = {0};
            } else if (gr_centers == "all") {
                centers = cg::full_vertex_set(g);
            } else {
                centers = parse_subset(gr_centers);
            }
            const cg::GrowthEstimate estimate =
                cg::volume_growth(g, metric, centers, parse_radii(gr_radii));
            std::ostringstream os;
            cg::write_growth_csv(os, estimate, 0);
            cg::save_text_file(gr_output, os.str());
            std::cout << "mu_hat = " << estimate.mu_hat << "\n";
        } else if (cmd_pot->parsed()) {
            const cg::WeightedGraph g = cg::graph_from_json(cg::load_json_file(pt_input));
            const cg::MetricAssignment metric =
                cg::build_metric(g, cg::recipe_from_string(pt_recipe));
            const std::vector<double> delta = cg::adapt_delta(g, metric);
            const cg::DoubledGraph dg = cg::double_graph(g, metric, delta);
            json out = cg::doubled_graph_to_json(dg);
            out["form_identity"] = cg::verify_potential_form_identity(dg, pt_trials, pt_seed).to_json();
            out["seed"] = pt_seed;
            write_json(pt_output, out);
            std::cout << "wrote " << pt_output << "\n";
        } else if (cmd_verify->parsed()) {
            std::vector<cg::SuiteResult> results;
            if (vf_suite == "all") {
                results = cg::run_all_suites(vf_seed);
            } else if (vf_suite == "determinism") {
                results.push_back(cg::run_suite_determinism(vf_seed));
            } else {
                bool found = false;
                for (const auto& [name, runner] : cg::suite_registry())
                    if (name == vf_suite) {
                        results.push_back(runner(vf_seed));
                        found = true;
                    }
                if (!found) throw cg::InputError("unknown suite: " + vf_suite);
            }
            json report = cg::suites_report(results, vf_seed);
            report["timestamp"] = iso_timestamp();
            if (!vf_output.empty()) write_json(vf_output, report);
            bool ok = true;
            for (const auto& s : results) {
                std::cout << (s.passed() ? "PASS" : "FAIL") << " " << s.name << " ("
                          << s.records.size() << " records)\n";
                ok = ok && s.passed();
            }
            if (!ok) return 1;
        }
    } catch (const cg::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cg::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const cg::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const cg::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
