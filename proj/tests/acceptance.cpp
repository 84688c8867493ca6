// Acceptance suite: runs every verification suite at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero when anything fails.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "cheegraph/suites.hpp"

namespace {

constexpr std::uint64_t kSeed = 20240901;

struct Criterion {
    std::string description;
    cheegraph::SuiteRunner runner;
};

}  // namespace

int main() {
    using namespace cheegraph;
    const std::vector<Criterion> criteria = {
        {"Cheeger certification: 200 random graphs, canonical metric, "
         "lambda0 >= alpha^2/2 - 1e-9",
         run_suite_cheeger},
        {"Strong form under m >= n: 100 graphs, natural metric, "
         "lambda0 >= 1 - sqrt(1 - alpha^2) - 1e-9, P3 equality fixture",
         run_suite_strong_form},
        {"Co-area identities: 500 random triples, both formulae to 1e-9 relative",
         run_suite_coarea},
        {"Counterexample fixture: sphere-edge tree ball ratios <= 2^{-(r-1)/2} and "
         "Dirichlet lambda0(B_R) >= 3 - 2 sqrt(2) - 1e-8, nonincreasing",
         run_suite_counterexample},
        {"Curvature bound: tree interiors k_lower = (k-1)/(k+1) exactly with "
         "alpha >= k_lower - 1e-9; antitree k_lower > 0 with all per-set chains",
         run_suite_curvature},
        {"Potentials: 50 pairs, form identity to 1e-12 on 100 functions each, "
         "lambda0 >= alpha_dot^2/2 - 1e-9 on |U| <= 12",
         run_suite_potentials},
        {"Upper-bound chain: 100 graphs, delta Q(1_W) <= |dW| + 1e-9",
         run_suite_upper_bound},
        {"Growth consistency: k in {2,3,4} trees at depth 10, 2 k_lower <= mu_hat + 0.05",
         run_suite_growth},
        {"Determinism: re-running every suite with the same seed is byte-identical",
         run_suite_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        std::string detail;
        try {
            const SuiteResult result = criteria[i].runner(kSeed);
            ok = result.passed();
            int failed = 0;
            int applicable = 0;
            for (const auto& r : result.records) {
                if (!r.applicable) continue;
                ++applicable;
                if (!r.passed) ++failed;
            }
            detail = std::to_string(applicable - failed) + "/" + std::to_string(applicable) +
                     " records";
            if (!ok) {
                for (const auto& r : result.records)
                    if (r.applicable && !r.passed) {
                        detail += "; first failure: " + r.claim +
                                  " (lhs=" + std::to_string(r.lhs) +
                                  ", rhs=" + std::to_string(r.rhs) + ")";
                        break;
                    }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%zu/%zu] %s %s (%s)\n", i + 1, criteria.size(), ok ? "PASS" : "FAIL",
                    criteria[i].description.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
