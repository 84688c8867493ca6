#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace cheegraph {

/// One checked inequality: claim text, both sides, the margin lhs - rhs, and
/// the verdict. `applicable` is false for records whose hypothesis failed
/// (vacuous cases); aggregation ignores those.
struct CertificateRecord {
    std::string claim;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
    bool applicable = true;
    nlohmann::json context = nlohmann::json::object();

    nlohmann::json to_json() const {
        nlohmann::json ctx = context;
        ctx["applicable"] = applicable;
        return {{"claim", claim}, {"lhs", lhs},       {"rhs", rhs},
                {"margin", margin}, {"passed", passed}, {"context", ctx}};
    }
};

inline bool all_passed(const std::vector<CertificateRecord>& records) {
    for (const auto& r : records)
        if (r.applicable && !r.passed) return false;
    return true;
}

}  // namespace cheegraph
