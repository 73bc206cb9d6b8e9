#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace screwon::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured residual / drift
    double threshold = 0.0;  // bound it was checked against
    std::string detail;
};

struct Options {
    std::uint64_t seed = 20250809;
    // fault injection for the mutation test: scales the r-matrix constant
    double rmatrix_scale = 1.0;
};

// Runs the full cross-module property suite (brackets, conservation, Lax,
// elliptic identities, classification, action-angle, quantum smoke checks).
std::vector<CheckResult> run_all(const Options& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace screwon::verify
