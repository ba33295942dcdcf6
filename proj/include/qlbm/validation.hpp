#pragma once

#include <string>
#include <vector>

namespace qlbm {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationOptions {
    /// Deliberately perturbs a collision amplitude pair so the suite fails;
    /// exercised by the harness tests.
    bool inject_fault = false;
};

/// Runs every acceptance check and returns one result per check. Checks
/// never throw; an escaped exception marks the check failed with the
/// message as detail.
std::vector<CheckResult> run_acceptance_checks(const ValidationOptions& options = {});

} // namespace qlbm
