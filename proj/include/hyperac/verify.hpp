#pragma once

#include <string>
#include <vector>

namespace hyperac {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

/// Built-in self checks: c0 for the quartic well, energy identity residual
/// under refinement, layer certificates for tanh layers and compatibility of
/// the example presets.
std::vector<CheckResult> run_verification();

}  // namespace hyperac
