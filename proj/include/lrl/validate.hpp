#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lrl {

enum class ValidateLevel { quick, full };

// One row of the validation table. `metric` is the measured quantity and
// `bound` what it must stay within; `note` carries context for failures.
struct CheckResult {
    std::string name;
    bool pass = false;
    double metric = 0.0;
    double bound = 0.0;
    double seconds = 0.0;
    std::string note;
};

// Cross-check suite: closed-form path identities, monotonicity scans,
// threshold round trips, density consistency, and simulation-vs-analytic
// KS tests. `quick` keeps trial counts small enough for interactive use;
// `full` runs the figure-scale configurations.
std::vector<CheckResult> run_validation(ValidateLevel level, int threads,
                                        std::uint64_t seed);

}  // namespace lrl
