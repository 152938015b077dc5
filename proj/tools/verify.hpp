#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qbox/core.hpp"

namespace qbox::cli {

struct CheckResult {
    std::string name;
    double measured;   // error or violation count
    double tolerance;  // pass iff measured <= tolerance
    bool passed;
};

struct VerifyOptions {
    WellConfig well;
    std::uint64_t seed = 0;
    /// Multiplies every tolerance; values below 1 tighten the checks (failure-path testing).
    double tolerance_scale = 1.0;
};

/// Runs the invariant suite of all modules with randomized states drawn from `seed`.
std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options);

/// Prints the delta_omega line and one line per check; returns true iff every check passed.
bool report(const VerifyOptions& options, const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace qbox::cli
