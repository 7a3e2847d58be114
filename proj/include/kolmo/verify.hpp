#pragma once

// Named self-checks shared by the verify-all and hankel-check commands.

#include <string>
#include <vector>

namespace kolmo::verify {

enum class Level { exact, full };

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

/// exact: rational identities only. full: adds floating-point kernels,
/// SIMD equivalence and a small Monte Carlo check.
std::vector<CheckResult> run_suites(Level level);

/// Invariants of the Hankel system of size N, including agreement with the
/// Legendre-form covariance on the grid {0, 1/8, ..., 1}.
std::vector<CheckResult> hankel_checks(int N);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace kolmo::verify
