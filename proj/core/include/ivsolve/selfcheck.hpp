#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ivsolve/model.hpp"

namespace ivsolve {

// Fast invariant battery behind the `check` CLI command: containment
// sampling per interval operation, natural-extension isotonicity and range
// enclosure, the Laplace multiplication-count recurrence, and solver
// soundness on the known-root systems.
struct CheckOptions {
    std::uint64_t seed = 1;
    // Test fixture: shrink sampled operation results by one ulp per side so
    // the containment battery must fail. Never used outside tests.
    bool inject_rounding_bug = false;
};

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckResult {
    std::vector<CheckItem> items;
    bool all_passed() const {
        for (const auto& i : items)
            if (!i.passed) return false;
        return true;
    }
};

CheckResult run_selfcheck(const CheckOptions& opts);

// Multi-start damped real-Newton root finder used as the independent
// soundness oracle. Returns deduplicated roots inside m.x0 with
// max |f_i| < residual_tol at the fixed parameter point u.
std::vector<std::vector<double>> find_roots_multistart(const SystemModel& m,
                                                       const std::vector<double>& u, int starts,
                                                       std::uint64_t seed,
                                                       double residual_tol = 1e-12);

// Parameter sample points for soundness sweeps: midpoint plus all corners
// when 2^p <= max_corners, otherwise midpoint plus per-axis endpoint sweeps.
std::vector<std::vector<double>> parameter_samples(const Box& u, std::size_t max_corners = 64);

// True when x lies in (or within slack of) one of the boxes.
bool point_in_union(const std::vector<Box>& boxes, const std::vector<double>& x,
                    double slack = 1e-9);

} // namespace ivsolve
