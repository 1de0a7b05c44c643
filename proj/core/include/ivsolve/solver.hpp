#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivsolve/contractor.hpp"
#include "ivsolve/model.hpp"

namespace ivsolve {

enum class Method { bisection, subdivision_filter, icp, newton, krawczyk };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

struct SolverConfig {
    Method method = Method::bisection;
    // Tolerance for bisection/newton/krawczyk termination; all inner-loop
    // stagnation tests use epsilon/10.
    double epsilon = 1e-3;
    int m = 0;      // grid subdivisions per dimension (grid methods)
    int n_it = 100; // inner-iteration cap; reported as l for icp
    std::uint64_t max_boxes = 200'000'000;
    std::uint64_t seed = 0;
    bool store_retained = true;

    std::string setting() const; // compact echo, e.g. "eps=0.001" or "m=50 l=5"
};

// Workload record of one solver run. n_proc counts every box on which the
// inclusion (or contraction) test ran; for the fixed-grid methods the X0
// gate evaluation is excluded from both n_proc and the counters, matching
// the convention that the initial domain is not a processed box. Retained
// boxes are sorted lexicographically by lower corners.
struct RunReport {
    std::string model_name;
    int n = 0;
    SolverConfig config;
    std::uint64_t n_proc = 0;
    std::uint64_t n_keep = 0;
    double avg_iter = 0.0;
    std::vector<Box> retained;
    OpCounters counters;
    double wall_time_s = 0.0;
    bool budget_exceeded = false;
    bool retained_stored = true;
};

RunReport solve(const SystemModel& model, const SolverConfig& cfg);

RunReport solve_bisection(const SystemModel& model, const SolverConfig& cfg);
RunReport solve_subdivision_filter(const SystemModel& model, const SolverConfig& cfg);
RunReport solve_icp(const SystemModel& model, const SolverConfig& cfg);
RunReport solve_newton(const SystemModel& model, const SolverConfig& cfg);
RunReport solve_krawczyk(const SystemModel& model, const SolverConfig& cfg);

} // namespace ivsolve
