#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ivsolve/solver.hpp"

namespace ivsolve {

// Inputs of the worst-case workload predictor. Costs are in elementary-op
// units with c the cost of one scalar interval operation (calibrated to 1
// counter unit); k is the operation count of one full system evaluation, so
// C_F = c k, C_J = c k n^2, and the interval/real inverse terms are c n^3.
struct CostModelInputs {
    Method method = Method::bisection;
    int n = 0;
    double vol_x0 = 0.0;
    double epsilon = 0.0;
    int m = 0;
    int n_it = 0;
    double c = 1.0;
    double k = 0.0;
};

// Evaluates the worst-case workload formula for the method; an upper-bound
// scale, not a runtime. Throws MissingParameterError when a needed field is
// absent.
double predict_workload(const CostModelInputs& in);

CostModelInputs cost_inputs_for(const SystemModel& model, const SolverConfig& cfg);

struct SuiteCell {
    std::string label;
    SystemModel model;
    SolverConfig config;
    double ref_n_proc = -1.0; // reference box counts for this configuration; -1 = none
    double ref_n_keep = -1.0;
};

struct BenchSuite {
    std::string name;
    int repetitions = 1; // timing repetitions; one extra warm-up run when > 1
    std::vector<SuiteCell> cells;
};

struct CellResult {
    std::string label;
    RunReport report;
    double predicted = 0.0;
    double measured_ops = 0.0; // counters.interval_op_calls()
    double work_ratio = 0.0;   // measured / predicted
    double ref_n_proc = -1.0;
    double ref_n_keep = -1.0;
    double median_wall_s = 0.0;
};

struct SuiteResult {
    std::string name;
    std::vector<CellResult> cells;
    bool any_budget_exceeded() const {
        for (const auto& c : cells)
            if (c.report.budget_exceeded) return true;
        return false;
    }
};

// Runs every cell sequentially and deterministically; a cell that exceeds
// its box budget is flagged but does not abort the suite.
SuiteResult run_suite(const BenchSuite& suite);

// det_laplace interval-multiplication counts against M(n) = n (M(n-1) + 1).
struct FactorialGrowthRow {
    int n = 0;
    std::uint64_t measured_mul_calls = 0;
    std::uint64_t expected = 0;
};
std::vector<FactorialGrowthRow> factorial_growth_check(int max_n, std::uint64_t seed);

// Named reproduction suites (table4..table9). The long n=10 suites require
// allow_long.
BenchSuite make_suite(const std::string& name, bool allow_long);
std::vector<std::string> suite_names();

// CSV / JSON report writers. The CSV column order is fixed (see README);
// wall_time_s is always the last column.
std::string csv_header();
std::string suite_to_csv(const SuiteResult& r);
std::string report_to_csv(const RunReport& r);
std::string suite_to_json(const SuiteResult& r);
std::string report_to_json(const RunReport& r, bool include_boxes);

} // namespace ivsolve
