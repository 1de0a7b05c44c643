#include "ivsolve/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ivsolve/linalg.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/parser.hpp"

namespace ivsolve {

namespace {

double boxes_to_tolerance(const CostModelInputs& in) {
    return in.vol_x0 / std::pow(in.epsilon, in.n);
}

} // namespace

double predict_workload(const CostModelInputs& in) {
    const double cf = in.c * in.k;
    const double cj = in.c * in.k * in.n * in.n;
    const double cn3 = in.c * in.n * in.n * in.n;
    switch (in.method) {
        case Method::bisection:
            if (in.epsilon <= 0 || in.vol_x0 <= 0)
                throw MissingParameterError("bisection prediction needs epsilon and Vol(X0)");
            return (cf + in.n) * boxes_to_tolerance(in);
        case Method::subdivision_filter:
            if (in.m < 1) throw MissingParameterError("subdivision prediction needs m");
            return std::pow(in.m, in.n) * cf;
        case Method::icp:
            if (in.m < 1 || in.n_it < 1)
                throw MissingParameterError("icp prediction needs m and the iteration cap");
            return std::pow(in.m, in.n) * in.n_it * (cf + in.n);
        case Method::newton:
            if (in.epsilon <= 0 || in.vol_x0 <= 0 || in.n_it < 1)
                throw MissingParameterError(
                    "newton prediction needs epsilon, Vol(X0) and the iteration cap");
            return in.n_it * (cf + cj + cn3) * boxes_to_tolerance(in);
        case Method::krawczyk:
            if (in.epsilon <= 0 || in.vol_x0 <= 0 || in.n_it < 1)
                throw MissingParameterError(
                    "krawczyk prediction needs epsilon, Vol(X0) and the iteration cap");
            return in.n_it * (cf + cj + in.n * in.n * in.n) * boxes_to_tolerance(in);
    }
    throw Error("unknown method");
}

CostModelInputs cost_inputs_for(const SystemModel& model, const SolverConfig& cfg) {
    CostModelInputs in;
    in.method = cfg.method;
    in.n = model.n;
    in.vol_x0 = model.x0.volume();
    in.epsilon = cfg.epsilon;
    in.m = cfg.m;
    in.n_it = cfg.n_it;
    in.c = 1.0;
    double k = 0.0;
    for (const auto& eq : model.equations) k += op_count(eq);
    in.k = k;
    return in;
}

SuiteResult run_suite(const BenchSuite& suite) {
    SuiteResult out;
    out.name = suite.name;
    for (const auto& cell : suite.cells) {
        CellResult cr;
        cr.label = cell.label;
        cr.ref_n_proc = cell.ref_n_proc;
        cr.ref_n_keep = cell.ref_n_keep;

        std::vector<double> times;
        int reps = std::max(1, suite.repetitions);
        if (reps > 1) (void)solve(cell.model, cell.config); // warm-up, not reported
        for (int r = 0; r < reps; ++r) {
            cr.report = solve(cell.model, cell.config);
            times.push_back(cr.report.wall_time_s);
        }
        std::sort(times.begin(), times.end());
        cr.median_wall_s = times[times.size() / 2];

        cr.predicted = predict_workload(cost_inputs_for(cell.model, cell.config));
        cr.measured_ops = cr.report.counters.interval_op_calls();
        cr.work_ratio = cr.predicted > 0 ? cr.measured_ops / cr.predicted : 0.0;
        out.cells.push_back(std::move(cr));
    }
    return out;
}

std::vector<FactorialGrowthRow> factorial_growth_check(int max_n, std::uint64_t seed) {
    if (max_n > 7) throw DimensionTooLargeError("factorial growth check capped at n = 7");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<FactorialGrowthRow> rows;
    std::uint64_t expected = 0;
    for (int n = 1; n <= max_n; ++n) {
        if (n > 1) expected = static_cast<std::uint64_t>(n) * (expected + 1);
        IntervalMatrix a(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double lo = dist(rng), hi = dist(rng);
                if (lo > hi) std::swap(lo, hi);
                a.at(i, j) = Interval(lo, hi);
            }
        }
        OpCounters c;
        det_laplace(a, c);
        rows.push_back({n, c.muls / 4, expected});
    }
    return rows;
}

namespace {

SolverConfig cfg_eps(Method method, double eps, int n_it = 100) {
    SolverConfig c;
    c.method = method;
    c.epsilon = eps;
    c.n_it = n_it;
    c.store_retained = false; // suites report counts, not boxes
    return c;
}

SolverConfig cfg_grid(Method method, int m, int n_it = 100, double eps = 1e-3) {
    SolverConfig c;
    c.method = method;
    c.m = m;
    c.n_it = n_it;
    c.epsilon = eps;
    c.store_retained = false;
    return c;
}

void add_cell(BenchSuite& s, std::string label, SystemModel model, SolverConfig cfg,
              double ref_proc = -1.0, double ref_keep = -1.0) {
    s.cells.push_back({std::move(label), std::move(model), cfg, ref_proc, ref_keep});
}

BenchSuite suite_table4() {
    BenchSuite s;
    s.name = "table4";
    SystemModel v1 = hill_network(2);
    SystemModel v2 = with_domain(v1, Box(2, Interval(0.0, 20.0)));
    add_cell(s, "bisection/V1", v1, cfg_eps(Method::bisection, 1e-3), 485497, 235585);
    add_cell(s, "subdivision/V1", v1, cfg_grid(Method::subdivision_filter, 100), 10000, 43);
    add_cell(s, "icp/V1", v1, cfg_grid(Method::icp, 50, 5), 2500, 11);
    add_cell(s, "newton/V1", v1, cfg_eps(Method::newton, 1e-3), 103, 5);
    add_cell(s, "krawczyk/V1", v1, cfg_eps(Method::krawczyk, 1e-3), 103, 5);
    add_cell(s, "bisection/V2", v2, cfg_eps(Method::bisection, 1e-3), 494709, 240289);
    add_cell(s, "subdivision/V2", v2, cfg_grid(Method::subdivision_filter, 100), 10000, 13);
    add_cell(s, "icp/V2", v2, cfg_grid(Method::icp, 50, 5), 2500, 7);
    add_cell(s, "newton/V2", v2, cfg_eps(Method::newton, 1e-3), 119, 7);
    add_cell(s, "krawczyk/V2", v2, cfg_eps(Method::krawczyk, 1e-3), 119, 7);
    return s;
}

BenchSuite suite_table5() {
    BenchSuite s;
    s.name = "table5";
    SystemModel m = hill_network(5);
    add_cell(s, "bisection", m, cfg_eps(Method::bisection, 1e-2), 13771, 3774);
    add_cell(s, "subdivision", m, cfg_grid(Method::subdivision_filter, 5), 3125, 31);
    add_cell(s, "icp", m, cfg_grid(Method::icp, 5, 5, 1e-2), 3125, 1);
    add_cell(s, "newton", m, cfg_eps(Method::newton, 1e-2), 1361, 1);
    add_cell(s, "krawczyk", m, cfg_eps(Method::krawczyk, 1e-2), 1361, 1);
    return s;
}

BenchSuite suite_table6() {
    BenchSuite s;
    s.name = "table6";
    SystemModel m = hill_network(10);
    add_cell(s, "bisection", m, cfg_eps(Method::bisection, 1e-1), 5749985, 322103);
    add_cell(s, "subdivision", m, cfg_grid(Method::subdivision_filter, 5), 9765625, 1025);
    add_cell(s, "icp", m, cfg_grid(Method::icp, 5, 5, 1e-1), 9765625, 3);
    add_cell(s, "newton", m, cfg_eps(Method::newton, 1e-2), 330277, 50);
    add_cell(s, "krawczyk", m, cfg_eps(Method::krawczyk, 1e-2), 330277, 3);
    return s;
}

BenchSuite suite_table7() {
    BenchSuite s;
    s.name = "table7";
    SystemModel m = wta_network(2);
    const double eps = 0.02; // 1e-2 * min component width of [0,2]^2
    add_cell(s, "bisection", m, cfg_eps(Method::bisection, eps), 123, 9);
    add_cell(s, "subdivision", m, cfg_grid(Method::subdivision_filter, 10), 100, 9);
    add_cell(s, "icp", m, cfg_grid(Method::icp, 5, 5, eps), 25, 3);
    add_cell(s, "newton", m, cfg_eps(Method::newton, eps), 65, 4);
    add_cell(s, "krawczyk", m, cfg_eps(Method::krawczyk, eps), 65, 4);
    return s;
}

BenchSuite suite_table8() {
    BenchSuite s;
    s.name = "table8";
    SystemModel m = wta_network(5);
    const double eps = 0.02;
    add_cell(s, "bisection", m, cfg_eps(Method::bisection, eps), 19458141, 7882977);
    add_cell(s, "subdivision", m, cfg_grid(Method::subdivision_filter, 10), 100000, 323);
    add_cell(s, "icp", m, cfg_grid(Method::icp, 10, 10, eps), 100000, 243);
    add_cell(s, "newton", m, cfg_eps(Method::newton, eps), 19457249, 7882977);
    add_cell(s, "krawczyk", m, cfg_eps(Method::krawczyk, eps), 19457249, 7882977);
    return s;
}

BenchSuite suite_table9() {
    BenchSuite s;
    s.name = "table9";
    SystemModel m = wta_network(10);
    const double eps = 0.2;
    add_cell(s, "bisection", m, cfg_eps(Method::bisection, eps), 87640737, 25887072);
    add_cell(s, "subdivision", m, cfg_grid(Method::subdivision_filter, 5), 9765625, 10449);
    add_cell(s, "icp", m, cfg_grid(Method::icp, 5, 5, eps), 9765625, 1024);
    add_cell(s, "newton", m, cfg_eps(Method::newton, eps), 87640737, 25887072);
    add_cell(s, "krawczyk", m, cfg_eps(Method::krawczyk, eps), 87640737, 25887072);
    return s;
}

} // namespace

BenchSuite make_suite(const std::string& name, bool allow_long) {
    if (name == "table4") return suite_table4();
    if (name == "table5") return suite_table5();
    if (name == "table7") return suite_table7();
    if (name == "table8") return suite_table8();
    if (name == "table6" || name == "table9") {
        if (!allow_long)
            throw Error("suite '" + name + "' runs n=10 instances; pass --allow-long to enable");
        return name == "table6" ? suite_table6() : suite_table9();
    }
    throw Error("unknown suite '" + name + "'");
}

std::vector<std::string> suite_names() {
    return {"table4", "table5", "table6", "table7", "table8", "table9"};
}

namespace {

std::string fmt(double v) { return format_double(v); }

std::string fmt_ref(double v) { return v < 0 ? "" : format_double(v); }

void csv_row(std::ostream& os, const std::string& suite, const std::string& label,
             const RunReport& r, double predicted, double measured, double ratio, double ref_proc,
             double ref_keep) {
    const OpCounters& c = r.counters;
    os << suite << ',' << label << ',' << method_name(r.config.method) << ',' << r.model_name
       << ',' << r.n << ',' << r.config.setting() << ',' << r.n_proc << ',' << r.n_keep << ','
       << fmt(r.avg_iter) << ',' << c.adds << ',' << c.subs << ',' << c.muls << ',' << c.divs
       << ',' << c.comparisons << ',' << c.f_evals << ',' << c.j_evals << ',' << c.inversions
       << ',' << c.contractor_calls << ',' << c.ext_div_hulls << ',' << fmt(predicted) << ','
       << fmt(measured) << ',' << fmt(ratio) << ',' << fmt_ref(ref_proc) << ','
       << fmt_ref(ref_keep) << ','
       << fmt_ref(ref_proc > 0 ? static_cast<double>(r.n_proc) / ref_proc : -1.0) << ','
       << fmt_ref(ref_keep > 0 ? static_cast<double>(r.n_keep) / ref_keep : -1.0) << ','
       << (r.budget_exceeded ? 1 : 0) << ',' << fmt(r.wall_time_s) << '\n';
}

nlohmann::json counters_json(const OpCounters& c) {
    return {{"adds", c.adds},
            {"subs", c.subs},
            {"muls", c.muls},
            {"divs", c.divs},
            {"comparisons", c.comparisons},
            {"F_evals", c.f_evals},
            {"J_evals", c.j_evals},
            {"inversions", c.inversions},
            {"contractor_calls", c.contractor_calls},
            {"ext_div_hulls", c.ext_div_hulls}};
}

nlohmann::json report_json(const RunReport& r, bool include_boxes) {
    nlohmann::json j{{"model", r.model_name},
                     {"n", r.n},
                     {"method", method_name(r.config.method)},
                     {"setting", r.config.setting()},
                     {"config",
                      {{"epsilon", r.config.epsilon},
                       {"m", r.config.m},
                       {"n_it", r.config.n_it},
                       {"max_boxes", r.config.max_boxes},
                       {"seed", r.config.seed}}},
                     {"N_proc", r.n_proc},
                     {"N_keep", r.n_keep},
                     {"avg_iter", r.avg_iter},
                     {"counters", counters_json(r.counters)},
                     {"budget_exceeded", r.budget_exceeded},
                     {"retained_stored", r.retained_stored},
                     {"wall_time_s", r.wall_time_s}};
    if (include_boxes && r.retained_stored) {
        nlohmann::json boxes = nlohmann::json::array();
        for (const auto& b : r.retained) {
            nlohmann::json box = nlohmann::json::array();
            for (std::size_t i = 0; i < b.size(); ++i)
                box.push_back({b[i].lo(), b[i].hi()});
            boxes.push_back(std::move(box));
        }
        j["retained"] = std::move(boxes);
    }
    return j;
}

} // namespace

std::string csv_header() {
    return "suite,cell,method,model,n,setting,N_proc,N_keep,avg_iter,adds,subs,muls,divs,"
           "comparisons,F_evals,J_evals,inversions,contractor_calls,ext_div_hulls,"
           "predicted_work,measured_ops,work_ratio,ref_N_proc,ref_N_keep,proc_vs_ref,"
           "keep_vs_ref,budget_exceeded,wall_time_s\n";
}

std::string suite_to_csv(const SuiteResult& r) {
    std::ostringstream os;
    os << csv_header();
    for (const auto& c : r.cells)
        csv_row(os, r.name, c.label, c.report, c.predicted, c.measured_ops, c.work_ratio,
                c.ref_n_proc, c.ref_n_keep);
    return os.str();
}

std::string report_to_csv(const RunReport& r) {
    std::ostringstream os;
    os << csv_header();
    csv_row(os, "", "", r, 0.0, r.counters.interval_op_calls(), 0.0, -1.0, -1.0);
    return os.str();
}

std::string suite_to_json(const SuiteResult& r) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells) {
        nlohmann::json cell = report_json(c.report, false);
        cell["cell"] = c.label;
        cell["predicted_work"] = c.predicted;
        cell["measured_ops"] = c.measured_ops;
        cell["work_ratio"] = c.work_ratio;
        if (c.ref_n_proc >= 0) {
            cell["ref_N_proc"] = c.ref_n_proc;
            cell["proc_vs_ref"] = static_cast<double>(c.report.n_proc) / c.ref_n_proc;
        }
        if (c.ref_n_keep >= 0) {
            cell["ref_N_keep"] = c.ref_n_keep;
            cell["keep_vs_ref"] = c.ref_n_keep > 0
                                      ? static_cast<double>(c.report.n_keep) / c.ref_n_keep
                                      : 0.0;
        }
        cell["median_wall_s"] = c.median_wall_s;
        cells.push_back(std::move(cell));
    }
    nlohmann::json j{{"schema_version", 1}, {"suite", r.name}, {"cells", std::move(cells)}};
    return j.dump(2) + "\n";
}

std::string report_to_json(const RunReport& r, bool include_boxes) {
    nlohmann::json j = report_json(r, include_boxes);
    j["schema_version"] = 1;
    return j.dump(2) + "\n";
}

} // namespace ivsolve
