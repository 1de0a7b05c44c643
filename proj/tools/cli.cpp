#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ivsolve/bench.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/parser.hpp"
#include "ivsolve/selfcheck.hpp"
#include "ivsolve/solver.hpp"

namespace ivsolve {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitBudget = 2;

void write_output(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + path + "'");
    f << content;
}

std::optional<SystemModel> load_model(const std::string& spec_name, int n, std::ostream& err) {
    std::ifstream f(spec_name);
    if (f) {
        std::stringstream buf;
        buf << f.rdbuf();
        std::string stem = spec_name;
        auto slash = stem.find_last_of("/\\");
        if (slash != std::string::npos) stem = stem.substr(slash + 1);
        auto dot = stem.rfind('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        return parse_system(buf.str(), stem);
    }
    auto m = builtin_model(spec_name, n);
    if (!m) err << "error: unknown model '" << spec_name << "' (not a file or built-in)\n";
    return m;
}

std::uint64_t max_boxes_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("IVSOLVE_MAX_BOXES");
    if (!env) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) return fallback;
    return static_cast<std::uint64_t>(v);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"validated interval enclosure of steady states of uncertain nonlinear systems"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run one solver on a model and write a report");
    std::string model_name, method_str = "bisection", format = "csv", out_path;
    int model_n = 2;
    double eps = 1e-3;
    int grid_m = 0, nit = 100;
    std::uint64_t seed = 0;
    bool emit_boxes = false;
    solve_cmd->add_option("--model", model_name, "built-in model name (hill, wta, ...) or DSL file")
        ->required();
    solve_cmd->add_option("--n", model_n, "dimension for built-in model families");
    solve_cmd->add_option("--method", method_str,
                          "bisection | subdivision | icp | newton | krawczyk");
    solve_cmd->add_option("--eps", eps, "tolerance epsilon");
    solve_cmd->add_option("--m", grid_m, "grid subdivisions per dimension");
    auto* nit_opt = solve_cmd->add_option("--nit", nit, "inner-iteration cap");
    solve_cmd->add_option("--l", nit, "alias of --nit (contractor iteration cap)")
        ->excludes(nit_opt);
    solve_cmd->add_option("--seed", seed, "seed echoed into the report");
    solve_cmd->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    solve_cmd->add_option("--out", out_path, "output path (default: stdout)");
    solve_cmd->add_flag("--boxes", emit_boxes, "include retained boxes in JSON output");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a named reproduction suite");
    std::string suite_name, bench_format = "csv", bench_out;
    bool allow_long = false;
    int reps = 1;
    bench_cmd->add_option("suite", suite_name, "table4 | table5 | table6 | table7 | table8 | table9")
        ->required();
    bench_cmd->add_flag("--allow-long", allow_long, "enable the n=10 suites (table6, table9)");
    bench_cmd->add_option("--reps", reps, "timing repetitions (median, one warm-up)");
    bench_cmd->add_option("--format", bench_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("--out", bench_out, "output path (default: stdout)");

    // models
    auto* models_cmd = app.add_subcommand("models", "list built-in models or emit one as DSL text");
    std::string emit_name, models_out;
    int emit_n = 2;
    models_cmd->add_option("--emit", emit_name, "model to emit in the text format");
    models_cmd->add_option("--n", emit_n, "dimension for built-in model families");
    models_cmd->add_option("--out", models_out, "output path (default: stdout)");

    // check
    auto* check_cmd = app.add_subcommand("check", "run the fast invariant battery");
    std::uint64_t check_seed = 1;
    bool inject_bug = false;
    check_cmd->add_option("--seed", check_seed, "battery seed");
    check_cmd->add_flag("--inject-rounding-bug", inject_bug)->group(""); // test fixture, hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (*solve_cmd) {
            auto method = method_from_name(method_str);
            if (!method) {
                err << "error: unknown method '" << method_str << "'\n";
                return kExitInputError;
            }
            auto model = load_model(model_name, model_n, err);
            if (!model) return kExitInputError;

            SolverConfig cfg;
            cfg.method = *method;
            cfg.epsilon = eps;
            cfg.m = grid_m;
            cfg.n_it = nit;
            cfg.seed = seed;
            cfg.max_boxes = max_boxes_from_env(cfg.max_boxes);
            RunReport rep = solve(*model, cfg);

            write_output(format == "json" ? report_to_json(rep, emit_boxes) : report_to_csv(rep),
                         out_path, out);
            return rep.budget_exceeded ? kExitBudget : kExitOk;
        }

        if (*bench_cmd) {
            BenchSuite suite = make_suite(suite_name, allow_long);
            suite.repetitions = reps;
            for (auto& cell : suite.cells)
                cell.config.max_boxes = max_boxes_from_env(cell.config.max_boxes);
            SuiteResult result = run_suite(suite);
            write_output(bench_format == "json" ? suite_to_json(result) : suite_to_csv(result),
                         bench_out, out);
            return result.any_budget_exceeded() ? kExitBudget : kExitOk;
        }

        if (*models_cmd) {
            if (emit_name.empty()) {
                std::ostringstream os;
                for (const auto& name : builtin_model_names()) os << name << "\n";
                write_output(os.str(), models_out, out);
                return kExitOk;
            }
            auto model = builtin_model(emit_name, emit_n);
            if (!model) {
                err << "error: unknown built-in model '" << emit_name << "'\n";
                return kExitInputError;
            }
            write_output(print_system(*model), models_out, out);
            return kExitOk;
        }

        if (*check_cmd) {
            CheckOptions opts;
            opts.seed = check_seed;
            opts.inject_rounding_bug = inject_bug;
            CheckResult result = run_selfcheck(opts);
            for (const auto& item : result.items) {
                out << (item.passed ? "PASS " : "FAIL ") << item.name;
                if (!item.passed && !item.detail.empty()) out << ": " << item.detail;
                out << "\n";
            }
            out << (result.all_passed() ? "all checks passed\n" : "checks FAILED\n");
            return result.all_passed() ? kExitOk : kExitInputError;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace ivsolve
