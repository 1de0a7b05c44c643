#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ivsolve/bench.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/parser.hpp"
#include "ivsolve/selfcheck.hpp"
#include "support.hpp"

using namespace ivsolve;
using ivtest::Rng;

namespace {

// Rebuild an expression with rotated state/parameter indices.
ExprPtr rotate_indices(const ExprPtr& e, int n_states, int n_alpha) {
    switch (e->kind) {
        case ExprKind::constant: return e;
        case ExprKind::state_var: return Expr::state((e->index + 1) % n_states);
        case ExprKind::param_var:
            return e->index < n_alpha ? Expr::param((e->index + 1) % n_alpha) : e;
        case ExprKind::neg: return Expr::make_neg(rotate_indices(e->left, n_states, n_alpha));
        case ExprKind::int_pow:
            return Expr::make_pow(rotate_indices(e->left, n_states, n_alpha), e->exponent);
        case ExprKind::add:
            return Expr::make_add(rotate_indices(e->left, n_states, n_alpha),
                                  rotate_indices(e->right, n_states, n_alpha));
        case ExprKind::sub:
            return Expr::make_sub(rotate_indices(e->left, n_states, n_alpha),
                                  rotate_indices(e->right, n_states, n_alpha));
        case ExprKind::mul:
            return Expr::make_mul(rotate_indices(e->left, n_states, n_alpha),
                                  rotate_indices(e->right, n_states, n_alpha));
        case ExprKind::div:
            return Expr::make_div(rotate_indices(e->left, n_states, n_alpha),
                                  rotate_indices(e->right, n_states, n_alpha));
    }
    throw Error("corrupt expression node");
}

} // namespace

TEST_CASE("hill network shape and values") {
    SystemModel m = hill_network(2);
    CHECK(m.n == 2);
    CHECK(m.p == 3);
    CHECK(m.x0.volume() == 100.0);
    CHECK(m.u[0].same_as(Interval(3.8, 4.2)));
    CHECK(m.u[2].same_as(Interval(0.95, 1.05)));

    // f1 at x = (1,1), alpha = (4,4), gamma = 1: 0.5 + 4/2 - 1 = 1.5
    CHECK(eval_real(m.equations[0], {1.0, 1.0}, {4.0, 4.0, 1.0}) == 1.5);
}

TEST_CASE("hill ring is cyclic-shift symmetric") {
    for (int n : {2, 3, 5}) {
        SystemModel m = hill_network(n);
        for (int i = 0; i < n; ++i) {
            ExprPtr rotated = rotate_indices(m.equations[static_cast<std::size_t>(i)], n, n);
            CHECK(structurally_equal(rotated, m.equations[static_cast<std::size_t>((i + 1) % n)]));
        }
    }
}

TEST_CASE("symmetric parameters collapse the diagonal") {
    SystemModel m = hill_network(4);
    std::vector<double> u(5, 4.0);
    u[4] = 1.0;
    for (double s : {0.2, 0.9, 1.5, 4.3, 7.7}) {
        std::vector<double> x(4, s);
        auto f = eval_system_real(m, x, u);
        for (int i = 1; i < 4; ++i)
            CHECK(f[static_cast<std::size_t>(i)] == doctest::Approx(f[0]).epsilon(1e-14));
    }
}

TEST_CASE("wta network shape and parameter intervals") {
    SystemModel m = wta_network(2);
    CHECK(m.n == 2);
    CHECK(m.p == 8);
    CHECK(m.x0.same_as(Box(2, Interval(0.0, 2.0))));
    CHECK(m.u[0].same_as(Interval(1.98, 2.02)));   // D_tot
    CHECK(m.u[7].same_as(Interval(0.99, 1.01)));   // K_A
    CHECK(m.u[6].same_as(Interval(0.00198, 0.00202)));
}

TEST_CASE("wta production is positive at the origin and nonnegative on X0") {
    Rng rng(103);
    for (int n : {1, 2, 3}) {
        SystemModel m = wta_network(n);
        std::vector<double> u = m.u.midpoint();
        std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
        auto f0 = eval_system_real(m, zero, u);
        for (double v : f0) CHECK(v > 0.0); // degradation vanishes at x = 0

        for (int t = 0; t < 200; ++t) {
            auto x = ivtest::random_point_in(rng, m.x0);
            auto f = eval_system_real(m, x, u);
            double load_d = 0.0;
            for (double xi : x) load_d += xi;
            for (int i = 0; i < n; ++i) {
                // production = f + k_d_eff x_i / (1 + L_d) must be nonnegative
                double degr = u[6] * x[static_cast<std::size_t>(i)] / (1.0 + load_d);
                CHECK(f[static_cast<std::size_t>(i)] + degr >= 0.0);
            }
        }
    }
}

TEST_CASE("known-root systems really have those roots") {
    for (const auto& sys : known_root_suite()) {
        REQUIRE(!sys.roots.empty());
        std::vector<double> u = sys.model.p > 0 ? sys.model.u.midpoint() : std::vector<double>{};
        for (const auto& root : sys.roots) {
            CHECK(sys.model.x0.contains_point(root));
            for (const auto& v : eval_system_real(sys.model, root, u))
                CHECK(std::fabs(v) < 1e-9);
        }
    }
}

TEST_CASE("multistart oracle finds the analytic roots") {
    for (const auto& sys : known_root_suite()) {
        std::vector<double> u = sys.model.p > 0 ? sys.model.u.midpoint() : std::vector<double>{};
        auto found = find_roots_multistart(sys.model, u, 800, 11);
        REQUIRE(found.size() == sys.roots.size());
        for (const auto& root : sys.roots) {
            bool hit = false;
            for (const auto& f : found) {
                double d = 0.0;
                for (std::size_t i = 0; i < f.size(); ++i)
                    d = std::max(d, std::fabs(f[i] - root[i]));
                hit = hit || d < 1e-8;
            }
            CHECK(hit);
        }
    }
}

TEST_CASE("builtin lookup") {
    CHECK(builtin_model("hill", 3).has_value());
    CHECK(builtin_model("wta", 1).has_value());
    CHECK(builtin_model("sqrt2", 0).has_value());
    CHECK(!builtin_model("nope", 2).has_value());
    auto names = builtin_model_names();
    CHECK(names.size() == 6);
}

TEST_CASE("workload predictor instantiates the method formulas") {
    CostModelInputs in;
    in.method = Method::subdivision_filter;
    in.n = 2;
    in.m = 100;
    in.k = 3;
    CHECK(predict_workload(in) == 10000.0 * 3.0);

    in.method = Method::bisection;
    in.vol_x0 = 100.0;
    in.epsilon = 1.0;
    CHECK(predict_workload(in) == (3.0 + 2.0) * 100.0);

    in.method = Method::newton;
    in.n = 1;
    in.n_it = 1;
    in.vol_x0 = 2.0;
    in.epsilon = 0.5;
    in.k = 4;
    // (C_F + C_J + C_Jinv) Vol/eps = (4 + 4 + 1) * 4
    CHECK(predict_workload(in) == 9.0 * 4.0);

    in.method = Method::krawczyk;
    CHECK(predict_workload(in) == 9.0 * 4.0); // n=1: real and interval inverse coincide

    CostModelInputs missing;
    missing.method = Method::subdivision_filter;
    CHECK_THROWS_AS(predict_workload(missing), MissingParameterError);
    missing.method = Method::bisection;
    CHECK_THROWS_AS(predict_workload(missing), MissingParameterError);
}

TEST_CASE("factorial growth rows follow the recurrence") {
    auto rows = factorial_growth_check(7, 42);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].expected == 0);
    CHECK(rows[1].expected == 2);
    CHECK(rows[3].expected == 40);
    for (const auto& r : rows) CHECK(r.measured_mul_calls == r.expected);
    // ratio n=7 to n=6 is close to the dimension
    double ratio = static_cast<double>(rows[6].measured_mul_calls) /
                   static_cast<double>(rows[5].measured_mul_calls);
    CHECK(ratio > 6.9);
    CHECK(ratio < 7.1);
    CHECK_THROWS_AS(factorial_growth_check(8, 1), DimensionTooLargeError);
}

TEST_CASE("suite construction") {
    BenchSuite t4 = make_suite("table4", false);
    CHECK(t4.cells.size() == 10);
    CHECK(t4.cells[0].model.name == "hill_n2");
    BenchSuite t7 = make_suite("table7", false);
    CHECK(t7.cells.size() == 5);
    CHECK_THROWS_AS(make_suite("table9", false), Error);
    CHECK_THROWS_AS(make_suite("tableX", true), Error);
    CHECK(suite_names().size() == 6);

    // empty suite runs to an empty result
    BenchSuite empty;
    empty.name = "empty";
    CHECK(run_suite(empty).cells.empty());
}

TEST_CASE("suite reports are deterministic and within the workload bound") {
    BenchSuite s;
    s.name = "mini";
    SystemModel hill = hill_network(2);
    SolverConfig grid;
    grid.method = Method::subdivision_filter;
    grid.m = 25;
    s.cells.push_back({"subdivision", hill, grid, -1.0, -1.0});
    SolverConfig icp;
    icp.method = Method::icp;
    icp.m = 10;
    icp.n_it = 3;
    icp.epsilon = 1e-3;
    s.cells.push_back({"icp", hill, icp, -1.0, -1.0});

    SuiteResult a = run_suite(s);
    SuiteResult b = run_suite(s);
    REQUIRE(a.cells.size() == 2);

    // grid methods stay within the audit factor of the worst-case prediction
    for (const auto& cell : a.cells) {
        CHECK(cell.measured_ops <= 4.0 * cell.predicted);
        CHECK(cell.report.n_proc > 0);
    }

    std::string csv_a = suite_to_csv(a);
    std::string csv_b = suite_to_csv(b);
    auto strip_wall = [](const std::string& csv) {
        std::string out;
        for (std::size_t pos = 0; pos < csv.size();) {
            std::size_t nl = csv.find('\n', pos);
            std::string line = csv.substr(pos, nl - pos);
            out += line.substr(0, line.rfind(','));
            out += '\n';
            pos = nl + 1;
        }
        return out;
    };
    CHECK(strip_wall(csv_a) == strip_wall(csv_b));
}

TEST_CASE("suite repetitions keep counts fixed and time the median run") {
    BenchSuite s;
    s.name = "reps";
    s.repetitions = 3;
    SolverConfig cfg;
    cfg.method = Method::subdivision_filter;
    cfg.m = 5;
    s.cells.push_back({"cell", hill_network(2), cfg, -1.0, -1.0});
    SuiteResult r = run_suite(s);
    REQUIRE(r.cells.size() == 1);
    CHECK(r.cells[0].report.n_proc == 25);
    CHECK(r.cells[0].median_wall_s > 0.0);
}

TEST_CASE("csv schema is stable") {
    std::string header = csv_header();
    CHECK(header ==
          "suite,cell,method,model,n,setting,N_proc,N_keep,avg_iter,adds,subs,muls,divs,"
          "comparisons,F_evals,J_evals,inversions,contractor_calls,ext_div_hulls,"
          "predicted_work,measured_ops,work_ratio,ref_N_proc,ref_N_keep,proc_vs_ref,"
          "keep_vs_ref,budget_exceeded,wall_time_s\n");
    // wall time is the last column so determinism checks can strip it
    CHECK(header.rfind("wall_time_s\n") == header.size() - 12);
}
