// Acceptance suite: one criterion per numbered block, one PASS/FAIL line
// each, nonzero exit when anything fails. Tolerances are pinned in code.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ivsolve/bench.hpp"
#include "ivsolve/linalg.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/parser.hpp"
#include "ivsolve/selfcheck.hpp"
#include "ivsolve/solver.hpp"
#include "support.hpp"

using namespace ivsolve;
using ivtest::Rng;

namespace {

struct Harness {
    bool all_ok = true;
    int total = 13;

    // time_limit_s == 0 means untimed; otherwise exceeding it fails the
    // criterion even when the checks themselves pass.
    void criterion(int id, const std::string& label, double time_limit_s,
                   const std::function<bool(std::string&)>& fn) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && time_limit_s > 0.0 && secs > time_limit_s) {
            ok = false;
            detail += " [time limit " + format_double(time_limit_s) + " s exceeded]";
        }
        std::cout << '[' << std::setw(2) << id << '/' << total << "] "
                  << (ok ? "PASS" : "FAIL") << ' ' << label;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "  (" << std::fixed << std::setprecision(2) << secs << " s)\n"
                  << std::defaultfloat;
        all_ok = all_ok && ok;
    }
};

SolverConfig config(Method method, double eps, int m = 0, int n_it = 100) {
    SolverConfig cfg;
    cfg.method = method;
    cfg.epsilon = eps;
    cfg.m = m;
    cfg.n_it = n_it;
    return cfg;
}

std::string strip_wall_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(','));
        out += '\n';
    }
    return out;
}

// ---- criterion bodies -------------------------------------------------

bool interval_soundness(std::string& detail) {
    Rng rng(2024);
    OpCounters c;
    const int trials = 10000;
    long checked = 0;
    for (int t = 0; t < trials; ++t) {
        Interval a = ivtest::random_interval(rng);
        Interval b = ivtest::random_interval(rng);
        Interval s = add(a, b, c);
        Interval d = sub(a, b, c);
        Interval m = mul(a, b, c);
        Interval cap = intersect(a, b, c);
        ExtendedDiv ed = extended_div(a, b, c);
        Interval bq = ivtest::random_signed_interval(rng, t % 2 == 0);
        Interval q = div(a, bq, c);

        for (double x : ivtest::samples_in(rng, a, 2)) {
            for (double y : ivtest::samples_in(rng, b, 2)) {
                ++checked;
                if (!s.contains(x + y)) return false;
                if (!d.contains(x - y)) return false;
                double p = x * y;
                if (std::isfinite(p) && !m.contains(p)) return false;
                if (y != 0.0 && std::isfinite(x / y) && !ed.contains(x / y)) return false;
                if (a.contains(x) && b.contains(x) && !cap.contains(x)) return false;
            }
            for (double y : ivtest::samples_in(rng, bq, 2)) {
                if (!q.contains(x / y)) return false;
            }
        }
    }
    detail = std::to_string(trials) + " trials/op, " + std::to_string(checked) + " samples";
    return true;
}

bool natural_extension_props(std::string& detail) {
    Rng rng(2025);
    OpCounters c;
    for (int t = 0; t < 1000; ++t) {
        int n = 1 + static_cast<int>(rng() % 3);
        ExprPtr e = ivtest::random_expr(rng, n, 0, 3);
        Box x = ivtest::random_box(rng, static_cast<std::size_t>(n));
        Box z = ivtest::random_subbox(rng, x);
        Box y = ivtest::random_subbox(rng, z);
        Interval fx = eval_interval(e, x, Box(), c);
        Interval fz = eval_interval(e, z, Box(), c);
        Interval fy = eval_interval(e, y, Box(), c);
        if (!fz.contains_interval(fy) || !fx.contains_interval(fz)) {
            detail = "isotonicity violated";
            return false;
        }
        for (int s = 0; s < 10; ++s) {
            auto pt = ivtest::random_point_in(rng, x);
            try {
                double v = eval_real(e, pt, {});
                if (std::isfinite(v) && !fx.contains(v)) {
                    detail = "range enclosure violated";
                    return false;
                }
            } catch (const DivByZeroError&) {
            }
        }
    }
    for (int t = 0; t < 100; ++t) {
        ExprPtr e = ivtest::random_expr(rng, 2, 0, 3);
        Box x = ivtest::random_box(rng, 2);
        Interval fx = eval_interval(e, x, Box(), c);
        double prev = std::numeric_limits<double>::infinity();
        for (int m : {1, 2, 4, 8}) {
            Interval h = Interval::empty();
            for (const auto& cell : subdivide_uniform(x, m))
                h = hull(h, eval_interval(e, cell, Box(), c), c);
            if (!fx.contains_interval(h) || rad(h) > prev * (1.0 + 1e-12)) {
                detail = "subdivision refinement not monotone";
                return false;
            }
            prev = rad(h);
        }
    }
    detail = "1000 isotonicity/range pairs, 100 refinement sweeps";
    return true;
}

bool laplace_growth(std::string& detail) {
    Rng rng(2026);
    std::uint64_t expected = 0;
    for (int n = 1; n <= 7; ++n) {
        if (n > 1) expected = static_cast<std::uint64_t>(n) * (expected + 1);
        IntervalMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = ivtest::random_interval(rng, 2.0);
        OpCounters c;
        det_laplace(a, c);
        if (c.muls != 4 * expected) {
            detail = "Laplace count off at n=" + std::to_string(n);
            return false;
        }
    }

    std::uint64_t prev = 0;
    std::ostringstream ratios;
    for (int n : {4, 8, 16, 32}) {
        IntervalMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = ivtest::uniform(rng, -2.0, 2.0);
                a.at(i, j) = Interval(v - 0.001, v + 0.001);
            }
        OpCounters c;
        (void)det_gauss(a, c);
        if (prev > 0) {
            double ratio = static_cast<double>(c.muls) / static_cast<double>(prev);
            ratios << ' ' << std::setprecision(3) << ratio;
            if (ratio < 6.0 || ratio > 10.0) {
                detail = "Gauss doubling ratio " + std::to_string(ratio) + " outside [6,10]";
                return false;
            }
        }
        prev = c.muls;
    }
    detail = "M(7) exact; Gauss doubling ratios" + ratios.str();
    return true;
}

bool linalg_enclosures(std::string& detail) {
    Rng rng(2027);
    OpCounters c;
    auto det_real = [](const RealMatrix& m) {
        RealMatrix a = m;
        const int n = a.dim();
        double det = 1.0;
        for (int k = 0; k < n; ++k) {
            int best = k;
            for (int i = k + 1; i < n; ++i)
                if (std::fabs(a.at(i, k)) > std::fabs(a.at(best, k))) best = i;
            if (a.at(best, k) == 0.0) return 0.0;
            if (best != k) {
                for (int j = 0; j < n; ++j) std::swap(a.at(best, j), a.at(k, j));
                det = -det;
            }
            det *= a.at(k, k);
            for (int i = k + 1; i < n; ++i) {
                double f = a.at(i, k) / a.at(k, k);
                for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            }
        }
        return det;
    };

    int point_samples = 0;
    while (point_samples < 1000) {
        int n = 2 + static_cast<int>(rng() % 3); // 2..4
        IntervalMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = ivtest::uniform(rng, -2.0, 2.0);
                double w = ivtest::uniform(rng, 0.0, 0.15);
                a.at(i, j) = Interval(v - w, v + w);
            }
        Interval lap = det_laplace(a, c);
        auto gauss = det_gauss(a, c);
        auto inv_g = inverse_gauss(a, c);
        auto inv_k = krawczyk_inverse(a, c);

        for (int s = 0; s < 10; ++s) {
            RealMatrix pt(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    pt.at(i, j) = ivtest::uniform(rng, a.at(i, j).lo(), a.at(i, j).hi());
            ++point_samples;
            double d = det_real(pt);
            if (!lap.contains(d)) {
                detail = "point determinant escaped det_laplace";
                return false;
            }
            if (gauss && !gauss->contains(d)) {
                detail = "point determinant escaped det_gauss";
                return false;
            }
            auto pinv = real_inverse(pt);
            if (!pinv) continue;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (inv_g && !inv_g->at(i, j).contains(pinv->at(i, j))) {
                        detail = "point inverse escaped inverse_gauss";
                        return false;
                    }
                    if (inv_k && !inv_k->at(i, j).contains(pinv->at(i, j))) {
                        detail = "point inverse escaped krawczyk_inverse";
                        return false;
                    }
                }
            }
        }
    }
    detail = std::to_string(point_samples) + " point matrices";
    return true;
}

bool solver_soundness(std::string& detail) {
    Rng rng(2028);
    auto suite = known_root_suite();
    int runs = 0;
    for (int cfg_i = 0; cfg_i < 20; ++cfg_i) {
        double eps = std::pow(10.0, ivtest::uniform(rng, -2.3, -1.0));
        int m = 2 + static_cast<int>(rng() % 9);
        int n_it = 1 + static_cast<int>(rng() % 6);
        for (const auto& sys : suite) {
            for (Method method : {Method::bisection, Method::subdivision_filter, Method::icp,
                                  Method::newton, Method::krawczyk}) {
                RunReport rep = solve(sys.model, config(method, eps, m, n_it));
                ++runs;
                for (const auto& root : sys.roots) {
                    if (!point_in_union(rep.retained, root)) {
                        detail = sys.model.name + "/" + method_name(method) +
                                 " excluded a root at eps=" + format_double(eps);
                        return false;
                    }
                }
            }
        }
    }
    detail = std::to_string(runs) + " runs, zero false exclusions";
    return true;
}

bool grid_identities(std::string& detail) {
    SystemModel hill2 = hill_network(2);
    RunReport sf = solve(hill2, config(Method::subdivision_filter, 0, 100));
    RunReport icp = solve(hill2, config(Method::icp, 1e-3, 50, 5));
    RunReport sf5 = solve(hill_network(5), config(Method::subdivision_filter, 0, 5));
    std::ostringstream os;
    os << "N_proc " << sf.n_proc << "/" << icp.n_proc << "/" << sf5.n_proc;
    detail = os.str();
    return sf.n_proc == 10000 && icp.n_proc == 2500 && sf5.n_proc == 3125;
}

RunReport g_table4_bisection; // shared between criteria 7 and 10

bool table4_reproduction(std::string& detail) {
    SystemModel hill2 = hill_network(2);
    g_table4_bisection = solve(hill2, config(Method::bisection, 1e-3));
    const RunReport& bis = g_table4_bisection;
    RunReport newton = solve(hill2, config(Method::newton, 1e-3));
    RunReport krawczyk = solve(hill2, config(Method::krawczyk, 1e-3));

    std::ostringstream os;
    os << "bisection " << bis.n_proc << "&" << bis.n_keep << ", newton " << newton.n_proc << "&"
       << newton.n_keep << ", krawczyk " << krawczyk.n_proc << "&" << krawczyk.n_keep;
    detail = os.str();

    double proc_ratio = static_cast<double>(bis.n_proc) / 485497.0;
    double keep_ratio = static_cast<double>(bis.n_keep) / 235585.0;
    if (proc_ratio < 0.5 || proc_ratio > 2.0) return false;
    if (keep_ratio < 0.5 || keep_ratio > 2.0) return false;
    if (newton.n_proc > 1000 || krawczyk.n_proc > 1000) return false;
    if (newton.n_proc != krawczyk.n_proc) return false;
    if (newton.n_keep > 20) return false;

    OpCounters c;
    for (const auto& b : bis.retained) {
        if (box_diam(b, c) > 1e-3) return false;
    }
    return true;
}

bool volume_sublinearity(std::string& detail) {
    SystemModel v1 = hill_network(2);
    SystemModel v2 = with_domain(v1, Box(2, Interval(0.0, 20.0)));
    RunReport b1 = solve(v1, config(Method::bisection, 1e-3));
    RunReport b2 = solve(v2, config(Method::bisection, 1e-3));
    RunReport s1 = solve(v1, config(Method::subdivision_filter, 0, 100));
    RunReport s2 = solve(v2, config(Method::subdivision_filter, 0, 100));
    double ratio = static_cast<double>(b2.n_proc) / static_cast<double>(b1.n_proc);
    std::ostringstream os;
    os << "bisection V2/V1 = " << std::setprecision(4) << ratio << ", subdivision keep "
       << s1.n_keep << " -> " << s2.n_keep;
    detail = os.str();
    return ratio <= 1.5 && s2.n_keep <= s1.n_keep;
}

bool hill5_suite(std::string& detail) {
    SystemModel m = hill_network(5);
    RunReport newton = solve(m, config(Method::newton, 1e-2));
    RunReport sf = solve(m, config(Method::subdivision_filter, 0, 5));
    RunReport icp = solve(m, config(Method::icp, 1e-2, 5, 5));
    std::ostringstream os;
    os << "newton " << newton.n_proc << " < subdivision " << sf.n_proc << "; icp keep "
       << icp.n_keep << " <= subdivision keep " << sf.n_keep;
    detail = os.str();
    return newton.n_proc < sf.n_proc && icp.n_keep <= sf.n_keep;
}

bool cost_model_consistency(std::string& detail) {
    SystemModel hill2 = hill_network(2);
    if (g_table4_bisection.n_proc == 0)
        g_table4_bisection = solve(hill2, config(Method::bisection, 1e-3));
    const RunReport& bis = g_table4_bisection;

    double k = 0.0;
    for (const auto& eq : hill2.equations) k += op_count(eq);
    double per_box_pred = k + hill2.n; // c = 1 counter unit per elementary op
    double per_box_measured =
        bis.counters.interval_op_calls() / static_cast<double>(bis.n_proc);
    bool bisection_ok =
        per_box_measured >= per_box_pred / 4.0 && per_box_measured <= per_box_pred * 4.0;

    RunReport sf = solve(hill2, config(Method::subdivision_filter, 0, 100));
    bool f_evals_ok = sf.counters.f_evals == sf.n_proc;

    std::ostringstream os;
    os << "per-box ops " << std::setprecision(4) << per_box_measured << " vs prediction "
       << per_box_pred << "; subdivision F_evals " << sf.counters.f_evals << " == N_proc "
       << sf.n_proc;
    detail = os.str();
    return bisection_ok && f_evals_ok;
}

bool work_bound(std::string& detail) {
    Rng rng(2029);
    auto suite = known_root_suite();
    OpCounters c;
    int checked = 0;
    for (int t = 0; t < 10; ++t) {
        const auto& sys = t % 2 == 0 ? suite[1] : suite[2]; // linear2 (2-D), quad3 (3-D)
        double eps = std::pow(2.0, -(2 + static_cast<int>(rng() % 5)));
        RunReport rep = solve(sys.model, config(Method::bisection, eps));
        double bound = 2.0;
        for (std::size_t i = 0; i < sys.model.x0.size(); ++i)
            bound *= std::ceil(diam(sys.model.x0[i], c) / eps);
        if (static_cast<double>(rep.n_proc) > bound) {
            detail = sys.model.name + ": N_proc " + std::to_string(rep.n_proc) +
                     " exceeded bound " + format_double(bound);
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " dyadic configurations within the tree bound";
    return true;
}

bool wta_properties(std::string& detail) {
    SystemModel m = wta_network(2);
    const double eps = 0.02;

    RunReport sf = solve(m, config(Method::subdivision_filter, 0, 10));
    RunReport icp = solve(m, config(Method::icp, eps, 5, 5));
    if (sf.n_proc != 100 || icp.n_proc != 25) {
        detail = "grid identity violated";
        return false;
    }

    // soundness against the real-Newton oracle at midpoint parameters
    auto roots = find_roots_multistart(m, m.u.midpoint(), 2000, 2030);
    for (Method method : {Method::bisection, Method::subdivision_filter, Method::icp,
                          Method::newton, Method::krawczyk}) {
        RunReport rep = solve(m, config(method, eps, 10, 5));
        for (const auto& root : roots) {
            if (!point_in_union(rep.retained, root)) {
                detail = std::string("oracle root excluded by ") + method_name(method);
                return false;
            }
        }
    }

    RunReport a = solve(m, config(Method::bisection, eps));
    RunReport b = solve(m, config(Method::bisection, eps));
    if (a.n_proc != b.n_proc || a.n_keep != b.n_keep ||
        a.counters.total_real_ops() != b.counters.total_real_ops()) {
        detail = "nondeterministic rerun";
        return false;
    }

    std::ostringstream os;
    os << "grid 100/25, oracle roots inside X0: " << roots.size() << ", bisection "
       << a.n_proc << "&" << a.n_keep;
    detail = os.str();
    return true;
}

bool suite_determinism(std::string& detail) {
    for (const char* name : {"table7", "table4"}) {
        BenchSuite suite = make_suite(name, false);
        std::string a = strip_wall_column(suite_to_csv(run_suite(suite)));
        std::string b = strip_wall_column(suite_to_csv(run_suite(suite)));
        if (a != b) {
            detail = std::string(name) + " differed between runs";
            return false;
        }
    }
    detail = "table7 and table4 byte-identical apart from wall time";
    return true;
}

} // namespace

int main() {
    Harness h;
    h.criterion(1, "interval-op containment soundness", 10.0, interval_soundness);
    h.criterion(2, "natural-extension isotonicity/range/refinement", 0.0, natural_extension_props);
    h.criterion(3, "Laplace factorial growth and cubic Gauss counts", 60.0, laplace_growth);
    h.criterion(4, "interval linear algebra enclosure soundness", 0.0, linalg_enclosures);
    h.criterion(5, "solver soundness on known-root systems", 0.0, solver_soundness);
    h.criterion(6, "grid-count identities", 0.0, grid_identities);
    h.criterion(7, "order-of-magnitude reproduction (ring network, n=2)", 120.0,
                table4_reproduction);
    h.criterion(8, "workload sublinearity in the initial volume", 0.0, volume_sublinearity);
    h.criterion(9, "ring network n=5 qualitative ordering", 120.0, hill5_suite);
    h.criterion(10, "cost-model consistency of measured counters", 0.0, cost_model_consistency);
    h.criterion(11, "bisection tree work bound", 0.0, work_bound);
    h.criterion(12, "winner-take-all property battery", 10.0, wta_properties);
    h.criterion(13, "suite determinism (CSV byte-stable)", 0.0, suite_determinism);

    std::cout << (h.all_ok ? "ACCEPTANCE: all criteria passed\n"
                           : "ACCEPTANCE: at least one criterion FAILED\n");
    return h.all_ok ? 0 : 1;
}
