#include "ivsolve/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ivsolve/linalg.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/rounding.hpp"
#include "ivsolve/solver.hpp"

namespace ivsolve {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Interval random_interval(Rng& rng) {
    double a = uniform(rng, -10.0, 10.0);
    double w = std::exp(uniform(rng, -6.0, 2.0)) - std::exp(-6.0);
    return Interval(a, a + w);
}

Interval shrink_one_ulp(const Interval& r) {
    if (r.is_empty()) return r;
    double lo = rnd::next_up(r.lo());
    double hi = rnd::next_down(r.hi());
    if (lo > hi) return r;
    return Interval(lo, hi);
}

// Sample points of an interval: both endpoints plus interior draws.
std::vector<double> interval_samples(Rng& rng, const Interval& v, int interior) {
    std::vector<double> s{v.lo(), v.hi()};
    for (int i = 0; i < interior; ++i) s.push_back(uniform(rng, v.lo(), v.hi()));
    return s;
}

ExprPtr random_expr(Rng& rng, int n, int p, int depth) {
    std::uniform_int_distribution<int> leaf_pick(0, 2);
    if (depth <= 0) {
        switch (leaf_pick(rng)) {
            case 0: return Expr::constant(uniform(rng, -3.0, 3.0));
            case 1: return Expr::state(static_cast<int>(rng() % static_cast<unsigned>(n)));
            default:
                if (p == 0) return Expr::state(static_cast<int>(rng() % static_cast<unsigned>(n)));
                return Expr::param(static_cast<int>(rng() % static_cast<unsigned>(p)));
        }
    }
    switch (rng() % 8) {
        case 0: return Expr::make_add(random_expr(rng, n, p, depth - 1), random_expr(rng, n, p, depth - 1));
        case 1: return Expr::make_sub(random_expr(rng, n, p, depth - 1), random_expr(rng, n, p, depth - 1));
        case 2:
        case 3: return Expr::make_mul(random_expr(rng, n, p, depth - 1), random_expr(rng, n, p, depth - 1));
        case 4: return Expr::make_div(random_expr(rng, n, p, depth - 1), random_expr(rng, n, p, depth - 1));
        case 5: return Expr::make_neg(random_expr(rng, n, p, depth - 1));
        case 6: return Expr::make_pow(random_expr(rng, n, p, depth - 1),
                                      2 + static_cast<unsigned>(rng() % 3));
        default: return random_expr(rng, n, p, 0);
    }
}

Box random_box(Rng& rng, std::size_t n, double lo = -4.0, double hi = 4.0) {
    std::vector<Interval> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = uniform(rng, lo, hi);
        double b = uniform(rng, lo, hi);
        if (a > b) std::swap(a, b);
        comps.emplace_back(a, b);
    }
    return Box(std::move(comps));
}

// Shrink each component of z to a random sub-interval.
Box random_subbox(Rng& rng, const Box& z) {
    std::vector<Interval> comps;
    comps.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double a = uniform(rng, z[i].lo(), z[i].hi());
        double b = uniform(rng, z[i].lo(), z[i].hi());
        if (a > b) std::swap(a, b);
        comps.emplace_back(a, b);
    }
    return Box(std::move(comps));
}

struct Battery {
    CheckOptions opts;
    CheckResult result;

    void record(const std::string& name, bool passed, const std::string& detail) {
        result.items.push_back({name, passed, passed ? "" : detail});
    }

    void containment(int trials) {
        Rng rng(opts.seed);
        OpCounters c;
        const char* names[] = {"containment-add", "containment-sub", "containment-mul",
                               "containment-div", "containment-extended-div",
                               "containment-intersect"};
        for (int op = 0; op < 6; ++op) {
            bool ok = true;
            std::string detail;
            for (int t = 0; t < trials && ok; ++t) {
                Interval a = random_interval(rng);
                Interval b = random_interval(rng);
                if (op == 3) { // div needs 0 outside b
                    double off = uniform(rng, 0.5, 5.0);
                    b = rng() % 2 ? Interval(off, off + uniform(rng, 0.0, 3.0))
                                  : Interval(-off - uniform(rng, 0.0, 3.0), -off);
                }
                if (op == 5) { // intersect wants overlap often
                    double lo = a.lo() + uniform(rng, -1.0, 1.0);
                    double hi = a.hi() + uniform(rng, 0.0, 2.0);
                    b = Interval(std::min(lo, hi), std::max(lo, hi));
                }
                Interval r;
                ExtendedDiv ed;
                switch (op) {
                    case 0: r = add(a, b, c); break;
                    case 1: r = sub(a, b, c); break;
                    case 2: r = mul(a, b, c); break;
                    case 3: r = div(a, b, c); break;
                    case 4: ed = extended_div(a, b, c); break;
                    default: r = intersect(a, b, c); break;
                }
                if (opts.inject_rounding_bug && op != 4) r = shrink_one_ulp(r);

                for (double xs : interval_samples(rng, a, 2)) {
                    for (double ys : interval_samples(rng, b, 2)) {
                        double want = 0.0;
                        bool defined = true;
                        switch (op) {
                            case 0: want = xs + ys; break;
                            case 1: want = xs - ys; break;
                            case 2: want = xs * ys; break;
                            case 3:
                            case 4:
                                defined = ys != 0.0;
                                want = defined ? xs / ys : 0.0;
                                break;
                            default: defined = b.contains(xs), want = xs; break;
                        }
                        if (!defined || !std::isfinite(want)) continue;
                        bool inside = op == 4 ? ed.contains(want)
                                    : op == 5 ? (!a.contains(xs) || !b.contains(xs) || r.contains(xs))
                                              : r.contains(want);
                        if (!inside) {
                            ok = false;
                            std::ostringstream os;
                            os << "sample " << want << " escaped " << (op == 4 ? ed.hull() : r).str()
                               << " for inputs " << a.str() << ", " << b.str();
                            detail = os.str();
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
            record(names[op], ok, detail);
        }
    }

    void natural_extension(int trials) {
        Rng rng(opts.seed + 1);
        OpCounters c;
        bool iso_ok = true, range_ok = true;
        std::string iso_detail, range_detail;
        for (int t = 0; t < trials && (iso_ok || range_ok); ++t) {
            int n = 1 + static_cast<int>(rng() % 3);
            ExprPtr e = random_expr(rng, n, 0, 3);
            Box x = random_box(rng, static_cast<std::size_t>(n));
            Box z = random_subbox(rng, x);
            Box y = random_subbox(rng, z);
            Box u;

            Interval fx = eval_interval(e, x, u, c);
            Interval fz = eval_interval(e, z, u, c);
            Interval fy = eval_interval(e, y, u, c);
            if (iso_ok && (!fz.contains_interval(fy) || !fx.contains_interval(fz))) {
                iso_ok = false;
                iso_detail = "nested boxes produced non-nested extensions";
            }
            if (range_ok) {
                for (int s = 0; s < 20; ++s) {
                    std::vector<double> pt;
                    for (int i = 0; i < n; ++i)
                        pt.push_back(uniform(rng, x[static_cast<std::size_t>(i)].lo(),
                                             x[static_cast<std::size_t>(i)].hi()));
                    try {
                        double v = eval_real(e, pt, {});
                        if (std::isfinite(v) && !fx.contains(v)) {
                            range_ok = false;
                            range_detail = "real sample escaped the natural extension";
                            break;
                        }
                    } catch (const DivByZeroError&) {
                        // sample hit a pole; nothing to check
                    }
                }
            }
        }
        record("natural-extension-isotonicity", iso_ok, iso_detail);
        record("natural-extension-range-enclosure", range_ok, range_detail);
    }

    void laplace_recurrence(int max_n) {
        Rng rng(opts.seed + 2);
        bool ok = true;
        std::string detail;
        std::uint64_t expected = 0; // M(1) = 0
        for (int n = 1; n <= max_n && ok; ++n) {
            if (n > 1) expected = static_cast<std::uint64_t>(n) * (expected + 1);
            IntervalMatrix a(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a.at(i, j) = random_interval(rng);
            OpCounters c;
            det_laplace(a, c);
            if (c.muls != 4 * expected) {
                ok = false;
                std::ostringstream os;
                os << "n=" << n << ": counted " << c.muls / 4 << " interval muls, expected "
                   << expected;
                detail = os.str();
            }
        }
        record("laplace-mul-recurrence", ok, detail);
    }

    void solver_soundness() {
        bool ok = true;
        std::string detail;
        for (const auto& sys : known_root_suite()) {
            for (Method method : {Method::bisection, Method::subdivision_filter, Method::icp,
                                  Method::newton, Method::krawczyk}) {
                SolverConfig cfg;
                cfg.method = method;
                cfg.epsilon = 0.02;
                cfg.m = 8;
                cfg.n_it = 5;
                RunReport rep = solve(sys.model, cfg);
                for (const auto& root : sys.roots) {
                    if (!point_in_union(rep.retained, root)) {
                        ok = false;
                        std::ostringstream os;
                        os << sys.model.name << "/" << method_name(method)
                           << " lost a known root";
                        detail = os.str();
                    }
                }
            }
        }
        record("solver-soundness-known-roots", ok, detail);
    }
};

} // namespace

CheckResult run_selfcheck(const CheckOptions& opts) {
    Battery b;
    b.opts = opts;
    b.containment(1000);
    b.natural_extension(200);
    b.laplace_recurrence(5);
    b.solver_soundness();
    return std::move(b.result);
}

namespace {

bool newton_polish(const SystemModel& m, const std::vector<double>& u, std::vector<double>& x,
                   double residual_tol) {
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<double> f;
        try {
            f = eval_system_real(m, x, u);
        } catch (const DivByZeroError&) {
            return false;
        }
        double norm = 0.0;
        for (double v : f) norm = std::max(norm, std::fabs(v));
        if (!std::isfinite(norm)) return false;
        if (norm < residual_tol) return true;

        RealMatrix j = eval_jacobian_real(m, x, u);
        std::optional<RealMatrix> inv = real_inverse(j);
        if (!inv) return false;
        std::vector<double> step(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t k = 0; k < x.size(); ++k)
                step[i] += inv->at(static_cast<int>(i), static_cast<int>(k)) * f[k];

        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < 8 && !accepted; ++h) {
            std::vector<double> trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - lambda * step[i];
            try {
                std::vector<double> ft = eval_system_real(m, trial, u);
                double tn = 0.0;
                for (double v : ft) tn = std::max(tn, std::fabs(v));
                if (std::isfinite(tn) && tn < norm) {
                    x = std::move(trial);
                    accepted = true;
                }
            } catch (const DivByZeroError&) {
            }
            lambda *= 0.5;
        }
        if (!accepted) return false;
    }
    std::vector<double> f = eval_system_real(m, x, u);
    double norm = 0.0;
    for (double v : f) norm = std::max(norm, std::fabs(v));
    return norm < residual_tol;
}

} // namespace

std::vector<std::vector<double>> find_roots_multistart(const SystemModel& m,
                                                       const std::vector<double>& u, int starts,
                                                       std::uint64_t seed, double residual_tol) {
    Rng rng(seed);
    std::vector<std::vector<double>> roots;
    const double slack = 1e-9;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x(static_cast<std::size_t>(m.n));
        for (int i = 0; i < m.n; ++i) {
            const Interval& c = m.x0[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = uniform(rng, c.lo(), c.hi());
        }
        if (!newton_polish(m, u, x, residual_tol)) continue;

        bool inside = true;
        for (int i = 0; i < m.n && inside; ++i) {
            const Interval& c = m.x0[static_cast<std::size_t>(i)];
            inside = x[static_cast<std::size_t>(i)] >= c.lo() - slack &&
                     x[static_cast<std::size_t>(i)] <= c.hi() + slack;
        }
        if (!inside) continue;

        bool duplicate = false;
        for (const auto& r : roots) {
            double d = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) d = std::max(d, std::fabs(r[i] - x[i]));
            if (d < 1e-7) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) roots.push_back(std::move(x));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<std::vector<double>> parameter_samples(const Box& u, std::size_t max_corners) {
    std::vector<std::vector<double>> out;
    const std::size_t p = u.size();
    out.push_back(u.midpoint());
    if (p == 0) return out;

    bool all_corners = true;
    std::size_t corners = 1;
    for (std::size_t i = 0; i < p; ++i) {
        corners *= 2;
        if (corners > max_corners) {
            all_corners = false;
            break;
        }
    }
    if (all_corners) {
        for (std::size_t mask = 0; mask < corners; ++mask) {
            std::vector<double> pt(p);
            for (std::size_t i = 0; i < p; ++i)
                pt[i] = (mask >> i) & 1 ? u[i].hi() : u[i].lo();
            out.push_back(std::move(pt));
        }
    } else {
        std::vector<double> mid_pt = u.midpoint();
        for (std::size_t i = 0; i < p; ++i) {
            for (double v : {u[i].lo(), u[i].hi()}) {
                std::vector<double> pt = mid_pt;
                pt[i] = v;
                out.push_back(std::move(pt));
            }
        }
    }
    return out;
}

bool point_in_union(const std::vector<Box>& boxes, const std::vector<double>& x, double slack) {
    for (const auto& b : boxes) {
        bool inside = b.size() == x.size();
        for (std::size_t i = 0; inside && i < x.size(); ++i)
            inside = x[i] >= b[i].lo() - slack && x[i] <= b[i].hi() + slack;
        if (inside) return true;
    }
    return false;
}

} // namespace ivsolve
