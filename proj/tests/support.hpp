#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ivsolve/box.hpp"
#include "ivsolve/expr.hpp"
#include "ivsolve/interval.hpp"

namespace ivtest {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ivsolve::Interval random_interval(Rng& rng, double scale = 10.0) {
    double a = uniform(rng, -scale, scale);
    double w = std::exp(uniform(rng, -6.0, 2.0)) - std::exp(-6.0);
    return ivsolve::Interval(a, a + w);
}

// Interval whose endpoints exclude zero with the given sign.
inline ivsolve::Interval random_signed_interval(Rng& rng, bool positive) {
    double lo = uniform(rng, 0.25, 5.0);
    double w = uniform(rng, 0.0, 4.0);
    return positive ? ivsolve::Interval(lo, lo + w) : ivsolve::Interval(-lo - w, -lo);
}

inline ivsolve::Box random_box(Rng& rng, std::size_t n, double lo = -4.0, double hi = 4.0) {
    std::vector<ivsolve::Interval> comps;
    for (std::size_t i = 0; i < n; ++i) {
        double a = uniform(rng, lo, hi);
        double b = uniform(rng, lo, hi);
        if (a > b) std::swap(a, b);
        comps.emplace_back(a, b);
    }
    return ivsolve::Box(std::move(comps));
}

inline ivsolve::Box random_subbox(Rng& rng, const ivsolve::Box& z) {
    std::vector<ivsolve::Interval> comps;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double a = uniform(rng, z[i].lo(), z[i].hi());
        double b = uniform(rng, z[i].lo(), z[i].hi());
        if (a > b) std::swap(a, b);
        comps.emplace_back(a, b);
    }
    return ivsolve::Box(std::move(comps));
}

// Endpoints first, then interior draws.
inline std::vector<double> samples_in(Rng& rng, const ivsolve::Interval& v, int interior) {
    std::vector<double> s{v.lo(), v.hi()};
    for (int i = 0; i < interior; ++i) s.push_back(uniform(rng, v.lo(), v.hi()));
    return s;
}

inline std::vector<double> random_point_in(Rng& rng, const ivsolve::Box& b) {
    std::vector<double> p;
    for (std::size_t i = 0; i < b.size(); ++i) p.push_back(uniform(rng, b[i].lo(), b[i].hi()));
    return p;
}

inline ivsolve::ExprPtr random_expr(Rng& rng, int n, int p, int depth) {
    using ivsolve::Expr;
    if (depth <= 0) {
        switch (rng() % 3) {
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
        case 6: return Expr::make_pow(random_expr(rng, n, p, depth - 1), 2 + static_cast<unsigned>(rng() % 3));
        default: return random_expr(rng, n, p, 0);
    }
}

// result encloses [lo,hi] and each endpoint is within `ulps` steps of it.
inline bool tight_encloses(const ivsolve::Interval& r, double lo, double hi, int ulps = 2) {
    if (r.is_empty()) return false;
    double lo_slack = lo, hi_slack = hi;
    for (int i = 0; i < ulps; ++i) {
        lo_slack = std::nextafter(lo_slack, -std::numeric_limits<double>::infinity());
        hi_slack = std::nextafter(hi_slack, std::numeric_limits<double>::infinity());
    }
    return r.lo() <= lo && hi <= r.hi() && r.lo() >= lo_slack && r.hi() <= hi_slack;
}

inline double fd_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace ivtest
