#pragma once

#include <cmath>
#include <limits>

// Directed-rounding endpoint kernels. Instead of switching the FPU rounding
// mode (fragile under optimizing compilers without FENV_ACCESS support), each
// kernel computes the round-to-nearest result together with the sign of its
// exact rounding error via an error-free transformation (2Sum for +/-, fma
// for * and /) and nudges one ulp in the required direction only when the
// nearest result is on the wrong side. Exact results are returned unchanged,
// so e.g. [1,2]+[3,4] comes out as exactly [4,6].

namespace ivsolve::rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double next_down(double x) {
    return std::nextafter(x, -kInf);
}

inline double next_up(double x) {
    return std::nextafter(x, kInf);
}

// Saturate an overflowed round-to-nearest result: the true value lies beyond
// the largest finite double, so the finite bound is sound for the inward
// direction and infinity for the outward one.
inline double saturate_down(double s) {
    return s > 0 ? std::numeric_limits<double>::max() : s;
}

inline double saturate_up(double s) {
    return s < 0 ? std::numeric_limits<double>::lowest() : s;
}

namespace detail {

// Knuth 2Sum: sign of (true sum - rounded sum). Returns +2 when an
// intermediate overflowed and the sign is undetermined.
inline int sum_error_sign(double a, double b, double s) {
    double bv = s - a;
    double av = s - bv;
    if (!std::isfinite(bv) || !std::isfinite(av)) return 2;
    double err = (a - av) + (b - bv);
    return (err > 0) - (err < 0);
}

inline int prod_error_sign(double a, double b, double p) {
    double err = std::fma(a, b, -p);
    if (std::isnan(err)) return 2;
    return (err > 0) - (err < 0);
}

} // namespace detail

inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return std::isnan(s) ? s : saturate_down(s);
    int sign = detail::sum_error_sign(a, b, s);
    return sign < 0 || sign == 2 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return std::isnan(s) ? s : saturate_up(s);
    int sign = detail::sum_error_sign(a, b, s);
    return sign > 0 || sign == 2 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0; // interval convention: 0 * inf = 0
    double p = a * b;
    if (!std::isfinite(p)) return std::isnan(p) ? p : saturate_down(p);
    int sign = detail::prod_error_sign(a, b, p);
    return sign < 0 || sign == 2 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return std::isnan(p) ? p : saturate_up(p);
    int sign = detail::prod_error_sign(a, b, p);
    return sign > 0 || sign == 2 ? next_up(p) : p;
}

// Directed quotients; b must be nonzero. q is too big iff sign(q*b - a)
// matches sign(b), with q*b - a computed exactly by fma.
inline double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    if (std::isinf(b)) return a / b; // correctly signed zero, exact in the limit
    double q = a / b;
    if (!std::isfinite(q)) return std::isnan(q) ? q : saturate_down(q);
    double r = std::fma(q, b, -a);
    if (std::isnan(r)) return next_down(q);
    bool q_too_big = b > 0 ? r > 0 : r < 0;
    return q_too_big ? next_down(q) : q;
}

inline double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    if (std::isinf(b)) return a / b;
    double q = a / b;
    if (!std::isfinite(q)) return std::isnan(q) ? q : saturate_up(q);
    double r = std::fma(q, b, -a);
    if (std::isnan(r)) return next_up(q);
    bool q_too_small = b > 0 ? r < 0 : r > 0;
    return q_too_small ? next_up(q) : q;
}

// Directed integer powers of a nonnegative endpoint via binary
// exponentiation (all intermediates stay nonnegative, so per-step directed
// rounding is monotone). Sign handling for negative bases is done by the
// interval operation. real_pow_mults(k) is the number of real
// multiplications either kernel performs for exponent k.
inline int real_pow_mults(unsigned k) {
    if (k < 2) return 0;
    int mults = -1;
    for (unsigned b = k; b != 0; b >>= 1) {
        mults += 1 + static_cast<int>(b & 1u);
    }
    return mults;
}

inline double pow_down(double x, unsigned k) {
    if (k == 0) return 1.0;
    double acc = x;
    unsigned msb = 31 - static_cast<unsigned>(__builtin_clz(k));
    for (unsigned bit = msb; bit-- > 0;) {
        acc = mul_down(acc, acc);
        if (k & (1u << bit)) acc = mul_down(acc, x);
    }
    return acc;
}

inline double pow_up(double x, unsigned k) {
    if (k == 0) return 1.0;
    double acc = x;
    unsigned msb = 31 - static_cast<unsigned>(__builtin_clz(k));
    for (unsigned bit = msb; bit-- > 0;) {
        acc = mul_up(acc, acc);
        if (k & (1u << bit)) acc = mul_up(acc, x);
    }
    return acc;
}

// Verified k-th roots for x >= 0: root_down(x,k)^k <= x <= root_up(x,k)^k.
// std::pow seeds the estimate and is then nudged until the directed power
// check certifies the bound.
inline double root_down(double x, unsigned k) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return x;
    double r = std::pow(x, 1.0 / static_cast<double>(k));
    while (r > 0.0 && pow_up(r, k) > x) r = next_down(r);
    return r < 0.0 ? 0.0 : r;
}

inline double root_up(double x, unsigned k) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return x;
    double r = std::pow(x, 1.0 / static_cast<double>(k));
    while (pow_down(r, k) < x) r = next_up(r);
    return r;
}

} // namespace ivsolve::rnd
