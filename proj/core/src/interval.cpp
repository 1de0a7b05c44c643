#include "ivsolve/interval.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "ivsolve/rounding.hpp"

namespace ivsolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Wrap a pair of directed endpoints, mapping any NaN produced by
// inf - inf / inf * 0 style indeterminacy to the whole line.
Interval from_endpoints(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi)) return Interval::entire();
    if (lo > hi) std::swap(lo, hi); // only possible through saturation corner cases
    return Interval(lo, hi);
}

} // namespace

std::string Interval::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    if (a.is_empty()) return os << "(empty)";
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

Interval add(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    c.adds += 2;
    return from_endpoints(rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi()));
}

Interval sub(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    c.subs += 2;
    return from_endpoints(rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo()));
}

Interval neg(const Interval& a, OpCounters& c) {
    if (a.is_empty()) return Interval::empty();
    c.subs += 2;
    return Interval(-a.hi(), -a.lo());
}

Interval mul(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    c.muls += 4;
    c.comparisons += 6;
    const double los[4] = {rnd::mul_down(a.lo(), b.lo()), rnd::mul_down(a.lo(), b.hi()),
                           rnd::mul_down(a.hi(), b.lo()), rnd::mul_down(a.hi(), b.hi())};
    const double his[4] = {rnd::mul_up(a.lo(), b.lo()), rnd::mul_up(a.lo(), b.hi()),
                           rnd::mul_up(a.hi(), b.lo()), rnd::mul_up(a.hi(), b.hi())};
    double lo = los[0], hi = his[0];
    for (int i = 1; i < 4; ++i) {
        lo = std::min(lo, los[i]);
        hi = std::max(hi, his[i]);
    }
    return from_endpoints(lo, hi);
}

Interval div(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    if (b.contains_zero()) throw ZeroInDivisorError();
    c.divs += 2;
    Interval recip = from_endpoints(rnd::div_down(1.0, b.hi()), rnd::div_up(1.0, b.lo()));
    return mul(a, recip, c);
}

Interval ExtendedDiv::hull() const {
    if (pieces == 0) return Interval::empty();
    if (pieces == 1) return first;
    return Interval(first.lo(), second.hi());
}

ExtendedDiv extended_div(const Interval& a, const Interval& b, OpCounters& c) {
    ExtendedDiv out;
    if (a.is_empty() || b.is_empty()) return out;

    if (!b.contains_zero()) {
        out.pieces = 1;
        out.first = div(a, b, c);
        return out;
    }

    c.divs += 2;
    c.comparisons += 6;

    // 0 in b from here on. Quotient set {x/y : x in a, y in b, y != 0}.
    if (b.lo() == 0.0 && b.hi() == 0.0) {
        if (a.contains_zero()) {
            out.pieces = 1;
            out.first = Interval::entire();
        }
        return out; // empty: no admissible divisor
    }
    if (a.lo() == 0.0 && a.hi() == 0.0) {
        out.pieces = 1;
        out.first = Interval(0.0);
        return out;
    }
    if (a.contains_zero()) {
        out.pieces = 1;
        out.first = Interval::entire();
        return out;
    }

    if (a.hi() < 0.0) {
        if (b.hi() == 0.0) {
            out.pieces = 1;
            out.first = Interval(rnd::div_down(a.hi(), b.lo()), kInf);
        } else if (b.lo() == 0.0) {
            out.pieces = 1;
            out.first = Interval(-kInf, rnd::div_up(a.hi(), b.hi()));
        } else {
            out.pieces = 2;
            out.first = Interval(-kInf, rnd::div_up(a.hi(), b.hi()));
            out.second = Interval(rnd::div_down(a.hi(), b.lo()), kInf);
        }
    } else { // a.lo() > 0
        if (b.hi() == 0.0) {
            out.pieces = 1;
            out.first = Interval(-kInf, rnd::div_up(a.lo(), b.lo()));
        } else if (b.lo() == 0.0) {
            out.pieces = 1;
            out.first = Interval(rnd::div_down(a.lo(), b.hi()), kInf);
        } else {
            out.pieces = 2;
            out.first = Interval(-kInf, rnd::div_up(a.lo(), b.lo()));
            out.second = Interval(rnd::div_down(a.lo(), b.hi()), kInf);
        }
    }
    if (out.pieces == 2 && out.first.hi() >= out.second.lo()) {
        // Pieces touched or crossed after rounding; collapse to their hull.
        out.pieces = 1;
        out.first = Interval(out.first.lo(), out.second.hi());
    }
    return out;
}

Interval int_pow(const Interval& a, unsigned k, OpCounters& c) {
    if (a.is_empty()) return Interval::empty();
    if (k == 0) return Interval(1.0);
    if (k == 1) return a;

    c.comparisons += 2;
    const int per_pow = rnd::real_pow_mults(k);
    auto pow_mag_down = [&](double x) { return rnd::pow_down(std::fabs(x), k); };
    auto pow_mag_up = [&](double x) { return rnd::pow_up(std::fabs(x), k); };

    if (k % 2 == 0) {
        if (a.lo() >= 0.0) {
            c.muls += 2 * per_pow;
            return from_endpoints(pow_mag_down(a.lo()), pow_mag_up(a.hi()));
        }
        if (a.hi() <= 0.0) {
            c.muls += 2 * per_pow;
            return from_endpoints(pow_mag_down(a.hi()), pow_mag_up(a.lo()));
        }
        c.muls += per_pow;
        double m = std::max(std::fabs(a.lo()), std::fabs(a.hi()));
        return from_endpoints(0.0, rnd::pow_up(m, k));
    }

    // Odd powers are monotone; apply the sign-preserving power per endpoint.
    c.muls += 2 * per_pow;
    auto signed_pow_down = [&](double x) { return x >= 0.0 ? pow_mag_down(x) : -pow_mag_up(x); };
    auto signed_pow_up = [&](double x) { return x >= 0.0 ? pow_mag_up(x) : -pow_mag_down(x); };
    return from_endpoints(signed_pow_down(a.lo()), signed_pow_up(a.hi()));
}

Interval intersect(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    c.comparisons += 2;
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return Interval::empty();
    return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b, OpCounters& c) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    c.comparisons += 2;
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

double mid(const Interval& a) {
    if (a.is_empty()) throw EmptyIntervalError();
    if (a.lo() == -kInf && a.hi() == kInf) return 0.0;
    if (a.lo() == -kInf) return std::numeric_limits<double>::lowest();
    if (a.hi() == kInf) return std::numeric_limits<double>::max();
    double m = 0.5 * (a.lo() + a.hi());
    if (!std::isfinite(m)) m = 0.5 * a.lo() + 0.5 * a.hi();
    return std::clamp(m, a.lo(), a.hi());
}

double rad(const Interval& a) {
    if (a.is_empty()) throw EmptyIntervalError();
    OpCounters scratch;
    return 0.5 * diam(a, scratch);
}

double diam(const Interval& a, OpCounters& c) {
    if (a.is_empty()) throw EmptyIntervalError();
    c.subs += 1;
    if (a.lo() == -kInf || a.hi() == kInf) return kInf;
    return rnd::sub_up(a.hi(), a.lo());
}

} // namespace ivsolve
