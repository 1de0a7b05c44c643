#pragma once

#include <cmath>
#include <iosfwd>
#include <string>

#include "ivsolve/counters.hpp"
#include "ivsolve/errors.hpp"

namespace ivsolve {

// Closed real interval with outward-rounded endpoints. Endpoints may be
// infinite; [-inf,+inf] is the whole line. The empty set is a dedicated
// sentinel (NaN endpoints behind the factory), distinct from every non-empty
// interval, so lo <= hi remains a checkable invariant for all non-empty
// values. Values are immutable and safe to share across threads.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}
    explicit Interval(double point) : Interval(point, point) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi)) throw Error("NaN interval endpoint");
        if (lo > hi) throw Error("interval endpoints out of order");
        if (lo == kInf || hi == -kInf) throw Error("interval has no real member");
    }

    static Interval empty() {
        Interval r;
        r.lo_ = std::numeric_limits<double>::quiet_NaN();
        r.hi_ = std::numeric_limits<double>::quiet_NaN();
        return r;
    }

    static Interval entire() { return Interval(-kInf, kInf); }

    bool is_empty() const { return std::isnan(lo_); }
    bool is_point() const { return !is_empty() && lo_ == hi_; }
    bool is_entire() const { return !is_empty() && lo_ == -kInf && hi_ == kInf; }

    // NaN on the empty interval.
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    bool contains(double x) const { return !is_empty() && lo_ <= x && x <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool contains_interval(const Interval& o) const {
        if (o.is_empty()) return true;
        return !is_empty() && lo_ <= o.lo_ && o.hi_ <= hi_;
    }

    bool same_as(const Interval& o) const {
        if (is_empty() || o.is_empty()) return is_empty() && o.is_empty();
        return lo_ == o.lo_ && hi_ == o.hi_;
    }

    std::string str() const;

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    double lo_;
    double hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& a);

// Arithmetic. Every operation threads the owning run's counters; increments
// follow the real-endpoint costs (add/sub: 2, mul: 4 products + 6
// comparisons, div: 2 reciprocal divisions + the product cost). The empty
// interval absorbs every operation.
Interval add(const Interval& a, const Interval& b, OpCounters& c);
Interval sub(const Interval& a, const Interval& b, OpCounters& c);
Interval neg(const Interval& a, OpCounters& c);
Interval mul(const Interval& a, const Interval& b, OpCounters& c);

// Requires 0 not in b; throws ZeroInDivisorError otherwise.
Interval div(const Interval& a, const Interval& b, OpCounters& c);

// Two-piece extended division. pieces == 0 encodes the empty result,
// otherwise first (and second when pieces == 2, with first.hi < second.lo).
struct ExtendedDiv {
    int pieces = 0;
    Interval first;
    Interval second;

    Interval hull() const;
    bool contains(double x) const {
        return (pieces >= 1 && first.contains(x)) || (pieces == 2 && second.contains(x));
    }
};
ExtendedDiv extended_div(const Interval& a, const Interval& b, OpCounters& c);

// Tight range of a^k using even/odd power rules (not k-1 multiplications).
Interval int_pow(const Interval& a, unsigned k, OpCounters& c);

// Exact set operations (no rounding slack beyond endpoint representability).
Interval intersect(const Interval& a, const Interval& b, OpCounters& c);
Interval hull(const Interval& a, const Interval& b, OpCounters& c);

// Throw EmptyIntervalError on the empty interval.
double mid(const Interval& a);
double rad(const Interval& a);
double diam(const Interval& a, OpCounters& c);

} // namespace ivsolve
