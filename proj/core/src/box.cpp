#include "ivsolve/box.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace ivsolve {

std::vector<double> Box::midpoint() const {
    std::vector<double> m;
    m.reserve(comps_.size());
    for (const auto& c : comps_) m.push_back(mid(c));
    return m;
}

double Box::volume() const {
    if (is_empty()) return 0.0;
    double v = 1.0;
    for (const auto& c : comps_) v *= c.hi() - c.lo();
    return v;
}

std::string Box::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Box& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) os << " x ";
        os << b[i];
    }
    return os;
}

double box_diam(const Box& x, OpCounters& c) {
    if (x.size() == 0 || x.is_empty()) throw EmptyBoxError();
    double best = diam(x[0], c);
    for (std::size_t i = 1; i < x.size(); ++i) {
        double d = diam(x[i], c);
        c.comparisons += 1;
        best = std::max(best, d);
    }
    return best;
}

std::size_t widest_axis(const Box& x) {
    if (x.size() == 0 || x.is_empty()) throw EmptyBoxError();
    std::size_t best = 0;
    double w = x[0].hi() - x[0].lo();
    for (std::size_t i = 1; i < x.size(); ++i) {
        double wi = x[i].hi() - x[i].lo();
        if (wi > w) {
            w = wi;
            best = i;
        }
    }
    return best;
}

std::pair<Box, Box> bisect(const Box& x, std::size_t axis) {
    if (x.is_empty()) throw EmptyBoxError();
    const Interval& c = x[axis];
    if (c.is_point()) throw DegenerateAxisError();
    double m = mid(c);
    if (m <= c.lo() || m >= c.hi()) throw DegenerateAxisError();
    Box left = x, right = x;
    left[axis] = Interval(c.lo(), m);
    right[axis] = Interval(m, c.hi());
    return {std::move(left), std::move(right)};
}

namespace {

// j-th grid point of [lo,hi] split into m parts; monotone in j with exact
// endpoints at j=0 and j=m.
double grid_point(double lo, double hi, int m, int j) {
    if (j == 0) return lo;
    if (j == m) return hi;
    double t = lo + (hi - lo) * (static_cast<double>(j) / m);
    return std::clamp(t, lo, hi);
}

} // namespace

std::vector<Box> subdivide_uniform(const Box& x, int m) {
    if (m < 1) throw Error("subdivision parameter m must be >= 1");
    if (x.is_empty() || x.size() == 0) throw EmptyBoxError();
    const std::size_t n = x.size();
    constexpr std::uint64_t kMaxCells = 1'000'000'000;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > kMaxCells / static_cast<std::uint64_t>(m))
            throw Error("uniform subdivision grid too large to materialize");
        total *= static_cast<std::uint64_t>(m);
    }
    std::vector<Box> cells;
    cells.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        cells.push_back(grid_cell(x, m, idx));
    }
    return cells;
}

Box grid_cell(const Box& x, int m, std::uint64_t index) {
    const std::size_t n = x.size();
    std::vector<Interval> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        int j = static_cast<int>(index % static_cast<std::uint64_t>(m));
        index /= static_cast<std::uint64_t>(m);
        const Interval& c = x[i];
        comps.emplace_back(grid_point(c.lo(), c.hi(), m, j),
                           grid_point(c.lo(), c.hi(), m, j + 1));
    }
    return Box(std::move(comps));
}

Box intersect(const Box& a, const Box& b, OpCounters& c) {
    std::vector<Interval> comps;
    comps.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) comps.push_back(intersect(a[i], b[i], c));
    return Box(std::move(comps));
}

Box box_sub_point(const Box& a, const std::vector<double>& p, OpCounters& c) {
    std::vector<Interval> comps;
    comps.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) comps.push_back(sub(a[i], Interval(p[i]), c));
    return Box(std::move(comps));
}

Box point_sub_box(const std::vector<double>& p, const Box& a, OpCounters& c) {
    std::vector<Interval> comps;
    comps.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) comps.push_back(sub(Interval(p[i]), a[i], c));
    return Box(std::move(comps));
}

Box box_add(const Box& a, const Box& b, OpCounters& c) {
    std::vector<Interval> comps;
    comps.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) comps.push_back(add(a[i], b[i], c));
    return Box(std::move(comps));
}

} // namespace ivsolve
