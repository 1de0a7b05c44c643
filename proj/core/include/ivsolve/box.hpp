#pragma once

#include <cstdint>
#include <vector>

#include "ivsolve/interval.hpp"

namespace ivsolve {

// Interval vector. State boxes always have dimension >= 1; dimension 0 is
// permitted so parameter-free systems can carry an empty parameter box.
// A box is empty iff any component is empty.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> components) : comps_(std::move(components)) {}
    Box(std::size_t n, const Interval& fill) : comps_(n, fill) {}

    static Box point(const std::vector<double>& x) {
        std::vector<Interval> c;
        c.reserve(x.size());
        for (double v : x) c.emplace_back(v);
        return Box(std::move(c));
    }

    static Box empty(std::size_t n) { return Box(n, Interval::empty()); }

    std::size_t size() const { return comps_.size(); }
    const Interval& operator[](std::size_t i) const { return comps_[i]; }
    Interval& operator[](std::size_t i) { return comps_[i]; }
    const std::vector<Interval>& components() const { return comps_; }

    bool is_empty() const {
        for (const auto& c : comps_)
            if (c.is_empty()) return true;
        return false;
    }

    bool contains_point(const std::vector<double>& x) const {
        if (x.size() != comps_.size()) return false;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (!comps_[i].contains(x[i])) return false;
        return true;
    }

    bool contains_box(const Box& o) const {
        if (o.is_empty()) return true;
        if (o.size() != size() || is_empty()) return false;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (!comps_[i].contains_interval(o[i])) return false;
        return true;
    }

    bool same_as(const Box& o) const {
        if (o.size() != size()) return false;
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (!comps_[i].same_as(o[i])) return false;
        return true;
    }

    std::vector<double> midpoint() const;
    double volume() const; // product of component widths (round to nearest)

    std::string str() const;

private:
    std::vector<Interval> comps_;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

// Maximum component diameter; exactly n subtractions and n-1 comparisons.
double box_diam(const Box& x, OpCounters& c);

// Index of the widest component, ties to the lowest index.
std::size_t widest_axis(const Box& x);

// Split at the midpoint of the chosen component; the halves share the split
// value and their union is exactly x.
std::pair<Box, Box> bisect(const Box& x, std::size_t axis);

// Exactly m^n closed sub-boxes tiling x; adjacent boxes share endpoints.
std::vector<Box> subdivide_uniform(const Box& x, int m);

// Grid-cell access without materializing the full grid: cell `index` of the
// m-per-dimension subdivision, with axis 0 varying fastest.
Box grid_cell(const Box& x, int m, std::uint64_t index);

Box intersect(const Box& a, const Box& b, OpCounters& c);
Box box_sub_point(const Box& a, const std::vector<double>& p, OpCounters& c);
Box point_sub_box(const std::vector<double>& p, const Box& a, OpCounters& c);
Box box_add(const Box& a, const Box& b, OpCounters& c);

} // namespace ivsolve
