#pragma once

#include <optional>
#include <vector>

#include "ivsolve/box.hpp"
#include "ivsolve/interval.hpp"

namespace ivsolve {

class IntervalMatrix {
public:
    IntervalMatrix() = default;
    explicit IntervalMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

    static IntervalMatrix identity(int n) {
        IntervalMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Interval(1.0);
        return m;
    }

    int dim() const { return n_; }
    Interval& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const Interval& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_ = 0;
    std::vector<Interval> e_;
};

class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n, 0.0) {}

    static RealMatrix identity(int n) {
        RealMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    double& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_ = 0;
    std::vector<double> e_;
};

// Laplace (cofactor) routines: factorial-cost worst-case demonstrations,
// capped at desk scale. Interval-multiplication calls of det_laplace follow
// the recurrence M(n) = n (M(n-1) + 1), M(1) = 0, exactly.
inline constexpr int kMaxLaplaceDetDim = 8;
inline constexpr int kMaxLaplaceAdjDim = 6;

Interval det_laplace(const IntervalMatrix& a, OpCounters& c);
IntervalMatrix adjugate_laplace(const IntervalMatrix& a, OpCounters& c);
// Throws SingularEnclosureError when 0 lies in the determinant enclosure.
IntervalMatrix inverse_adjugate(const IntervalMatrix& a, OpCounters& c);

// Cubic-cost enclosures used by the solvers. Pivots are chosen by maximum
// mignitude (min |endpoint| when the candidate excludes zero, else 0); an
// empty optional means every candidate pivot contained zero, which callers
// treat as "0 in det(A)" / a possibly singular enclosure.
std::optional<Interval> det_gauss(const IntervalMatrix& a, OpCounters& c);
std::optional<IntervalMatrix> inverse_gauss(const IntervalMatrix& a, OpCounters& c);

// Residual-iteration enclosure of the inverse around Y = inv(mid(A));
// empty optional when the contraction test ||I - Y A|| >= 1 fails.
std::optional<IntervalMatrix> krawczyk_inverse(const IntervalMatrix& a, OpCounters& c);

RealMatrix mid_matrix(const IntervalMatrix& a);
// Partial-pivot Gaussian elimination; empty optional on a singular matrix.
std::optional<RealMatrix> real_inverse(const RealMatrix& m);

Box mat_vec(const IntervalMatrix& a, const Box& v, OpCounters& c);
IntervalMatrix mat_mat(const IntervalMatrix& a, const IntervalMatrix& b, OpCounters& c);
IntervalMatrix real_mat_interval_mat(const RealMatrix& m, const IntervalMatrix& a, OpCounters& c);
Box real_mat_vec(const RealMatrix& m, const Box& v, OpCounters& c);

} // namespace ivsolve
