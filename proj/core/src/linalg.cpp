#include "ivsolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivsolve/rounding.hpp"

namespace ivsolve {

namespace {

IntervalMatrix minor_matrix(const IntervalMatrix& a, int drop_row, int drop_col) {
    IntervalMatrix m(a.dim() - 1);
    int r = 0;
    for (int i = 0; i < a.dim(); ++i) {
        if (i == drop_row) continue;
        int cix = 0;
        for (int j = 0; j < a.dim(); ++j) {
            if (j == drop_col) continue;
            m.at(r, cix++) = a.at(i, j);
        }
        ++r;
    }
    return m;
}

// min |endpoint| for pivot selection; 0 when the interval contains zero.
double mignitude(const Interval& x) {
    if (x.is_empty() || x.contains_zero()) return 0.0;
    return std::min(std::fabs(x.lo()), std::fabs(x.hi()));
}

} // namespace

Interval det_laplace(const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    if (n < 1) throw Error("determinant of an empty matrix");
    if (n > kMaxLaplaceDetDim)
        throw DimensionTooLargeError("det_laplace capped at n = " +
                                     std::to_string(kMaxLaplaceDetDim));
    if (n == 1) return a.at(0, 0);

    // Expansion along the first row; signs alternate via add/sub so the
    // multiplication count stays exactly M(n) = n (M(n-1) + 1).
    Interval acc;
    for (int j = 0; j < n; ++j) {
        Interval term = mul(a.at(0, j), det_laplace(minor_matrix(a, 0, j), c), c);
        if (j == 0)
            acc = term;
        else if (j % 2 == 1)
            acc = sub(acc, term, c);
        else
            acc = add(acc, term, c);
    }
    return acc;
}

IntervalMatrix adjugate_laplace(const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    if (n < 1) throw Error("adjugate of an empty matrix");
    if (n > kMaxLaplaceAdjDim)
        throw DimensionTooLargeError("adjugate_laplace capped at n = " +
                                     std::to_string(kMaxLaplaceAdjDim));
    if (n == 1) {
        IntervalMatrix r(1);
        r.at(0, 0) = Interval(1.0);
        return r;
    }
    IntervalMatrix adj(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Interval cof = det_laplace(minor_matrix(a, i, j), c);
            if ((i + j) % 2 == 1) cof = neg(cof, c);
            adj.at(j, i) = cof; // transpose of the cofactor matrix
        }
    }
    return adj;
}

IntervalMatrix inverse_adjugate(const IntervalMatrix& a, OpCounters& c) {
    Interval det = det_laplace(a, c);
    if (det.contains_zero()) throw SingularEnclosureError();
    c.inversions += 1;
    IntervalMatrix adj = adjugate_laplace(a, c);
    IntervalMatrix inv(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) inv.at(i, j) = div(adj.at(i, j), det, c);
    return inv;
}

namespace {

struct GaussFactorization {
    // Row-reduced copy and the pivot row order actually used.
    IntervalMatrix u;
    std::vector<int> rows;
    bool ok = false;
};

// Interval Gaussian elimination with mignitude pivoting. Fails (ok = false)
// as soon as every remaining pivot candidate contains zero.
GaussFactorization gauss_eliminate(const IntervalMatrix& a, OpCounters& c,
                                   std::vector<IntervalMatrix>* rhs = nullptr) {
    const int n = a.dim();
    GaussFactorization f;
    f.u = a;
    f.rows.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) f.rows[static_cast<std::size_t>(i)] = i;

    for (int k = 0; k < n; ++k) {
        int best = -1;
        double best_mig = 0.0;
        for (int i = k; i < n; ++i) {
            double mig = mignitude(f.u.at(f.rows[i], k));
            if (best < 0 || mig > best_mig) {
                best = i;
                best_mig = mig;
            }
        }
        if (best_mig == 0.0) return f; // every candidate pivot contains zero
        std::swap(f.rows[k], f.rows[best]);

        const Interval pivot = f.u.at(f.rows[k], k);
        for (int i = k + 1; i < n; ++i) {
            const int ri = f.rows[i];
            if (f.u.at(ri, k).same_as(Interval(0.0))) continue;
            Interval factor = div(f.u.at(ri, k), pivot, c);
            f.u.at(ri, k) = Interval(0.0);
            for (int j = k + 1; j < n; ++j) {
                f.u.at(ri, j) = sub(f.u.at(ri, j), mul(factor, f.u.at(f.rows[k], j), c), c);
            }
            if (rhs) {
                IntervalMatrix& b = (*rhs)[0];
                for (int j = 0; j < b.dim(); ++j) {
                    b.at(ri, j) = sub(b.at(ri, j), mul(factor, b.at(f.rows[k], j), c), c);
                }
            }
        }
    }
    f.ok = true;
    return f;
}

} // namespace

std::optional<Interval> det_gauss(const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    if (n < 1) throw Error("determinant of an empty matrix");
    GaussFactorization f = gauss_eliminate(a, c);
    if (!f.ok) return std::nullopt;

    Interval det = f.u.at(f.rows[0], 0);
    for (int k = 1; k < n; ++k) det = mul(det, f.u.at(f.rows[k], k), c);

    // Sign of the row permutation.
    std::vector<int> perm = f.rows;
    int swaps = 0;
    for (int i = 0; i < n; ++i) {
        while (perm[i] != i) {
            std::swap(perm[i], perm[perm[i]]);
            ++swaps;
        }
    }
    if (swaps % 2 == 1) det = neg(det, c);
    return det;
}

std::optional<IntervalMatrix> inverse_gauss(const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    std::vector<IntervalMatrix> rhs{IntervalMatrix::identity(n)};
    GaussFactorization f = gauss_eliminate(a, c, &rhs);
    if (!f.ok) return std::nullopt;
    c.inversions += 1;

    const IntervalMatrix& b = rhs[0];
    IntervalMatrix inv(n);
    for (int col = 0; col < n; ++col) {
        for (int i = n - 1; i >= 0; --i) {
            Interval s = b.at(f.rows[i], col);
            for (int j = i + 1; j < n; ++j) {
                s = sub(s, mul(f.u.at(f.rows[i], j), inv.at(j, col), c), c);
            }
            inv.at(i, col) = div(s, f.u.at(f.rows[i], i), c);
        }
    }
    return inv;
}

std::optional<IntervalMatrix> krawczyk_inverse(const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    std::optional<RealMatrix> y = real_inverse(mid_matrix(a));
    if (!y) return std::nullopt;
    c.inversions += 1;

    IntervalMatrix residual = real_mat_interval_mat(*y, a, c); // Y * A
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            residual.at(i, j) = sub(Interval(i == j ? 1.0 : 0.0), residual.at(i, j), c);

    // Contraction test: sup-norm of |I - Y A| must be < 1. Row sums are
    // accumulated upward so the test and the bound below stay conservative.
    double rho = 0.0;
    double y_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0, yrow = 0.0;
        for (int j = 0; j < n; ++j) {
            const Interval& r = residual.at(i, j);
            row = rnd::add_up(row, std::max(std::fabs(r.lo()), std::fabs(r.hi())));
            yrow = rnd::add_up(yrow, std::fabs(y->at(i, j)));
        }
        rho = std::max(rho, row);
        y_norm = std::max(y_norm, yrow);
    }
    if (!(rho < 1.0)) return std::nullopt;

    // Entrywise a-priori bound |inv(Atilde) - Y| <= rho ||Y|| / (1 - rho),
    // then refine with Z <- (Y + R Z) ∩ Z.
    double delta = rnd::div_up(rnd::mul_up(rho, y_norm), rnd::sub_down(1.0, rho));
    if (delta == 0.0 && rho > 0.0) delta = rnd::next_up(0.0);
    IntervalMatrix z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z.at(i, j) = Interval(rnd::sub_down(y->at(i, j), delta),
                                  rnd::add_up(y->at(i, j), delta));

    for (int iter = 0; iter < 10; ++iter) {
        IntervalMatrix rz = mat_mat(residual, z, c);
        double max_rel_change = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Interval next = add(Interval(y->at(i, j)), rz.at(i, j), c);
                next = intersect(next, z.at(i, j), c);
                if (next.is_empty()) next = z.at(i, j); // numeric fuzz; keep the old enclosure
                double before = z.at(i, j).hi() - z.at(i, j).lo();
                double after = next.hi() - next.lo();
                if (before > 0.0)
                    max_rel_change = std::max(max_rel_change, (before - after) / before);
                z.at(i, j) = next;
            }
        }
        if (max_rel_change < 1e-3) break;
    }
    return z;
}

RealMatrix mid_matrix(const IntervalMatrix& a) {
    RealMatrix m(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m.at(i, j) = mid(a.at(i, j));
    return m;
}

std::optional<RealMatrix> real_inverse(const RealMatrix& m) {
    const int n = m.dim();
    RealMatrix a = m;
    RealMatrix inv = RealMatrix::identity(n);
    std::vector<int> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;

    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a.at(rows[i], k)) > std::fabs(a.at(rows[best], k))) best = i;
        if (a.at(rows[best], k) == 0.0 || !std::isfinite(a.at(rows[best], k)))
            return std::nullopt;
        std::swap(rows[k], rows[best]);

        const double pivot = a.at(rows[k], k);
        for (int i = k + 1; i < n; ++i) {
            double factor = a.at(rows[i], k) / pivot;
            a.at(rows[i], k) = 0.0;
            for (int j = k + 1; j < n; ++j) a.at(rows[i], j) -= factor * a.at(rows[k], j);
            for (int j = 0; j < n; ++j) inv.at(rows[i], j) -= factor * inv.at(rows[k], j);
        }
    }

    RealMatrix out(n);
    for (int col = 0; col < n; ++col) {
        for (int i = n - 1; i >= 0; --i) {
            double s = inv.at(rows[i], col);
            for (int j = i + 1; j < n; ++j) s -= a.at(rows[i], j) * out.at(j, col);
            out.at(i, col) = s / a.at(rows[i], i);
            if (!std::isfinite(out.at(i, col))) return std::nullopt;
        }
    }
    return out;
}

Box mat_vec(const IntervalMatrix& a, const Box& v, OpCounters& c) {
    const int n = a.dim();
    std::vector<Interval> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Interval s = mul(a.at(i, 0), v[0], c);
        for (int j = 1; j < n; ++j) s = add(s, mul(a.at(i, j), v[static_cast<std::size_t>(j)], c), c);
        out[static_cast<std::size_t>(i)] = s;
    }
    return Box(std::move(out));
}

IntervalMatrix mat_mat(const IntervalMatrix& a, const IntervalMatrix& b, OpCounters& c) {
    const int n = a.dim();
    IntervalMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Interval s = mul(a.at(i, 0), b.at(0, j), c);
            for (int k = 1; k < n; ++k) s = add(s, mul(a.at(i, k), b.at(k, j), c), c);
            out.at(i, j) = s;
        }
    }
    return out;
}

IntervalMatrix real_mat_interval_mat(const RealMatrix& m, const IntervalMatrix& a, OpCounters& c) {
    const int n = a.dim();
    IntervalMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Interval s = mul(Interval(m.at(i, 0)), a.at(0, j), c);
            for (int k = 1; k < n; ++k)
                s = add(s, mul(Interval(m.at(i, k)), a.at(k, j), c), c);
            out.at(i, j) = s;
        }
    }
    return out;
}

Box real_mat_vec(const RealMatrix& m, const Box& v, OpCounters& c) {
    const int n = m.dim();
    std::vector<Interval> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Interval s = mul(Interval(m.at(i, 0)), v[0], c);
        for (int j = 1; j < n; ++j)
            s = add(s, mul(Interval(m.at(i, j)), v[static_cast<std::size_t>(j)], c), c);
        out[static_cast<std::size_t>(i)] = s;
    }
    return Box(std::move(out));
}

} // namespace ivsolve
