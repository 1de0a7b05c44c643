#pragma once

#include <string>
#include <vector>

#include "ivsolve/expr.hpp"
#include "ivsolve/linalg.hpp"

namespace ivsolve {

// A steady-state system f(x,u) = 0 with search box x0 and parameter box u.
// Immutable after make(); the symbolic Jacobian entries d f_i / d x_j are
// built once at construction.
struct SystemModel {
    std::string name;
    int n = 0; // state dimension
    int p = 0; // parameter dimension
    std::vector<ExprPtr> equations;
    Box x0;
    Box u;
    std::vector<ExprPtr> jacobian; // row-major n*n

    static SystemModel make(std::string name, std::vector<ExprPtr> equations, Box x0, Box u);

    const ExprPtr& jac(int i, int j) const {
        return jacobian[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(j)];
    }
};

// Same system over a different search box (e.g. the [0,20]^2 domain variant).
SystemModel with_domain(const SystemModel& m, Box x0);

// Natural interval extension of the full system; one call = one F evaluation.
Box eval_system(const SystemModel& m, const Box& x, const Box& u, OpCounters& c);

// F(point, U): the state is a point but parameters stay intervals, so the
// result is still an interval vector.
Box eval_system_at_point(const SystemModel& m, const std::vector<double>& x, const Box& u,
                         OpCounters& c);

IntervalMatrix eval_jacobian(const SystemModel& m, const Box& x, const Box& u, OpCounters& c);

// Real-arithmetic evaluations backing the sampling oracles.
std::vector<double> eval_system_real(const SystemModel& m, const std::vector<double>& x,
                                     const std::vector<double>& u);
RealMatrix eval_jacobian_real(const SystemModel& m, const std::vector<double>& x,
                              const std::vector<double>& u);

// True when every component of F(X,U) contains zero (a root cannot be
// excluded from X).
bool zero_in_system(const SystemModel& m, const Box& x, OpCounters& c);

} // namespace ivsolve
