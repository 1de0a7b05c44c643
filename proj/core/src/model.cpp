#include "ivsolve/model.hpp"

namespace ivsolve {

SystemModel SystemModel::make(std::string name, std::vector<ExprPtr> equations, Box x0, Box u) {
    SystemModel m;
    m.name = std::move(name);
    m.equations = std::move(equations);
    m.x0 = std::move(x0);
    m.u = std::move(u);
    m.n = static_cast<int>(m.equations.size());
    m.p = static_cast<int>(m.u.size());

    if (m.n == 0) throw DimensionMismatchError("system has no equations");
    if (static_cast<int>(m.x0.size()) != m.n)
        throw DimensionMismatchError("X0 dimension does not match the number of equations");
    if (m.x0.is_empty()) throw DimensionMismatchError("X0 must be non-empty");
    if (m.u.is_empty()) throw DimensionMismatchError("U must be non-empty");
    for (const auto& eq : m.equations) validate_expr(eq, m.n, m.p);

    m.jacobian.reserve(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.jacobian.push_back(derivative(m.equations[i], j));
    return m;
}

SystemModel with_domain(const SystemModel& m, Box x0) {
    if (x0.size() != static_cast<std::size_t>(m.n) || x0.is_empty())
        throw DimensionMismatchError("replacement X0 has the wrong dimension");
    SystemModel out = m;
    out.x0 = std::move(x0);
    return out;
}

Box eval_system(const SystemModel& m, const Box& x, const Box& u, OpCounters& c) {
    c.f_evals += 1;
    std::vector<Interval> comps;
    comps.reserve(m.equations.size());
    for (const auto& eq : m.equations) comps.push_back(eval_interval(eq, x, u, c));
    return Box(std::move(comps));
}

Box eval_system_at_point(const SystemModel& m, const std::vector<double>& x, const Box& u,
                         OpCounters& c) {
    return eval_system(m, Box::point(x), u, c);
}

IntervalMatrix eval_jacobian(const SystemModel& m, const Box& x, const Box& u, OpCounters& c) {
    c.j_evals += 1;
    IntervalMatrix j(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int k = 0; k < m.n; ++k) j.at(i, k) = eval_interval(m.jac(i, k), x, u, c);
    return j;
}

std::vector<double> eval_system_real(const SystemModel& m, const std::vector<double>& x,
                                     const std::vector<double>& u) {
    std::vector<double> out;
    out.reserve(m.equations.size());
    for (const auto& eq : m.equations) out.push_back(eval_real(eq, x, u));
    return out;
}

RealMatrix eval_jacobian_real(const SystemModel& m, const std::vector<double>& x,
                              const std::vector<double>& u) {
    RealMatrix j(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int k = 0; k < m.n; ++k) j.at(i, k) = eval_real(m.jac(i, k), x, u);
    return j;
}

bool zero_in_system(const SystemModel& m, const Box& x, OpCounters& c) {
    Box f = eval_system(m, x, m.u, c);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].contains_zero()) return false;
    }
    return true;
}

} // namespace ivsolve
