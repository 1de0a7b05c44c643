#include "ivsolve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ivsolve/linalg.hpp"

namespace ivsolve {

std::string method_name(Method m) {
    switch (m) {
        case Method::bisection: return "bisection";
        case Method::subdivision_filter: return "subdivision";
        case Method::icp: return "icp";
        case Method::newton: return "newton";
        case Method::krawczyk: return "krawczyk";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "bisection") return Method::bisection;
    if (name == "subdivision" || name == "subdivision_filter" || name == "subdivision+filter")
        return Method::subdivision_filter;
    if (name == "icp" || name == "propagation") return Method::icp;
    if (name == "newton") return Method::newton;
    if (name == "krawczyk") return Method::krawczyk;
    return std::nullopt;
}

std::string SolverConfig::setting() const {
    std::ostringstream os;
    switch (method) {
        case Method::bisection:
        case Method::newton:
        case Method::krawczyk: os << "eps=" << epsilon; break;
        case Method::subdivision_filter: os << "m=" << m; break;
        case Method::icp: os << "m=" << m << " l=" << n_it; break;
    }
    return os.str();
}

namespace {

struct RunState {
    RunReport report;
    std::uint64_t total_iters = 0;
    std::chrono::steady_clock::time_point started;

    explicit RunState(const SystemModel& model, const SolverConfig& cfg) {
        report.model_name = model.name;
        report.n = model.n;
        report.config = cfg;
        started = std::chrono::steady_clock::now();
    }

    void retain(Box box) {
        report.n_keep += 1;
        if (report.config.store_retained)
            report.retained.push_back(std::move(box));
        else
            report.retained_stored = false;
    }

    RunReport finish() {
        if (report.n_proc > 0)
            report.avg_iter =
                static_cast<double>(total_iters) / static_cast<double>(report.n_proc);
        std::sort(report.retained.begin(), report.retained.end(), [](const Box& a, const Box& b) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].lo() != b[i].lo()) return a[i].lo() < b[i].lo();
            }
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].hi() != b[i].hi()) return a[i].hi() < b[i].hi();
            }
            return false;
        });
        report.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return std::move(report);
    }
};

void require(bool ok, const std::string& what) {
    if (!ok) throw MissingParameterError(what);
}

std::optional<std::uint64_t> grid_total(int n, int m, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / static_cast<std::uint64_t>(m)) return std::nullopt;
        total *= static_cast<std::uint64_t>(m);
    }
    return total;
}

} // namespace

RunReport solve(const SystemModel& model, const SolverConfig& cfg) {
    switch (cfg.method) {
        case Method::bisection: return solve_bisection(model, cfg);
        case Method::subdivision_filter: return solve_subdivision_filter(model, cfg);
        case Method::icp: return solve_icp(model, cfg);
        case Method::newton: return solve_newton(model, cfg);
        case Method::krawczyk: return solve_krawczyk(model, cfg);
    }
    throw Error("unknown method");
}

RunReport solve_bisection(const SystemModel& model, const SolverConfig& cfg) {
    require(cfg.epsilon > 0.0, "bisection requires epsilon > 0");
    RunState st(model, cfg);
    OpCounters& ctr = st.report.counters;

    std::vector<Box> stack;
    stack.push_back(model.x0);
    while (!stack.empty()) {
        if (st.report.n_proc >= cfg.max_boxes) {
            st.report.budget_exceeded = true;
            break;
        }
        Box x = std::move(stack.back());
        stack.pop_back();
        st.report.n_proc += 1;
        if (!zero_in_system(model, x, ctr)) continue;
        if (box_diam(x, ctr) <= cfg.epsilon) {
            st.retain(std::move(x));
            continue;
        }
        auto [left, right] = bisect(x, widest_axis(x));
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
    }
    return st.finish();
}

RunReport solve_subdivision_filter(const SystemModel& model, const SolverConfig& cfg) {
    require(cfg.m >= 1, "subdivision+filter requires m >= 1");
    RunState st(model, cfg);
    OpCounters& ctr = st.report.counters;

    auto total = grid_total(model.n, cfg.m, cfg.max_boxes);
    if (!total) {
        st.report.budget_exceeded = true;
        return st.finish();
    }

    // The X0 gate evaluation is not a processed box; it runs on scratch
    // counters so that f_evals == n_proc for this method.
    OpCounters gate;
    if (!zero_in_system(model, model.x0, gate)) return st.finish();

    for (std::uint64_t idx = 0; idx < *total; ++idx) {
        Box cell = grid_cell(model.x0, cfg.m, idx);
        st.report.n_proc += 1;
        if (zero_in_system(model, cell, ctr)) st.retain(std::move(cell));
    }
    return st.finish();
}

RunReport solve_icp(const SystemModel& model, const SolverConfig& cfg) {
    require(cfg.m >= 1, "icp requires m >= 1");
    require(cfg.n_it >= 1, "icp requires an iteration cap >= 1");
    require(cfg.epsilon > 0.0, "icp requires epsilon > 0 for its stagnation test");
    RunState st(model, cfg);
    OpCounters& ctr = st.report.counters;

    auto total = grid_total(model.n, cfg.m, cfg.max_boxes);
    if (!total) {
        st.report.budget_exceeded = true;
        return st.finish();
    }

    const double stall = cfg.epsilon / 10.0;
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
        Box cur = grid_cell(model.x0, cfg.m, idx);
        st.report.n_proc += 1;
        Box result;
        for (int j = 0; j < cfg.n_it; ++j) {
            ContractionResult r = contract_system(model, cur, ctr);
            st.total_iters += 1;
            result = std::move(r.box);
            if (result.is_empty() || r.width_reduction <= stall) break;
            cur = result;
        }
        if (!result.is_empty()) st.retain(std::move(result));
    }
    return st.finish();
}

namespace {

// Shared skeleton of Algorithms 4 and 5: gate on 0 in F(X,U), then on the
// Jacobian determinant enclosure excluding zero; iterate the method-specific
// operator while progress beats epsilon/10, otherwise split down to epsilon.
template <typename StepFn>
RunReport solve_contraction_method(const SystemModel& model, const SolverConfig& cfg,
                                   StepFn&& step) {
    RunState st(model, cfg);
    OpCounters& ctr = st.report.counters;
    const double stall = cfg.epsilon / 10.0;

    std::vector<Box> stack;
    stack.push_back(model.x0);
    while (!stack.empty()) {
        if (st.report.n_proc >= cfg.max_boxes) {
            st.report.budget_exceeded = true;
            break;
        }
        Box x = std::move(stack.back());
        stack.pop_back();
        st.report.n_proc += 1;
        if (!zero_in_system(model, x, ctr)) continue;

        IntervalMatrix jac = eval_jacobian(model, x, model.u, ctr);
        std::optional<Interval> det = det_gauss(jac, ctr);
        bool regular = det.has_value() && !det->contains_zero();

        if (regular) {
            Box cur = x;
            Box result;
            bool step_failed = false;
            for (int j = 0; j < cfg.n_it; ++j) {
                std::optional<Box> next = step(jac, cur, ctr);
                if (!next) {
                    step_failed = true; // singular preconditioner: fall through to split
                    break;
                }
                st.total_iters += 1;
                double before = box_diam(cur, ctr);
                result = intersect(*next, cur, ctr);
                if (result.is_empty()) break;
                double after = box_diam(result, ctr);
                if (before - after < stall) break;
                cur = result;
            }
            if (!step_failed) {
                if (!result.is_empty()) st.retain(std::move(result));
                continue;
            }
        }

        if (box_diam(x, ctr) > cfg.epsilon) {
            auto [left, right] = bisect(x, widest_axis(x));
            stack.push_back(std::move(right));
            stack.push_back(std::move(left));
        } else {
            st.retain(std::move(x));
        }
    }
    return st.finish();
}

} // namespace

RunReport solve_newton(const SystemModel& model, const SolverConfig& cfg) {
    require(cfg.epsilon > 0.0, "newton requires epsilon > 0");
    require(cfg.n_it >= 1, "newton requires an iteration cap >= 1");

    return solve_contraction_method(
        model, cfg, [&](const IntervalMatrix& jac, const Box& cur, OpCounters& ctr) {
            std::optional<IntervalMatrix> inv = inverse_gauss(jac, ctr);
            if (!inv) return std::optional<Box>();
            std::vector<double> center = cur.midpoint();
            Box fmid = eval_system_at_point(model, center, model.u, ctr);
            Box newton_image = point_sub_box(center, mat_vec(*inv, fmid, ctr), ctr);
            return std::optional<Box>(std::move(newton_image));
        });
}

RunReport solve_krawczyk(const SystemModel& model, const SolverConfig& cfg) {
    require(cfg.epsilon > 0.0, "krawczyk requires epsilon > 0");
    require(cfg.n_it >= 1, "krawczyk requires an iteration cap >= 1");

    return solve_contraction_method(
        model, cfg, [&](const IntervalMatrix& jac, const Box& cur, OpCounters& ctr) {
            std::optional<RealMatrix> y = real_inverse(mid_matrix(jac));
            if (!y) return std::optional<Box>();
            ctr.inversions += 1;
            std::vector<double> center = cur.midpoint();
            Box fx0 = eval_system_at_point(model, center, model.u, ctr);
            Box yf = real_mat_vec(*y, fx0, ctr);

            IntervalMatrix iyj = real_mat_interval_mat(*y, jac, ctr);
            const int n = iyj.dim();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    iyj.at(i, j) = sub(Interval(i == j ? 1.0 : 0.0), iyj.at(i, j), ctr);

            Box offset = box_sub_point(cur, center, ctr);
            Box k = box_add(point_sub_box(center, yf, ctr), mat_vec(iyj, offset, ctr), ctr);
            return std::optional<Box>(std::move(k));
        });
}

} // namespace ivsolve
