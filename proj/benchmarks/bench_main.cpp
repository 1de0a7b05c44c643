#include <benchmark/benchmark.h>

#include "ivsolve/contractor.hpp"
#include "ivsolve/linalg.hpp"
#include "ivsolve/models.hpp"
#include "ivsolve/solver.hpp"

using namespace ivsolve;

namespace {

Interval make_a() { return Interval(1.25, 2.5); }
Interval make_b() { return Interval(-0.75, 3.5); }

void BM_interval_add(benchmark::State& state) {
    OpCounters c;
    Interval a = make_a(), b = make_b();
    for (auto _ : state) benchmark::DoNotOptimize(add(a, b, c));
}
BENCHMARK(BM_interval_add);

void BM_interval_mul(benchmark::State& state) {
    OpCounters c;
    Interval a = make_a(), b = make_b();
    for (auto _ : state) benchmark::DoNotOptimize(mul(a, b, c));
}
BENCHMARK(BM_interval_mul);

void BM_interval_div(benchmark::State& state) {
    OpCounters c;
    Interval a = make_a(), b(0.5, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(div(a, b, c));
}
BENCHMARK(BM_interval_div);

void BM_int_pow10(benchmark::State& state) {
    OpCounters c;
    Interval a(0.0, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(int_pow(a, 10, c));
}
BENCHMARK(BM_int_pow10);

void BM_system_eval(benchmark::State& state) {
    SystemModel m = hill_network(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(eval_system(m, m.x0, m.u, c));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_system_eval)->Arg(2)->Arg(5)->Arg(10);

void BM_jacobian_eval(benchmark::State& state) {
    SystemModel m = hill_network(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(eval_jacobian(m, m.x0, m.u, c));
}
BENCHMARK(BM_jacobian_eval)->Arg(2)->Arg(5)->Arg(10);

IntervalMatrix narrow_matrix(int n) {
    IntervalMatrix a(n);
    std::uint64_t s = 88172645463325252ull;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return static_cast<double>(s % 1000) / 250.0 - 2.0;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = next();
            a.at(i, j) = Interval(v - 0.001, v + 0.001);
        }
        a.at(i, i) = Interval(4.0, 4.01);
    }
    return a;
}

void BM_det_laplace(benchmark::State& state) {
    IntervalMatrix a = narrow_matrix(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(det_laplace(a, c));
}
BENCHMARK(BM_det_laplace)->DenseRange(2, 7);

void BM_det_gauss(benchmark::State& state) {
    IntervalMatrix a = narrow_matrix(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(det_gauss(a, c));
}
BENCHMARK(BM_det_gauss)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_inverse_gauss(benchmark::State& state) {
    IntervalMatrix a = narrow_matrix(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(inverse_gauss(a, c));
}
BENCHMARK(BM_inverse_gauss)->Arg(2)->Arg(5)->Arg(10);

void BM_krawczyk_inverse(benchmark::State& state) {
    IntervalMatrix a = narrow_matrix(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(krawczyk_inverse(a, c));
}
BENCHMARK(BM_krawczyk_inverse)->Arg(2)->Arg(5)->Arg(10);

void BM_contractor_sweep(benchmark::State& state) {
    SystemModel m = hill_network(static_cast<int>(state.range(0)));
    OpCounters c;
    for (auto _ : state) benchmark::DoNotOptimize(contract_system(m, m.x0, c));
}
BENCHMARK(BM_contractor_sweep)->Arg(2)->Arg(5);

void BM_solve_newton_hill2(benchmark::State& state) {
    SystemModel m = hill_network(2);
    SolverConfig cfg;
    cfg.method = Method::newton;
    cfg.epsilon = 1e-3;
    cfg.store_retained = false;
    for (auto _ : state) {
        RunReport rep = solve(m, cfg);
        benchmark::DoNotOptimize(rep.n_proc);
    }
}
BENCHMARK(BM_solve_newton_hill2);

void BM_solve_subdivision_hill2(benchmark::State& state) {
    SystemModel m = hill_network(2);
    SolverConfig cfg;
    cfg.method = Method::subdivision_filter;
    cfg.m = 100;
    cfg.store_retained = false;
    for (auto _ : state) {
        RunReport rep = solve(m, cfg);
        benchmark::DoNotOptimize(rep.n_keep);
    }
}
BENCHMARK(BM_solve_subdivision_hill2);

} // namespace

BENCHMARK_MAIN();
