#include <benchmark/benchmark.h>

#include <random>

#include "screwon/dynamics.hpp"
#include "screwon/elliptic.hpp"
#include "screwon/lax.hpp"
#include "screwon/levelsets.hpp"
#include "screwon/quantum.hpp"

using namespace screwon;

namespace {

const ModelParams kParams{1.0, 1.0};
const PhaseState kState{{0.4, -0.3, 0.8}, {0.9, 0.2, -0.5}};

void BM_Integrate(benchmark::State& state) {
    const double t_end = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto traj = dynamics::integrate(kState, kParams, t_end, 1e-10);
        benchmark::DoNotOptimize(traj.states.back());
    }
}
BENCHMARK(BM_Integrate)->Arg(10)->Arg(100);

void BM_Classify(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<conserved::ConservedSet> qs;
    for (int i = 0; i < 1024; ++i) {
        conserved::ConservedSet q;
        q.c = d(rng);
        q.m = d(rng);
        q.s = std::abs(d(rng)) + 0.05;
        q.h = d(rng);
        qs.push_back(q);
    }
    for (auto _ : state) {
        int tags = 0;
        for (const auto& q : qs) tags += static_cast<int>(levelsets::classify(q, 1.0, 1.0).tag);
        benchmark::DoNotOptimize(tags);
    }
    state.SetItemsProcessed(state.iterations() * qs.size());
}
BENCHMARK(BM_Classify);

void BM_Wp(benchmark::State& state) {
    const auto q = conserved::ConservedSet{3.0, -1.0, 1.0, 1.0, 4.0};
    const auto [g2, g3] = elliptic::weierstrass_invariants(q, 1.0, 1.0);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(elliptic::wp({t, 1.2}, g2, g3));
        t += 0.01;
        if (t > 5.0) t = 0.1;
    }
}
BENCHMARK(BM_Wp);

void BM_RmatrixResidual(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(lax::rmatrix_residual(kState, kParams,
                                                       poisson::Kind::Nilpotent,
                                                       {2.0, 0.0}, {0.5, 0.0}));
    }
}
BENCHMARK(BM_RmatrixResidual);

void BM_WeakSpectrum(benchmark::State& state) {
    quantum::RadialProblem p;
    p.lambda_t = 0.0;
    for (auto _ : state) {
        auto spec = quantum::solve_spectrum(p, 3, {1500, 0.0});
        benchmark::DoNotOptimize(spec.eigenvalues[0]);
    }
}
BENCHMARK(BM_WeakSpectrum);

}  // namespace

BENCHMARK_MAIN();
