#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "todatt/classify.hpp"
#include "todatt/identities.hpp"
#include "todatt/solver.hpp"
#include "todatt/walgebra.hpp"

using namespace todatt;

namespace {

AsymptoticData sample_data(int n) {
    // Small symmetric data, well inside m_{j-1} - m_j + 2 > 0.
    std::vector<double> m(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        const int p = antisymmetric_partner(n, 0, j);
        if (p > j) {
            m[j] = -0.1 * (j + 1);
            m[p] = -m[j];
        }
    }
    return {n, 0, m};
}

void BM_SolveRadial(benchmark::State& state) {
    const AsymptoticData d = sample_data(static_cast<int>(state.range(0)));
    const Grid g{-6.0, 2.5, static_cast<int>(state.range(1))};
    for (auto _ : state) {
        RadialSolution s = solve_radial_toda(d, g);
        benchmark::DoNotOptimize(s.residual_sup);
    }
}
BENCHMARK(BM_SolveRadial)
    ->ArgsProduct({{1, 3, 6}, {500, 2000, 8000}})
    ->Unit(benchmark::kMillisecond);

void BM_RadialJacobian(benchmark::State& state) {
    const AsymptoticData d = sample_data(static_cast<int>(state.range(0)));
    const RadialSolution s = solve_radial_toda(d, {-6.0, 2.5, 2000});
    for (auto _ : state) benchmark::DoNotOptimize(radial_jacobian(s.x, s.w).diagonal.data());
}
BENCHMARK(BM_RadialJacobian)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_IdentitySuite(benchmark::State& state) {
    const auto mode = state.range(1) ? Arithmetic::exact : Arithmetic::floating;
    for (auto _ : state) benchmark::DoNotOptimize(run_identity_suite(1, static_cast<int>(state.range(0)), mode).size());
}
BENCHMARK(BM_IdentitySuite)->Args({4, 1})->Args({8, 1})->Args({8, 0})->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> w(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        const int p = antisymmetric_partner(n, 1, j);
        if (p > j) {
            w[j] = u(rng);
            w[p] = -w[j];
        }
    }
    const FrameStructure s = build_toda_frame(n, 1, w);
    for (auto _ : state) benchmark::DoNotOptimize(canonicalize_to_toda_frame(s).w.data());
}
BENCHMARK(BM_Canonicalize)->DenseRange(1, 8, 1)->Unit(benchmark::kMicrosecond);

void BM_NormalizeL(benchmark::State& state) {
    const int n = 8;
    std::vector<double> w(n + 1, 0.0);
    w[0] = 0.25;
    w[n] = -0.25;  // l = 0 pairing 0 <-> n
    for (auto _ : state) benchmark::DoNotOptimize(normalize_l(n, 0, w).shift);
}
BENCHMARK(BM_NormalizeL);

void BM_MinimalModel(benchmark::State& state) {
    const RationalAsymptoticData d{3, 0, {Rational(-1), Rational(-1, 3), Rational(1, 3), Rational(1)}};
    for (auto _ : state) benchmark::DoNotOptimize(minimal_model_data(d).c_eff);
}
BENCHMARK(BM_MinimalModel);

}  // namespace

BENCHMARK_MAIN();
