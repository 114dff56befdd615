#include <benchmark/benchmark.h>

#include "n2coset/characters.hpp"
#include "n2coset/fusion.hpp"

using namespace n2coset;

namespace {

void BM_SeriesMul(benchmark::State& state) {
    long N = state.range(0);
    Series2 t3 = theta(ThetaIndex{3}, Rational(N));
    Series2 ei = eta_inv(Rational(N));
    for (auto _ : state) benchmark::DoNotOptimize(mul(t3, ei));
}
BENCHMARK(BM_SeriesMul)->Arg(8)->Arg(16)->Arg(32);

void BM_EtaInv(benchmark::State& state) {
    long N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(eta_inv(Rational(N)));
}
BENCHMARK(BM_EtaInv)->Arg(64)->Arg(256);

void BM_MulInverse(benchmark::State& state) {
    long N = state.range(0);
    Series2 e = eta(Rational(N));
    for (auto _ : state) benchmark::DoNotOptimize(mul_inverse(e));
}
BENCHMARK(BM_MulInverse)->Arg(16)->Arg(48);

void BM_CharVacuum41(benchmark::State& state) {
    MinimalModel m(4, 1);
    ModuleLabel vac = n2_L(0, Rational(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(char_n2(m, vac, CharMethod::AppellLerch, false, Rational(state.range(0))));
}
BENCHMARK(BM_CharVacuum41)->Arg(8)->Arg(16);

void BM_CharD32(benchmark::State& state) {
    MinimalModel m(3, 2);
    ModuleLabel d = n2_D(0, rat(1, 2), 1, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(char_n2(m, d, CharMethod::AppellLerch, false, Rational(state.range(0))));
}
BENCHMARK(BM_CharD32)->Arg(6)->Arg(12);

void BM_BranchVerify(benchmark::State& state) {
    MinimalModel m(4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(branch_verify(m, sl2_L(1), 0, false, Rational(6), 8));
}
BENCHMARK(BM_BranchVerify);

void BM_GrothFuse(benchmark::State& state) {
    MinimalModel m(3, 2);
    ModuleLabel e = n2_E(0, rat(1, 3), 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(groth_fuse_n2(m, e, e));
}
BENCHMARK(BM_GrothFuse);

}  // namespace

BENCHMARK_MAIN();
