// Microbenchmarks for the hot paths: series multiplication, theta ratio
// expansion, and the genus pipelines.
#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "ellgen/identities.hpp"
#include "ellgen/localization.hpp"
#include "ellgen/theta.hpp"

using namespace ellgen;

namespace {

std::shared_ptr<const SeriesContext> bench_ctx(int qmax, int tspan) {
    SeriesContext c;
    c.dq = 1;
    c.dy = 2;
    c.qmax = qmax;
    c.tmin = -tspan;
    c.tmax = tspan;
    c.ymin = -60;
    c.ymax = 60;
    c.validate();
    return std::make_shared<const SeriesContext>(c);
}

Series random_series(const std::shared_ptr<const SeriesContext>& ctx, int nterms, unsigned seed) {
    std::mt19937 rng(seed);
    Series s(ctx);
    for (int i = 0; i < nterms; ++i) {
        Expo e;
        e.q() = static_cast<int16_t>(rng() % (ctx->qmax + 1));
        e.y() = static_cast<int16_t>(int(rng() % 41) - 20);
        e.t1() = static_cast<int16_t>(int(rng() % (2 * ctx->tmax + 1)) - ctx->tmax);
        e.t2() = static_cast<int16_t>(int(rng() % (2 * ctx->tmax + 1)) - ctx->tmax);
        s.add_term(e, FieldElement(long(rng() % 19) - 9));
    }
    return s;
}

void BM_SeriesMul(benchmark::State& state) {
    auto ctx = bench_ctx(4, 8);
    Series a = random_series(ctx, int(state.range(0)), 11);
    Series b = random_series(ctx, int(state.range(0)), 13);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMul)->Arg(200)->Arg(1000);

void BM_ThetaRatio(benchmark::State& state) {
    auto ctx = bench_ctx(int(state.range(0)), 10);
    ThetaRatioSpec spec;
    spec.w = {2, -1};
    for (auto _ : state) benchmark::DoNotOptimize(theta_ratio(spec, ctx));
}
BENCHMARK(BM_ThetaRatio)->Arg(4)->Arg(8);

void BM_EllHilb2(benchmark::State& state) {
    auto ctx = bench_ctx(int(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(ell_hilb(2, ctx));
}
BENCHMARK(BM_EllHilb2)->Arg(2)->Arg(4);

void BM_VerifyDmvvP1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_dmvv(1, 2, 4));
}
BENCHMARK(BM_VerifyDmvvP1);

}  // namespace

BENCHMARK_MAIN();
