#include <benchmark/benchmark.h>

#include <vector>

#include "gwcache/achievable.hpp"
#include "gwcache/bounds.hpp"
#include "gwcache/gray_wyner.hpp"
#include "gwcache/optimizer.hpp"
#include "gwcache/pmf.hpp"
#include "gwcache/range_coder.hpp"
#include "gwcache/rng.hpp"
#include "gwcache/simulator.hpp"

namespace {

void bm_corner(benchmark::State& state) {
    auto j = gwcache::dsbs(0.2);
    auto a = gwcache::wyner_aux_dsbs(0.2, gwcache::dsbs_p1(0.2));
    for (auto _ : state) benchmark::DoNotOptimize(gwcache::gw_corner(j, a));
}
BENCHMARK(bm_corner);

void bm_lower_bound_pool(benchmark::State& state) {
    auto j = gwcache::dsbs(0.2);
    gwcache::OptimizerConfig cfg;
    cfg.restarts = 0;  // structured seeds and the symmetric-slice family only
    for (auto _ : state) benchmark::DoNotOptimize(gwcache::r_lb_gw(j, 0.5, cfg));
}
BENCHMARK(bm_lower_bound_pool);

void bm_scheme_rate_slice(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gwcache::r_ub_gw_dsbs(0.2, 0.5));
}
BENCHMARK(bm_scheme_rate_slice);

void bm_optimize_one_restart(benchmark::State& state) {
    auto j = gwcache::dsbs(0.2);
    gwcache::OptimizerConfig cfg;
    cfg.restarts = 1;
    gwcache::Objective obj{gwcache::ObjectiveKind::MaxHalfMinCondEntropy, 0.0, {}};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            gwcache::optimize(j, obj, gwcache::ParamMode::MarkovSymmetric, cfg, true));
}
BENCHMARK(bm_optimize_one_restart);

void bm_range_coder(benchmark::State& state) {
    auto n = static_cast<size_t>(state.range(0));
    auto eng = gwcache::stream_engine(7, 0);
    gwcache::BitString bits(n);
    for (size_t i = 0; i < n; ++i) bits.set(i, gwcache::uniform01(eng) < 0.11 ? 1 : 0);
    for (auto _ : state) {
        auto bytes = gwcache::rc_encode(bits, 0.11);
        benchmark::DoNotOptimize(gwcache::rc_decode(bytes, 0.11, n));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * n);
}
BENCHMARK(bm_range_coder)->Arg(1 << 12)->Arg(1 << 16);

void bm_delivery_round(benchmark::State& state) {
    gwcache::SourceSpec spec;
    spec.family = gwcache::SourceFamily::DsbsWyner;
    spec.p0 = 0.2;
    auto lib = gwcache::gen_dsbs_wyner(1 << 12, 0.2, 99);
    auto d = gwcache::gw_encode(lib);
    auto caches = gwcache::cache_encode(d, 0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(gwcache::run_delivery(lib, d, caches, {1, 2}));
}
BENCHMARK(bm_delivery_round);

}  // namespace

BENCHMARK_MAIN();
