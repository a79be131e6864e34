#include <benchmark/benchmark.h>

#include "gapamp/clique_reduce.hpp"
#include "gapamp/dmc_reduce.hpp"
#include "gapamp/generators.hpp"
#include "gapamp/oracles.hpp"
#include "gapamp/sampler.hpp"
#include "gapamp/so_amplify.hpp"

using namespace gapamp;

namespace {

MixedInstance bench_instance(std::uint32_t edges) {
    return gen_random_mixed({.n = 12, .k = 4, .edges = edges, .arcs = 14,
                             .planted = true, .seed = 99});
}

void BM_opt_so(benchmark::State& state) {
    MixedInstance inst = bench_instance(std::uint32_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(opt_so(inst, kOrientationCap, 1).value);
}
BENCHMARK(BM_opt_so)->Arg(8)->Arg(10);

void BM_opt_so_threaded(benchmark::State& state) {
    MixedInstance inst = bench_instance(10);
    for (auto _ : state)
        benchmark::DoNotOptimize(opt_so(inst, kOrientationCap, unsigned(state.range(0))).value);
}
BENCHMARK(BM_opt_so_threaded)->Arg(1)->Arg(4);

void BM_satisfied_pairs_layered(benchmark::State& state) {
    LayeredInstance h = amplify(gen_yes_chain(2), plan(2, 2, 3, 4),
                                WiringMode::sampled(5), std::uint64_t(1) << 22);
    Orientation lifted = witness_lift(yes_chain_witness(h.base), h);
    for (auto _ : state)
        benchmark::DoNotOptimize(satisfied_pairs_so(h.instance, lifted).count);
}
BENCHMARK(BM_satisfied_pairs_layered);

void BM_verify_sampler(benchmark::State& state) {
    TupleDomain domain{3, 4};
    FunctionFamily functions = indicator_mixture_family(domain, 256, 42);
    SamplerFamily family = sample_tuples(domain, 8000, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_sampler(family, functions, Rational(1, 10)).ok);
}
BENCHMARK(BM_verify_sampler);

void BM_reduce_dmc_sampled(benchmark::State& state) {
    MulticutInstance base = gen_dmc_no();
    DmcPlan p = plan_dmc(1, 2);
    for (auto _ : state) {
        DmcReduction red = reduce_dmc(base, p, WiringMode::sampled(7), std::uint64_t(1) << 22);
        benchmark::DoNotOptimize(red.instance.arcs.size());
    }
}
BENCHMARK(BM_reduce_dmc_sampled);

void BM_min_beta(benchmark::State& state) {
    MixedInstance inst = gen_random_mixed({.n = 7, .k = 2, .edges = 5, .arcs = 6,
                                           .planted = true, .seed = 3});
    for (auto _ : state) {
        auto result = min_beta(inst, inst.n);
        benchmark::DoNotOptimize(result.has_value());
    }
}
BENCHMARK(BM_min_beta);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
