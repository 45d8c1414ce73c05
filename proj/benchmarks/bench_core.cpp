#include <benchmark/benchmark.h>

#include <random>

#include "twocopy/boxworld.hpp"
#include "twocopy/linalg.hpp"
#include "twocopy/search.hpp"
#include "twocopy/werner.hpp"
#include "twocopy/wirings.hpp"

using namespace twocopy;

static void BM_HermitianEig16(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto h = linalg::random_hermitian(16, rng);
    for (auto _ : state) {
        auto e = linalg::hermitian_eig(h);
        benchmark::DoNotOptimize(e.eigenvalues.data());
    }
}
BENCHMARK(BM_HermitianEig16);

static void BM_PptMinEigenvalue(benchmark::State& state) {
    const auto rho = werner::werner_state(0.7);
    for (auto _ : state) benchmark::DoNotOptimize(werner::ppt_min_eigenvalue(rho));
}
BENCHMARK(BM_PptMinEigenvalue);

static void BM_BbpsswStep(benchmark::State& state) {
    for (auto _ : state) {
        auto o = werner::bbpssw_step(0.8);
        benchmark::DoNotOptimize(o.out_purity_deterministic);
    }
}
BENCHMARK(BM_BbpsswStep);

static void BM_QuantumTwirl2Design(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto rho = linalg::random_density_matrix(4, rng);
    for (auto _ : state) {
        auto t = werner::twirl_quantum(rho, werner::TwirlMethod::two_design);
        benchmark::DoNotOptimize(t.entries().data());
    }
}
BENCHMARK(BM_QuantumTwirl2Design);

static void BM_BoxTwirl(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto d = boxworld::random_box(rng);
    for (auto _ : state) {
        auto t = boxworld::box_twirl(d);
        benchmark::DoNotOptimize(t.table.data());
    }
}
BENCHMARK(BM_BoxTwirl);

static void BM_LhvMembership(benchmark::State& state) {
    const auto d = boxworld::noisy_pr(0.75);  // boundary: the hardest exact case
    for (auto _ : state) {
        auto r = boxworld::lhv_membership(d);
        benchmark::DoNotOptimize(r.feasible);
    }
}
BENCHMARK(BM_LhvMembership);

static void BM_EffectiveBox(benchmark::State& state) {
    const auto [wa, wb] = wirings::figure2_wiring();
    const auto ba = wirings::behavior_of(wa), bb = wirings::behavior_of(wb);
    const auto in = boxworld::noisy_pr(0.9);
    for (auto _ : state) {
        auto e = wirings::effective_box(ba, bb, in, in);
        benchmark::DoNotOptimize(e.table.data());
    }
}
BENCHMARK(BM_EffectiveBox);

static void BM_ExtractQuadCoeffs(benchmark::State& state) {
    const auto [wa, wb] = wirings::figure2_wiring();
    const auto ba = wirings::behavior_of(wa), bb = wirings::behavior_of(wb);
    for (auto _ : state) {
        auto c = wirings::extract_quad_coeffs(ba, bb);
        benchmark::DoNotOptimize(c.q00);
    }
}
BENCHMARK(BM_ExtractQuadCoeffs);

static void BM_KernelQuadCoeffs(benchmark::State& state) {
    const auto [wa, wb] = wirings::figure2_wiring();
    const auto ba = wirings::behavior_of(wa), bb = wirings::behavior_of(wb);
    for (auto _ : state) {
        auto c = wirings::kernel_quad_coeffs(ba, bb);
        benchmark::DoNotOptimize(c.q00);
    }
}
BENCHMARK(BM_KernelQuadCoeffs);

// Pair throughput of the exhaustive scan, including class-table setup on the
// first iteration.
static void BM_SearchBlock(benchmark::State& state) {
    const std::uint32_t classes = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        wirings::SearchOptions opts;
        opts.class_limit = classes;
        opts.workers = 1;
        auto rep = wirings::search_all_wirings(opts);
        benchmark::DoNotOptimize(rep.max_gap.num);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(classes) * classes);
}
BENCHMARK(BM_SearchBlock)->Arg(512)->Arg(2048)->UseRealTime();

BENCHMARK_MAIN();
