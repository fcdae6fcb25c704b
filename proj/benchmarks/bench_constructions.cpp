#include <benchmark/benchmark.h>

#include "symgeo/coverings.hpp"
#include "symgeo/geography.hpp"
#include "symgeo/recipe.hpp"

using namespace symgeo;

static void BM_HomotopyElliptic(benchmark::State& state) {
    const Int n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(homotopy_elliptic(n, n % 2 == 1 ? 3 : 4));
}
BENCHMARK(BM_HomotopyElliptic)->Arg(2)->Arg(10)->Arg(40)->Arg(200);

static void BM_SpinSurface(benchmark::State& state) {
    const Int t = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(spin_surface(12, 6, t));
}
BENCHMARK(BM_SpinSurface)->Arg(1)->Arg(6)->Arg(24);

static void BM_FamilyMember(benchmark::State& state) {
    FamilyRequest rq;
    rq.d = 45;
    rq.divisors = {45, 15, 9, 5};
    rq.n = 7;
    std::uint64_t mask = 0;
    for (auto _ : state) benchmark::DoNotOptimize(family_member(rq, mask++ & 7));
}
BENCHMARK(BM_FamilyMember);

static void BM_InequivalentFamilyN(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    FamilyRequest rq;
    const Int primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    rq.d = 1;
    for (std::size_t i = 0; i < N && i < 4; ++i) rq.d *= primes[i];
    rq.divisors = {rq.d};
    for (std::size_t i = 0; i < N; ++i) rq.divisors.push_back(i < 4 ? rq.d / primes[i] : 1);
    rq.n = static_cast<Int>(2 * N + 1);
    for (auto _ : state) benchmark::DoNotOptimize(inequivalent_family(rq));
}
BENCHMARK(BM_InequivalentFamilyN)->DenseRange(1, 7, 3)->Unit(benchmark::kMillisecond);

static void BM_Validate(benchmark::State& state) {
    const auto m = homotopy_elliptic(40, 39);
    for (auto _ : state) benchmark::DoNotOptimize(validate(m));
}
BENCHMARK(BM_Validate);

static void BM_RecipeReplay(benchmark::State& state) {
    const auto m = nonspin_surface(5, 6, 3);
    for (auto _ : state) benchmark::DoNotOptimize(execute_recipe(m.recipe));
}
BENCHMARK(BM_RecipeReplay);

static void BM_PluricanonicalCover(benchmark::State& state) {
    const auto base = catalog("barlow");
    const auto p = CoverParams::make(6, 6);
    for (auto _ : state) benchmark::DoNotOptimize(pluricanonical_cover(base, p));
}
BENCHMARK(BM_PluricanonicalCover);

BENCHMARK_MAIN();
