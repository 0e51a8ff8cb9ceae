// Serial reference vs OpenMP assembly of the cochain and double complexes.
#include "boundaries/dress.hpp"

#include <benchmark/benchmark.h>

using namespace boundaries;

namespace {

Assembly mode_of(const benchmark::State& s) { return s.range(0) ? Assembly::Parallel : Assembly::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_cochain_s3(benchmark::State& state) {
    auto n = nerve_of_group(Group::symmetric3(), 5);
    auto sys = CoefficientSystem<Rational>::constant(n->set(), SeminormedModule<Rational>::sup(2));
    sys.validate();
    auto a = std::make_shared<const CoefficientSystem<Rational>>(std::move(sys));
    for (auto _ : state) benchmark::DoNotOptimize(build_cochain_complex(a, 5, mode_of(state)));
    label(state);
}

void BM_double_complex_z4(benchmark::State& state) {
    Group g = Group::cyclic(4), q = Group::cyclic(2);
    auto ng = nerve_of_group(g, 5), nq = nerve_of_group(q, 5);
    auto f = nerve_map(*ng, *nq, Homomorphism{&g, &q, {0, 1, 0, 1}});
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(f, 5));
    auto sys = CoefficientSystem<Mod<2>>::constant(ng->set(), SeminormedModule<Mod<2>>::trivial(1));
    sys.validate();
    auto a = std::make_shared<const CoefficientSystem<Mod<2>>>(std::move(sys));
    for (auto _ : state) benchmark::DoNotOptimize(build_double_complex(grid, a, false, mode_of(state)));
    label(state);
}

void BM_double_complex_product(benchmark::State& state) {
    auto pr = product(nerve_of_group(Group::cyclic(2), 4)->set(), nerve_of_group(Group::cyclic(3), 4)->set());
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(pr.pr1, 4));
    auto sys = CoefficientSystem<Rational>::constant(pr.set, SeminormedModule<Rational>::trivial(1));
    sys.validate();
    auto a = std::make_shared<const CoefficientSystem<Rational>>(std::move(sys));
    for (auto _ : state) benchmark::DoNotOptimize(build_double_complex(grid, a, false, mode_of(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_cochain_s3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_double_complex_z4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_double_complex_product)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
