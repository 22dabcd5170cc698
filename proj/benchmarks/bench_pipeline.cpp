#include "jlq/lagrange.hpp"
#include "jlq/noether.hpp"
#include "jlq/parser.hpp"
#include "jlq/quantizer.hpp"

#include <benchmark/benchmark.h>

using namespace jlq;

namespace {

std::vector<PointSymmetry> free_particle_symmetries() {
    return {{parse("q*t"), parse("q^2"), "X1"}, {parse("q"), parse("0"), "X2"}, {parse("t^2"), parse("q*t"), "X3"},
            {parse("0"), parse("q"), "X4"},     {parse("t"), parse("0"), "X5"},   {parse("1"), parse("0"), "X6"},
            {parse("0"), parse("t"), "X7"},     {parse("0"), parse("1"), "X8"}};
}

void BM_ParseNormalize(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(parse("-qd/q*log(qd) - (1/t - qd/q)*log(t*qd - q) + (1 + log(q))/t + (t*qd - q)^3/(t^2*q)"));
}
BENCHMARK(BM_ParseNormalize);

void BM_SymmetrySearch(benchmark::State& state) {
    Ode2 ode(Expr{});
    for (auto _ : state) benchmark::DoNotOptimize(find_point_symmetries(ode, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SymmetrySearch)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MultiplierSweep(benchmark::State& state) {
    Ode2 ode(Expr{});
    auto syms = free_particle_symmetries();
    for (auto _ : state) benchmark::DoNotOptimize(multiplier_sweep(ode, syms));
}
BENCHMARK(BM_MultiplierSweep)->Unit(benchmark::kMillisecond);

void BM_Lagrangians(benchmark::State& state) {
    Ode2 ode(Expr{});
    auto ms = distinct_multipliers(multiplier_sweep(ode, free_particle_symmetries()));
    for (auto _ : state)
        for (auto& m : ms) benchmark::DoNotOptimize(lagrangian_from_multiplier(ode, m));
}
BENCHMARK(BM_Lagrangians)->Unit(benchmark::kMillisecond);

void BM_NoetherSpectrum(benchmark::State& state) {
    Ode2 ode(Expr{});
    auto syms = free_particle_symmetries();
    std::vector<Lagrangian> ls;
    for (auto& m : distinct_multipliers(multiplier_sweep(ode, syms))) ls.push_back(lagrangian_from_multiplier(ode, m));
    for (auto _ : state) benchmark::DoNotOptimize(noether_spectrum(ls, syms, ode));
}
BENCHMARK(BM_NoetherSpectrum)->Unit(benchmark::kMillisecond);

void BM_SchrodingerQuantization(benchmark::State& state) {
    std::vector<PdeSymmetry> geo{{parse("t^2"), parse("t*x"), Expr(), "X3"},
                                 {parse("2*t"), parse("x"), Expr(), "X4+2*X5"},
                                 {parse("1"), parse("0"), Expr(), "X6"},
                                 {parse("0"), parse("t"), Expr(), "X7"},
                                 {parse("0"), parse("1"), Expr(), "X8"}};
    QuantizeOptions opt;
    opt.schrodinger_mode = true;
    opt.degree = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_determining(geo, opt));
}
BENCHMARK(BM_SchrodingerQuantization)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Reduction(benchmark::State& state) {
    LinearPde2 pde;
    const char* c[] = {"4*t^2", "8*t*x", "4*x^2", "12*t", "12*x", "3"};
    for (int k = 0; k < 6; ++k) pde.c[k] = parse(c[k]);
    for (auto _ : state) {
        Expr xi = characteristic_coordinate(pde);
        auto red = to_normal_form(pde, xi);
        auto sol = solve_euler(red);
        benchmark::DoNotOptimize(back_substitution_check(pde, red, sol));
    }
}
BENCHMARK(BM_Reduction)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
