// Serial reference vs OpenMP for the parallel kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "bosejump/dom.hpp"
#include "bosejump/field.hpp"

using namespace bosejump;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

struct SweepFixture {
    AlphaModel model{1.0};
    DomGrid grid = DomGrid::make(model);
    SweepOperator op{model, grid};
    std::vector<double> source, phi;
    SweepFixture() : source(grid.nodes()), phi(grid.channels() * grid.nodes()) {
        for (std::size_t i = 0; i < source.size(); ++i) source[i] = 0.27 + grid.x[i];
    }
};

SweepFixture& sweep_fixture() {
    static SweepFixture f;
    return f;
}

const MilneSolution& milne() {
    static const MilneSolution s(AlphaModel(1.0), 1.0);
    return s;
}

void BM_sweep(benchmark::State& state) {
    auto& f = sweep_fixture();
    for (auto _ : state) {
        f.op.sweep(f.source, 0.27, 1.0, f.phi, mode(state));
        benchmark::DoNotOptimize(f.phi.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.phi.size()));
}

void BM_moment(benchmark::State& state) {
    auto& f = sweep_fixture();
    f.op.sweep(f.source, 0.27, 1.0, f.phi, Execution::parallel);
    std::vector<double> out(f.grid.nodes());
    for (auto _ : state) {
        f.op.moment(f.phi, out, mode(state));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_sample_boundary(benchmark::State& state) {
    const auto src = exact_source(AlphaModel(1.0));
    std::vector<double> mu;
    for (int i = 0; i < 512; ++i) mu.push_back(1e-3 * std::pow(1.03, i));
    for (auto _ : state) benchmark::DoNotOptimize(sample_boundary(src, mu, mode(state)));
}

void BM_evaluate_grid(benchmark::State& state) {
    const auto& s = milne();
    std::vector<double> xs{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> mus;
    for (int i = 0; i < 40; ++i) mus.push_back(-0.975 + 0.05 * i);
    for (auto _ : state) benchmark::DoNotOptimize(s.evaluate_grid(xs, mus, mode(state)));
}

}  // namespace

BENCHMARK(BM_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_moment)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_sample_boundary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_evaluate_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
