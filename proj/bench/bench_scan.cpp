// Serial reference loop vs the OpenMP loop over the same sample.
#include <map>
#include <string>
#include <benchmark/benchmark.h>

#include "oneill/scan.hpp"
#include "oneill/theorems.hpp"

using namespace oneill;

namespace {

struct Fixture {
    LabModel model;
    Sample sample;
    EvalOptions opts;
};

const Fixture& fixture(const char* name) {
    static std::map<std::string, Fixture> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        Fixture f{load_model(name), {}, {}};
        f.sample = draw_sample(f.model, 64, 11);
        f.opts.theorems = theorems_for(f.model.submersion->xi_position);
        f.opts.probe = ProbeMode::parse("all");
        it = cache.emplace(name, std::move(f)).first;
    }
    return it->second;
}

void BM_Serial(benchmark::State& state, const char* name) {
    const Fixture& f = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_points_serial(f.model, f.sample.points, f.opts));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.sample.points.size()));
}

void BM_Parallel(benchmark::State& state, const char* name) {
    const Fixture& f = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_points_parallel(f.model, f.sample.points, f.opts));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.sample.points.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, vertical_xi, "vertical-xi")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, vertical_xi, "vertical-xi")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Serial, horizontal_xi, "horizontal-xi")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, horizontal_xi, "horizontal-xi")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
