#include <benchmark/benchmark.h>

#include <filesystem>

#include "slowlight/analysis.hpp"
#include "slowlight/scenario.hpp"

using namespace slowlight;

namespace {

Waveform amg_input(std::size_t n) {
    const PulseSpec spec = PulseSpec::amg(6.5e-6, 1.0, 700e3);
    const SamplingGrid g = SamplingGrid::centered(n, 16.0 * 6.5e-6 * 4.0 / static_cast<double>(n), 0.0);
    return synth(spec, g);
}

void BM_Dft(benchmark::State& state) {
    const Waveform w = amg_input(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dft(w));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_Propagate(benchmark::State& state) {
    const Waveform w = amg_input(static_cast<std::size_t>(state.range(0)));
    const Channel ch = Channel::analytic(calibrate_from_transmission(0.615, 0.10, 350e3));
    for (auto _ : state) benchmark::DoNotOptimize(propagate_waveform(w, ch));
}
BENCHMARK(BM_Propagate)->Arg(4096)->Arg(1 << 16);

void BM_Calibrate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(calibrate_from_transmission(0.615, 0.10, 350e3));
}
BENCHMARK(BM_Calibrate);

void BM_Metrics(benchmark::State& state) {
    const Waveform in = amg_input(4096);
    const Waveform out =
        propagate_waveform(in, Channel::analytic(calibrate_from_transmission(0.615, 0.10, 350e3))).output;
    for (auto _ : state) benchmark::DoNotOptimize(measure_metrics(out, in));
}
BENCHMARK(BM_Metrics);

void BM_RunScenario(benchmark::State& state) {
    const Scenario s = builtin_scenario("fig4");
    const auto root = std::filesystem::temp_directory_path() / "slowlight_bench";
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s, root));
    std::filesystem::remove_all(root);
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
