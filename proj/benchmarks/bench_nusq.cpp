// Microbenchmarks for the hot paths: the windowed transform (both
// evaluation policies), the squeeze, the least-squares reconstruction,
// and the analytic-extension evaluation.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include <nusq/bandlimited.hpp>
#include <nusq/figures.hpp>
#include <nusq/hilbert.hpp>
#include <nusq/signals.hpp>
#include <nusq/stft.hpp>
#include <nusq/synchrosqueeze.hpp>

using namespace nusq;

namespace {

struct ChirpFixture {
  SampledSignal signal;
  ImpulseTrain train;
  Window window = gaussian_window(0.1);
  std::vector<double> times;
  FrequencyGrid freq;

  ChirpFixture() {
    const FigurePreset preset = figure_preset(2);
    signal =
        sample(preset.spec, make_perturbed_schedule(0.1, 0.08, 0.0, 30.0, 0));
    train = to_impulse_train(signal, 0.02);
    times = make_time_grid(train, 5);
    freq = make_frequency_grid(0.02, 5.0, 0.02);
  }
};

ChirpFixture& fixture() {
  static ChirpFixture f;
  return f;
}

void bm_stft_fft(benchmark::State& state) {
  ChirpFixture& f = fixture();
  for (auto _ : state) {
    TimeFreqMap map =
        modified_stft(f.train, f.window, f.times, f.freq, StftPolicy::Fft);
    benchmark::DoNotOptimize(map.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(f.times.size()));
}
BENCHMARK(bm_stft_fft)->Unit(benchmark::kMillisecond);

void bm_stft_direct(benchmark::State& state) {
  ChirpFixture& f = fixture();
  for (auto _ : state) {
    TimeFreqMap map =
        modified_stft(f.train, f.window, f.times, f.freq, StftPolicy::Direct);
    benchmark::DoNotOptimize(map.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(f.times.size()));
}
BENCHMARK(bm_stft_direct)->Unit(benchmark::kMillisecond);

void bm_stft_with_derivative(benchmark::State& state) {
  ChirpFixture& f = fixture();
  for (auto _ : state) {
    StftPair pair = stft_with_derivative(f.train, f.window, f.times, f.freq);
    benchmark::DoNotOptimize(pair.value.values.data());
  }
}
BENCHMARK(bm_stft_with_derivative)->Unit(benchmark::kMillisecond);

void bm_squeeze(benchmark::State& state) {
  ChirpFixture& f = fixture();
  const StftPair pair = stft_with_derivative(f.train, f.window, f.times, f.freq);
  const OmegaMap omega = if_information(pair.value, pair.derivative, 1e-8);
  for (auto _ : state) {
    SqueezeMap map = squeeze(omega, pair.value, 0.1, 1e-8, 5.0);
    benchmark::DoNotOptimize(map.mass.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(f.times.size()));
}
BENCHMARK(bm_squeeze)->Unit(benchmark::kMillisecond);

void bm_extract_and_link(benchmark::State& state) {
  ChirpFixture& f = fixture();
  const StftPair pair = stft_with_derivative(f.train, f.window, f.times, f.freq);
  const OmegaMap omega = if_information(pair.value, pair.derivative, 1e-8);
  const SqueezeMap map = squeeze(omega, pair.value, 0.1, 1e-8, 5.0);
  for (auto _ : state) {
    IFSet set = extract_if_set(map, 0.0);
    std::vector<IFCurve> curves = link_curves(set, 0.1);
    benchmark::DoNotOptimize(curves.data());
  }
}
BENCHMARK(bm_extract_and_link)->Unit(benchmark::kMillisecond);

// Least-squares solve cost scales with the record length; span lengths of
// 7.5, 15, and 30 s give model orders of roughly 38, 75, and 150.
void bm_reconstruct(benchmark::State& state) {
  const double span = static_cast<double>(state.range(0));
  const FigurePreset preset = figure_preset(2);
  const SampledSignal sig =
      sample(preset.spec, make_perturbed_schedule(0.1, 0.08, 0.0, span, 0));
  for (auto _ : state) {
    ReconstructionResult rec = reconstruct(sig);
    benchmark::DoNotOptimize(rec.coefficients.data());
  }
}
BENCHMARK(bm_reconstruct)
    ->Arg(7)
    ->Arg(15)
    ->Arg(30)
    ->Unit(benchmark::kMillisecond);

void bm_analytic_extension(benchmark::State& state) {
  const FigurePreset preset = figure_preset(2);
  const SampledSignal sig =
      sample(preset.spec, make_perturbed_schedule(0.1, 0.08, 0.0, 30.0, 0));
  const ReconstructionResult rec = reconstruct(sig);
  std::vector<double> grid;
  for (double t = 0.0; t <= 30.0; t += 0.01) grid.push_back(t);
  for (auto _ : state) {
    AnalyticTrace trace = analytic_extension(rec, grid);
    benchmark::DoNotOptimize(trace.if_h.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(grid.size()));
}
BENCHMARK(bm_analytic_extension)->Unit(benchmark::kMillisecond);

void bm_hilbert_if(benchmark::State& state) {
  const FigurePreset preset = figure_preset(2);
  const SampledSignal sig =
      sample(preset.spec, make_uniform_schedule(0.1, 0.0, 30.0));
  std::vector<double> values(sig.values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = sig.values[i].real();
  }
  const UniformSeries series = uniform_series(sig.schedule.times, values);
  for (auto _ : state) {
    std::vector<double> ifh = hilbert_if(series);
    benchmark::DoNotOptimize(ifh.data());
  }
}
BENCHMARK(bm_hilbert_if)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
