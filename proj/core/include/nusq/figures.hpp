#pragma once

#include <string>
#include <vector>

#include "nusq/signals.hpp"

namespace nusq {

// Canonical experiment signals, numbered 1..7. Each preset carries the
// generator spec, the sampling parameters, and the true instantaneous
// frequencies used for error reporting. Preset 3 (a Bessel pulse) is not an
// AM-FM sum; its spec holds a single pseudo-component whose quoted IF is the
// nominal constant 3 around which its spectral energy concentrates.
struct FigurePreset {
  int id = 0;
  std::string name;
  SignalSpec spec;
  double T = 0.1;
  double Tprime_default = 0.08;
  double noise_sigma = 0.0;              // additive Gaussian noise, if any
  // True IF of each component, as callables of time (Hz).
  std::vector<std::function<double(double)>> true_if;
};

// Valid ids are 1..7; anything else throws std::invalid_argument.
FigurePreset figure_preset(int id);

// Synthetic event-train fixture standing in for an ECG recording: spikes at
// roughly 1 Hz whose amplitudes ride a slow respiratory envelope, plus the
// densely sampled envelope reference channel. Deterministic in the seed.
struct EdrFixture {
  SampledSignal rpeaks;           // spike times and amplitudes
  std::vector<double> resp_times; // uniform reference channel
  std::vector<double> resp_values;
  double resp_dt = 0.0;
  double modulation_hz = 0.25;    // nominal envelope frequency
};

EdrFixture make_edr_fixture(double t0, double t1, std::uint64_t seed);

}  // namespace nusq
