#include "nusq/figures.hpp"

#include <cmath>
#include <stdexcept>

#include "nusq/rng.hpp"

namespace nusq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

ComponentSpec constant_tone(double amplitude, double hz) {
  ComponentSpec c;
  c.amplitude = [amplitude](double) { return amplitude; };
  c.phase = [hz](double t) { return hz * t; };
  c.phase_dot = [hz](double) { return hz; };
  c.amplitude_dot = [](double) { return 0.0; };
  c.phase_ddot = [](double) { return 0.0; };
  return c;
}

ComponentSpec linear_chirp(double f0, double rate) {
  // phase f0 t + rate t^2 / 2, so the IF is f0 + rate t.
  ComponentSpec c;
  c.amplitude = [](double) { return 1.0; };
  c.phase = [f0, rate](double t) { return f0 * t + 0.5 * rate * t * t; };
  c.phase_dot = [f0, rate](double t) { return f0 + rate * t; };
  c.amplitude_dot = [](double) { return 0.0; };
  c.phase_ddot = [rate](double) { return rate; };
  return c;
}

}  // namespace

FigurePreset figure_preset(int id) {
  FigurePreset p;
  p.id = id;
  p.spec.t0 = 0.0;
  p.spec.t1 = 30.0;
  p.spec.form = SignalForm::RealCosine;
  switch (id) {
    case 1: {
      // (2 + cos t) cos(2 pi (3 t + cos t)), IF 3 - sin t.
      p.name = "am-fm cosine";
      ComponentSpec c;
      c.amplitude = [](double t) { return 2.0 + std::cos(t); };
      c.phase = [](double t) { return 3.0 * t + std::cos(t); };
      c.phase_dot = [](double t) { return 3.0 - std::sin(t); };
      c.amplitude_dot = [](double t) { return -std::sin(t); };
      c.phase_ddot = [](double t) { return -std::cos(t); };
      p.spec.components = {c};
      p.true_if = {[](double t) { return 3.0 - std::sin(t); }};
      break;
    }
    case 2: {
      // cos(2 pi (t + 0.05 t^2)), IF 1 + 0.1 t.
      p.name = "linear chirp";
      p.spec.components = {linear_chirp(1.0, 0.1)};
      p.true_if = {[](double t) { return 1.0 + 0.1 * t; }};
      break;
    }
    case 3: {
      // Bessel pulse J0(6 pi (t - 10)); energy concentrates near 3 Hz.
      p.name = "bessel pulse";
      ComponentSpec c;
      c.amplitude = [](double t) { return bessel_j0(6.0 * M_PI * (t - 10.0)); };
      c.phase = [](double) { return 0.0; };
      c.phase_dot = [](double) { return 3.0; };
      p.spec.components = {c};
      p.true_if = {[](double) { return 3.0; }};
      break;
    }
    case 4: {
      // cos(8 pi t) + noise with variance 0.4, IF 4.
      p.name = "noisy tone";
      p.spec.components = {constant_tone(1.0, 4.0)};
      p.noise_sigma = std::sqrt(0.4);
      p.true_if = {[](double) { return 4.0; }};
      break;
    }
    case 5: {
      // cos(10 pi t) sampled below its Nyquist rate, IF 5.
      p.name = "undersampled tone";
      p.spec.components = {constant_tone(1.0, 5.0)};
      p.T = 0.25;
      p.Tprime_default = 0.2;
      p.true_if = {[](double) { return 5.0; }};
      break;
    }
    case 6: {
      // cos(2 pi (2 t + 0.2 cos t)) + cos(2 pi (3 t + 0.02 t^2)),
      // IFs 2 - 0.2 sin t and 3 + 0.04 t, separated by at least 0.8 Hz.
      p.name = "two components";
      ComponentSpec c1;
      c1.amplitude = [](double) { return 1.0; };
      c1.phase = [](double t) { return 2.0 * t + 0.2 * std::cos(t); };
      c1.phase_dot = [](double t) { return 2.0 - 0.2 * std::sin(t); };
      c1.amplitude_dot = [](double) { return 0.0; };
      c1.phase_ddot = [](double t) { return -0.2 * std::cos(t); };
      p.spec.components = {c1, linear_chirp(3.0, 0.04)};
      p.spec.separation = 0.8;
      p.true_if = {[](double t) { return 2.0 - 0.2 * std::sin(t); },
                   [](double t) { return 3.0 + 0.04 * t; }};
      break;
    }
    case 7: {
      // cos(5 pi t) + cos(2 pi (t + 0.05 t^2)): the 2.5 Hz tone and the
      // chirp cross at t = 15, leaving the separated-component class.
      p.name = "crossing pair";
      p.spec.components = {constant_tone(1.0, 2.5), linear_chirp(1.0, 0.1)};
      p.true_if = {[](double) { return 2.5; },
                   [](double t) { return 1.0 + 0.1 * t; }};
      break;
    }
    default:
      throw std::invalid_argument("figure_preset: id must be 1..7");
  }
  return p;
}

EdrFixture make_edr_fixture(double t0, double t1, std::uint64_t seed) {
  if (!(t1 > t0)) {
    throw std::invalid_argument("make_edr_fixture: need t1 > t0");
  }
  EdrFixture fx;
  fx.modulation_hz = 0.25;

  // Respiratory phase with a slow rate wobble so the envelope IF is
  // 0.25 + (0.8/120) cos(2 pi t / 120), staying within 0.25 +- 0.007 Hz.
  auto resp_phase = [](double t) {
    return 0.25 * t + (0.8 / kTwoPi) * std::sin(kTwoPi * t / 120.0);
  };
  auto envelope = [&](double t) {
    return 1.0 + 0.5 * std::cos(kTwoPi * resp_phase(t));
  };

  // Beat times: mean RR interval 1.0 s with +-0.05 s jitter.
  Rng rng(seed);
  std::vector<double> beat_times;
  double t = t0 + 0.3;
  while (t <= t1) {
    beat_times.push_back(t);
    t += 0.95 + 0.1 * rng.uniform01();
  }
  if (beat_times.size() < 4) {
    throw std::invalid_argument("make_edr_fixture: interval too short");
  }

  fx.rpeaks.schedule = infer_schedule(beat_times);
  fx.rpeaks.values.reserve(beat_times.size());
  for (double tb : beat_times) fx.rpeaks.values.push_back(envelope(tb));

  // Dense uniform reference channel at 64 Hz.
  fx.resp_dt = 1.0 / 64.0;
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / fx.resp_dt));
  fx.resp_times.reserve(n + 1);
  fx.resp_values.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double tr = t0 + static_cast<double>(i) * fx.resp_dt;
    fx.resp_times.push_back(tr);
    fx.resp_values.push_back(std::cos(kTwoPi * resp_phase(tr)));
  }
  return fx;
}

}  // namespace nusq
