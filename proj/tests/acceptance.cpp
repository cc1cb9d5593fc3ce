// Acceptance gate for the library and CLI: ten numbered end-to-end checks,
// each printing one PASS/FAIL line with its measured numbers and the
// tolerance it was held to. Exit code 0 means every selected check passed.
//
// Check 1's support-set clause is a documented expected failure: with the
// squeeze catchment |xi - omega| < alpha/2 the pure tone's support is the
// single lattice point 0.9, not the pair {0.9, 1.2}. The check asserts the
// pair on purpose and reports the measured support.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include <nusq/bandlimited.hpp>
#include <nusq/csv.hpp>
#include <nusq/fft.hpp>
#include <nusq/figures.hpp>
#include <nusq/hilbert.hpp>
#include <nusq/rng.hpp>
#include <nusq/signals.hpp>
#include <nusq/stft.hpp>
#include <nusq/synchrosqueeze.hpp>

using namespace nusq;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ChainOut {
  std::vector<double> times;
  IFSet set;
  SqueezeMap map;
  OmegaMap omega;
  TimeFreqMap value;
};

// One pass of the squeezed-IF pipeline with every parameter explicit.
ChainOut run_chain(const SampledSignal& signal, double window_scale,
                   double grid_dt, double eta_max, double delta_eta_target,
                   std::size_t stride, double alpha, double gamma) {
  ChainOut out;
  const ImpulseTrain train = to_impulse_train(signal, grid_dt);
  const Window window = gaussian_window(window_scale);
  out.times = make_time_grid(train, stride);
  const FrequencyGrid freq =
      make_frequency_grid(grid_dt, eta_max, delta_eta_target);
  const StftPair pair = stft_with_derivative(train, window, out.times, freq);
  out.value = pair.value;
  out.omega = if_information(pair.value, pair.derivative, gamma);
  out.map = squeeze(out.omega, pair.value, alpha, gamma, eta_max);
  out.set = extract_if_set(out.map, 0.0);
  return out;
}

// Fraction of columns in [lo, hi] with a member within tol of truth(t).
double coverage(const IFSet& set, const std::function<double(double)>& truth,
                double tol, double lo, double hi) {
  int ok = 0, n = 0;
  for (std::size_t i = 0; i < set.times.size(); ++i) {
    const double t = set.times[i];
    if (t < lo || t > hi) continue;
    ++n;
    for (double xi : set.members[i]) {
      if (std::abs(xi - truth(t)) <= tol) {
        ++ok;
        break;
      }
    }
  }
  return n > 0 ? static_cast<double>(ok) / n : 0.0;
}

// Nearest-rank median; rows with undefined values contribute +inf.
double median(std::vector<double> v) {
  if (v.empty()) return kInf;
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

// |if_h - truth| per trace row in [lo, hi], +inf where if_h is undefined.
std::vector<double> trace_errors(const AnalyticTrace& trace,
                                 const std::function<double(double)>& truth,
                                 double lo, double hi) {
  std::vector<double> errs;
  for (std::size_t i = 0; i < trace.time_grid.size(); ++i) {
    const double t = trace.time_grid[i];
    if (t < lo || t > hi) continue;
    errs.push_back(std::isfinite(trace.if_h[i])
                       ? std::abs(trace.if_h[i] - truth(t))
                       : kInf);
  }
  return errs;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double t = lo; t <= hi + 1e-12; t += step) g.push_back(t);
  return g;
}

AnalyticTrace bl_trace(const SampledSignal& signal, double lo, double hi,
                       double step) {
  const ReconstructionResult rec = reconstruct(signal);
  return analytic_extension(rec, uniform_grid(lo, hi, step));
}

double ref_sinc(double x) {
  return x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
}

bool report(int id, bool ok, const char* fmt, ...) {
  std::printf("C%-2d %s  ", id, ok ? "PASS" : "FAIL");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
  return ok;
}

// ---------------------------------------------------------------------------
// 1. Pure complex tone: omega is the constant 1 wherever the transform is
//    above threshold, and the alpha = 0.3 squeeze support at every interior
//    time is asserted to be the bracketing lattice pair {0.9, 1.2}.
bool c1() {
  SignalSpec spec;
  spec.t0 = 0.0;
  spec.t1 = 30.0;
  spec.form = SignalForm::ComplexExponential;
  ComponentSpec comp;
  comp.amplitude = [](double) { return 1.0; };
  comp.phase = [](double t) { return t; };
  comp.phase_dot = [](double) { return 1.0; };
  comp.amplitude_dot = [](double) { return 0.0; };
  comp.phase_ddot = [](double) { return 0.0; };
  spec.components = {comp};

  SampledSignal sig = sample(spec, make_uniform_schedule(0.02, 0.0, 30.0));
  const double grid_dt = 0.004, eta_max = 2.0;
  const ImpulseTrain train = to_impulse_train(sig, grid_dt);
  const Window window = gaussian_window(1.0);
  const auto times = make_time_grid(train, 5);
  const FrequencyGrid freq = make_frequency_grid(grid_dt, eta_max, 0.06);
  const StftPair pair = stft_with_derivative(train, window, times, freq);

  // Clause A, tolerance 1e-3 on |omega - 1| over entries above the default
  // threshold, interior columns only (window radius is 3 s).
  const OmegaMap omega = if_information(pair.value, pair.derivative, 1e-8);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 3.0 || times[i] > 27.0) continue;
    for (Eigen::Index j = 0; j < freq.count; ++j) {
      if (!omega.valid(static_cast<Eigen::Index>(i), j)) continue;
      worst = std::max(
          worst, std::abs(omega.omega(static_cast<Eigen::Index>(i), j) - 1.0));
    }
  }
  const bool a_ok = worst <= 1e-3;

  // Clause B: zero threshold, alpha = 0.3; the required support is the
  // lattice pair bracketing 1. Measured support is reported as-is.
  const OmegaMap omega0 = if_information(pair.value, pair.derivative, 0.0);
  const SqueezeMap sq = squeeze(omega0, pair.value, 0.3, 0.0, eta_max);
  const IFSet set = extract_if_set(sq, 0.0);
  bool b_ok = true;
  std::string seen = "{}";
  for (std::size_t i = 0; i < set.times.size(); ++i) {
    if (set.times[i] < 3.0 || set.times[i] > 27.0) continue;
    const auto& m = set.members[i];
    const bool pair_ok = m.size() == 2 && std::abs(m[0] - 0.9) < 1e-9 &&
                         std::abs(m[1] - 1.2) < 1e-9;
    if (!pair_ok && b_ok) {
      b_ok = false;
      std::ostringstream ss;
      ss << "{";
      for (std::size_t k = 0; k < m.size(); ++k) {
        ss << (k ? ", " : "") << m[k];
      }
      ss << "}";
      seen = ss.str();
    }
  }
  return report(1, a_ok && b_ok,
                "pure tone: max |omega - 1| = %.3g (tol 1e-3, %s); "
                "interior support %s (required {0.9, 1.2}, %s)",
                worst, a_ok ? "ok" : "exceeded", seen.c_str(),
                b_ok ? "ok" : "differs");
}

// ---------------------------------------------------------------------------
// 2. AM-FM cosine (3 - sin t) and linear chirp (1 + 0.1 t), uniform and
//    jittered sampling: coverage within 0.2 Hz must reach 95%.
//
//    Window scale 0.2: the frequency estimate carries a curvature bias of
//    roughly |IF''| / (6 pi s), about 0.26 Hz at the display scale 0.1 near
//    the sine's extrema, which busts the 0.2 Hz tolerance there; scales
//    beyond 0.3 instead lose the jittered row around its widest sampling
//    gap. 0.2 clears 95% on all four rows.
bool c2() {
  bool ok = true;
  double cov[4];
  int k = 0;
  for (int fig : {1, 2}) {
    const FigurePreset preset = figure_preset(fig);
    for (double tprime : {0.0, 0.08}) {
      const SamplingSchedule sched =
          tprime == 0.0 ? make_uniform_schedule(0.1, 0.0, 30.0)
                        : make_perturbed_schedule(0.1, tprime, 0.0, 30.0, 0);
      const SampledSignal sig = sample(preset.spec, sched);
      const ChainOut chain =
          run_chain(sig, 0.2, 0.02, 5.0, 0.02, 5, 0.1, 1e-8);
      cov[k] = coverage(chain.set, preset.true_if[0], 0.2, 2.0, 28.0);
      ok = ok && cov[k] >= 0.95;
      ++k;
    }
  }
  return report(2, ok,
                "am-fm/chirp coverage within 0.2 Hz (need >= 0.95): "
                "fig1 uniform %.3f, fig1 jitter %.3f, fig2 uniform %.3f, "
                "fig2 jitter %.3f",
                cov[0], cov[1], cov[2], cov[3]);
}

// ---------------------------------------------------------------------------
// 3. Undersampled 5 Hz tone, T = 0.25 with 0.2 jitter. The quoted threshold
//    6 for this experiment is calibrated to unit-weight spike trains; gap
//    weighting scales the transform by T, so the equivalent here is
//    gamma = 6 T = 1.5. The window scale 0.05 places that cut at 2/3 of the
//    ridge peak (the display default 0.1 would put it at 95%, which no
//    jitter realization survives). The reconstruction path is bandlimited
//    to 1/(2T) = 2 Hz and must fail on the same input.
bool c3() {
  const FigurePreset preset = figure_preset(5);
  const SamplingSchedule sched =
      make_perturbed_schedule(0.25, 0.2, 0.0, 30.0, 0);
  const SampledSignal sig = sample(preset.spec, sched);
  const ChainOut chain = run_chain(sig, 0.05, 0.05, 8.0, 0.02, 5, 0.1, 1.5);
  const double cov =
      coverage(chain.set, [](double) { return 5.0; }, 0.2, 2.0, 28.0);

  const AnalyticTrace trace = bl_trace(sig, 0.0, 30.0, 0.05);
  const double med =
      median(trace_errors(trace, [](double) { return 5.0; }, 2.0, 28.0));
  const bool ok = cov >= 0.90 && med > 0.5;
  return report(3, ok,
                "undersampled tone: squeezed coverage %.3f (need >= 0.90); "
                "reconstruction if_h median error %.3g (need > 0.5)",
                cov, med);
}

// ---------------------------------------------------------------------------
// 4. Two components: both frequencies covered, while the analytic-signal IF
//    of the sum tracks their average rather than either component.
bool c4() {
  const FigurePreset preset = figure_preset(6);
  const SamplingSchedule sched =
      make_perturbed_schedule(0.1, 0.08, 0.0, 30.0, 0);
  const SampledSignal sig = sample(preset.spec, sched);
  const ChainOut chain = run_chain(sig, 0.1, 0.02, 5.0, 0.02, 5, 0.1, 1e-8);
  const double cov1 = coverage(chain.set, preset.true_if[0], 0.2, 2.0, 28.0);
  const double cov2 = coverage(chain.set, preset.true_if[1], 0.2, 2.0, 28.0);

  const AnalyticTrace trace = bl_trace(sig, 0.0, 30.0, 0.02);
  const auto avg = [](double t) { return 2.5 + 0.02 * t - 0.1 * std::sin(t); };
  const double med_avg = median(trace_errors(trace, avg, 2.0, 28.0));
  const double med_c1 =
      median(trace_errors(trace, preset.true_if[0], 2.0, 28.0));
  const double med_c2 =
      median(trace_errors(trace, preset.true_if[1], 2.0, 28.0));
  const bool ok = cov1 >= 0.90 && cov2 >= 0.90 && med_avg < med_c1 &&
                  med_avg < med_c2;
  return report(4, ok,
                "two components: coverage %.3f / %.3f (need >= 0.90); if_h "
                "median to average %.3g vs components %.3g / %.3g",
                cov1, cov2, med_avg, med_c1, med_c2);
}

// ---------------------------------------------------------------------------
// 5. Noisy 4 Hz tone (variance 0.4): squeezed coverage holds for both
//    sampling modes; the analytic-signal IF of the noisy uniform series is
//    essentially uninformative (coverage below one half).
bool c5() {
  const FigurePreset preset = figure_preset(4);
  double cov[2];
  int k = 0;
  SampledSignal uniform_sig;
  for (double tprime : {0.0, 0.08}) {
    const SamplingSchedule sched =
        tprime == 0.0 ? make_uniform_schedule(0.1, 0.0, 30.0)
                      : make_perturbed_schedule(0.1, tprime, 0.0, 30.0, 0);
    SampledSignal sig = sample(preset.spec, sched);
    add_noise(sig, preset.noise_sigma, 1);
    if (tprime == 0.0) uniform_sig = sig;
    const ChainOut chain = run_chain(sig, 0.1, 0.02, 5.0, 0.02, 5, 0.1, 1e-8);
    cov[k++] = coverage(chain.set, [](double) { return 4.0; }, 0.2, 2.0, 28.0);
  }

  std::vector<double> values(uniform_sig.values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = uniform_sig.values[i].real();
  }
  const UniformSeries series =
      uniform_series(uniform_sig.schedule.times, values);
  const std::vector<double> ifh = hilbert_if(series);
  int ok_n = 0, n = 0;
  for (std::size_t i = 0; i < ifh.size(); ++i) {
    const double t = series.time(i);
    if (t < 2.0 || t > 28.0) continue;
    ++n;
    if (std::isfinite(ifh[i]) && std::abs(ifh[i] - 4.0) <= 0.2) ++ok_n;
  }
  const double hil_cov = static_cast<double>(ok_n) / n;
  const bool ok = cov[0] >= 0.90 && cov[1] >= 0.90 && hil_cov < 0.5;
  return report(5, ok,
                "noisy tone: squeezed coverage uniform %.3f, jitter %.3f "
                "(need >= 0.90); hilbert coverage %.3f (need < 0.5)",
                cov[0], cov[1], hil_cov);
}

// ---------------------------------------------------------------------------
// 6. Reconstruction exactness: a signal already in the model span is
//    recovered to solver precision, and the least-squares residual is
//    monotone in the model order on the chirp samples.
bool c6() {
  const double T = 0.1;
  const auto sched = make_uniform_schedule(T, 0.0, 30.0);
  const long long M = 150;
  const int atoms_n[3] = {-30, 5, 40};
  const double atoms_a[3] = {0.7, 1.0, -0.4};
  SampledSignal sig;
  sig.schedule = sched;
  for (double t : sched.times) {
    double v = 0.0;
    for (int a = 0; a < 3; ++a) {
      v += atoms_a[a] * ref_sinc(t / T - atoms_n[a] - static_cast<double>(M));
    }
    sig.values.push_back(v);
  }
  const ReconstructionResult rec = reconstruct(sig);
  double worst = 0.0;
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const double tau = rng.uniform(0.0, 30.0);
    double truth = 0.0;
    for (int a = 0; a < 3; ++a) {
      truth +=
          atoms_a[a] * ref_sinc(tau / T - atoms_n[a] - static_cast<double>(M));
    }
    worst = std::max(worst, std::abs(evaluate(rec, tau) - truth));
  }

  const FigurePreset chirp = figure_preset(2);
  const SampledSignal fig2 =
      sample(chirp.spec, make_perturbed_schedule(0.1, 0.08, 0.0, 30.0, 0));
  const double r8 = reconstruct(fig2, 8).residual;
  const double r16 = reconstruct(fig2, 16).residual;
  const double r32 = reconstruct(fig2, 32).residual;

  const bool ok = rec.residual < 1e-10 && worst < 1e-8 &&
                  r16 <= r8 + 1e-12 && r32 <= r16 + 1e-12;
  return report(6, ok,
                "reconstruction: in-span residual %.3g (tol 1e-10), worst "
                "pointwise %.3g (tol 1e-8); chirp residuals N=8/16/32 = "
                "%.4g / %.4g / %.4g (nonincreasing)",
                rec.residual, worst, r8, r16, r32);
}

// ---------------------------------------------------------------------------
// 7. Analytic extension against an FFT half-band oracle, plus derivative
//    continuity through the basis centers where the closed form switches to
//    its series branch.
bool c7() {
  // Coefficients sampled from a smooth band-interior profile, so the model
  // decays fast and the periodized FFT oracle converges well below the
  // 1e-6 comparison tolerance.
  ReconstructionResult model;
  model.basis = BlBasis::Sinc;
  model.T = 1.0;
  model.M = 0;
  model.N = 80;
  model.coefficients.setZero(161);
  for (int n = -80; n <= 80; ++n) {
    const double env = std::exp(-(n / 12.0) * (n / 12.0));
    model.coefficients(n + 80) = env * std::cos(2.0 * M_PI * 0.25 * n);
  }

  const int W = 256;
  const double dt = 0.25;
  const std::size_t n = static_cast<std::size_t>(2 * W / dt);
  std::vector<double> grid(n);
  std::vector<std::complex<double>> dense(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = -W + dt * static_cast<double>(i);
    dense[i] = evaluate_complex(model, grid[i]);
  }
  auto spec = dense;
  fft_forward(spec);
  std::vector<std::complex<double>> proj(n, 0.0);
  proj[0] = 0.5 * spec[0];
  for (std::size_t j = 1; j < n / 2; ++j) proj[j] = spec[j];
  proj[n / 2] = 0.5 * spec[n / 2];
  fft_inverse(proj);

  const AnalyticTrace trace = analytic_extension(model, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(grid[i]) > 0.9 * W) continue;
    worst = std::max(worst, std::abs(trace.analytic[i] - proj[i]));
  }

  // Derivative continuity: finite differences of the analytic value agree
  // with the closed-form derivative right at, just inside, and just outside
  // the series crossover around each center.
  double worst_fd = 0.0;
  for (double center : {0.0, 4.0, -9.0}) {
    for (double off : {0.0, 5e-5, -5e-5, 5e-4, -5e-4}) {
      const std::vector<double> at = {center + off};
      const auto tr = analytic_extension(model, at);
      const auto fd = oracle::central_diff(
          [&](double tau) {
            const std::vector<double> one = {tau};
            return analytic_extension(model, one).analytic[0];
          },
          center + off, 1e-5);
      worst_fd = std::max(worst_fd, std::abs(tr.derivative[0] - fd) /
                                        (1.0 + std::abs(fd)));
    }
  }
  const bool ok = worst < 1e-6 && worst_fd < 1e-6;
  return report(7, ok,
                "analytic extension: half-band oracle worst %.3g (tol 1e-6); "
                "derivative vs finite difference worst %.3g relative "
                "(tol 1e-6)",
                worst, worst_fd);
}

// ---------------------------------------------------------------------------
// 8. Oracle equivalences: the FFT transform path against direct summation,
//    the squeeze against brute-force enumeration, and the window moment
//    integrals against quadrature with the unit-Gaussian closed forms.
bool c8() {
  // (a) Random 50-impulse trains; both evaluation policies against the
  // test-side direct sum, relative to the largest column value.
  double worst_stft = 0.0;
  for (std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
    Rng rng(seed);
    ImpulseTrain train;
    train.grid_dt = 0.01;
    train.grid_start = 0.0;
    train.base_T = 0.2;
    train.weights.assign(2048, 0.0);
    std::vector<double> times;
    std::vector<std::complex<double>> weights;
    for (int k = 0; k < 50; ++k) {
      std::size_t idx;
      do {
        idx = static_cast<std::size_t>(rng.uniform(0.0, 2000.0));
      } while (std::abs(train.weights[idx]) > 0.0);
      const std::complex<double> w(rng.uniform(-1.0, 1.0),
                                   rng.uniform(-1.0, 1.0));
      train.weights[idx] = w;
      times.push_back(train.grid_time(idx));
      weights.push_back(w);
    }
    for (std::size_t i = 0; i < train.weights.size(); ++i) {
      if (std::abs(train.weights[i]) > 0.0) train.nonzero.push_back(i);
    }

    const Window window = gaussian_window(0.15);
    const auto tg = make_time_grid(train, 256);
    const FrequencyGrid freq = make_frequency_grid(0.01, 30.0, 0.02);
    const TimeFreqMap vf =
        modified_stft(train, window, tg, freq, StftPolicy::Fft);
    const TimeFreqMap vd =
        modified_stft(train, window, tg, freq, StftPolicy::Direct);
    for (std::size_t i = 0; i < tg.size(); ++i) {
      double colmax = 0.0;
      for (Eigen::Index j = 0; j < freq.count; ++j) {
        colmax = std::max(colmax,
                          std::abs(vf.values(static_cast<Eigen::Index>(i), j)));
      }
      if (colmax == 0.0) continue;
      for (Eigen::Index j = 0; j < freq.count; ++j) {
        const auto want = oracle::direct_stft(times, weights, window.g, tg[i],
                                              freq.value(j));
        const auto got_f = vf.values(static_cast<Eigen::Index>(i), j);
        const auto got_d = vd.values(static_cast<Eigen::Index>(i), j);
        worst_stft = std::max(worst_stft, std::abs(got_f - want) / colmax);
        worst_stft = std::max(worst_stft, std::abs(got_d - want) / colmax);
      }
    }
  }

  // (b) Squeeze vs brute-force enumeration on a small instance (13 bins x
  // 11 xi cells per column), exact equality required.
  Rng rng(7);
  SampledSignal sig;
  sig.schedule = make_perturbed_schedule(0.2, 0.15, 0.0, 20.0, 5);
  for (double t : sig.schedule.times) {
    sig.values.push_back(std::cos(2.0 * M_PI * 1.3 * t) +
                         0.3 * rng.uniform(-1.0, 1.0));
  }
  const ImpulseTrain train = to_impulse_train(sig, 0.01);
  const Window window = gaussian_window(8.0);
  const auto tg = make_time_grid(train, 400);
  const FrequencyGrid freq = make_frequency_grid(0.01, 5.0, 0.5);
  const StftPair pair = stft_with_derivative(train, window, tg, freq);
  const OmegaMap omega = if_information(pair.value, pair.derivative, 1e-3);
  const SqueezeMap sq = squeeze(omega, pair.value, 0.5, 1e-3, 5.0);
  bool squeeze_exact = true;
  for (std::size_t i = 0; i < tg.size(); ++i) {
    std::vector<std::complex<double>> omega_row(freq.count), value_row(freq.count);
    std::vector<bool> valid_row(freq.count);
    for (Eigen::Index j = 0; j < freq.count; ++j) {
      omega_row[j] = omega.omega(static_cast<Eigen::Index>(i), j);
      value_row[j] = pair.value.values(static_cast<Eigen::Index>(i), j);
      valid_row[j] = omega.valid(static_cast<Eigen::Index>(i), j);
    }
    const auto brute = oracle::brute_squeeze_column(
        omega_row, valid_row, value_row, freq.spacing, 5.0, 0.5, 1e-3,
        static_cast<std::size_t>(sq.xi_count));
    for (Eigen::Index x = 0; x < sq.xi_count; ++x) {
      if (sq.mass(static_cast<Eigen::Index>(i), x) !=
          brute[static_cast<std::size_t>(x)]) {
        squeeze_exact = false;
      }
    }
  }

  // (c) Window moment integrals against Simpson quadrature and the unit
  // Gaussian's closed forms int g = 1 and int |u| g = 1/pi.
  const Window g1 = gaussian_window(1.0);
  const BoundReport br = bound_report(
      figure_preset(2).spec, g1, 0.1, make_uniform_schedule(0.1, 0.0, 30.0));
  double worst_int = 0.0;
  const std::function<double(double)> ders[3] = {g1.g, g1.g_dot, g1.g_ddot};
  // |u|^n |g^(m)| has kinks at u = 0 and at the sign changes of g'' (at
  // +-1/sqrt(2 pi) for the unit Gaussian); integrating each smooth piece
  // separately keeps Simpson's error far below the 1e-8 comparison.
  const double R = g1.effective_radius;
  const double z = 1.0 / std::sqrt(2.0 * M_PI);
  const double cuts[5] = {-R, -z, 0.0, z, R};
  for (int n_pow = 0; n_pow < 3; ++n_pow) {
    for (int m = 0; m < 3; ++m) {
      double want = 0.0;
      for (int piece = 0; piece < 4; ++piece) {
        want += oracle::simpson(
            [&](double u) {
              return std::pow(std::abs(u), n_pow) * std::abs(ders[m](u));
            },
            cuts[piece], cuts[piece + 1], 20000);
      }
      worst_int =
          std::max(worst_int, std::abs(br.integrals[n_pow][m] - want));
    }
  }
  const double anchor0 = std::abs(br.integrals[0][0] - 1.0);
  const double anchor1 = std::abs(br.integrals[1][0] - 1.0 / M_PI);

  const bool ok = worst_stft <= 1e-10 && squeeze_exact &&
                  worst_int <= 1e-8 && anchor0 <= 1e-8 && anchor1 <= 1e-8;
  return report(8, ok,
                "oracles: stft fft/direct worst %.3g rel (tol 1e-10); "
                "squeeze brute-force %s; integrals worst %.3g, anchors "
                "%.3g / %.3g (tol 1e-8)",
                worst_stft, squeeze_exact ? "exact" : "MISMATCH", worst_int,
                anchor0, anchor1);
}

// ---------------------------------------------------------------------------
// 9. Bounded-noise robustness: perturbing the chirp samples by noise no
//    larger than T and raising the threshold by the induced transform bound
//    T (I0 + 2 T I0') moves every extracted value by at most one bin at 90%
//    of interior times.
bool c9() {
  const FigurePreset chirp = figure_preset(2);
  const SamplingSchedule sched =
      make_perturbed_schedule(0.1, 0.08, 0.0, 30.0, 0);
  const SampledSignal clean = sample(chirp.spec, sched);
  SampledSignal noisy = clean;
  add_bounded_noise(noisy, 0.1, 2);

  const BoundReport br = bound_report(chirp.spec, gaussian_window(0.1), 0.1,
                                      sched);
  const double gamma_noise =
      0.1 * (br.integrals[0][0] + 2.0 * 0.1 * br.integrals[0][1]);

  const ChainOut base = run_chain(clean, 0.1, 0.02, 5.0, 0.02, 5, 0.1, 1e-8);
  const ChainOut pert =
      run_chain(noisy, 0.1, 0.02, 5.0, 0.02, 5, 0.1, gamma_noise);

  // Containment direction: every value surviving the raised threshold must
  // sit within one bin of a clean value; an emptied column counts against.
  int ok_cols = 0, n = 0;
  for (std::size_t i = 0; i < base.set.times.size(); ++i) {
    const double t = base.set.times[i];
    if (t < 2.0 || t > 28.0) continue;
    ++n;
    bool col_ok = !pert.set.members[i].empty();
    for (double b : pert.set.members[i]) {
      bool matched = false;
      for (double a : base.set.members[i]) {
        if (std::abs(a - b) <= 0.1 + 1e-9) matched = true;
      }
      col_ok = col_ok && matched;
    }
    ok_cols += col_ok;
  }
  const double frac = static_cast<double>(ok_cols) / n;
  const bool ok = frac >= 0.90;
  return report(9, ok,
                "bounded noise: raised threshold %.3f; surviving values "
                "within one bin of clean at %.3f of interior times "
                "(need >= 0.90)",
                gamma_noise, frac);
}

// ---------------------------------------------------------------------------
// 10. Event-train fixture end to end through the CLI layer: modulation
//     recovered within 0.05 Hz at 90% of interior times, and a manifest
//     rerun reproduces every byte.
bool c10() {
  using namespace nusq::cli;
  const fs::path dir = fs::temp_directory_path() / "nusq_acceptance_c10";
  fs::remove_all(dir);
  fs::create_directories(dir);

  RunConfig cfg;
  cfg.out_dir = dir.string();
  cfg.seed = 0;
  if (cmd_gen_edr(0.0, 480.0, cfg) != kOk) {
    return report(10, false, "event fixture: generation failed");
  }
  cfg.alpha = 0.05;
  cfg.eta_max = 0.5;
  cfg.window_scale = 0.015625;
  if (cmd_edr(dir / "edr_rpeaks.csv", dir / "edr_resp.csv", cfg) != kOk) {
    return report(10, false, "event fixture: extraction failed");
  }

  const IFSet set = read_ifset_csv(dir / "edr_ifset.csv");
  // Window radius at this scale is 24 s; the interior excludes 30 s ends.
  const double cov =
      coverage(set, [](double) { return 0.25; }, 0.05, 30.0, 450.0);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string manifest_before = slurp(dir / "edr_manifest.json");
  const std::string ifset_before = slurp(dir / "edr_ifset.csv");
  fs::remove(dir / "edr_ifset.csv");
  const bool rerun_ok = cmd_rerun(dir / "edr_manifest.json") == kOk;
  const bool exact = rerun_ok &&
                     slurp(dir / "edr_manifest.json") == manifest_before &&
                     slurp(dir / "edr_ifset.csv") == ifset_before;

  const bool ok = cov >= 0.90 && exact;
  return report(10, ok,
                "event fixture: modulation coverage %.3f within 0.05 Hz "
                "(need >= 0.90); manifest rerun %s",
                cov, exact ? "bit-exact" : "DIFFERS");
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    const char* name;
    bool (*fn)();
  };
  const Entry table[] = {{"c1", c1}, {"c2", c2}, {"c3", c3}, {"c4", c4},
                         {"c5", c5}, {"c6", c6}, {"c7", c7}, {"c8", c8},
                         {"c9", c9}, {"c10", c10}};
  const std::string which = argc > 1 ? argv[1] : "all";
  bool matched = false, all_ok = true;
  for (const Entry& e : table) {
    if (which == "all" || which == e.name) {
      matched = true;
      if (!e.fn()) all_ok = false;
    }
  }
  if (!matched) {
    std::fprintf(stderr, "unknown selector '%s' (use c1..c10 or all)\n",
                 which.c_str());
    return 2;
  }
  return all_ok ? 0 : 1;
}
