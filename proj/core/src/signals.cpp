#include "nusq/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nusq/rng.hpp"

namespace nusq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Relative tolerance used when deciding grid/endpoint membership.
constexpr double kGridTol = 1e-9;

void validate_interval(double t0, double t1) {
  if (!(t1 > t0)) {
    throw std::invalid_argument("schedule: interval must satisfy t1 > t0");
  }
}

void validate_T(double T) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("schedule: base interval T must be positive");
  }
}

}  // namespace

std::complex<double> evaluate(const SignalSpec& spec, double t) {
  std::complex<double> acc = 0.0;
  for (const auto& c : spec.components) {
    const double a = c.amplitude(t);
    const double theta = kTwoPi * c.phase(t);
    if (spec.form == SignalForm::RealCosine) {
      acc += a * std::cos(theta);
    } else {
      acc += a * std::complex<double>(std::cos(theta), std::sin(theta));
    }
  }
  return acc;
}

double SamplingSchedule::max_offset() const {
  double m = 0.0;
  for (double a : offsets) m = std::max(m, std::abs(a));
  return m;
}

SamplingSchedule make_uniform_schedule(double T, double t0, double t1) {
  validate_T(T);
  validate_interval(t0, t1);
  const double tol = kGridTol * T;
  const auto n_min = static_cast<long long>(std::ceil((t0 - tol) / T));
  const auto n_max = static_cast<long long>(std::floor((t1 + tol) / T));
  if (n_max < n_min) {
    throw std::invalid_argument("schedule: interval contains no sample times");
  }
  SamplingSchedule s;
  s.T = T;
  s.Tprime = 0.0;
  s.times.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (long long n = n_min; n <= n_max; ++n) {
    s.times.push_back(T * static_cast<double>(n));
    s.offsets.push_back(0.0);
  }
  return s;
}

SamplingSchedule make_perturbed_schedule(double T, double Tprime, double t0,
                                         double t1, std::uint64_t seed) {
  validate_T(T);
  validate_interval(t0, t1);
  if (Tprime < 0.0 || Tprime >= T) {
    throw std::invalid_argument(
        "schedule: perturbation Tprime must lie in [0, T)");
  }
  const double tol = kGridTol * T;
  const auto n_min = static_cast<long long>(std::ceil((t0 - tol) / T));
  const auto n_max = static_cast<long long>(std::floor((t1 + tol) / T));
  if (n_max < n_min) {
    throw std::invalid_argument("schedule: interval contains no sample times");
  }
  SamplingSchedule s;
  s.T = T;
  s.Tprime = Tprime;
  Rng rng(seed);
  for (long long n = n_min; n <= n_max; ++n) {
    const double a = Tprime * rng.uniform01();
    const double t = T * static_cast<double>(n) + a;
    if (t > t1 + tol) continue;  // perturbation pushed past the interval end
    s.times.push_back(t);
    s.offsets.push_back(a);
  }
  if (s.times.empty()) {
    throw std::invalid_argument("schedule: interval contains no sample times");
  }
  return s;
}

SampledSignal sample(const SignalSpec& spec, const SamplingSchedule& schedule) {
  if (schedule.times.empty()) {
    throw std::invalid_argument("sample: schedule is empty");
  }
  const double tol = kGridTol * std::max(1.0, std::abs(spec.t1));
  if (schedule.times.front() < spec.t0 - tol ||
      schedule.times.back() > spec.t1 + schedule.Tprime + tol) {
    throw std::invalid_argument("sample: schedule leaves the signal interval");
  }
  SampledSignal out;
  out.schedule = schedule;
  out.values.reserve(schedule.times.size());
  for (double t : schedule.times) out.values.push_back(evaluate(spec, t));
  return out;
}

void add_noise(SampledSignal& signal, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  Rng rng(seed);
  for (auto& v : signal.values) v += sigma * rng.gaussian();
}

void add_bounded_noise(SampledSignal& signal, double bound,
                       std::uint64_t seed) {
  if (bound < 0.0) {
    throw std::invalid_argument("add_bounded_noise: bound must be >= 0");
  }
  Rng rng(seed);
  for (auto& v : signal.values) v += rng.uniform(-bound, bound);
}

namespace {

ImpulseTrain build_train(const SampledSignal& signal, double grid_dt,
                         bool forward_gaps) {
  const auto& times = signal.schedule.times;
  const double T = signal.schedule.T;
  if (times.size() < 2) {
    throw std::invalid_argument("to_impulse_train: need at least two samples");
  }
  if (!(grid_dt > 0.0) || grid_dt > T * (1.0 + kGridTol)) {
    throw std::invalid_argument(
        "to_impulse_train: grid_dt must lie in (0, T]");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument(
          "to_impulse_train: times must be strictly increasing");
    }
  }

  ImpulseTrain train;
  train.grid_dt = grid_dt;
  train.grid_start = std::floor(times.front() / grid_dt) * grid_dt;
  train.base_T = T;

  const std::size_t count = times.size();
  std::size_t last_idx = static_cast<std::size_t>(
      std::llround((times.back() - train.grid_start) / grid_dt));
  train.weights.assign(last_idx + 1, 0.0);

  for (std::size_t k = 0; k < count; ++k) {
    double gap;
    if (forward_gaps) {
      gap = (k + 1 < count) ? times[k + 1] - times[k] : T;
    } else {
      gap = (k > 0) ? times[k] - times[k - 1] : T;
    }
    const auto idx = static_cast<std::size_t>(
        std::llround((times[k] - train.grid_start) / grid_dt));
    if (train.weights[idx] == 0.0) train.nonzero.push_back(idx);
    train.weights[idx] += gap * signal.values[k];
  }
  std::sort(train.nonzero.begin(), train.nonzero.end());
  return train;
}

}  // namespace

ImpulseTrain to_impulse_train(const SampledSignal& signal, double grid_dt) {
  return build_train(signal, grid_dt, /*forward_gaps=*/true);
}

ImpulseTrain to_impulse_train_backward(const SampledSignal& signal,
                                       double grid_dt) {
  return build_train(signal, grid_dt, /*forward_gaps=*/false);
}

double bessel_j0(double x) {
  const double ax = std::abs(x);
  // Composite Simpson over [0, pi]. The integrand cos(x sin theta)
  // oscillates about |x|/2 times over the range, so the panel count grows
  // linearly with |x|; 600 panels per unit of |x| holds the quadrature error
  // near 1e-11 even for the largest arguments used here.
  const auto panels =
      static_cast<std::size_t>(64 + 2 * static_cast<std::size_t>(
                                        std::ceil(300.0 * ax)));
  const double h = M_PI / static_cast<double>(panels);
  double sum = std::cos(ax * std::sin(0.0)) + std::cos(ax * std::sin(M_PI));
  for (std::size_t i = 1; i < panels; ++i) {
    const double theta = h * static_cast<double>(i);
    sum += (i % 2 == 1 ? 4.0 : 2.0) * std::cos(ax * std::sin(theta));
  }
  return sum * h / (3.0 * M_PI);
}

SamplingSchedule infer_schedule(const std::vector<double>& times) {
  if (times.size() < 2) {
    throw std::invalid_argument("infer_schedule: need at least two times");
  }
  std::vector<double> gaps(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    gaps[i - 1] = times[i] - times[i - 1];
    if (!(gaps[i - 1] > 0.0)) {
      throw std::invalid_argument(
          "infer_schedule: times must be strictly increasing");
    }
  }
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  const double T = gaps[gaps.size() / 2];

  SamplingSchedule s;
  s.T = T;
  const auto n0 = static_cast<long long>(std::floor(times.front() / T));
  s.times = times;
  s.offsets.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double base = T * static_cast<double>(n0 + static_cast<long long>(i));
    s.offsets.push_back(times[i] - base);
  }
  s.Tprime = s.max_offset();
  return s;
}

}  // namespace nusq
