#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace nusq {

// One AM-FM component A(t) cos(2 pi phi(t)) (or A e^{2 pi i phi} in the
// complex form). phi is measured in cycles, so phi_dot is the instantaneous
// frequency in Hz. The derivative hooks are analytic where the caller knows
// them; amplitude and phi_dot are required by the diagnostic bound
// calculator, the second-order hooks are optional extras.
struct ComponentSpec {
  std::function<double(double)> amplitude;
  std::function<double(double)> phase;                     // cycles
  std::function<double(double)> phase_dot;                 // Hz
  std::function<double(double)> amplitude_dot;             // optional
  std::function<double(double)> phase_ddot;                // optional
};

enum class SignalForm { RealCosine, ComplexExponential };

// A multicomponent signal on a closed interval. When a separation is
// declared the components must be ordered with disjoint frequency bands:
// inf phi_dot_k - sup phi_dot_{k-1} >= separation on the interval.
struct SignalSpec {
  std::vector<ComponentSpec> components;
  double t0 = 0.0;
  double t1 = 0.0;
  SignalForm form = SignalForm::RealCosine;
  std::optional<double> separation;
};

// Evaluate the signal formula at one instant.
std::complex<double> evaluate(const SignalSpec& spec, double t);

// Sampling times t_n = T n + a_n with offsets a_n in [0, Tprime].
struct SamplingSchedule {
  double T = 0.0;
  double Tprime = 0.0;
  std::vector<double> times;
  std::vector<double> offsets;

  double max_offset() const;
};

struct SampledSignal {
  SamplingSchedule schedule;
  std::vector<std::complex<double>> values;
};

// Weighted impulse train on a uniform fine grid: weight w at grid index p
// represents w * delta(t - (grid_start + p * grid_dt)). Grid entries not
// backed by a sample are exactly zero. base_T records the base interval T of
// the originating schedule.
struct ImpulseTrain {
  double grid_dt = 0.0;
  double grid_start = 0.0;
  double base_T = 0.0;
  std::vector<std::complex<double>> weights;
  std::vector<std::size_t> nonzero;  // indices of deposited weights, ascending

  double grid_time(std::size_t idx) const { return grid_start + static_cast<double>(idx) * grid_dt; }
  double span_end() const { return grid_time(weights.empty() ? 0 : weights.size() - 1); }
};

// Uniform times T n covering [t0, t1]; n may be negative. Endpoint
// membership is decided with a small relative tolerance so that spans that
// are exact multiples of T keep their final sample.
SamplingSchedule make_uniform_schedule(double T, double t0, double t1);

// Perturbed times T n + Tprime u_n with u_n ~ U[0,1) drawn from the seed, in
// base-grid order; times that overshoot t1 are dropped.
SamplingSchedule make_perturbed_schedule(double T, double Tprime, double t0,
                                         double t1, std::uint64_t seed);

// Evaluate a SignalSpec at every schedule time.
SampledSignal sample(const SignalSpec& spec, const SamplingSchedule& schedule);

// Add i.i.d. N(0, sigma^2) real noise to the values.
void add_noise(SampledSignal& signal, double sigma, std::uint64_t seed);

// Add i.i.d. uniform noise in [-bound, bound] to the values.
void add_bounded_noise(SampledSignal& signal, double bound, std::uint64_t seed);

// Build the weighted impulse train: sample n deposits
// (t_{n+1} - t_n) * f(t_n) at the grid point nearest t_n; the final sample,
// which has no forward gap, uses the base interval T. grid_start is the
// first sample time rounded down to a multiple of grid_dt.
ImpulseTrain to_impulse_train(const SampledSignal& signal, double grid_dt);

// As above but with backward gaps (t_k - t_{k-1}) * f(t_k), the convention
// used for event-train data such as R peaks; the first sample uses T.
ImpulseTrain to_impulse_train_backward(const SampledSignal& signal,
                                       double grid_dt);

// Bessel function of the first kind, order zero, via composite Simpson
// quadrature of (1/pi) integral_0^pi cos(x sin theta) d theta. The panel
// count scales with |x| to hold the absolute error below 1e-10.
double bessel_j0(double x);

// Reconstructs a schedule from bare sample times (e.g. a CSV re-ingest):
// T is the median gap and offsets are the residuals t_n - T (n + n0).
SamplingSchedule infer_schedule(const std::vector<double>& times);

}  // namespace nusq
