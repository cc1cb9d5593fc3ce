#include "nusq/bandlimited.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nusq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::complex<double> kI{0.0, 1.0};

double sinc(double x) {
  if (std::abs(x) < 1e-8) {
    const double px = M_PI * x;
    return 1.0 - px * px / 6.0;
  }
  return std::sin(M_PI * x) / (M_PI * x);
}

// One basis function h(n, x); n runs over -N..N.
std::complex<double> basis_value(const ReconstructionResult& r, int n,
                                 double x) {
  if (r.basis == BlBasis::Sinc) {
    return sinc(x - static_cast<double>(n) - static_cast<double>(r.M));
  }
  const double period = 2.0 * r.N + 1.0;
  const double theta = -kTwoPi * static_cast<double>(n) * x / period;
  return std::complex<double>(std::cos(theta), std::sin(theta)) /
         std::sqrt(period);
}

// Analytic part of one sinc basis function and its d/dx, at u = x - n - M.
std::complex<double> analytic_sinc(double u) {
  return 0.5 * sinc(0.5 * u) *
         std::complex<double>(std::cos(0.5 * M_PI * u),
                              std::sin(0.5 * M_PI * u));
}

std::complex<double> analytic_sinc_dx(double u) {
  if (std::abs(u) < 1e-4) {
    // The quotient cancels catastrophically near u = 0, so switch to the
    // series of [(i + pi u) e^{i pi u} - i] / (2 pi u^2) about u = 0:
    // i pi/4 - pi^2 u / 6 - i pi^3 u^2 / 16 + pi^4 u^3 / 60 + O(u^4).
    const double p = M_PI;
    return std::complex<double>(-p * p * u / 6.0 + p * p * p * p * u * u * u / 60.0,
                                p / 4.0 - p * p * p * u * u / 16.0);
  }
  const std::complex<double> e =
      std::complex<double>(std::cos(M_PI * u), std::sin(M_PI * u));
  return ((kI + M_PI * u) * e - kI) / (kTwoPi * u * u);
}

}  // namespace

ReconstructionResult reconstruct(const SampledSignal& signal, int N,
                                 BlBasis basis) {
  const auto& times = signal.schedule.times;
  const std::size_t count = times.size();
  if (count < 2) {
    throw std::invalid_argument("reconstruct: need at least two samples");
  }
  if (!(signal.schedule.T > 0.0)) {
    throw std::invalid_argument("reconstruct: schedule lacks a base interval");
  }

  ReconstructionResult r;
  r.basis = basis;
  r.T = signal.schedule.T;
  const double J1 = times.front();
  const double J2 = times.back();
  // Nearest-integer centering keeps the atom lattice [M-N, M+N] covering the
  // record even when end jitter pulls (J1+J2)/2T just below a half integer;
  // truncating instead can leave the last base interval without an atom and
  // measurably degrades nonuniform fits.
  r.M = std::llround((J1 + J2) / (2.0 * r.T));
  if (N < 0) {
    // One basis function per base interval across the record. The 1e-9 guard
    // keeps a span that is a whole multiple of 2T from rounding up.
    r.N = static_cast<int>(std::ceil((J2 - J1) / (2.0 * r.T) - 1e-9));
  } else {
    r.N = N;
  }
  const std::size_t dim = 2 * static_cast<std::size_t>(r.N) + 1;

  // Quadrature-style row weights.
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      w[k] = times[1] - times[0];
    } else if (k + 1 == count) {
      w[k] = times[k] - times[k - 1];
    } else {
      w[k] = 0.5 * (times[k + 1] - times[k - 1]);
    }
  }

  Eigen::MatrixXcd A(count, dim);
  Eigen::VectorXcd b(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = times[k] / r.T;
    for (std::size_t col = 0; col < dim; ++col) {
      const int n = static_cast<int>(col) - r.N;
      A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col)) =
          w[k] * basis_value(r, n, x);
    }
    b(static_cast<Eigen::Index>(k)) = w[k] * signal.values[k];
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
  r.coefficients = cod.solve(b);
  r.rank_deficient = cod.rank() < static_cast<Eigen::Index>(dim);
  r.residual = (A * r.coefficients - b).norm();
  return r;
}

std::complex<double> evaluate_complex(const ReconstructionResult& result,
                                      double tau) {
  const double x = tau / result.T;
  std::complex<double> acc = 0.0;
  for (int n = -result.N; n <= result.N; ++n) {
    acc += result.coefficients(n + result.N) * basis_value(result, n, x);
  }
  return acc;
}

double evaluate(const ReconstructionResult& result, double tau) {
  return evaluate_complex(result, tau).real();
}

AnalyticTrace analytic_extension(const ReconstructionResult& result,
                                 const std::vector<double>& time_grid) {
  if (result.basis != BlBasis::Sinc) {
    throw std::invalid_argument(
        "analytic_extension: closed form exists for the sinc basis only");
  }
  AnalyticTrace trace;
  trace.time_grid = time_grid;
  trace.analytic.resize(time_grid.size());
  trace.derivative.resize(time_grid.size());
  trace.if_h.assign(time_grid.size(),
                    std::numeric_limits<double>::quiet_NaN());

  double peak = 0.0;
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    const double x = time_grid[i] / result.T;
    std::complex<double> value = 0.0;
    std::complex<double> slope = 0.0;
    for (int n = -result.N; n <= result.N; ++n) {
      const double u = x - static_cast<double>(n) - static_cast<double>(result.M);
      const auto c = result.coefficients(n + result.N);
      value += c * analytic_sinc(u);
      slope += c * analytic_sinc_dx(u);
    }
    trace.analytic[i] = value;
    trace.derivative[i] = slope / result.T;  // d/d tau = (1/T) d/dx
    peak = std::max(peak, std::abs(value));
  }

  const double floor = 1e-6 * peak;
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    if (std::abs(trace.analytic[i]) > floor) {
      trace.if_h[i] =
          std::imag(trace.derivative[i] / trace.analytic[i]) / kTwoPi;
    }
  }
  return trace;
}

AnalyticTrace hilbert_if_from_samples(const SampledSignal& signal, int N,
                                      const std::vector<double>& time_grid) {
  return analytic_extension(reconstruct(signal, N, BlBasis::Sinc), time_grid);
}

}  // namespace nusq
