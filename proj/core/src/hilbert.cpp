#include "nusq/hilbert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nusq/fft.hpp"

namespace nusq {

UniformSeries uniform_series(const std::vector<double>& times,
                             const std::vector<double>& values) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("uniform_series: times/values size mismatch");
  }
  if (times.size() < 4) {
    throw std::invalid_argument("uniform_series: need at least four samples");
  }
  UniformSeries s;
  s.t0 = times.front();
  s.dt = (times.back() - times.front()) /
         static_cast<double>(times.size() - 1);
  if (!(s.dt > 0.0)) {
    throw std::invalid_argument("uniform_series: times must increase");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    if (std::abs(gap - s.dt) > 1e-9 * s.dt) {
      throw std::invalid_argument("uniform_series: spacing is not uniform");
    }
  }
  s.values = values;
  return s;
}

std::vector<std::complex<double>> analytic_signal(
    const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw std::invalid_argument("analytic_signal: need at least two samples");
  }
  std::vector<std::complex<double>> spec(values.begin(), values.end());
  fft_forward(spec);
  // Half-band mask: bins 1..ceil(n/2)-1 doubled, DC kept, Nyquist (even n)
  // kept, the rest zeroed.
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) spec[k] *= 2.0;
  for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
  fft_inverse(spec);
  return spec;
}

std::vector<std::complex<double>> analytic_signal(const UniformSeries& series) {
  if (series.values.size() < 4 || !(series.dt > 0.0)) {
    throw std::invalid_argument(
        "analytic_signal: series needs dt > 0 and at least four samples");
  }
  return analytic_signal(series.values);
}

std::vector<double> hilbert_if(const UniformSeries& series, double floor_rel) {
  if (series.values.size() < 4 || !(series.dt > 0.0)) {
    throw std::invalid_argument(
        "hilbert_if: series needs dt > 0 and at least four samples");
  }
  const auto z = analytic_signal(series.values);
  const std::size_t n = z.size();
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());

  double peak = 0.0;
  for (const auto& v : z) peak = std::max(peak, std::abs(v));
  const double floor = floor_rel * peak;

  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> dz;
    if (i == 0) {
      dz = (z[1] - z[0]) / series.dt;
    } else if (i + 1 == n) {
      dz = (z[n - 1] - z[n - 2]) / series.dt;
    } else {
      dz = (z[i + 1] - z[i - 1]) / (2.0 * series.dt);
    }
    if (std::abs(z[i]) > floor) {
      out[i] = std::imag(dz / z[i]) / (2.0 * M_PI);
    }
  }
  return out;
}

}  // namespace nusq
