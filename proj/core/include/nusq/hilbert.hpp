#pragma once

#include <complex>
#include <vector>

namespace nusq {

// Densely and uniformly sampled real series.
struct UniformSeries {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;

  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

// Builds a series from explicit times, validating uniform spacing to a
// relative tolerance of 1e-9.
UniformSeries uniform_series(const std::vector<double>& times,
                             const std::vector<double>& values);

// Discrete analytic signal via the FFT half-band method: positive
// frequencies doubled, negative zeroed, DC and Nyquist kept, so the real
// part reproduces the input and cos(2 pi phi) maps to e^{2 pi i phi}.
std::vector<std::complex<double>> analytic_signal(
    const std::vector<double>& values);

// Same construction with the series invariants (dt > 0, length >= 4)
// checked up front.
std::vector<std::complex<double>> analytic_signal(const UniformSeries& series);

// IF of the analytic signal, Im(z' / z) / (2 pi), with z' from centered
// differences (one-sided at the ends). NaN where |z| falls below
// `floor_rel` of its maximum.
std::vector<double> hilbert_if(const UniformSeries& series,
                               double floor_rel = 1e-6);

}  // namespace nusq
