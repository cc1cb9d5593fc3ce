#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nusq/signals.hpp"

namespace nusq {

// Analysis window with analytic derivatives. effective_radius is where the
// window has decayed below 1e-12 of its peak; evaluation is truncated there.
// nominal_bandwidth is the frequency-domain scale used for diagnostics.
struct Window {
  std::function<double(double)> g;
  std::function<double(double)> g_dot;
  std::function<double(double)> g_ddot;
  double effective_radius = 0.0;
  double nominal_bandwidth = 0.0;
};

// Gaussian g(u) = exp(-scale * pi * u^2). Radius sqrt(28 / (scale pi))
// puts the truncated tail at e^{-28} < 1e-12; bandwidth is sqrt(scale).
Window gaussian_window(double scale);

// Uniform frequency grid eta_j = j * spacing, j = 0..count-1. When built by
// make_frequency_grid the spacing is 1 / (grid_dt * n_fft), which lets the
// transform run column-wise as a length-n_fft FFT; n_fft == 0 marks a grid
// without that alignment, served by direct summation only.
struct FrequencyGrid {
  double spacing = 0.0;
  Eigen::Index count = 0;
  std::size_t n_fft = 0;

  double value(Eigen::Index j) const { return spacing * static_cast<double>(j); }
  double max_value() const { return count > 0 ? value(count - 1) : 0.0; }
};

// Smallest power-of-two n_fft whose bin width 1/(grid_dt * n_fft) is at most
// delta_eta_target, with bins covering [0, eta_max]. eta_max must stay below
// the fine-grid limit 1/grid_dt.
FrequencyGrid make_frequency_grid(double grid_dt, double eta_max,
                                  double delta_eta_target);

// The train's fine grid decimated to one column every `stride` grid steps.
std::vector<double> make_time_grid(const ImpulseTrain& train,
                                   std::size_t stride);

// Windowed transform values on a time x frequency lattice.
struct TimeFreqMap {
  std::vector<double> time_grid;
  FrequencyGrid freq_grid;
  Eigen::MatrixXcd values;  // rows: time, cols: frequency
};

enum class StftPolicy { Auto, Direct, Fft };

// Modified short-time transform of the impulse train:
//   V(t, eta) = sum_p w_p g(tau_p - t) e^{-2 pi i eta (tau_p - t)}
// summed over grid impulses within the window radius of t. The FFT path
// requires fft-aligned freq_grid and on-grid column times and agrees with
// direct summation to roundoff; Auto picks it whenever available. Columns
// are independent of one another, so callers may evaluate disjoint
// time-grid slices concurrently and concatenate.
TimeFreqMap modified_stft(const ImpulseTrain& train, const Window& window,
                          const std::vector<double>& time_grid,
                          const FrequencyGrid& freq_grid,
                          StftPolicy policy = StftPolicy::Auto);

// Time derivative d/dt V(t, eta) = -V_{g'}(t, eta) + 2 pi i eta V(t, eta),
// where V_{g'} is the transform taken with the window derivative.
TimeFreqMap stft_time_derivative(const ImpulseTrain& train,
                                 const Window& window,
                                 const std::vector<double>& time_grid,
                                 const FrequencyGrid& freq_grid,
                                 StftPolicy policy = StftPolicy::Auto);

// Both the transform and its time derivative, sharing the window passes.
struct StftPair {
  TimeFreqMap value;
  TimeFreqMap derivative;
};

StftPair stft_with_derivative(const ImpulseTrain& train, const Window& window,
                              const std::vector<double>& time_grid,
                              const FrequencyGrid& freq_grid,
                              StftPolicy policy = StftPolicy::Auto);

}  // namespace nusq
