#include "nusq/stft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nusq/fft.hpp"

namespace nusq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::complex<double> kI{0.0, 1.0};

void validate_grids(const ImpulseTrain& train,
                    const std::vector<double>& time_grid,
                    const FrequencyGrid& freq_grid) {
  if (train.weights.empty()) {
    throw std::invalid_argument("modified_stft: empty impulse train");
  }
  if (time_grid.empty()) {
    throw std::invalid_argument("modified_stft: empty time grid");
  }
  if (freq_grid.count <= 0 || !(freq_grid.spacing > 0.0)) {
    throw std::invalid_argument("modified_stft: empty frequency grid");
  }
  // Frequencies are meaningful only below the fine-grid limit; past that the
  // discretized train cannot represent the oscillation.
  const double limit = 1.0 / train.grid_dt;
  if (freq_grid.max_value() >= limit * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "modified_stft: frequency grid exceeds the 1/grid_dt limit");
  }
}

// True when t sits on the train's fine grid (within 1e-9 of a grid point).
bool on_grid(const ImpulseTrain& train, double t, long long& index_out) {
  const double pos = (t - train.grid_start) / train.grid_dt;
  const double rounded = std::llround(pos);
  index_out = std::llround(pos);
  return std::abs(pos - rounded) < 1e-9;
}

TimeFreqMap direct_transform(const ImpulseTrain& train,
                             const std::function<double(double)>& win,
                             double radius,
                             const std::vector<double>& time_grid,
                             const FrequencyGrid& freq_grid) {
  TimeFreqMap map;
  map.time_grid = time_grid;
  map.freq_grid = freq_grid;
  map.values.setZero(static_cast<Eigen::Index>(time_grid.size()),
                     freq_grid.count);

  for (std::size_t m = 0; m < time_grid.size(); ++m) {
    const double t = time_grid[m];
    // Impulse indices whose grid time lies within the window radius.
    const auto lo = std::lower_bound(
        train.nonzero.begin(), train.nonzero.end(), t - radius,
        [&](std::size_t idx, double bound) { return train.grid_time(idx) < bound; });
    for (auto it = lo; it != train.nonzero.end(); ++it) {
      const double u = train.grid_time(*it) - t;
      if (u > radius) break;
      const std::complex<double> wg = train.weights[*it] * win(u);
      for (Eigen::Index j = 0; j < freq_grid.count; ++j) {
        const double theta = -kTwoPi * freq_grid.value(j) * u;
        map.values(static_cast<Eigen::Index>(m), j) +=
            wg * std::complex<double>(std::cos(theta), std::sin(theta));
      }
    }
  }
  return map;
}

TimeFreqMap fft_transform(const ImpulseTrain& train,
                          const std::function<double(double)>& win,
                          double radius, const std::vector<double>& time_grid,
                          const FrequencyGrid& freq_grid) {
  TimeFreqMap map;
  map.time_grid = time_grid;
  map.freq_grid = freq_grid;
  map.values.setZero(static_cast<Eigen::Index>(time_grid.size()),
                     freq_grid.count);

  const std::size_t n = freq_grid.n_fft;
  FftPlan plan(n);
  std::vector<std::complex<double>> buf(n);
  const auto span = static_cast<long long>(train.weights.size());
  const auto reach = static_cast<long long>(std::floor(radius / train.grid_dt));

  for (std::size_t m = 0; m < time_grid.size(); ++m) {
    long long center = 0;
    on_grid(train, time_grid[m], center);
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    const long long lo = std::max(center - reach, 0LL);
    const long long hi = std::min(center + reach, span - 1);
    for (long long p = lo; p <= hi; ++p) {
      const auto w = train.weights[static_cast<std::size_t>(p)];
      if (w == 0.0) continue;
      const long long s = p - center;  // window-relative offset
      // Bin j of the FFT evaluates e^{-2 pi i j s / n}, which matches
      // e^{-2 pi i eta_j (tau_p - t)} exactly because eta_j = j/(n grid_dt);
      // folding s modulo n leaves those phases unchanged.
      const auto slot = static_cast<std::size_t>(((s % static_cast<long long>(n)) +
                                                  static_cast<long long>(n)) %
                                                 static_cast<long long>(n));
      buf[slot] += w * win(static_cast<double>(s) * train.grid_dt);
    }
    plan.forward(buf.data());
    for (Eigen::Index j = 0; j < freq_grid.count; ++j) {
      map.values(static_cast<Eigen::Index>(m), j) =
          buf[static_cast<std::size_t>(j)];
    }
  }
  return map;
}

// Dispatch one windowed transform according to policy.
TimeFreqMap transform(const ImpulseTrain& train,
                      const std::function<double(double)>& win, double radius,
                      const std::vector<double>& time_grid,
                      const FrequencyGrid& freq_grid, StftPolicy policy) {
  bool fft_ok = freq_grid.n_fft > 0 &&
                static_cast<Eigen::Index>(freq_grid.n_fft) >= freq_grid.count;
  if (fft_ok) {
    for (double t : time_grid) {
      long long idx;
      if (!on_grid(train, t, idx)) {
        fft_ok = false;
        break;
      }
    }
  }
  switch (policy) {
    case StftPolicy::Direct:
      return direct_transform(train, win, radius, time_grid, freq_grid);
    case StftPolicy::Fft:
      if (!fft_ok) {
        throw std::invalid_argument(
            "modified_stft: FFT path needs an fft-aligned frequency grid and "
            "on-grid column times");
      }
      return fft_transform(train, win, radius, time_grid, freq_grid);
    case StftPolicy::Auto:
    default:
      return fft_ok ? fft_transform(train, win, radius, time_grid, freq_grid)
                    : direct_transform(train, win, radius, time_grid, freq_grid);
  }
}

}  // namespace

Window gaussian_window(double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("gaussian_window: scale must be positive");
  }
  Window w;
  w.g = [scale](double u) { return std::exp(-scale * M_PI * u * u); };
  w.g_dot = [scale](double u) {
    return -2.0 * scale * M_PI * u * std::exp(-scale * M_PI * u * u);
  };
  w.g_ddot = [scale](double u) {
    const double c = 2.0 * scale * M_PI;
    return (c * c * u * u - c) * std::exp(-scale * M_PI * u * u);
  };
  w.effective_radius = std::sqrt(28.0 / (scale * M_PI));
  w.nominal_bandwidth = std::sqrt(scale);
  return w;
}

FrequencyGrid make_frequency_grid(double grid_dt, double eta_max,
                                  double delta_eta_target) {
  if (!(grid_dt > 0.0) || !(eta_max > 0.0) || !(delta_eta_target > 0.0)) {
    throw std::invalid_argument(
        "make_frequency_grid: grid_dt, eta_max, delta_eta_target must be "
        "positive");
  }
  if (eta_max >= 1.0 / grid_dt) {
    throw std::invalid_argument(
        "make_frequency_grid: eta_max must stay below 1/grid_dt");
  }
  std::size_t n_fft = 2;
  while (1.0 / (grid_dt * static_cast<double>(n_fft)) > delta_eta_target) {
    n_fft *= 2;
  }
  FrequencyGrid grid;
  grid.n_fft = n_fft;
  grid.spacing = 1.0 / (grid_dt * static_cast<double>(n_fft));
  grid.count =
      static_cast<Eigen::Index>(std::floor(eta_max / grid.spacing + 1e-9)) + 1;
  if (grid.count > static_cast<Eigen::Index>(n_fft)) {
    grid.count = static_cast<Eigen::Index>(n_fft);
  }
  return grid;
}

std::vector<double> make_time_grid(const ImpulseTrain& train,
                                   std::size_t stride) {
  if (stride == 0) {
    throw std::invalid_argument("make_time_grid: stride must be positive");
  }
  std::vector<double> grid;
  for (std::size_t idx = 0; idx < train.weights.size(); idx += stride) {
    grid.push_back(train.grid_time(idx));
  }
  return grid;
}

TimeFreqMap modified_stft(const ImpulseTrain& train, const Window& window,
                          const std::vector<double>& time_grid,
                          const FrequencyGrid& freq_grid, StftPolicy policy) {
  validate_grids(train, time_grid, freq_grid);
  return transform(train, window.g, window.effective_radius, time_grid,
                   freq_grid, policy);
}

TimeFreqMap stft_time_derivative(const ImpulseTrain& train,
                                 const Window& window,
                                 const std::vector<double>& time_grid,
                                 const FrequencyGrid& freq_grid,
                                 StftPolicy policy) {
  return stft_with_derivative(train, window, time_grid, freq_grid, policy)
      .derivative;
}

StftPair stft_with_derivative(const ImpulseTrain& train, const Window& window,
                              const std::vector<double>& time_grid,
                              const FrequencyGrid& freq_grid,
                              StftPolicy policy) {
  validate_grids(train, time_grid, freq_grid);
  StftPair pair;
  pair.value = transform(train, window.g, window.effective_radius, time_grid,
                         freq_grid, policy);
  // d/dt V = -V_{g'} + 2 pi i eta V; the t-dependence sits entirely in the
  // window factor g(tau - t) e^{-2 pi i eta (tau - t)}.
  pair.derivative = transform(train, window.g_dot, window.effective_radius,
                              time_grid, freq_grid, policy);
  for (Eigen::Index m = 0; m < pair.derivative.values.rows(); ++m) {
    for (Eigen::Index j = 0; j < pair.derivative.values.cols(); ++j) {
      pair.derivative.values(m, j) =
          -pair.derivative.values(m, j) +
          kTwoPi * kI * freq_grid.value(j) * pair.value.values(m, j);
    }
  }
  return pair;
}

}  // namespace nusq
