#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nusq/hilbert.hpp"
#include "nusq/rng.hpp"
#include "oracles.hpp"

using namespace nusq;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.gaussian();
  return x;
}

}  // namespace

TEST_SUITE("uniform series") {
  TEST_CASE("factory reproduces spacing and values") {
    const std::vector<double> times = {1.0, 1.5, 2.0, 2.5, 3.0};
    const std::vector<double> values = {0.1, 0.2, 0.3, 0.4, 0.5};
    const auto s = uniform_series(times, values);
    CHECK(s.t0 == 1.0);
    CHECK(s.dt == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.values == values);
    CHECK(s.time(3) == doctest::Approx(2.5).epsilon(1e-15));
  }

  TEST_CASE("spacing jitter below the tolerance is accepted") {
    std::vector<double> times = {0.0, 0.1, 0.2, 0.3, 0.4};
    times[2] += 0.1 * 0.9e-9;  // inside the 1e-9 * dt tolerance
    const std::vector<double> values(times.size(), 1.0);
    CHECK_NOTHROW(uniform_series(times, values));
  }

  TEST_CASE("nonuniform spacing is rejected") {
    std::vector<double> times = {0.0, 0.1, 0.2, 0.3, 0.4};
    times[2] += 0.1 * 1e-6;
    const std::vector<double> values(times.size(), 1.0);
    CHECK_THROWS_AS(uniform_series(times, values), std::invalid_argument);
  }

  TEST_CASE("degenerate inputs are rejected") {
    const std::vector<double> three = {0.0, 0.1, 0.2};
    CHECK_THROWS_AS(uniform_series(three, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(uniform_series({0.0, 0.1, 0.2, 0.3}, {1.0, 2.0}),
                    std::invalid_argument);
    const std::vector<double> decreasing = {0.3, 0.2, 0.1, 0.0};
    CHECK_THROWS_AS(uniform_series(decreasing, {1.0, 2.0, 3.0, 4.0}),
                    std::invalid_argument);
  }

  TEST_CASE("series invariants are enforced at the operations") {
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = 0.1;
    s.values = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(analytic_signal(s), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_if(s), std::invalid_argument);
    s.values = {1.0, 2.0, 3.0, 4.0};
    s.dt = 0.0;
    CHECK_THROWS_AS(analytic_signal(s), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_if(s), std::invalid_argument);
  }
}

TEST_SUITE("analytic signal") {
  TEST_CASE("spectrum has doubled positive half and empty negative half") {
    for (std::size_t n : {32u, 33u}) {
      const auto x = random_series(n, 101 + n);
      const auto z = analytic_signal(x);
      REQUIRE(z.size() == n);

      std::vector<std::complex<double>> xc(x.begin(), x.end());
      const auto in_spec = oracle::naive_dft(xc);
      const auto out_spec = oracle::naive_dft(z);

      double scale = 0.0;
      for (const auto& v : in_spec) scale = std::max(scale, std::abs(v));

      CHECK(std::abs(out_spec[0] - in_spec[0]) < 1e-9 * scale);
      for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
        CHECK(std::abs(out_spec[k] - 2.0 * in_spec[k]) < 1e-9 * scale);
      }
      if (n % 2 == 0) {
        CHECK(std::abs(out_spec[n / 2] - in_spec[n / 2]) < 1e-9 * scale);
      }
      for (std::size_t k = n / 2 + 1; k < n; ++k) {
        CHECK(std::abs(out_spec[k]) < 1e-9 * scale);
      }
    }
  }

  TEST_CASE("real part recovers the input") {
    for (std::uint64_t seed : {7u, 8u}) {
      const auto x = random_series(257, seed);
      const auto z = analytic_signal(x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(z[i].real() - x[i]) < 1e-10);
      }
    }
  }

  TEST_CASE("projection is idempotent") {
    const auto x = random_series(128, 21);
    const auto z = analytic_signal(x);
    // Re z == x, so reprojecting the real part must reproduce z exactly up
    // to FFT roundoff; a second application of the half-band mask changes
    // nothing because the masked spectrum is already one-sided.
    std::vector<double> re(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) re[i] = z[i].real();
    const auto z2 = analytic_signal(re);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::abs(z2[i] - z[i]) < 1e-10);
    }
  }

  TEST_CASE("pure tone maps to the complex exponential") {
    const double dt = 1.0 / 64.0;
    const std::size_t n = 4096;
    std::vector<double> times(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      times[i] = dt * static_cast<double>(i);
      x[i] = std::cos(2.0 * M_PI * 4.0 * times[i]);
    }
    const auto s = uniform_series(times, x);
    const auto z = analytic_signal(s);

    const std::size_t margin = n / 20;
    double worst = 0.0, lo = 1e300, hi = 0.0;
    for (std::size_t i = margin; i + margin < n; ++i) {
      const std::complex<double> want(std::cos(2.0 * M_PI * 4.0 * times[i]),
                                      std::sin(2.0 * M_PI * 4.0 * times[i]));
      worst = std::max(worst, std::abs(z[i] - want));
      lo = std::min(lo, std::abs(z[i]));
      hi = std::max(hi, std::abs(z[i]));
    }
    CHECK(worst < 1e-6);
    CHECK((hi - lo) / hi < 1e-3);  // tone modulus is constant
  }

  TEST_CASE("zero series maps to zero") {
    const std::vector<double> x(64, 0.0);
    const auto z = analytic_signal(x);
    for (const auto& v : z) CHECK(std::abs(v) == 0.0);
  }
}

TEST_SUITE("hilbert if") {
  TEST_CASE("dense tone gives if 4 within 1e-3") {
    // The centered difference reads sin(w dt) / (w dt) times the true
    // frequency, a bias of 4 (2 pi 4 dt)^2 / 6; dt = 1/1024 puts that near
    // 4e-4, inside the checked tolerance.
    const double dt = 1.0 / 1024.0;
    const std::size_t n = 8192;
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = dt;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.values[i] = std::cos(2.0 * M_PI * 4.0 * s.time(i));
    }
    const auto f = hilbert_if(s);
    const std::size_t margin = n / 20;
    for (std::size_t i = margin; i + margin < n; ++i) {
      REQUIRE(!std::isnan(f[i]));
      CHECK(std::abs(f[i] - 4.0) < 1e-3);
    }
  }

  TEST_CASE("dense chirp tracks 1 + 0.1 t within 1e-2") {
    const double dt = 1.0 / 512.0;
    const std::size_t n = static_cast<std::size_t>(30.0 / dt);
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = dt;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = s.time(i);
      s.values[i] = std::cos(2.0 * M_PI * (t + 0.05 * t * t));
    }
    const auto f = hilbert_if(s);
    // The record is not periodic, so the discrete projection rings near the
    // two ends; two seconds of margin puts the ringing below the tolerance.
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = s.time(i);
      if (t < 2.0 || t > 28.0) continue;
      REQUIRE(!std::isnan(f[i]));
      worst = std::max(worst, std::abs(f[i] - (1.0 + 0.1 * t)));
    }
    CHECK(worst < 1e-2);
  }

  TEST_CASE("constant signal has exactly zero if") {
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = 0.01;
    s.values.assign(256, 3.0);
    const auto f = hilbert_if(s);
    for (std::size_t i = 0; i < f.size(); ++i) {
      REQUIRE(!std::isnan(f[i]));
      CHECK(f[i] == 0.0);
    }
  }

  TEST_CASE("slow positive envelope keeps if near zero") {
    // An amplitude-only signal concentrates its spectrum near DC, so the
    // analytic phase drifts at most on the envelope's own frequency scale
    // (1/8 Hz here), far below any oscillatory carrier.
    const double dt = 1.0 / 64.0;
    const std::size_t n = 4096;
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = dt;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.values[i] = 2.0 + std::cos(2.0 * M_PI * s.time(i) / 8.0);
    }
    const auto f = hilbert_if(s);
    const std::size_t margin = n / 10;
    for (std::size_t i = margin; i + margin < n; ++i) {
      REQUIRE(!std::isnan(f[i]));
      CHECK(std::abs(f[i]) < 0.125);
    }
  }

  TEST_CASE("zero series has if undefined everywhere") {
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = 0.01;
    s.values.assign(64, 0.0);
    const auto f = hilbert_if(s);
    for (const double v : f) CHECK(std::isnan(v));
  }

  TEST_CASE("raising the floor widens the undefined region") {
    // A beat envelope cos(2 pi t / 4) crosses zero, so |analytic| dips
    // periodically; a higher relative floor blanks more of each dip.
    const double dt = 1.0 / 128.0;
    const std::size_t n = 2048;
    UniformSeries s;
    s.t0 = 0.0;
    s.dt = dt;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = s.time(i);
      s.values[i] =
          std::cos(2.0 * M_PI * t / 4.0) * std::cos(2.0 * M_PI * 5.0 * t);
    }
    const auto low = hilbert_if(s);
    const auto high = hilbert_if(s, 0.5);
    std::size_t nan_low = 0, nan_high = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(low[i])) ++nan_low;
      if (std::isnan(high[i])) ++nan_high;
    }
    CHECK(nan_low < nan_high);
    CHECK(nan_high < n);
  }
}
