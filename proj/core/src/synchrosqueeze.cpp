#include "nusq/synchrosqueeze.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace nusq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Adaptive Simpson quadrature, refined until the local error estimate is
// below tol. Handles the |.| kinks in the moment integrands by splitting.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

// Sup of |f| over [t0, t1] by dense evaluation.
double sup_abs(const std::function<double(double)>& f, double t0, double t1) {
  constexpr int kSamples = 20000;
  double m = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / kSamples;
    m = std::max(m, std::abs(f(t)));
  }
  return m;
}

}  // namespace

OmegaMap if_information(const TimeFreqMap& value, const TimeFreqMap& derivative,
                        double gamma) {
  if (gamma < 0.0) {
    throw std::invalid_argument("if_information: gamma must be >= 0");
  }
  if (value.time_grid != derivative.time_grid ||
      value.freq_grid.count != derivative.freq_grid.count ||
      value.freq_grid.spacing != derivative.freq_grid.spacing) {
    throw std::invalid_argument(
        "if_information: value and derivative grids do not match");
  }
  OmegaMap out;
  out.time_grid = value.time_grid;
  out.freq_grid = value.freq_grid;
  out.gamma = gamma;
  out.omega.setZero(value.values.rows(), value.values.cols());
  out.valid.setConstant(value.values.rows(), value.values.cols(), false);
  const std::complex<double> denom_unit(0.0, kTwoPi);
  for (Eigen::Index m = 0; m < value.values.rows(); ++m) {
    for (Eigen::Index j = 0; j < value.values.cols(); ++j) {
      const auto v = value.values(m, j);
      if (std::abs(v) >= gamma && v != 0.0) {
        out.omega(m, j) = derivative.values(m, j) / (denom_unit * v);
        out.valid(m, j) = true;
      }
    }
  }
  return out;
}

SqueezeMap squeeze(const OmegaMap& omega, const TimeFreqMap& value,
                   double alpha, double gamma, double eta_max) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("squeeze: alpha must be positive");
  }
  if (gamma < 0.0) {
    throw std::invalid_argument("squeeze: gamma must be >= 0");
  }
  if (omega.time_grid != value.time_grid ||
      omega.freq_grid.count != value.freq_grid.count ||
      omega.freq_grid.spacing != value.freq_grid.spacing) {
    throw std::invalid_argument("squeeze: omega and value grids do not match");
  }
  if (!(eta_max > 0.0)) {
    throw std::invalid_argument("squeeze: eta_max must be positive");
  }

  SqueezeMap out;
  out.time_grid = omega.time_grid;
  out.alpha = alpha;
  out.gamma = gamma;
  out.xi_count =
      static_cast<Eigen::Index>(std::floor(eta_max / alpha + 1e-9)) + 1;
  out.mass.setZero(static_cast<Eigen::Index>(omega.time_grid.size()),
                   out.xi_count);

  const double delta_eta = omega.freq_grid.spacing;
  const double half = 0.5 * alpha;
  for (Eigen::Index m = 0; m < omega.omega.rows(); ++m) {
    for (Eigen::Index j = 0; j < omega.omega.cols(); ++j) {
      if (omega.freq_grid.value(j) > eta_max * (1.0 + 1e-12)) break;
      if (!omega.valid(m, j)) continue;
      if (std::abs(value.values(m, j)) < gamma) continue;
      const std::complex<double> w = omega.omega(m, j);
      // |xi - w| < alpha/2 requires |Im w| < alpha/2, in which case the only
      // candidate xi is the lattice point nearest Re w: lattice points sit
      // alpha apart, so at most one can be strictly within alpha/2 of w.
      if (std::abs(w.imag()) >= half) continue;
      const double candidate = std::round(w.real() / alpha);
      if (candidate < 0.0 || candidate >= static_cast<double>(out.xi_count)) {
        continue;
      }
      const auto i = static_cast<Eigen::Index>(candidate);
      if (std::abs(std::complex<double>(out.alpha * candidate, 0.0) - w) <
          half) {
        out.mass(m, i) += delta_eta;
      }
    }
  }
  return out;
}

IFSet extract_if_set(const SqueezeMap& map, double support_floor) {
  if (support_floor < 0.0) {
    throw std::invalid_argument("extract_if_set: support_floor must be >= 0");
  }
  IFSet set;
  set.times = map.time_grid;
  set.members.resize(map.time_grid.size());
  for (Eigen::Index m = 0; m < map.mass.rows(); ++m) {
    auto& row = set.members[static_cast<std::size_t>(m)];
    for (Eigen::Index i = 0; i < map.mass.cols(); ++i) {
      if (map.mass(m, i) > support_floor) row.push_back(map.xi_value(i));
    }
  }
  return set;
}

std::vector<IFCurve> link_curves(const IFSet& set, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("link_curves: alpha must be positive");
  }
  std::vector<IFCurve> done;
  struct Active {
    IFCurve curve;
    double last;
  };
  std::vector<Active> active;

  for (std::size_t m = 0; m < set.members.size(); ++m) {
    const auto& row = set.members[m];  // ascending
    std::vector<bool> taken(row.size(), false);

    // Lower-frequency curves choose first, so a tie between two curves for
    // one member resolves toward the lower frequency; ditto each curve
    // prefers its nearest member, lower one on equal distance (ascending
    // scan makes the first minimum the lower candidate).
    std::sort(active.begin(), active.end(),
              [](const Active& a, const Active& b) { return a.last < b.last; });
    std::vector<Active> next_active;
    for (auto& act : active) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_idx = row.size();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (taken[i]) continue;
        const double d = std::abs(row[i] - act.last);
        if (d < best) {
          best = d;
          best_idx = i;
        }
      }
      if (best_idx < row.size() && best <= 2.0 * alpha) {
        taken[best_idx] = true;
        act.curve.xi.push_back(row[best_idx]);
        act.last = row[best_idx];
        next_active.push_back(std::move(act));
      } else {
        done.push_back(std::move(act.curve));
      }
    }
    active = std::move(next_active);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (taken[i]) continue;
      Active fresh;
      fresh.curve.start = m;
      fresh.curve.xi.push_back(row[i]);
      fresh.last = row[i];
      active.push_back(std::move(fresh));
    }
  }
  for (auto& act : active) done.push_back(std::move(act.curve));
  std::sort(done.begin(), done.end(), [](const IFCurve& a, const IFCurve& b) {
    return a.start != b.start ? a.start < b.start
                              : a.xi.front() < b.xi.front();
  });
  return done;
}

BoundReport bound_report(const SignalSpec& spec, const Window& window,
                         double epsilon, const SamplingSchedule& schedule) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("bound_report: epsilon must be >= 0");
  }
  if (spec.components.empty()) {
    throw std::invalid_argument("bound_report: spec has no components");
  }
  BoundReport rep;
  const double R = window.effective_radius;
  const std::function<double(double)>* derivs[3] = {&window.g, &window.g_dot,
                                                    &window.g_ddot};
  for (int m = 0; m < 3; ++m) {
    if (!*derivs[m]) {
      throw std::invalid_argument(
          "bound_report: window lacks a required derivative");
    }
    for (int n = 0; n < 3; ++n) {
      const auto& gm = *derivs[m];
      rep.integrals[n][m] = integrate(
          [&gm, n](double u) { return std::pow(std::abs(u), n) * std::abs(gm(u)); },
          -R, R, 1e-12);
    }
  }

  const double I0 = rep.integrals[0][0];
  const double I1 = rep.integrals[1][0];
  const double I2 = rep.integrals[2][0];

  // Per-component sums; the ratio E1'/E1 is epsilon-free because epsilon
  // multiplies both, so alpha_min stays finite as epsilon -> 0.
  double e1_scaled = 0.0;        // E1 / epsilon
  double e1_prime_scaled = 0.0;  // E1' / epsilon
  rep.E3 = 0.0;
  for (const auto& c : spec.components) {
    if (!c.amplitude || !c.phase_dot) {
      throw std::invalid_argument(
          "bound_report: components need amplitude and phase_dot hooks");
    }
    const double A = sup_abs(c.amplitude, spec.t0, spec.t1);
    const double F = sup_abs(c.phase_dot, spec.t0, spec.t1);
    e1_scaled += F * (I1 + M_PI * A * I2);
    e1_prime_scaled += F * (I0 / kTwoPi + (A + F) * I1 + M_PI * A * F * I2);
    rep.E3 = std::max(rep.E3, F);
  }
  rep.E1 = epsilon * e1_scaled;
  rep.E1_prime = epsilon * e1_prime_scaled;
  rep.alpha_min = 2.0 * e1_prime_scaled / e1_scaled + 2.0 * rep.E3;
  rep.def4_satisfied =
      schedule.max_offset() <= schedule.T * schedule.T * (1.0 + 1e-12);
  return rep;
}

}  // namespace nusq
