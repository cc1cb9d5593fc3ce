#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nusq/signals.hpp"
#include "nusq/stft.hpp"

namespace nusq {

// Instantaneous-frequency information omega(t, eta) = dV/dt / (2 pi i V),
// defined where |V| >= gamma. valid marks those entries; omega holds the
// complex ratio (its real part is the frequency estimate in Hz).
struct OmegaMap {
  std::vector<double> time_grid;
  FrequencyGrid freq_grid;
  double gamma = 0.0;
  Eigen::MatrixXcd omega;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> valid;
};

OmegaMap if_information(const TimeFreqMap& value, const TimeFreqMap& derivative,
                        double gamma);

// Squeezed measure on the lattice xi = alpha * n, n = 0, 1, ...:
//   mass(t, xi) = delta_eta * #{ j : |V(t,eta_j)| >= gamma,
//                                |xi - omega(t,eta_j)| < alpha/2 }
// i.e. the discrete Lebesgue measure of the eta set reassigned to xi. The
// comparison uses the complex modulus of xi - omega.
struct SqueezeMap {
  std::vector<double> time_grid;
  double alpha = 0.0;
  double gamma = 0.0;
  Eigen::Index xi_count = 0;
  Eigen::MatrixXd mass;  // rows: time, cols: xi bins

  double xi_value(Eigen::Index i) const { return alpha * static_cast<double>(i); }
};

SqueezeMap squeeze(const OmegaMap& omega, const TimeFreqMap& value,
                   double alpha, double gamma, double eta_max);

// Frequencies with squeezed mass above the floor, per time column, ascending.
struct IFSet {
  std::vector<double> times;
  std::vector<std::vector<double>> members;
};

IFSet extract_if_set(const SqueezeMap& map, double support_floor = 0.0);

// Greedy continuation of IF-set members across time: each curve extends to
// the nearest next-column member within 2 alpha; ties break toward the lower
// frequency; unmatched members open new curves.
struct IFCurve {
  std::size_t start = 0;            // index into IFSet.times
  std::vector<double> xi;           // one value per consecutive column
};

std::vector<IFCurve> link_curves(const IFSet& set, double alpha);

// Diagnostic constants from the approximation analysis. integrals[n][m] is
// the moment integral of |u|^n |g^(m)(u)| over the window support. E1 and
// E1_prime are the first-order transform and derivative error sums for a
// given AM-FM modulation budget epsilon; E3 is the largest component
// frequency. alpha_min is the smallest squeeze resolution the analysis
// certifies, using the convention that the schedule-dependent remainder
// terms (which have no closed form) are taken as zero.
struct BoundReport {
  double integrals[3][3] = {};
  double E1 = 0.0;
  double E1_prime = 0.0;
  double E3 = 0.0;
  double alpha_min = 0.0;
  bool def4_satisfied = false;  // sup |a_n| <= T^2 for the given schedule
};

BoundReport bound_report(const SignalSpec& spec, const Window& window,
                         double epsilon, const SamplingSchedule& schedule);

}  // namespace nusq
