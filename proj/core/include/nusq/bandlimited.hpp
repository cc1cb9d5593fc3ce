#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nusq/signals.hpp"

namespace nusq {

enum class BlBasis { Sinc, Dft };

// Weighted least-squares fit of the samples by a bandlimited model
//   f_N(x) = sum_{n=-N}^{N} c_n h(n, x),   x = t / T,
// with h(n, x) = sinc(x - n - M) (sinc basis, M = round((J1+J2)/(2T)) the
// record midpoint in units of T) or the unitary DFT basis
// h(n, x) = (2N+1)^{-1/2} e^{-2 pi i n x / (2N+1)}. Each equation row is
// weighted by w_k = (t_{k+1} - t_{k-1}) / 2, one-sided at the record ends.
struct ReconstructionResult {
  BlBasis basis = BlBasis::Sinc;
  double T = 0.0;
  long long M = 0;
  int N = 0;
  Eigen::VectorXcd coefficients;  // index n = -N..N stored as 0..2N
  double residual = 0.0;          // weighted l2 misfit of the fit
  bool rank_deficient = false;    // solution is the minimum-norm one
};

// Solves the weighted least-squares problem by a rank-revealing complete
// orthogonal decomposition (never the normal equations); on rank deficiency
// the minimum-norm solution is returned and flagged. N < 0 means the
// default, one basis function per base interval: ceil((J2-J1)/(2T)).
ReconstructionResult reconstruct(const SampledSignal& signal, int N = -1,
                                 BlBasis basis = BlBasis::Sinc);

// f_N at physical time tau (real part; the model of a real signal).
double evaluate(const ReconstructionResult& result, double tau);
std::complex<double> evaluate_complex(const ReconstructionResult& result,
                                      double tau);

// Analytic part of the model and the IF it induces. For the sinc basis the
// positive-frequency projection has the closed form
//   P f_N(x) = sum_n c_n (1/2) sinc((x-n-M)/2) e^{i pi (x-n-M)/2},
//   d/dx P f_N(x) = sum_n c_n [(i + pi u) e^{i pi u} - i] / (2 pi u^2),
// with u = x - n - M; the removable singularity at u = 0 is evaluated by a
// fourth-order series below |u| = 1e-4. derivative is with respect to
// physical time (the 1/T from x = t/T is applied), and
// if_h = Im(derivative / analytic) / (2 pi) wherever |analytic| exceeds
// 1e-6 of its maximum; elsewhere if_h is NaN.
struct AnalyticTrace {
  std::vector<double> time_grid;
  std::vector<std::complex<double>> analytic;
  std::vector<std::complex<double>> derivative;
  std::vector<double> if_h;  // NaN where undefined
};

AnalyticTrace analytic_extension(const ReconstructionResult& result,
                                 const std::vector<double>& time_grid);

// Convenience chain: sinc reconstruction followed by analytic_extension.
AnalyticTrace hilbert_if_from_samples(const SampledSignal& signal, int N,
                                      const std::vector<double>& time_grid);

}  // namespace nusq
