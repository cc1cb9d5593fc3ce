#include "nusq/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace nusq {

namespace {

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
  // Plan on a scratch buffer so caller data is not clobbered by planning.
  // FFTW_UNALIGNED lets the plan run on any caller buffer regardless of its
  // alignment relative to the scratch buffer used here.
  std::vector<std::complex<double>> scratch(n);
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()),
                           as_fftw(scratch.data()), FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: fftw plan failed");
}

FftPlan::~FftPlan() { fftw_destroy_plan(static_cast<fftw_plan>(plan_)); }

void FftPlan::forward(std::complex<double>* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(data),
                   as_fftw(data));
}

void fft_forward(std::vector<std::complex<double>>& data) {
  if (data.empty()) return;
  fftw_plan plan =
      fftw_plan_dft_1d(static_cast<int>(data.size()), as_fftw(data.data()),
                       as_fftw(data.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw std::runtime_error("fft_forward: plan failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

void fft_inverse(std::vector<std::complex<double>>& data) {
  if (data.empty()) return;
  fftw_plan plan =
      fftw_plan_dft_1d(static_cast<int>(data.size()), as_fftw(data.data()),
                       as_fftw(data.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw std::runtime_error("fft_inverse: plan failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace nusq
