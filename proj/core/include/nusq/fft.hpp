#pragma once

#include <complex>
#include <vector>

namespace nusq {

// Thin wrappers over FFTW double-precision complex transforms. Plans are
// created per call with FFTW_ESTIMATE, which is deterministic and cheap at
// the sizes used here; callers that need many transforms of one size should
// use FftPlan directly and reuse it.

// In-place forward DFT: X[j] = sum_p x[p] e^{-2 pi i j p / n}.
void fft_forward(std::vector<std::complex<double>>& data);

// In-place inverse DFT, scaled by 1/n so that inverse(forward(x)) == x.
void fft_inverse(std::vector<std::complex<double>>& data);

// Reusable plan for repeated forward transforms of a fixed length. The
// execute call uses FFTW's new-array interface, so one plan may serve many
// buffers of the same length; each buffer must have its own call.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;

 private:
  std::size_t n_;
  void* plan_;  // fftw_plan, kept opaque to avoid leaking fftw3.h
};

}  // namespace nusq
