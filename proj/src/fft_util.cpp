#include "fft_util.hpp"

#include <fftw3.h>

#include <mutex>

namespace scr::detail {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex plan_mutex;
}  // namespace

std::size_t half_spectrum_size(int width, int height) {
  return static_cast<std::size_t>(height) * (static_cast<std::size_t>(width) / 2 + 1);
}

void fft_r2c_2d(const double* in, double* out_interleaved, int width, int height) {
  auto* out = reinterpret_cast<fftw_complex*>(out_interleaved);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_r2c_2d(height, width, const_cast<double*>(in), out,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

void fft_c2r_2d(double* in_interleaved, double* out, int width, int height) {
  auto* in = reinterpret_cast<fftw_complex*>(in_interleaved);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_c2r_2d(height, width, in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace scr::detail
