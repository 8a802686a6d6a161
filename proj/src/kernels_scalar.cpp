#include "scr/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference kernels. Plain loops, no ISA assumptions; the SIMD variants are
// checked against these.

namespace scr::kernels {
namespace {

void scale_complex_scalar(double* reim, const double* gain, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    reim[2 * i] *= gain[i];
    reim[2 * i + 1] *= gain[i];
  }
}

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

void conv_sym_h_scalar(const double* src, double* dst, int width, int height,
                       const double* taps, int radius) {
  for (int y = 0; y < height; ++y) {
    const double* row = src + static_cast<std::size_t>(y) * width;
    double* out = dst + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = taps[0] * row[x];
      for (int k = 1; k <= radius; ++k) {
        acc += taps[k] * (row[clamp_index(x - k, width)] + row[clamp_index(x + k, width)]);
      }
      out[x] = acc;
    }
  }
}

void conv_sym_v_scalar(const double* src, double* dst, int width, int height,
                       const double* taps, int radius) {
  for (int y = 0; y < height; ++y) {
    double* out = dst + static_cast<std::size_t>(y) * width;
    const double* center = src + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) out[x] = taps[0] * center[x];
    for (int k = 1; k <= radius; ++k) {
      const double* up = src + static_cast<std::size_t>(clamp_index(y - k, height)) * width;
      const double* dn = src + static_cast<std::size_t>(clamp_index(y + k, height)) * width;
      const double t = taps[k];
      for (int x = 0; x < width; ++x) out[x] += t * (up[x] + dn[x]);
    }
  }
}

void lerp_rows_scalar(const double* a, const double* b, double w, double* dst,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + w * (b[i] - a[i]);
}

void gather_lerp_scalar(const double* row, const std::int32_t* idx,
                        const double* frac, double* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = row[idx[i]];
    const double hi = row[idx[i] + 1];
    dst[i] = lo + frac[i] * (hi - lo);
  }
}

void clamp01_scalar(double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(p[i], 0.0, 1.0);
}

double sum_squares_scalar(const double* p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += p[i] * p[i];
  return acc;
}

void magnitude2_scalar(const double* x, const double* y, double* dst,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table = {
      "scalar",
      scale_complex_scalar,
      conv_sym_h_scalar,
      conv_sym_v_scalar,
      lerp_rows_scalar,
      gather_lerp_scalar,
      clamp01_scalar,
      sum_squares_scalar,
      magnitude2_scalar,
  };
  return table;
}

}  // namespace scr::kernels
