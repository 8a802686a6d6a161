#include "scr/kernels.hpp"

#ifdef SCR_BUILD_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace scr::kernels {
namespace {

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

void scale_complex_avx2(double* reim, const double* gain, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(gain + i);
    // [g0 g0 g1 g1] and [g2 g2 g3 g3] to match interleaved re/im pairs
    const __m256d glo = _mm256_permute4x64_pd(g, 0x50);
    const __m256d ghi = _mm256_permute4x64_pd(g, 0xFA);
    double* p = reim + 2 * i;
    _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), glo));
    _mm256_storeu_pd(p + 4, _mm256_mul_pd(_mm256_loadu_pd(p + 4), ghi));
  }
  for (; i < n; ++i) {
    reim[2 * i] *= gain[i];
    reim[2 * i + 1] *= gain[i];
  }
}

void conv_sym_h_avx2(const double* src, double* dst, int width, int height,
                     const double* taps, int radius) {
  for (int y = 0; y < height; ++y) {
    const double* row = src + static_cast<std::size_t>(y) * width;
    double* out = dst + static_cast<std::size_t>(y) * width;
    int x = 0;
    for (; x < std::min(radius, width); ++x) {
      double acc = taps[0] * row[x];
      for (int k = 1; k <= radius; ++k)
        acc += taps[k] * (row[clamp_index(x - k, width)] + row[clamp_index(x + k, width)]);
      out[x] = acc;
    }
    const __m256d t0 = _mm256_set1_pd(taps[0]);
    // all loads row[x-radius .. x+radius+3] stay in bounds
    for (; x + radius + 4 <= width; x += 4) {
      __m256d acc = _mm256_mul_pd(t0, _mm256_loadu_pd(row + x));
      for (int k = 1; k <= radius; ++k) {
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(row + x - k),
                                          _mm256_loadu_pd(row + x + k));
        acc = _mm256_fmadd_pd(_mm256_set1_pd(taps[k]), sum, acc);
      }
      _mm256_storeu_pd(out + x, acc);
    }
    for (; x < width; ++x) {
      double acc = taps[0] * row[x];
      for (int k = 1; k <= radius; ++k)
        acc += taps[k] * (row[clamp_index(x - k, width)] + row[clamp_index(x + k, width)]);
      out[x] = acc;
    }
  }
}

void conv_sym_v_avx2(const double* src, double* dst, int width, int height,
                     const double* taps, int radius) {
  // Row pointers are clamped, so every row vectorizes over x.
  for (int y = 0; y < height; ++y) {
    const double* center = src + static_cast<std::size_t>(y) * width;
    double* out = dst + static_cast<std::size_t>(y) * width;
    int x = 0;
    const __m256d t0 = _mm256_set1_pd(taps[0]);
    for (; x + 4 <= width; x += 4) {
      __m256d acc = _mm256_mul_pd(t0, _mm256_loadu_pd(center + x));
      for (int k = 1; k <= radius; ++k) {
        const double* up = src + static_cast<std::size_t>(clamp_index(y - k, height)) * width;
        const double* dn = src + static_cast<std::size_t>(clamp_index(y + k, height)) * width;
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(up + x), _mm256_loadu_pd(dn + x));
        acc = _mm256_fmadd_pd(_mm256_set1_pd(taps[k]), sum, acc);
      }
      _mm256_storeu_pd(out + x, acc);
    }
    for (; x < width; ++x) {
      double acc = taps[0] * center[x];
      for (int k = 1; k <= radius; ++k) {
        const double* up = src + static_cast<std::size_t>(clamp_index(y - k, height)) * width;
        const double* dn = src + static_cast<std::size_t>(clamp_index(y + k, height)) * width;
        acc += taps[k] * (up[x] + dn[x]);
      }
      out[x] = acc;
    }
  }
}

void lerp_rows_avx2(const double* a, const double* b, double w, double* dst,
                    std::size_t n) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d av = _mm256_loadu_pd(a + i);
    const __m256d bv = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(wv, _mm256_sub_pd(bv, av), av));
  }
  for (; i < n; ++i) dst[i] = a[i] + w * (b[i] - a[i]);
}

void gather_lerp_avx2(const double* row, const std::int32_t* idx,
                      const double* frac, double* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    const __m256d lo = _mm256_i32gather_pd(row, iv, 8);
    const __m256d hi = _mm256_i32gather_pd(row + 1, iv, 8);
    const __m256d f = _mm256_loadu_pd(frac + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(f, _mm256_sub_pd(hi, lo), lo));
  }
  for (; i < n; ++i) {
    const double lo = row[idx[i]];
    const double hi = row[idx[i] + 1];
    dst[i] = lo + frac[i] * (hi - lo);
  }
}

void clamp01_avx2(double* p, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(p + i);
    v = _mm256_min_pd(_mm256_max_pd(v, zero), one);
    _mm256_storeu_pd(p + i, v);
  }
  for (; i < n; ++i) p[i] = std::clamp(p[i], 0.0, 1.0);
}

double sum_squares_avx2(const double* p, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += p[i] * p[i];
  return total;
}

void magnitude2_avx2(const double* x, const double* y, double* dst,
                     std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(dst + i,
                     _mm256_sqrt_pd(_mm256_fmadd_pd(xv, xv, _mm256_mul_pd(yv, yv))));
  }
  for (; i < n; ++i) dst[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table = {
      "avx2",
      scale_complex_avx2,
      conv_sym_h_avx2,
      conv_sym_v_avx2,
      lerp_rows_avx2,
      gather_lerp_avx2,
      clamp01_avx2,
      sum_squares_avx2,
      magnitude2_avx2,
  };
  return &table;
}

}  // namespace scr::kernels

#endif  // SCR_BUILD_AVX2
