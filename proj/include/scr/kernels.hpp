#pragma once

#include <cstddef>
#include <cstdint>

namespace scr::kernels {

// Table of inner-loop kernels. Every implementation of a slot computes the
// same result as the scalar reference up to floating-point reassociation;
// equivalence is enforced by tests/test_kernels.cpp.
struct KernelTable {
  const char* name;

  // Interleaved complex spectrum scaled by a real gain per bin:
  // reim[2i] *= gain[i]; reim[2i+1] *= gain[i].
  void (*scale_complex)(double* reim, const double* gain, std::size_t n);

  // Symmetric FIR along rows / columns of a width x height plane.
  // taps[0] is the center tap, taps[1..radius] the one-sided coefficients.
  // Borders clamp to the edge sample.
  void (*conv_sym_h)(const double* src, double* dst, int width, int height,
                     const double* taps, int radius);
  void (*conv_sym_v)(const double* src, double* dst, int width, int height,
                     const double* taps, int radius);

  // dst[i] = a[i] + w * (b[i] - a[i])
  void (*lerp_rows)(const double* a, const double* b, double w, double* dst,
                    std::size_t n);

  // dst[i] = row[idx[i]] * (1 - frac[i]) + row[idx[i] + 1] * frac[i]
  // Caller guarantees idx[i] + 1 is in bounds.
  void (*gather_lerp)(const double* row, const std::int32_t* idx,
                      const double* frac, double* dst, std::size_t n);

  void (*clamp01)(double* p, std::size_t n);

  double (*sum_squares)(const double* p, std::size_t n);

  // dst[i] = sqrt(x[i]^2 + y[i]^2)
  void (*magnitude2)(const double* x, const double* y, double* dst,
                     std::size_t n);
};

// Widest table the CPU supports, unless the SCR_KERNELS environment
// variable ("scalar", "avx2", "auto") overrides the pick. Resolved once.
const KernelTable& active();

const KernelTable& scalar();

// nullptr when this build or this CPU lacks AVX2.
const KernelTable* avx2();

}  // namespace scr::kernels
