#pragma once

#include <cstddef>

namespace scr::detail {

// Thin wrappers over the FFT backend. Row-major width x height planes; the
// half spectrum holds height * (width/2 + 1) interleaved complex values.
// Plan creation is serialized internally, so these are callable from any
// thread.

std::size_t half_spectrum_size(int width, int height);

void fft_r2c_2d(const double* in, double* out_interleaved, int width, int height);

// Unnormalized inverse; scale by 1/(width*height) afterwards. Destroys the
// input spectrum.
void fft_c2r_2d(double* in_interleaved, double* out, int width, int height);

}  // namespace scr::detail
