#pragma once

#include <optional>
#include <vector>

#include "scr/image.hpp"

namespace scr {

// Analysis window in visual degrees, centered relative to the image center.
struct RegionDeg {
  double center_x_deg = 0.0;
  double center_y_deg = 0.0;
  double width_deg = 0.0;
  double height_deg = 0.0;
};

struct RadialSpectrum {
  std::vector<double> freq_cpd;  // annulus centers, strictly increasing
  std::vector<double> power;     // mean power per annulus
  double slope = 0.0;            // log-log fit over [fit_lo, fit_hi]
  double fit_lo_cpd = 0.0;
  double fit_hi_cpd = 0.0;

  std::size_t dominant_bin() const;
};

// Hann-windowed, mean-removed power spectrum averaged over annular frequency
// bins, with a log-log slope fit over the mid band (0.1..0.7 x Nyquist by
// default). Regions smaller than 32 x 32 pixels are rejected.
RadialSpectrum radial_power_spectrum(const ImageBuffer& img,
                                     const std::optional<RegionDeg>& region = {},
                                     double fit_lo_frac = 0.1,
                                     double fit_hi_frac = 0.7);

}  // namespace scr
