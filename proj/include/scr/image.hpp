#pragma once

#include <span>
#include <vector>

#include "scr/acuity.hpp"

namespace scr {

// Multi-channel floating-point image, planar storage, intensities in [0, 1].
// ppd is the angular pixel density the image is meant to be viewed at; it
// converts cpd cutoffs to cycles/pixel.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 1;
  double ppd = 60.0;
  std::vector<double> data;  // [(c * height + y) * width + x]

  static ImageBuffer create(int width, int height, int channels, double ppd);

  double nyquist_cpd() const { return ppd / 2.0; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  double* channel(int c) { return data.data() + static_cast<std::size_t>(c) * plane_size(); }
  const double* channel(int c) const {
    return data.data() + static_cast<std::size_t>(c) * plane_size();
  }
  double& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }

  void validate() const;
};

enum class BoundaryMode { periodic, mirror };

// Frequency-domain Butterworth lowpass, gain 1/sqrt(1 + (f/fc)^(2 order)) on
// radial frequency, applied separately per channel. Output clamped to [0, 1].
// Throws if the cutoff exceeds the image Nyquist frequency (ppd / 2).
ImageBuffer butterworth_lowpass(const ImageBuffer& img, double cutoff_cpd,
                                int order = 5,
                                BoundaryMode boundary = BoundaryMode::periodic);

// Gaussian-prefiltered resample down to target_ppd and bilinear upsample back
// to the source geometry. The prefilter sigma is 0.5 x the downsample ratio
// in source pixels; a ratio of exactly 1 is the identity. Throws when
// target_ppd is above the source density or below ppd / max_downsample_factor.
ImageBuffer gaussian_downsample_upsample(const ImageBuffer& img, double target_ppd,
                                         double max_downsample_factor = 8.0);

// Per-frame filtering for a presentation sequence. Frames before the landing
// time and frames whose scheduled acuity is at or above the image Nyquist
// pass through unfiltered.
std::vector<ImageBuffer> render_trial_sequence(const ImageBuffer& img,
                                               const StepSchedule& schedule,
                                               double landing_ms,
                                               std::span<const double> frame_times_ms,
                                               int butterworth_order = 5);

std::vector<ImageBuffer> render_trial_sequence(const ImageBuffer& img,
                                               const SchedulerParams& params,
                                               const AcuityCurve& curve,
                                               double landing_ms,
                                               std::span<const double> frame_times_ms);

}  // namespace scr
