#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scr/acuity.hpp"

namespace scr {

struct DisplaySpec {
  double ppd = 30.0;
  double refresh_hz = 90.0;
  int bits_per_pixel = 32;
  int width_px = 3840;
  int height_px = 2160;

  double nyquist_cpd() const { return ppd / 2.0; }
  void validate() const;
};

enum class SaccadeDistribution { periodic, random_uniform };

struct SimConfig {
  double saccade_freq_hz = 4.0;
  double revert_after_ms = 333.0;  // render natively past this point
  AcuityCurve curve;
  SaccadeDistribution distribution = SaccadeDistribution::periodic;
  std::uint64_t seed = 1;
  int random_intervals = 2000;  // inter-saccade gaps drawn per random run

  void validate() const;
};

// Bits for a frame rendered at render_cpd relative to a native frame:
// min(1, (2 * render_cpd / ppd)^2). Pixel count scales with the square of
// linear resolution.
double frame_bit_fraction(double render_cpd, const DisplaySpec& display);

// Relative bitrate savings for one display and saccade rate. Frames are
// sampled at interval midpoints t = (k + 0.5) / refresh after each landing;
// each renders at min(acuity(t), nyquist) until revert_after_ms, native
// afterwards. Savings = 1 - reduced bits / native bits.
double savings_for_rate(const DisplaySpec& display, const SimConfig& sim);

struct SavingsGrid {
  std::vector<double> ppd;       // rows
  std::vector<double> freq_hz;   // columns
  std::vector<double> savings;   // row-major, ppd x freq

  double at(std::size_t ppd_index, std::size_t freq_index) const {
    return savings[ppd_index * freq_hz.size() + freq_index];
  }
};

SavingsGrid sweep(double ppd_min, double ppd_max, double freq_min, double freq_max,
                  const SimConfig& sim, double ppd_step = 1.0, double freq_step = 1.0);

// CSV with a "ppd,<f1>,<f2>,..." header, one row per ppd.
std::string grid_to_csv(const SavingsGrid& grid);

}  // namespace scr
