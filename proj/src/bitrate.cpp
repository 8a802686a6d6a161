#include "scr/bitrate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace scr {

void DisplaySpec::validate() const {
  if (!(ppd > 0.0 && refresh_hz > 0.0 && bits_per_pixel > 0 && width_px > 0 && height_px > 0))
    throw std::invalid_argument("display spec: all fields must be positive");
}

void SimConfig::validate() const {
  if (!(saccade_freq_hz > 0.0))
    throw std::invalid_argument("sim config: saccade frequency must be > 0");
  if (revert_after_ms < 0.0)
    throw std::invalid_argument("sim config: revert_after must be >= 0");
  curve.validate();
}

double frame_bit_fraction(double render_cpd, const DisplaySpec& display) {
  if (!(render_cpd > 0.0))
    throw std::invalid_argument("frame_bit_fraction: render resolution must be > 0 cpd");
  const double linear = 2.0 * render_cpd / display.ppd;
  return std::min(1.0, linear * linear);
}

namespace {

// Mean frame bit fraction over one post-landing interval of interval_ms.
// native_bits_per_frame cancels in the final ratio; it is carried through so
// the savings really is a ratio of simulated bit totals.
void accumulate_interval(double interval_ms, const DisplaySpec& display,
                         const SimConfig& sim, double native_bits_per_frame,
                         double& reduced_bits, double& native_bits) {
  const double frame_ms = 1000.0 / display.refresh_hz;
  for (int k = 0;; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * frame_ms;
    if (t >= interval_ms) break;
    double fraction = 1.0;
    if (t < sim.revert_after_ms) {
      const double render_cpd = std::min(acuity_cpd(t, sim.curve), display.nyquist_cpd());
      fraction = frame_bit_fraction(render_cpd, display);
    }
    reduced_bits += fraction * native_bits_per_frame;
    native_bits += native_bits_per_frame;
  }
}

}  // namespace

double savings_for_rate(const DisplaySpec& display, const SimConfig& sim) {
  display.validate();
  sim.validate();

  const double native_bits_per_frame = static_cast<double>(display.width_px) *
                                       display.height_px * display.bits_per_pixel;
  const double nominal_interval_ms = 1000.0 / sim.saccade_freq_hz;

  double reduced = 0.0, native = 0.0;
  if (sim.distribution == SaccadeDistribution::periodic) {
    accumulate_interval(nominal_interval_ms, display, sim, native_bits_per_frame,
                        reduced, native);
  } else {
    // seeded uniform gaps in [0.5, 1.5] x nominal, same mean rate
    std::mt19937_64 gen(sim.seed);
    for (int i = 0; i < sim.random_intervals; ++i) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      const double gap = nominal_interval_ms * (0.5 + u);
      accumulate_interval(gap, display, sim, native_bits_per_frame, reduced, native);
    }
  }
  if (native <= 0.0) return 0.0;
  return 1.0 - reduced / native;
}

SavingsGrid sweep(double ppd_min, double ppd_max, double freq_min, double freq_max,
                  const SimConfig& sim, double ppd_step, double freq_step) {
  if (!(ppd_min <= ppd_max) || !(freq_min <= freq_max) || !(ppd_step > 0.0) ||
      !(freq_step > 0.0))
    throw std::invalid_argument("sweep: empty or inverted range");

  SavingsGrid grid;
  for (double p = ppd_min; p <= ppd_max + 1e-9; p += ppd_step) grid.ppd.push_back(p);
  for (double f = freq_min; f <= freq_max + 1e-9; f += freq_step) grid.freq_hz.push_back(f);

  grid.savings.resize(grid.ppd.size() * grid.freq_hz.size());
  for (std::size_t i = 0; i < grid.ppd.size(); ++i) {
    DisplaySpec display;
    display.ppd = grid.ppd[i];
    for (std::size_t j = 0; j < grid.freq_hz.size(); ++j) {
      SimConfig cell = sim;
      cell.saccade_freq_hz = grid.freq_hz[j];
      grid.savings[i * grid.freq_hz.size() + j] = savings_for_rate(display, cell);
    }
  }
  return grid;
}

std::string grid_to_csv(const SavingsGrid& grid) {
  std::ostringstream out;
  out << "ppd";
  char buf[64];
  for (double f : grid.freq_hz) {
    std::snprintf(buf, sizeof buf, "%.6g", f);
    out << ',' << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < grid.ppd.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", grid.ppd[i]);
    out << buf;
    for (std::size_t j = 0; j < grid.freq_hz.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", grid.at(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scr
