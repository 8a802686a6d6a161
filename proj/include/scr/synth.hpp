#pragma once

#include <cstdint>
#include <vector>

#include "scr/gaze.hpp"

namespace scr {

enum class SaccadeWaveform { minimum_jerk };

struct SaccadeProfile {
  double amplitude_deg = 12.0;
  double duration_ms = 40.0;
  double direction_deg = 0.0;
  SaccadeWaveform waveform = SaccadeWaveform::minimum_jerk;

  void validate() const;
};

// Displacement fraction (0..1) at normalized time t_frac in [0, 1]. The
// minimum-jerk profile is 10u^3 - 15u^4 + 6u^5: a smooth monotone S-curve
// with zero endpoint velocity.
double saccade_waveform(const SaccadeProfile& profile, double t_frac);

// Peak velocity of the minimum-jerk profile, in units of amplitude/duration.
inline constexpr double kMinJerkPeakFactor = 1.875;

struct SynthConfig {
  double duration_ms = 10000.0;
  double sample_rate_hz = 1000.0;
  double saccade_rate_hz = 4.0;   // 0 = fixational drift only
  double amplitude_min_deg = 4.0;
  double amplitude_max_deg = 12.0;
  double drift_sigma_deg = 0.05;  // random-walk step per sample, per axis
  std::uint64_t seed = 1;

  // main-sequence rule: duration = base + slope * amplitude
  double duration_base_ms = 16.0;
  double duration_slope_ms_per_deg = 2.0;
  // inter-saccade intervals are 1/rate with +-jitter/2 uniform scatter
  double interval_jitter = 0.3;

  void validate() const;
};

struct SynthResult {
  GazeTrace trace;
  std::vector<SaccadeEvent> truth;  // injected events, exact
};

// Deterministic for a fixed seed: same config, bit-identical output.
SynthResult generate_trace(const SynthConfig& config);

}  // namespace scr
