#pragma once

#include <vector>

namespace scr {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct GazeSample {
  double t_ms = 0.0;
  double x_deg = 0.0;
  double y_deg = 0.0;
  bool valid = true;
};

// Timestamped gaze positions in visual degrees. Timestamps must be strictly
// increasing; invalid samples carry no position guarantee.
struct GazeTrace {
  std::vector<GazeSample> samples;
  double sample_rate_hz = 1000.0;

  double duration_ms() const {
    return samples.empty() ? 0.0 : samples.back().t_ms - samples.front().t_ms;
  }
  void validate() const;  // strict timestamp order + rate sanity
};

// One detected (or injected) saccade. Times are trace timestamps in ms,
// direction is degrees counterclockwise from +x.
struct SaccadeEvent {
  double onset_ms = 0.0;
  double offset_ms = 0.0;
  double amplitude_deg = 0.0;
  double peak_velocity_dps = 0.0;
  double direction_deg = 0.0;
};

}  // namespace scr
