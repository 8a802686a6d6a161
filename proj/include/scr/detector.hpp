#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scr/gaze.hpp"

namespace scr {

// --- offline (velocity threshold) ------------------------------------------

struct OfflineDetectorOptions {
  int velocity_window = 20;      // samples in the moving average
  double sd_multiplier = 3.0;    // threshold = median + multiplier * SD
  double min_duration_ms = 20.0;
  double merge_gap_ms = 20.0;    // events closer than this are merged
  double max_gap_ms = 40.0;      // invalid gaps longer than this split the trace
  bool robust_sd = true;         // MAD-based SD estimate; false = plain SD
};

// Per-sample speed (deg/s): central differences of position, magnitude, then
// a boxcar average over `window` samples. Entries that cannot be computed
// (trace edges, long invalid gaps) are NaN. Throws if the trace has fewer
// samples than the window.
std::vector<double> smoothed_velocity(const GazeTrace& trace, int window = 20);

// Raw central-difference speed without the boxcar (window = 1). Used for
// peak-velocity measurement, where the boxcar would flatten the peak.
std::vector<double> velocity_magnitude(const GazeTrace& trace);

std::vector<SaccadeEvent> detect_saccades_offline(
    const GazeTrace& trace, const OfflineDetectorOptions& opts = {});

// --- online (radius criterion) ----------------------------------------------

struct OnlineDetectorConfig {
  Vec2 fixation_center;
  double departure_radius_deg = 1.9;
  Vec2 target_center;
  double landing_radius_deg = 2.9;

  void validate() const;
};

struct OnlineEvent {
  enum class Type { departed, landed, aborted };
  Type type;
  double t_ms = 0.0;
  double x_deg = 0.0;
  double y_deg = 0.0;
};

const char* to_string(OnlineEvent::Type type);

// State machine fixating -> departed -> landed. A departure (strictly more
// than departure_radius from fixation) before arm() aborts the trial; after
// arming it emits "departed", and the first subsequent sample within
// landing_radius of the target emits "landed". Samples must arrive in
// timestamp order. Owned by one thread at a time.
class OnlineDetector {
 public:
  explicit OnlineDetector(const OnlineDetectorConfig& config);

  void arm(double t_ms);  // stimulus onset; departures before this abort
  std::optional<OnlineEvent> step(const GazeSample& sample);

  enum class State { fixating, departed, landed, aborted };
  State state() const { return state_; }

 private:
  OnlineDetectorConfig config_;
  State state_ = State::fixating;
  bool armed_ = false;
  double arm_t_ms_ = 0.0;
  double last_t_ms_ = 0.0;
  bool seen_sample_ = false;
};

// Runs the online detector over a whole trace, arming at arm_t_ms.
std::vector<OnlineEvent> run_online_detector(const GazeTrace& trace,
                                             const OnlineDetectorConfig& config,
                                             double arm_t_ms = 0.0);

// --- diagnostics -------------------------------------------------------------

struct MainSequenceFit {
  double slope = 0.0;      // (deg/s) per deg
  double intercept = 0.0;  // deg/s
};

// Least-squares fit of peak velocity against amplitude. Sanity diagnostic,
// not a filter. Throws with fewer than two events.
MainSequenceFit main_sequence_stats(std::span<const SaccadeEvent> events);

}  // namespace scr
