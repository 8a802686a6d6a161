#pragma once

#include <string>
#include <vector>

#include "scr/acuity.hpp"
#include "scr/bitrate.hpp"
#include "scr/detector.hpp"
#include "scr/gaze.hpp"

namespace scr {

// End-to-end run: detect saccades in a trace, evaluate the render schedule
// per display frame, report realized bit savings.
struct PipelineConfig {
  DisplaySpec display;
  AcuityCurve curve;
  SchedulerParams scheduler;  // defaults to SchedulerParams::for_display(display.ppd)
  OfflineDetectorOptions detector;
  // Eye-to-photon latency: each schedule starts this long after the detected
  // landing; frames in between stay native.
  double latency_ms = 0.0;

  static PipelineConfig for_display(const DisplaySpec& display);
};

struct FrameRecord {
  int index = 0;
  double time_ms = 0.0;
  // Landing + latency of the governing saccade; NaN before the first one.
  double schedule_start_ms = 0.0;
  double t_post_ms = 0.0;  // time since schedule start; NaN when ungoverned
  double render_cpd = 0.0;
  double bit_fraction = 1.0;
  bool reduced = false;
};

struct PipelineReport {
  std::vector<SaccadeEvent> events;
  std::vector<FrameRecord> frames;
  double savings = 0.0;
};

PipelineReport run_pipeline(const GazeTrace& trace, const PipelineConfig& config);

// Frame manifest + summary as JSON (numbers formatted for diffing).
std::string report_to_json(const PipelineReport& report, const PipelineConfig& config);

}  // namespace scr
