#pragma once

#include <string>

namespace scr {

// Post-saccadic acuity curve: acuity(t) = coefficient * t^exponent + offset,
// with t in milliseconds since saccade landing and the result in cycles per
// degree. Defaults are the fitted constants for the median observer.
struct AcuityCurve {
  double coefficient_cpd = 1.9469;
  double exponent = 0.3475;
  double offset_cpd = 9.5062;

  void validate() const;  // throws std::invalid_argument on a bad fit
};

// Highest resolvable spatial frequency t_ms after saccade landing.
double acuity_cpd(double t_ms, const AcuityCurve& curve = {});

struct TimeToAcuity {
  double t_ms = 0.0;
  // True when the target is resolvable already at landing (target <= offset);
  // t_ms is 0 in that case. Distinct from an error: the query is answerable.
  bool at_landing = false;
};

// Inverse of acuity_cpd: the unique t with acuity_cpd(t) == target.
TimeToAcuity time_to_reach(double target_cpd, const AcuityCurve& curve = {});

// Render-resolution scheduler parameters: acuity offset s, linear ramp to
// native acuity by ramp_end_ms, and a floor limiting downsampling to
// max_downsample_factor x.
struct SchedulerParams {
  double acuity_offset_cpd = 0.0;  // s, signed
  double native_acuity_cpd = 45.0;
  double ramp_end_ms = 500.0;
  double max_downsample_factor = 8.0;
  double native_ppd = 90.0;

  double floor_cpd() const { return native_ppd / (max_downsample_factor * 2.0); }
  void validate() const;

  static SchedulerParams for_display(double ppd, double offset_cpd = 0.0);
};

// Scheduled render acuity at t_ms after landing:
//   min(max(curve(t) + s, t * native_acuity / ramp_end, floor), native_acuity)
// The outer clamp keeps the ramp from exceeding native resolution.
double scheduled_cpd(double t_ms, const SchedulerParams& params,
                     const AcuityCurve& curve = {});

// Step schedule: hold a reduced cutoff for [0, hold_ms), then jump to
// post_hold_cpd. The hold interval is left-closed, right-open.
struct StepSchedule {
  double cutoff_cpd = 21.1;
  double hold_ms = 100.0;
  double post_hold_cpd = 45.0;

  void validate() const;
};

double step_schedule_cpd(double t_ms, const StepSchedule& sched);

// Loads curve/scheduler parameters from a plain-text key-value file
// ("key = value" or "key value" lines, '#' comments). Unknown keys are
// rejected. Missing keys keep their defaults.
struct AcuityConfig {
  AcuityCurve curve;
  SchedulerParams scheduler;
};

AcuityConfig load_acuity_config(const std::string& path);

}  // namespace scr
