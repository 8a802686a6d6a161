#include "scr/acuity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scr {

void AcuityCurve::validate() const {
  if (!(coefficient_cpd > 0.0))
    throw std::invalid_argument("acuity curve: coefficient must be > 0");
  if (!(exponent > 0.0 && exponent < 1.0))
    throw std::invalid_argument("acuity curve: exponent must be in (0, 1)");
  if (!(offset_cpd > 0.0))
    throw std::invalid_argument("acuity curve: offset must be > 0");
}

double acuity_cpd(double t_ms, const AcuityCurve& curve) {
  if (!(t_ms >= 0.0))
    throw std::invalid_argument("acuity_cpd: post-saccadic time must be >= 0");
  return curve.coefficient_cpd * std::pow(t_ms, curve.exponent) + curve.offset_cpd;
}

TimeToAcuity time_to_reach(double target_cpd, const AcuityCurve& curve) {
  if (!(target_cpd > 0.0))
    throw std::invalid_argument("time_to_reach: target must be > 0 cpd");
  if (target_cpd <= curve.offset_cpd) return {0.0, true};
  const double t = std::pow((target_cpd - curve.offset_cpd) / curve.coefficient_cpd,
                            1.0 / curve.exponent);
  return {t, false};
}

void SchedulerParams::validate() const {
  if (!(native_ppd > 0.0) || !(native_acuity_cpd > 0.0) || !(ramp_end_ms > 0.0) ||
      !(max_downsample_factor > 0.0))
    throw std::invalid_argument("scheduler: parameters must be positive");
  if (std::abs(native_acuity_cpd - native_ppd / 2.0) > 1e-9)
    throw std::invalid_argument("scheduler: native acuity must equal native_ppd / 2");
  if (!(floor_cpd() < native_acuity_cpd))
    throw std::invalid_argument("scheduler: downsample floor must stay below native acuity");
}

SchedulerParams SchedulerParams::for_display(double ppd, double offset_cpd) {
  SchedulerParams p;
  p.native_ppd = ppd;
  p.native_acuity_cpd = ppd / 2.0;
  p.acuity_offset_cpd = offset_cpd;
  p.validate();
  return p;
}

double scheduled_cpd(double t_ms, const SchedulerParams& params,
                     const AcuityCurve& curve) {
  const double curve_term = acuity_cpd(t_ms, curve) + params.acuity_offset_cpd;
  const double ramp_term = t_ms * params.native_acuity_cpd / params.ramp_end_ms;
  const double unclamped = std::max({curve_term, ramp_term, params.floor_cpd()});
  return std::min(unclamped, params.native_acuity_cpd);
}

void StepSchedule::validate() const {
  if (!(hold_ms > 0.0))
    throw std::invalid_argument("step schedule: hold duration must be > 0");
  if (!(cutoff_cpd <= post_hold_cpd))
    throw std::invalid_argument("step schedule: cutoff must not exceed the post-hold acuity");
}

double step_schedule_cpd(double t_ms, const StepSchedule& sched) {
  if (!(t_ms >= 0.0))
    throw std::invalid_argument("step_schedule_cpd: time must be >= 0");
  return t_ms < sched.hold_ms ? sched.cutoff_cpd : sched.post_hold_cpd;
}

AcuityConfig load_acuity_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  AcuityConfig cfg;
  bool native_acuity_given = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double value;
    if (!(ls >> value))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key value'");

    if (key == "coefficient") cfg.curve.coefficient_cpd = value;
    else if (key == "exponent") cfg.curve.exponent = value;
    else if (key == "offset") cfg.curve.offset_cpd = value;
    else if (key == "acuity_offset") cfg.scheduler.acuity_offset_cpd = value;
    else if (key == "native_ppd") cfg.scheduler.native_ppd = value;
    else if (key == "native_acuity") { cfg.scheduler.native_acuity_cpd = value; native_acuity_given = true; }
    else if (key == "ramp_end_ms") cfg.scheduler.ramp_end_ms = value;
    else if (key == "max_downsample_factor") cfg.scheduler.max_downsample_factor = value;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
  if (!native_acuity_given)
    cfg.scheduler.native_acuity_cpd = cfg.scheduler.native_ppd / 2.0;
  cfg.curve.validate();
  cfg.scheduler.validate();
  return cfg;
}

}  // namespace scr
