#include "scr/pipeline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "scr/io.hpp"

namespace scr {

PipelineConfig PipelineConfig::for_display(const DisplaySpec& display) {
  PipelineConfig cfg;
  cfg.display = display;
  cfg.scheduler = SchedulerParams::for_display(display.ppd);
  return cfg;
}

PipelineReport run_pipeline(const GazeTrace& trace, const PipelineConfig& config) {
  config.display.validate();
  config.scheduler.validate();
  config.curve.validate();

  PipelineReport report;
  report.events = detect_saccades_offline(trace, config.detector);

  if (trace.samples.empty()) return report;
  const double t_begin = trace.samples.front().t_ms;
  const double t_end = trace.samples.back().t_ms;
  const double frame_ms = 1000.0 / config.display.refresh_hz;
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

  std::size_t next_event = 0;
  double schedule_start = kNan;
  double fraction_sum = 0.0;
  for (int k = 0;; ++k) {
    const double t = t_begin + (static_cast<double>(k) + 0.5) * frame_ms;
    if (t > t_end) break;

    while (next_event < report.events.size() &&
           report.events[next_event].offset_ms + config.latency_ms <= t) {
      schedule_start = report.events[next_event].offset_ms + config.latency_ms;
      ++next_event;
    }

    FrameRecord frame;
    frame.index = k;
    frame.time_ms = t;
    frame.schedule_start_ms = schedule_start;
    if (std::isnan(schedule_start)) {
      frame.t_post_ms = kNan;
      frame.render_cpd = config.display.nyquist_cpd();
      frame.bit_fraction = 1.0;
      frame.reduced = false;
    } else {
      frame.t_post_ms = t - schedule_start;
      frame.render_cpd = std::min(scheduled_cpd(frame.t_post_ms, config.scheduler, config.curve),
                                  config.display.nyquist_cpd());
      frame.bit_fraction = frame_bit_fraction(frame.render_cpd, config.display);
      frame.reduced = frame.bit_fraction < 1.0;
    }
    fraction_sum += frame.bit_fraction;
    report.frames.push_back(frame);
  }

  if (!report.frames.empty())
    report.savings = 1.0 - fraction_sum / static_cast<double>(report.frames.size());
  return report;
}

std::string report_to_json(const PipelineReport& report, const PipelineConfig& config) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"display_ppd\": " << format_number(config.display.ppd) << ",\n";
  out << "  \"refresh_hz\": " << format_number(config.display.refresh_hz) << ",\n";
  out << "  \"latency_ms\": " << format_number(config.latency_ms) << ",\n";
  out << "  \"saccades\": " << report.events.size() << ",\n";
  out << "  \"savings\": " << format_number(report.savings) << ",\n";
  out << "  \"frames\": [\n";
  for (std::size_t i = 0; i < report.frames.size(); ++i) {
    const FrameRecord& f = report.frames[i];
    out << "    {\"index\": " << f.index << ", \"time\": " << format_number(f.time_ms);
    if (std::isnan(f.schedule_start_ms))
      out << ", \"schedule_start\": null, \"t_post\": null";
    else
      out << ", \"schedule_start\": " << format_number(f.schedule_start_ms)
          << ", \"t_post\": " << format_number(f.t_post_ms);
    out << ", \"render_cpd\": " << format_number(f.render_cpd)
        << ", \"bit_fraction\": " << format_number(f.bit_fraction)
        << ", \"reduced\": " << (f.reduced ? "true" : "false") << "}"
        << (i + 1 < report.frames.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace scr
