#include "scr/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scr/kernels.hpp"

namespace scr {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double median_of(std::vector<double> v) {
  if (v.empty()) return kNan;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
  }
  return hi;
}

// MAD scaled to be consistent with the SD of a normal distribution.
double robust_sd(const std::vector<double>& v, double median) {
  std::vector<double> dev;
  dev.reserve(v.size());
  for (double x : v) dev.push_back(std::abs(x - median));
  return 1.4826 * median_of(std::move(dev));
}

double plain_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

// A contiguous range of samples with positions defined (invalid samples
// inside the range were bridged by linear interpolation).
struct Segment {
  std::size_t begin = 0;  // index into trace.samples
  std::vector<double> t, x, y;
};

std::vector<Segment> prepare_segments(const GazeTrace& trace, double max_gap_ms) {
  std::vector<Segment> segments;
  const auto& s = trace.samples;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !s[i].valid) ++i;
    if (i >= s.size()) break;
    Segment seg;
    seg.begin = i;
    std::size_t last_valid = i;
    std::size_t j = i;
    for (; j < s.size(); ++j) {
      if (s[j].valid) {
        if (j > last_valid + 1) {
          // bridge the invalid run with linear interpolation
          const double span = s[j].t_ms - s[last_valid].t_ms;
          for (std::size_t k = last_valid + 1; k < j; ++k) {
            const double u = (s[k].t_ms - s[last_valid].t_ms) / span;
            seg.t.push_back(s[k].t_ms);
            seg.x.push_back(s[last_valid].x_deg + u * (s[j].x_deg - s[last_valid].x_deg));
            seg.y.push_back(s[last_valid].y_deg + u * (s[j].y_deg - s[last_valid].y_deg));
          }
        }
        seg.t.push_back(s[j].t_ms);
        seg.x.push_back(s[j].x_deg);
        seg.y.push_back(s[j].y_deg);
        last_valid = j;
      } else if (s[j].t_ms - s[last_valid].t_ms > max_gap_ms) {
        break;  // gap too long, split here
      }
    }
    segments.push_back(std::move(seg));
    if (j >= s.size()) break;
    // resume after the unbridgeable invalid run
    i = last_valid + 1;
    while (i < s.size() && !s[i].valid) ++i;
  }
  return segments;
}

// Central-difference speed for one segment; edges are NaN.
std::vector<double> segment_speed(const Segment& seg) {
  const std::size_t n = seg.t.size();
  std::vector<double> speed(n, kNan);
  if (n < 3) return speed;
  std::vector<double> vx(n - 2), vy(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dt_s = (seg.t[i + 1] - seg.t[i - 1]) / 1000.0;
    vx[i - 1] = (seg.x[i + 1] - seg.x[i - 1]) / dt_s;
    vy[i - 1] = (seg.y[i + 1] - seg.y[i - 1]) / dt_s;
  }
  kernels::active().magnitude2(vx.data(), vy.data(), speed.data() + 1, n - 2);
  return speed;
}

std::vector<double> boxcar(const std::vector<double>& v, int window) {
  const std::size_t n = v.size();
  std::vector<double> out(n, kNan);
  if (window <= 1) return v;
  const int lo = (window - 1) / 2;
  const int hi = window - 1 - lo;
  // speed is defined on [1, n-2]; windows that do not fit stay NaN
  for (std::size_t i = 0; i < n; ++i) {
    const long a = static_cast<long>(i) - lo;
    const long b = static_cast<long>(i) + hi;
    if (a < 1 || b > static_cast<long>(n) - 2) continue;
    double acc = 0.0;
    for (long k = a; k <= b; ++k) acc += v[static_cast<std::size_t>(k)];
    out[i] = acc / window;
  }
  return out;
}

}  // namespace

void GazeTrace::validate() const {
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].t_ms > samples[i - 1].t_ms))
      throw std::invalid_argument("gaze trace: timestamps must be strictly increasing");
  if (samples.size() >= 2 && sample_rate_hz > 0.0) {
    std::vector<double> dt(samples.size() - 1);
    for (std::size_t i = 1; i < samples.size(); ++i)
      dt[i - 1] = samples[i].t_ms - samples[i - 1].t_ms;
    const double nominal = 1000.0 / sample_rate_hz;
    const double med = median_of(std::move(dt));
    if (std::abs(med - nominal) > 0.1 * nominal)
      throw std::invalid_argument(
          "gaze trace: median sample interval inconsistent with sample rate");
  }
}

std::vector<double> velocity_magnitude(const GazeTrace& trace) {
  return smoothed_velocity(trace, 1);
}

std::vector<double> smoothed_velocity(const GazeTrace& trace, int window) {
  if (window < 1) throw std::invalid_argument("smoothed_velocity: window must be >= 1");
  if (static_cast<int>(trace.samples.size()) <= window)
    throw std::invalid_argument("smoothed_velocity: trace shorter than the window");

  OfflineDetectorOptions defaults;
  std::vector<double> out(trace.samples.size(), kNan);
  for (const Segment& seg : prepare_segments(trace, defaults.max_gap_ms)) {
    const std::vector<double> smooth = boxcar(segment_speed(seg), window);
    for (std::size_t i = 0; i < smooth.size(); ++i) out[seg.begin + i] = smooth[i];
  }
  return out;
}

std::vector<SaccadeEvent> detect_saccades_offline(const GazeTrace& trace,
                                                  const OfflineDetectorOptions& opts) {
  std::vector<SaccadeEvent> events;
  const double nominal_dt =
      trace.sample_rate_hz > 0.0 ? 1000.0 / trace.sample_rate_hz : 1.0;

  for (const Segment& seg : prepare_segments(trace, opts.max_gap_ms)) {
    if (static_cast<int>(seg.t.size()) <= opts.velocity_window + 2) continue;

    const std::vector<double> raw = segment_speed(seg);
    const std::vector<double> smooth = boxcar(raw, opts.velocity_window);

    std::vector<double> defined;
    defined.reserve(smooth.size());
    for (double v : smooth)
      if (!std::isnan(v)) defined.push_back(v);
    if (defined.size() < 4) continue;

    const double med = median_of(defined);
    const double sd = opts.robust_sd ? robust_sd(defined, med) : plain_sd(defined);
    const double threshold = med + opts.sd_multiplier * sd;

    // contiguous above-threshold runs
    struct Run {
      std::size_t a, b;
    };
    std::vector<Run> runs;
    std::size_t i = 0;
    const std::size_t n = smooth.size();
    while (i < n) {
      while (i < n && !(smooth[i] > threshold)) ++i;
      if (i >= n) break;
      std::size_t j = i;
      while (j + 1 < n && smooth[j + 1] > threshold) ++j;
      runs.push_back({i, j});
      i = j + 1;
    }

    // merge runs separated by less than merge_gap_ms (threshold flicker)
    std::vector<Run> merged;
    for (const Run& r : runs) {
      if (!merged.empty() && seg.t[r.a] - seg.t[merged.back().b] < opts.merge_gap_ms)
        merged.back().b = r.b;
      else
        merged.push_back(r);
    }

    for (const Run& r : merged) {
      const double duration = seg.t[r.b] - seg.t[r.a] + nominal_dt;
      if (duration < opts.min_duration_ms) continue;
      SaccadeEvent ev;
      ev.onset_ms = seg.t[r.a];
      ev.offset_ms = seg.t[r.b];
      const double dx = seg.x[r.b] - seg.x[r.a];
      const double dy = seg.y[r.b] - seg.y[r.a];
      ev.amplitude_deg = std::hypot(dx, dy);
      ev.direction_deg = std::atan2(dy, dx) * 180.0 / M_PI;
      double peak = 0.0;
      for (std::size_t k = r.a; k <= r.b; ++k)
        if (!std::isnan(raw[k])) peak = std::max(peak, raw[k]);
      ev.peak_velocity_dps = peak;
      events.push_back(ev);
    }
  }

  std::sort(events.begin(), events.end(),
            [](const SaccadeEvent& a, const SaccadeEvent& b) { return a.onset_ms < b.onset_ms; });
  return events;
}

void OnlineDetectorConfig::validate() const {
  if (!(departure_radius_deg > 0.0) || !(landing_radius_deg > 0.0))
    throw std::invalid_argument("online detector: radii must be > 0");
}

const char* to_string(OnlineEvent::Type type) {
  switch (type) {
    case OnlineEvent::Type::departed: return "departed";
    case OnlineEvent::Type::landed: return "landed";
    case OnlineEvent::Type::aborted: return "aborted";
  }
  return "?";
}

OnlineDetector::OnlineDetector(const OnlineDetectorConfig& config) : config_(config) {
  config_.validate();
}

void OnlineDetector::arm(double t_ms) {
  armed_ = true;
  arm_t_ms_ = t_ms;
}

std::optional<OnlineEvent> OnlineDetector::step(const GazeSample& sample) {
  if (seen_sample_ && !(sample.t_ms > last_t_ms_))
    throw std::invalid_argument("online detector: samples out of timestamp order");
  seen_sample_ = true;
  last_t_ms_ = sample.t_ms;
  if (!sample.valid) return std::nullopt;

  const auto make = [&](OnlineEvent::Type type) {
    return OnlineEvent{type, sample.t_ms, sample.x_deg, sample.y_deg};
  };

  switch (state_) {
    case State::fixating: {
      const double d = std::hypot(sample.x_deg - config_.fixation_center.x,
                                  sample.y_deg - config_.fixation_center.y);
      if (d > config_.departure_radius_deg) {
        if (!armed_ || sample.t_ms < arm_t_ms_) {
          state_ = State::aborted;
          return make(OnlineEvent::Type::aborted);
        }
        state_ = State::departed;
        return make(OnlineEvent::Type::departed);
      }
      return std::nullopt;
    }
    case State::departed: {
      const double d = std::hypot(sample.x_deg - config_.target_center.x,
                                  sample.y_deg - config_.target_center.y);
      if (d <= config_.landing_radius_deg) {
        state_ = State::landed;
        return make(OnlineEvent::Type::landed);
      }
      return std::nullopt;
    }
    case State::landed:
    case State::aborted:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<OnlineEvent> run_online_detector(const GazeTrace& trace,
                                             const OnlineDetectorConfig& config,
                                             double arm_t_ms) {
  OnlineDetector det(config);
  det.arm(arm_t_ms);
  std::vector<OnlineEvent> events;
  for (const GazeSample& s : trace.samples)
    if (auto ev = det.step(s)) events.push_back(*ev);
  return events;
}

MainSequenceFit main_sequence_stats(std::span<const SaccadeEvent> events) {
  if (events.size() < 2)
    throw std::invalid_argument("main_sequence_stats: need at least two events");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(events.size());
  for (const SaccadeEvent& e : events) {
    sx += e.amplitude_deg;
    sy += e.peak_velocity_dps;
    sxx += e.amplitude_deg * e.amplitude_deg;
    sxy += e.amplitude_deg * e.peak_velocity_dps;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw std::invalid_argument("main_sequence_stats: amplitudes are degenerate");
  MainSequenceFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace scr
