#include "scr/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace scr {

namespace {

// Deterministic across platforms: raw mt19937_64 bits mapped to doubles,
// Box-Muller for normals (std::*_distribution output is not pinned by the
// standard, which would break golden files).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

double min_jerk(double u) {
  const double u3 = u * u * u;
  return 10.0 * u3 - 15.0 * u3 * u + 6.0 * u3 * u * u;
}

}  // namespace

void SaccadeProfile::validate() const {
  if (!(amplitude_deg > 0.0))
    throw std::invalid_argument("saccade profile: amplitude must be > 0");
  if (!(duration_ms > 0.0 && duration_ms < 100.0))
    throw std::invalid_argument("saccade profile: duration must be in (0, 100) ms");
}

double saccade_waveform(const SaccadeProfile& profile, double t_frac) {
  profile.validate();
  if (!(t_frac >= 0.0 && t_frac <= 1.0))
    throw std::invalid_argument("saccade_waveform: t_frac must be in [0, 1]");
  switch (profile.waveform) {
    case SaccadeWaveform::minimum_jerk: return min_jerk(t_frac);
  }
  return 0.0;
}

void SynthConfig::validate() const {
  if (!(duration_ms > 0.0)) throw std::invalid_argument("synth: duration must be > 0");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("synth: sample rate must be > 0");
  if (saccade_rate_hz < 0.0) throw std::invalid_argument("synth: saccade rate must be >= 0");
  if (!(amplitude_min_deg > 0.0) || !(amplitude_max_deg >= amplitude_min_deg))
    throw std::invalid_argument("synth: bad amplitude range");
  if (drift_sigma_deg < 0.0) throw std::invalid_argument("synth: drift sigma must be >= 0");
  if (saccade_rate_hz > 0.0) {
    const double max_duration_ms =
        duration_base_ms + duration_slope_ms_per_deg * amplitude_max_deg;
    if (saccade_rate_hz * max_duration_ms / 1000.0 >= 1.0)
      throw std::invalid_argument("synth: saccades cannot fit between landings at this rate");
  }
}

SynthResult generate_trace(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  const double step_ms = 1000.0 / config.sample_rate_hz;
  const std::size_t n_samples =
      static_cast<std::size_t>(std::llround(config.duration_ms / step_ms));

  // plan the saccades first: onsets near (k + 0.5)/rate with uniform jitter
  struct Planned {
    double onset_ms, duration_ms, amplitude_deg, direction_deg;
    Vec2 from, to;
  };
  std::vector<Planned> plan;
  if (config.saccade_rate_hz > 0.0) {
    const double interval_ms = 1000.0 / config.saccade_rate_hz;
    Vec2 pos{0.0, 0.0};
    double prev_offset_ms = 0.0;
    for (std::size_t k = 0;; ++k) {
      double onset = (static_cast<double>(k) + 0.5) * interval_ms +
                     config.interval_jitter * interval_ms * rng.uniform(-0.5, 0.5);
      onset = std::round(onset / step_ms) * step_ms;  // snap to the sample grid
      if (onset < prev_offset_ms + 2.0 * step_ms) onset = prev_offset_ms + 2.0 * step_ms;

      const double amplitude = rng.uniform(config.amplitude_min_deg, config.amplitude_max_deg);
      double duration = config.duration_base_ms + config.duration_slope_ms_per_deg * amplitude;
      duration = std::max(duration, 3.0 * step_ms);
      duration = std::round(duration / step_ms) * step_ms;

      if (onset + duration >= config.duration_ms - step_ms) break;

      // head back toward the center once the eye has wandered off
      double direction;
      if (std::hypot(pos.x, pos.y) > 12.0)
        direction = std::atan2(-pos.y, -pos.x) + rng.uniform(-M_PI / 3.0, M_PI / 3.0);
      else
        direction = rng.uniform(0.0, 2.0 * M_PI);

      Planned p;
      p.onset_ms = onset;
      p.duration_ms = duration;
      p.amplitude_deg = amplitude;
      p.direction_deg = direction * 180.0 / M_PI;
      p.from = pos;
      p.to = {pos.x + amplitude * std::cos(direction), pos.y + amplitude * std::sin(direction)};
      plan.push_back(p);
      pos = p.to;
      prev_offset_ms = onset + duration;
    }
  }

  SynthResult result;
  result.trace.sample_rate_hz = config.sample_rate_hz;
  result.trace.samples.resize(n_samples);

  Vec2 drift{0.0, 0.0};
  std::size_t active = 0;  // next plan entry whose offset is >= current t
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) * step_ms;
    while (active < plan.size() && t >= plan[active].onset_ms + plan[active].duration_ms)
      ++active;

    Vec2 base;
    if (active < plan.size() && t >= plan[active].onset_ms) {
      const Planned& p = plan[active];
      const double u = (t - p.onset_ms) / p.duration_ms;
      const double f = min_jerk(u);
      base = {p.from.x + f * (p.to.x - p.from.x), p.from.y + f * (p.to.y - p.from.y)};
    } else {
      base = (active < plan.size()) ? plan[active].from
                                    : (plan.empty() ? Vec2{0.0, 0.0} : plan.back().to);
    }

    drift.x += config.drift_sigma_deg * rng.normal();
    drift.y += config.drift_sigma_deg * rng.normal();

    GazeSample& s = result.trace.samples[i];
    s.t_ms = t;
    s.x_deg = base.x + drift.x;
    s.y_deg = base.y + drift.y;
    s.valid = true;
  }

  for (const Planned& p : plan) {
    SaccadeEvent ev;
    ev.onset_ms = p.onset_ms;
    ev.offset_ms = p.onset_ms + p.duration_ms;
    ev.amplitude_deg = p.amplitude_deg;
    ev.peak_velocity_dps = kMinJerkPeakFactor * p.amplitude_deg / (p.duration_ms / 1000.0);
    ev.direction_deg = p.direction_deg;
    result.truth.push_back(ev);
  }
  return result;
}

}  // namespace scr
