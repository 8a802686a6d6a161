#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "scr/synth.hpp"

using namespace scr;

TEST_CASE("minimum-jerk waveform endpoints and symmetry") {
  SaccadeProfile p;
  CHECK(saccade_waveform(p, 0.0) == 0.0);
  CHECK(saccade_waveform(p, 1.0) == 1.0);
  CHECK(saccade_waveform(p, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // monotone S-curve
  double prev = 0.0;
  for (double u = 0.05; u <= 1.0; u += 0.05) {
    const double v = saccade_waveform(p, u);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(saccade_waveform(p, 1.5), std::invalid_argument);
}

TEST_CASE("minimum-jerk peak velocity factor is 1.875") {
  // independent check: numeric maximum of the derivative
  SaccadeProfile p;
  double peak = 0.0;
  const double h = 1e-6;
  for (double u = h; u < 1.0 - h; u += 1e-4) {
    const double v = (saccade_waveform(p, u + h) - saccade_waveform(p, u - h)) / (2 * h);
    peak = std::max(peak, v);
  }
  CHECK(peak == doctest::Approx(1.875).epsilon(1e-6));
  CHECK(kMinJerkPeakFactor == 1.875);
}

TEST_CASE("zero saccade rate yields pure drift") {
  SynthConfig cfg;
  cfg.duration_ms = 500.0;
  cfg.saccade_rate_hz = 0.0;
  cfg.seed = 3;
  const SynthResult r = generate_trace(cfg);
  CHECK(r.truth.empty());
  CHECK(r.trace.samples.size() == 500);
  // drift stays near the start for this sigma
  for (const GazeSample& s : r.trace.samples) CHECK(std::abs(s.x_deg) < 5.0);
}

TEST_CASE("saccade count tracks rate x duration") {
  SynthConfig cfg;
  cfg.duration_ms = 1000.0;
  cfg.saccade_rate_hz = 4.0;
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    cfg.seed = seed;
    const SynthResult r = generate_trace(cfg);
    CHECK(r.truth.size() >= 3);
    CHECK(r.truth.size() <= 5);
  }
}

TEST_CASE("same seed is bit-identical, different seed is not") {
  SynthConfig cfg;
  cfg.duration_ms = 800.0;
  cfg.seed = 42;
  const SynthResult a = generate_trace(cfg);
  const SynthResult b = generate_trace(cfg);
  REQUIRE(a.trace.samples.size() == b.trace.samples.size());
  for (std::size_t i = 0; i < a.trace.samples.size(); ++i) {
    CHECK(a.trace.samples[i].x_deg == b.trace.samples[i].x_deg);
    CHECK(a.trace.samples[i].y_deg == b.trace.samples[i].y_deg);
  }
  cfg.seed = 43;
  const SynthResult c = generate_trace(cfg);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.trace.samples.size(); ++i)
    any_diff |= a.trace.samples[i].x_deg != c.trace.samples[i].x_deg;
  CHECK(any_diff);
}

TEST_CASE("timestamps are exactly uniform") {
  SynthConfig cfg;
  cfg.duration_ms = 600.0;
  cfg.sample_rate_hz = 1000.0;
  const SynthResult r = generate_trace(cfg);
  for (std::size_t i = 0; i < r.trace.samples.size(); ++i)
    CHECK(r.trace.samples[i].t_ms == static_cast<double>(i));
}

TEST_CASE("ground truth events are ordered, non-overlapping, main-sequence sane") {
  SynthConfig cfg;
  cfg.duration_ms = 5000.0;
  cfg.saccade_rate_hz = 4.0;
  cfg.amplitude_min_deg = 4.0;
  cfg.amplitude_max_deg = 20.0;
  cfg.seed = 9;
  const SynthResult r = generate_trace(cfg);
  REQUIRE(r.truth.size() > 5);
  for (std::size_t i = 0; i < r.truth.size(); ++i) {
    const SaccadeEvent& e = r.truth[i];
    CHECK(e.offset_ms > e.onset_ms);
    if (i > 0) CHECK(e.onset_ms > r.truth[i - 1].offset_ms);
    const double duration_ms = e.offset_ms - e.onset_ms;
    if (e.amplitude_deg >= 4.0 && duration_ms <= 50.0)
      CHECK(e.peak_velocity_dps >= 150.0);
    if (e.amplitude_deg >= 20.0) CHECK(e.peak_velocity_dps > 200.0);
  }
}

TEST_CASE("a 20 degree saccade moves faster than 200 deg/s") {
  SynthConfig cfg;
  cfg.amplitude_min_deg = 20.0;
  cfg.amplitude_max_deg = 20.0;
  cfg.duration_ms = 2000.0;
  const SynthResult r = generate_trace(cfg);
  REQUIRE_FALSE(r.truth.empty());
  for (const SaccadeEvent& e : r.truth) CHECK(e.peak_velocity_dps > 200.0);
}

TEST_CASE("infeasible configuration is rejected") {
  SynthConfig cfg;
  cfg.saccade_rate_hz = 30.0;  // 30 Hz x ~40 ms saccades cannot fit
  CHECK_THROWS_AS(generate_trace(cfg), std::invalid_argument);
}
