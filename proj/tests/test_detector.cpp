#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scr/detector.hpp"
#include "scr/synth.hpp"

using namespace scr;

namespace {

GazeTrace make_trace(int n_samples, double rate_hz = 1000.0) {
  GazeTrace t;
  t.sample_rate_hz = rate_hz;
  t.samples.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    t.samples[i].t_ms = i * 1000.0 / rate_hz;
    t.samples[i].valid = true;
  }
  return t;
}

// Injects a minimum-jerk saccade of `amplitude` degrees along +x starting at
// onset_ms and lasting duration_ms.
void inject_saccade(GazeTrace& trace, double onset_ms, double duration_ms,
                    double amplitude) {
  SaccadeProfile profile;
  profile.amplitude_deg = amplitude;
  profile.duration_ms = duration_ms;
  for (GazeSample& s : trace.samples) {
    if (s.t_ms < onset_ms) continue;
    const double u = std::min(1.0, (s.t_ms - onset_ms) / duration_ms);
    s.x_deg += amplitude * saccade_waveform(profile, u);
  }
}

struct MatchStats {
  int matched = 0;
  int truth_count = 0;
  int detected_count = 0;
  std::vector<double> onset_err, offset_err;
};

MatchStats match_events(const std::vector<SaccadeEvent>& truth,
                        const std::vector<SaccadeEvent>& detected,
                        double tolerance_ms = 25.0) {
  MatchStats stats;
  stats.truth_count = static_cast<int>(truth.size());
  stats.detected_count = static_cast<int>(detected.size());
  std::vector<bool> used(detected.size(), false);
  for (const SaccadeEvent& t : truth) {
    int best = -1;
    double best_err = tolerance_ms;
    for (std::size_t i = 0; i < detected.size(); ++i) {
      if (used[i]) continue;
      const double err = std::abs(detected[i].onset_ms - t.onset_ms);
      if (err <= best_err) {
        best = static_cast<int>(i);
        best_err = err;
      }
    }
    if (best >= 0) {
      used[best] = true;
      ++stats.matched;
      stats.onset_err.push_back(detected[best].onset_ms - t.onset_ms);
      stats.offset_err.push_back(detected[best].offset_ms - t.offset_ms);
    }
  }
  return stats;
}

double median_abs(std::vector<double> v) {
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

}  // namespace

TEST_CASE("constant trace has zero velocity away from edges") {
  GazeTrace t = make_trace(200);
  for (GazeSample& s : t.samples) {
    s.x_deg = 2.0;
    s.y_deg = -1.0;
  }
  const auto v = smoothed_velocity(t, 20);
  REQUIRE(v.size() == t.samples.size());
  CHECK(std::isnan(v.front()));
  CHECK(std::isnan(v.back()));
  for (std::size_t i = 15; i + 15 < v.size(); ++i) CHECK(v[i] == 0.0);
}

TEST_CASE("linear ramp gives its slope as velocity") {
  GazeTrace t = make_trace(300);
  for (GazeSample& s : t.samples) s.x_deg = 0.01 * s.t_ms;  // 10 deg/s
  const auto v = smoothed_velocity(t, 20);
  for (std::size_t i = 20; i + 20 < v.size(); ++i)
    CHECK(v[i] == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("synthetic saccade peak velocity matches the analytic profile peak") {
  GazeTrace t = make_trace(600);
  inject_saccade(t, 200.0, 40.0, 12.0);

  // raw central differences keep the peak: 1.875 * A / D
  const auto raw = velocity_magnitude(t);
  const double peak_raw = *std::max_element(
      raw.begin() + 1, raw.end() - 1, [](double a, double b) {
        return (std::isnan(a) ? -1.0 : a) < (std::isnan(b) ? -1.0 : b);
      });
  const double analytic = kMinJerkPeakFactor * 12.0 / 0.040;
  CHECK(peak_raw == doctest::Approx(analytic).epsilon(0.05));

  // the 20-sample boxcar flattens the peak to exactly the mean over the
  // central half of the profile: 1.5859375 * A / D (frozen analytic value)
  const auto smooth = smoothed_velocity(t, 20);
  const double peak_smooth = *std::max_element(
      smooth.begin() + 20, smooth.end() - 20);
  CHECK(peak_smooth == doctest::Approx(1.5859375 * 12.0 / 0.040).epsilon(0.02));
}

TEST_CASE("velocity series rejects too-short traces") {
  GazeTrace t = make_trace(15);
  CHECK_THROWS_AS(smoothed_velocity(t, 20), std::invalid_argument);
}

TEST_CASE("fixation-only traces produce no events") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthConfig cfg;
    cfg.duration_ms = 2000.0;
    cfg.saccade_rate_hz = 0.0;
    cfg.drift_sigma_deg = 0.05;
    cfg.seed = seed;
    const SynthResult r = generate_trace(cfg);
    CHECK(detect_saccades_offline(r.trace).empty());
  }
}

TEST_CASE("single injected saccade is found within 5 ms") {
  SynthConfig cfg;
  cfg.duration_ms = 1000.0;
  cfg.saccade_rate_hz = 0.0;
  cfg.drift_sigma_deg = 0.05;
  cfg.seed = 7;
  SynthResult r = generate_trace(cfg);
  inject_saccade(r.trace, 400.0, 40.0, 12.0);

  const auto events = detect_saccades_offline(r.trace);
  REQUIRE(events.size() == 1);
  CHECK(std::abs(events[0].onset_ms - 400.0) <= 5.0);
  CHECK(std::abs(events[0].offset_ms - 440.0) <= 5.0);
  CHECK(events[0].amplitude_deg == doctest::Approx(12.0).epsilon(0.1));
  CHECK(events[0].peak_velocity_dps > 300.0);
}

TEST_CASE("three well-separated saccades give three ordered events") {
  SynthConfig cfg;
  cfg.duration_ms = 1500.0;
  cfg.saccade_rate_hz = 0.0;
  cfg.drift_sigma_deg = 0.03;
  cfg.seed = 21;
  SynthResult r = generate_trace(cfg);
  inject_saccade(r.trace, 300.0, 40.0, 8.0);
  inject_saccade(r.trace, 700.0, 30.0, 5.0);
  inject_saccade(r.trace, 1100.0, 40.0, 12.0);

  const auto events = detect_saccades_offline(r.trace);
  REQUIRE(events.size() == 3);
  for (std::size_t i = 1; i < events.size(); ++i) {
    CHECK(events[i].onset_ms > events[i - 1].offset_ms);  // ordered, no overlap
  }
  CHECK(std::abs(events[0].onset_ms - 300.0) <= 5.0);
  CHECK(std::abs(events[1].onset_ms - 700.0) <= 5.0);
  CHECK(std::abs(events[2].onset_ms - 1100.0) <= 5.0);
}

TEST_CASE("detection is translation and time-shift invariant") {
  SynthConfig cfg;
  cfg.duration_ms = 2000.0;
  cfg.saccade_rate_hz = 3.0;
  cfg.seed = 5;
  const SynthResult r = generate_trace(cfg);
  const auto base = detect_saccades_offline(r.trace);
  REQUIRE_FALSE(base.empty());

  GazeTrace shifted = r.trace;
  for (GazeSample& s : shifted.samples) {
    s.x_deg += 3.25;
    s.y_deg -= 7.5;
  }
  const auto trans = detect_saccades_offline(shifted);
  REQUIRE(trans.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(trans[i].onset_ms == base[i].onset_ms);
    CHECK(trans[i].offset_ms == base[i].offset_ms);
    CHECK(trans[i].amplitude_deg == doctest::Approx(base[i].amplitude_deg).epsilon(1e-12));
  }

  GazeTrace delayed = r.trace;
  for (GazeSample& s : delayed.samples) s.t_ms += 1000.0;
  const auto late = detect_saccades_offline(delayed);
  REQUIRE(late.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(late[i].onset_ms == doctest::Approx(base[i].onset_ms + 1000.0).epsilon(1e-12));
    CHECK(late[i].offset_ms == doctest::Approx(base[i].offset_ms + 1000.0).epsilon(1e-12));
  }
}

TEST_CASE("recall and precision on synthetic traces") {
  MatchStats total;
  std::vector<double> onset_errs, offset_errs;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig cfg;
    cfg.duration_ms = 3000.0;
    cfg.saccade_rate_hz = 4.0;
    cfg.amplitude_min_deg = 4.0;
    cfg.amplitude_max_deg = 12.0;
    cfg.drift_sigma_deg = 0.05;
    cfg.seed = seed;
    const SynthResult r = generate_trace(cfg);
    const auto detected = detect_saccades_offline(r.trace);
    const MatchStats m = match_events(r.truth, detected);
    total.matched += m.matched;
    total.truth_count += m.truth_count;
    total.detected_count += m.detected_count;
    onset_errs.insert(onset_errs.end(), m.onset_err.begin(), m.onset_err.end());
    offset_errs.insert(offset_errs.end(), m.offset_err.begin(), m.offset_err.end());
  }
  const double recall = static_cast<double>(total.matched) / total.truth_count;
  const double precision = static_cast<double>(total.matched) / total.detected_count;
  CHECK(recall >= 0.95);
  CHECK(precision >= 0.95);
  CHECK(median_abs(onset_errs) <= 5.0);
  CHECK(median_abs(offset_errs) <= 5.0);
}

TEST_CASE("invalid-sample gaps are bridged or split") {
  // short gap: interpolated across, saccade after it is still found
  SynthConfig cfg;
  cfg.duration_ms = 1200.0;
  cfg.saccade_rate_hz = 0.0;
  cfg.seed = 2;
  SynthResult r = generate_trace(cfg);
  inject_saccade(r.trace, 600.0, 40.0, 10.0);
  for (std::size_t i = 300; i < 320; ++i) r.trace.samples[i].valid = false;  // 20 ms
  CHECK(detect_saccades_offline(r.trace).size() == 1);

  // long gap: trace splits, both halves still analyzed
  SynthResult r2 = generate_trace(cfg);
  inject_saccade(r2.trace, 200.0, 40.0, 10.0);
  inject_saccade(r2.trace, 900.0, 40.0, 10.0);
  for (std::size_t i = 500; i < 600; ++i) r2.trace.samples[i].valid = false;  // 100 ms
  CHECK(detect_saccades_offline(r2.trace).size() == 2);
}

TEST_CASE("degenerate traces give empty results, not errors") {
  CHECK(detect_saccades_offline(GazeTrace{}).empty());
  CHECK(detect_saccades_offline(make_trace(5)).empty());
}

TEST_CASE("online detector emits departed then landed") {
  OnlineDetectorConfig cfg;
  cfg.fixation_center = {0.0, 0.0};
  cfg.target_center = {10.0, 0.0};
  OnlineDetector det(cfg);
  det.arm(0.0);

  CHECK_FALSE(det.step({1.0, 1.0, 0.0, true}).has_value());  // inside 1.9
  auto departed = det.step({2.0, 2.0, 0.0, true});
  REQUIRE(departed.has_value());
  CHECK(departed->type == OnlineEvent::Type::departed);
  CHECK_FALSE(det.step({3.0, 5.0, 0.0, true}).has_value());  // 5 deg from target
  auto landed = det.step({4.0, 7.5, 0.0, true});
  REQUIRE(landed.has_value());
  CHECK(landed->type == OnlineEvent::Type::landed);  // 2.5 deg from target
  CHECK(det.state() == OnlineDetector::State::landed);
}

TEST_CASE("online detector aborts when departure precedes arming") {
  OnlineDetectorConfig cfg;
  cfg.target_center = {10.0, 0.0};
  OnlineDetector det(cfg);  // never armed
  auto ev = det.step({1.0, 2.5, 0.0, true});
  REQUIRE(ev.has_value());
  CHECK(ev->type == OnlineEvent::Type::aborted);
}

TEST_CASE("online detector rejects out-of-order samples") {
  OnlineDetectorConfig cfg;
  OnlineDetector det(cfg);
  det.arm(0.0);
  det.step({5.0, 0.0, 0.0, true});
  CHECK_THROWS_AS(det.step({4.0, 0.0, 0.0, true}), std::invalid_argument);
}

TEST_CASE("online and offline detectors agree on landing time") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthConfig cfg;
    cfg.duration_ms = 1000.0;
    cfg.saccade_rate_hz = 0.0;
    cfg.drift_sigma_deg = 0.02;
    cfg.seed = seed;
    SynthResult r = generate_trace(cfg);
    inject_saccade(r.trace, 400.0, 40.0, 10.0);

    const auto offline = detect_saccades_offline(r.trace);
    if (offline.size() != 1) continue;

    // the protocol knows the target location; the eye lands on it
    const GazeSample& landing_sample = r.trace.samples[440];
    OnlineDetectorConfig online_cfg;
    online_cfg.fixation_center = {r.trace.samples[0].x_deg, r.trace.samples[0].y_deg};
    online_cfg.target_center = {landing_sample.x_deg, landing_sample.y_deg};
    const auto online = run_online_detector(r.trace, online_cfg);
    REQUIRE(online.size() == 2);
    CHECK(online[0].type == OnlineEvent::Type::departed);
    CHECK(online[1].type == OnlineEvent::Type::landed);
    CHECK(std::abs(online[1].t_ms - offline[0].offset_ms) <= 20.0);
    ++compared;
  }
  CHECK(compared >= 8);  // the pairing must actually run
}

TEST_CASE("main sequence fit is positive on synthetic events") {
  SynthConfig cfg;
  cfg.duration_ms = 10000.0;
  cfg.saccade_rate_hz = 4.0;
  cfg.amplitude_min_deg = 4.0;
  cfg.amplitude_max_deg = 20.0;
  cfg.seed = 31;
  const SynthResult r = generate_trace(cfg);
  const auto events = detect_saccades_offline(r.trace);
  REQUIRE(events.size() >= 10);
  const MainSequenceFit fit = main_sequence_stats(events);
  CHECK(fit.slope > 0.0);

  const std::vector<SaccadeEvent> one = {events[0]};
  CHECK_THROWS_AS(main_sequence_stats(one), std::invalid_argument);
}

TEST_CASE("trace validation catches bad timestamps and rates") {
  GazeTrace t = make_trace(100);
  t.samples[50].t_ms = t.samples[49].t_ms;  // not strictly increasing
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);

  GazeTrace r = make_trace(100);
  r.sample_rate_hz = 500.0;  // nominal interval twice the real one
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}
