#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "scr/acuity.hpp"

using namespace scr;

namespace {

// Independent inverse: bisection on the monotone curve, 1e-9 cpd bracket.
double bisect_time_to_reach(double target, const AcuityCurve& curve) {
  double lo = 0.0, hi = 1e7;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (acuity_cpd(mid, curve) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("acuity curve endpoints and frozen values") {
  CHECK(acuity_cpd(0.0) == 9.5062);
  // high-precision evaluations of the power law, frozen
  CHECK(acuity_cpd(500.0) == doctest::Approx(26.380886827304671).epsilon(1e-12));
  CHECK(acuity_cpd(200.0) == doctest::Approx(21.779223579680985).epsilon(1e-12));
  CHECK(acuity_cpd(100.0) == doctest::Approx(19.152119764778461).epsilon(1e-12));
  CHECK_THROWS_AS(acuity_cpd(-1.0), std::invalid_argument);
}

TEST_CASE("acuity curve is strictly increasing") {
  double prev = acuity_cpd(0.0);
  for (double t = 1.0; t <= 10000.0; t *= 1.37) {
    const double v = acuity_cpd(t);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("time_to_reach inverts the curve") {
  const TimeToAcuity r1 = time_to_reach(21.1);
  CHECK(r1.t_ms == doctest::Approx(169.77616409458830).epsilon(1e-9));
  CHECK_FALSE(r1.at_landing);
  CHECK(r1.t_ms == doctest::Approx(bisect_time_to_reach(21.1, {})).epsilon(1e-7));

  const TimeToAcuity r2 = time_to_reach(15.0);
  CHECK(r2.t_ms == doctest::Approx(19.791873486534845).epsilon(1e-9));
  CHECK(r2.t_ms == doctest::Approx(bisect_time_to_reach(15.0, {})).epsilon(1e-7));

  // at or below the landing acuity: sentinel, not an error
  const TimeToAcuity r3 = time_to_reach(9.5062);
  CHECK(r3.t_ms == 0.0);
  CHECK(r3.at_landing);

  CHECK_THROWS_AS(time_to_reach(0.0), std::invalid_argument);
}

TEST_CASE("time_to_reach round trip") {
  for (double t = 1.0; t <= 10000.0; t *= 1.9) {
    const double sf = acuity_cpd(t);
    const TimeToAcuity back = time_to_reach(sf);
    CHECK(back.t_ms == doctest::Approx(t).epsilon(1e-6));
  }
}

TEST_CASE("scheduler contract") {
  SchedulerParams p;  // 90 ppd headset defaults
  p.validate();
  CHECK(p.floor_cpd() == 5.625);

  CHECK(scheduled_cpd(0.0, p) == doctest::Approx(9.5062));
  SchedulerParams down = p;
  down.acuity_offset_cpd = -12.0;
  CHECK(scheduled_cpd(0.0, down) == doctest::Approx(5.625));  // floor active
  CHECK(scheduled_cpd(500.0, p) == doctest::Approx(45.0));    // ramp hits native
  CHECK(scheduled_cpd(10000.0, p) == doctest::Approx(45.0));  // clamped thereafter
}

TEST_CASE("scheduler is monotone in t and in the offset") {
  for (double s : {-12.0, -9.0, -6.0, -3.0, 0.0, 3.0, 6.0}) {
    SchedulerParams p;
    p.acuity_offset_cpd = s;
    double prev = -1.0;
    for (int t = 0; t <= 700; ++t) {
      const double v = scheduled_cpd(t, p);
      CHECK(v >= prev);
      CHECK(v >= p.floor_cpd());
      CHECK(v <= p.native_acuity_cpd);
      prev = v;
    }
  }
  // increasing s never decreases the schedule
  SchedulerParams lo, hi;
  lo.acuity_offset_cpd = -6.0;
  hi.acuity_offset_cpd = -3.0;
  for (int t = 0; t <= 700; t += 7)
    CHECK(scheduled_cpd(t, hi) >= scheduled_cpd(t, lo));
}

TEST_CASE("scheduler equals curve when the curve term dominates") {
  SchedulerParams p;
  for (double t : {50.0, 100.0, 200.0}) {
    const double curve = acuity_cpd(t);
    if (curve > t * p.native_acuity_cpd / p.ramp_end_ms && curve > p.floor_cpd())
      CHECK(scheduled_cpd(t, p) == curve);
  }
}

TEST_CASE("scheduler parameter validation") {
  SchedulerParams p;
  p.native_acuity_cpd = 40.0;  // breaks the Nyquist tie to native_ppd
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  SchedulerParams q;
  q.max_downsample_factor = 0.4;  // floor above native acuity
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);

  const AcuityCurve bad_coeff{-1.0, 0.3, 9.0};
  CHECK_THROWS_AS(bad_coeff.validate(), std::invalid_argument);
  const AcuityCurve bad_exp{1.0, 1.3, 9.0};
  CHECK_THROWS_AS(bad_exp.validate(), std::invalid_argument);
}

TEST_CASE("step schedule boundary is left-closed right-open") {
  StepSchedule s{21.1, 100.0, 45.0};
  CHECK(step_schedule_cpd(0.0, s) == doctest::Approx(21.1));
  CHECK(step_schedule_cpd(50.0, s) == doctest::Approx(21.1));
  CHECK(step_schedule_cpd(99.999, s) == doctest::Approx(21.1));
  CHECK(step_schedule_cpd(100.0, s) == doctest::Approx(45.0));  // boundary excluded

  StepSchedule long_hold{7.8, 500.0, 45.0};
  CHECK(step_schedule_cpd(499.0, long_hold) == doctest::Approx(7.8));

  StepSchedule bad{50.0, 100.0, 45.0};  // cutoff above post-hold acuity
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config file loading") {
  const char* path = "acuity_test_config.txt";
  {
    std::ofstream out(path);
    out << "# fitted constants\n";
    out << "coefficient = 2.0\n";
    out << "exponent 0.5\n";
    out << "offset = 8.0\n";
    out << "native_ppd = 60\n";
    out << "acuity_offset = -3\n";
  }
  const AcuityConfig cfg = load_acuity_config(path);
  CHECK(cfg.curve.coefficient_cpd == doctest::Approx(2.0));
  CHECK(cfg.curve.exponent == doctest::Approx(0.5));
  CHECK(cfg.scheduler.native_ppd == doctest::Approx(60.0));
  CHECK(cfg.scheduler.native_acuity_cpd == doctest::Approx(30.0));  // derived
  CHECK(cfg.scheduler.acuity_offset_cpd == doctest::Approx(-3.0));

  {
    std::ofstream out(path);
    out << "coefficent = 2.0\n";  // typo must be rejected
  }
  CHECK_THROWS(load_acuity_config(path));
  std::remove(path);
}

TEST_CASE("experiment cutoff grid values stay consistent with the curve") {
  // the 21.1 cpd cutoff is resolvable only after ~170 ms, so 100 and 200 ms
  // holds straddle the detectability boundary
  const double t_211 = time_to_reach(21.1).t_ms;
  CHECK(t_211 > 100.0);
  CHECK(t_211 < 200.0);
  // the full cutoff set used with step schedules
  for (double cutoff : {7.8, 12.8, 16.4, 21.1, 27.1}) {
    StepSchedule s{cutoff, 100.0, 45.0};
    s.validate();
    CHECK(step_schedule_cpd(0.0, s) == doctest::Approx(cutoff));
  }
}
