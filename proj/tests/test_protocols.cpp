#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cornerpump/protocols.hpp"

using namespace cornerpump;

TEST_CASE("ctap pulses") {
  const CtapSchedule s;
  const Couplings peak = ctap_couplings(s, s.delay / 2);
  CHECK(peak.v_x == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(peak.v_y == peak.v_x);
  CHECK(peak.w_x == 1.0);
  CHECK(peak.w_y == 1.0);

  const Couplings mid = ctap_couplings(s, 0.0);
  const double crossing = 0.9 * std::exp(-s.delay * s.delay / (4 * s.width * s.width));
  CHECK(mid.v_x == doctest::Approx(crossing).epsilon(1e-15));
  CHECK(mid.v_prime_x == doctest::Approx(crossing).epsilon(1e-15));

  // v'(t) leads v(t): the ratio v/v' = exp(2 t d / l^2)
  for (double t : {-250.0, -100.0, 30.0, 200.0}) {
    const Couplings c = ctap_couplings(s, t);
    CHECK(c.v_x / c.v_prime_x ==
          doctest::Approx(std::exp(2 * t * s.delay / (s.width * s.width))).epsilon(1e-12));
  }
  CHECK(ctap_couplings(s, -300).v_x < ctap_couplings(s, -300).v_prime_x);
  CHECK(ctap_couplings(s, 300).v_x > ctap_couplings(s, 300).v_prime_x);
}

TEST_CASE("ctap schedule validation") {
  CHECK_THROWS_AS((CtapSchedule{1.0, 150, 50, 600}.validate()), InputError);
  CHECK_THROWS_AS((CtapSchedule{0.9, 0, 50, 600}.validate()), InputError);
  CHECK_THROWS_AS((CtapSchedule{0.9, 150, -1, 600}.validate()), InputError);
  CHECK_THROWS_AS((CtapSchedule{0.9, 150, 50, 0}.validate()), InputError);
  CHECK_NOTHROW(CtapSchedule{}.validate());
}

TEST_CASE("rice-mele two-stage cycle") {
  const RiceMeleSchedule s;
  CHECK(s.angular_frequency() == doctest::Approx(4 * std::numbers::pi / 1000));

  Couplings c = ricemele_couplings(s, 0.0);
  CHECK(c.v_x == 0.0);
  CHECK(c.w_x == 2.0);
  CHECK(c.delta_x == 0.0);
  CHECK(c.delta_y == 0.0);

  c = ricemele_couplings(s, s.total_time / 8);
  CHECK(c.v_x == doctest::Approx(1.0));
  CHECK(c.w_x == doctest::Approx(1.0));
  CHECK(c.v_y == c.v_x);
  CHECK(c.delta_x == doctest::Approx(0.4));
  CHECK(c.delta_y == 0.0);

  c = ricemele_couplings(s, 5 * s.total_time / 8);
  CHECK(c.delta_x == 0.0);
  CHECK(c.delta_y == doctest::Approx(0.4));

  c = ricemele_couplings(s, s.total_time);
  CHECK(c.v_x == doctest::Approx(0.0).scale(1.0));
  CHECK(c.w_x == doctest::Approx(2.0));
  CHECK(std::abs(c.delta_x) < 1e-12);
  CHECK(std::abs(c.delta_y) < 1e-12);

  CHECK_THROWS_AS(ricemele_couplings(s, -1.0), InputError);
  CHECK_THROWS_AS(ricemele_couplings(s, 1000.5), InputError);
}

TEST_CASE("windows and step sizes") {
  const PulseSchedule ctap = CtapSchedule{};
  CHECK(time_window(ctap) == std::pair<double, double>(-300.0, 300.0));
  CHECK(default_time_step(ctap) == doctest::Approx(0.0125));

  const PulseSchedule rm = RiceMeleSchedule{};
  CHECK(time_window(rm) == std::pair<double, double>(0.0, 1000.0));
  CHECK(default_time_step(rm) == doctest::Approx(0.1 / 16.4));

  // the bound really bounds |H| along both schedules
  for (double t = -300; t <= 300; t += 7.5) {
    const double norm = build_ctap_hamiltonian(couplings_at(ctap, t), 6).inf_norm();
    CHECK(norm <= schedule_norm_bound(ctap));
  }
  for (double t = 0; t <= 1000; t += 12.5) {
    const double norm = build_ricemele_hamiltonian(couplings_at(rm, t), 4).inf_norm();
    CHECK(norm <= schedule_norm_bound(rm));
  }

  const PulseSchedule constant = ConstantSchedule{isotropic_couplings(0.2, 0.1), 2.0, 9.0};
  CHECK(time_window(constant) == std::pair<double, double>(2.0, 9.0));
  CHECK(couplings_at(constant, 5.0).v_x == 0.2);
}
