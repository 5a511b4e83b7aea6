#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cornerpump/effective_model.hpp"
#include "cornerpump/topo_states.hpp"

using namespace cornerpump;

namespace {

// <bra|H|ket> with the full lattice Hamiltonian.
double matrix_element(TopoLabel bra, TopoLabel ket, const Couplings& c, int L) {
  const SparseHamiltonian h = build_ctap_hamiltonian(c, L);
  return overlap(analytic_state(bra, c, L), sparse_apply(h, analytic_state(ket, c, L))).real();
}

}  // namespace

TEST_CASE("effective couplings: limits") {
  const EffectiveCouplings off = effective_couplings(isotropic_couplings(0.0, 0.4), 10);
  CHECK(off.omega12 == 0.0);
  CHECK(off.omega23 != 0.0);
  const EffectiveCouplings sym = effective_couplings(isotropic_couplings(0.5, 0.5), 10);
  CHECK(sym.omega12 == doctest::Approx(sym.omega23).epsilon(1e-15));

  Couplings aniso = isotropic_couplings(0.5, 0.3);
  aniso.v_y = 0.4;
  CHECK_THROWS_AS(effective_couplings(aniso, 10), InputError);
  Couplings biased = isotropic_couplings(0.5, 0.3);
  biased.delta_x = 0.1;
  CHECK_THROWS_AS(effective_couplings(biased, 10), InputError);
}

TEST_CASE("effective couplings match lattice matrix elements") {
  for (int L : {6, 10}) {
    for (double v : {0.25, 0.5, 0.9}) {
      for (double vp : {0.25, 0.3, 0.9}) {
        const Couplings c = isotropic_couplings(v, vp);
        const EffectiveCouplings e = effective_couplings(c, L);
        const double o12 = matrix_element(TopoLabel::T, TopoLabel::TL, c, L);
        const double o23 = matrix_element(TopoLabel::TR, TopoLabel::T, c, L);
        CHECK(e.omega12 == doctest::Approx(o12).epsilon(1e-8));
        CHECK(e.omega23 == doctest::Approx(o23).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("every nearest-neighbour element follows the sign relations") {
  const int L = 8;
  const Couplings c = isotropic_couplings(0.6, 0.35);
  const EffectiveCouplings e = effective_couplings(c, L);
  for (int n = 1; n <= 9; ++n) {
    for (int m = n + 1; m <= 9; ++m) {
      const double lattice = matrix_element(label_from_ordinal(m), label_from_ordinal(n), c, L);
      CHECK_MESSAGE(lattice == doctest::Approx(e.coupling(n, m)).epsilon(1e-8).scale(1e-12), n, ",", m);
    }
  }
}

TEST_CASE("build_heff pattern") {
  const EffectiveModel only12 = build_heff({1.0, 0.0});
  int nonzero = 0;
  for (int n = 0; n < 9; ++n) {
    for (int m = n + 1; m < 9; ++m) nonzero += only12.h(n, m) != 0.0;
  }
  CHECK(nonzero == 6);
  CHECK(only12.h(0, 1) == 1.0);
  CHECK(only12.h(1, 4) == 1.0);
  CHECK(only12.h(3, 4) == 1.0);
  CHECK(only12.h(6, 7) == 1.0);
  CHECK(only12.h(0, 3) == -1.0);
  CHECK(only12.h(2, 5) == -1.0);

  const EffectiveModel both = build_heff({1.0, 1.0});
  const Eigen::Matrix<double, 9, 1> degree = both.h.cwiseAbs().rowwise().sum();
  const double expected[9] = {2, 3, 2, 3, 4, 3, 2, 3, 2};
  for (int n = 0; n < 9; ++n) CHECK(degree[n] == expected[n]);
  CHECK((both.h - both.h.transpose()).norm() == 0.0);
}

TEST_CASE("closed-form spectrum") {
  auto zero = heff_spectrum_closed_form({0.0, 0.0});
  for (double x : zero) CHECK(x == 0.0);

  const auto e = heff_spectrum_closed_form({3.0, 4.0});
  const double r = 5 * std::sqrt(2.0);
  const std::array<double, 9> expected = {-r, -r, -5, -5, 0, 5, 5, r, r};
  for (int k = 0; k < 9; ++k) CHECK(e[k] == doctest::Approx(expected[k]).epsilon(1e-15));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const EffectiveCouplings c{u(rng), u(rng)};
    const auto closed = heff_spectrum_closed_form(c);
    const Eigen::VectorXd numeric = symmetric_eigenvalues(build_heff(c).h);
    for (int k = 0; k < 9; ++k) CHECK(std::abs(numeric[k] - closed[k]) < 1e-12);
  }
}

TEST_CASE("dark state") {
  auto d = dark_state({0.0, 0.7});
  CHECK(d[0] == 1.0);
  CHECK(d.tail<8>().norm() == 0.0);
  d = dark_state({0.7, 0.0});
  CHECK(d[8] == 1.0);
  CHECK(d.head<8>().norm() == 0.0);

  d = dark_state({0.3, 0.3});
  const double expected[9] = {0.5, 0, -0.5, 0, 0, 0, -0.5, 0, 0.5};
  for (int n = 0; n < 9; ++n) CHECK(d[n] == doctest::Approx(expected[n]).epsilon(1e-15));
  CHECK((build_heff({0.3, 0.3}).h * d).norm() < 1e-14);

  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const EffectiveCouplings c{u(rng), u(rng)};
    const auto dk = dark_state(c);
    CHECK(dk.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((build_heff(c).h * dk).norm() < 1e-13);
    for (int n : {1, 3, 4, 5, 7}) CHECK(dk[n] == 0.0);
  }
  CHECK_THROWS_AS(dark_state({0.0, 0.0}), InputError);
}

TEST_CASE("adiabaticity integral") {
  SUBCASE("constant couplings") {
    const Couplings c = isotropic_couplings(0.4, 0.2);
    const double rms = effective_couplings(c, 10).rms();
    const double a = adiabaticity_integral(ConstantSchedule{c, 0.0, 50.0}, 10, 0.0, 50.0);
    CHECK(a == doctest::Approx(rms * 50.0).epsilon(1e-13));
  }
  SUBCASE("stretching the schedule doubles the area") {
    const CtapSchedule s{0.9, 150, 50, 600};
    const CtapSchedule s2{0.9, 300, 100, 1200};
    const double a = adiabaticity_integral(s, 14, -300, 300);
    const double a2 = adiabaticity_integral(s2, 14, -600, 600);
    CHECK(a2 == doctest::Approx(2 * a).epsilon(1e-9));
  }
  SUBCASE("default schedule is adiabatic") {
    const double a = adiabaticity_integral(CtapSchedule{}, 14, -300, 300);
    CHECK(a > 10 * std::numbers::pi / 2);
    CHECK(a == doctest::Approx(20.262083260429065).epsilon(1e-9));
  }
  CHECK_THROWS_AS(adiabaticity_integral(CtapSchedule{}, 14, 1.0, 1.0), InputError);
}
