#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cornerpump/topo_states.hpp"

using namespace cornerpump;

TEST_CASE("labels round-trip") {
  for (TopoLabel l : kTopoLabels) {
    CHECK(label_from_ordinal(ordinal(l)) == l);
    CHECK(parse_label(label_name(l)) == l);
  }
  CHECK(ordinal(TopoLabel::TL) == 1);
  CHECK(ordinal(TopoLabel::BR) == 9);
  CHECK_THROWS_AS(label_from_ordinal(0), InputError);
  CHECK_THROWS_AS(parse_label("X"), InputError);
}

TEST_CASE("decay ratios") {
  auto r = decay_ratios(isotropic_couplings(0.9, 0.9));
  CHECK(r.m_x == doctest::Approx(-0.9));
  r = decay_ratios(isotropic_couplings(0.0, 0.0));
  CHECK(r.m_x == 0.0);
  CHECK(r.n_y == 0.0);
  r = decay_ratios(isotropic_couplings(0.5, 0.25));
  CHECK(r.m_x == doctest::Approx(-0.5));
  CHECK(r.n_x == doctest::Approx(-0.25));
  CHECK(r.m_y == doctest::Approx(-0.5));
  CHECK(r.n_y == doctest::Approx(-0.25));
  CHECK_THROWS_AS(decay_ratios(isotropic_couplings(0.5, 0.5, 0.0)), InputError);
}

TEST_CASE("geometric weight") {
  CHECK(geometric_weight(0.0, 14) == 1.0);
  double sum = 0;
  for (int s = 0; s < 7; ++s) sum += std::pow(0.3, 2 * s);
  CHECK(geometric_weight(-0.3, 14) == doctest::Approx(sum).epsilon(1e-15));
  CHECK_THROWS_AS(geometric_weight(1.0, 14), SingularRatioError);
  CHECK_THROWS_AS(geometric_weight(-1.0, 14), SingularRatioError);
}

TEST_CASE("normalization constants") {
  SUBCASE("flat band") {
    const NormalizationSet n = normalization_set({0, 0, 0, 0}, 14);
    for (TopoLabel l : kTopoLabels) CHECK(n[l] == 1.0);
  }
  SUBCASE("finite geometric sum") {
    const NormalizationSet n = normalization_set({-0.5, -0.5, -0.5, -0.5}, 4);
    CHECK(n.tl == doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("symmetric ratios") {
    const double m = -0.4;
    const int L = 10;
    const NormalizationSet n = normalization_set({m, m, m, m}, L);
    CHECK(n.t == doctest::Approx(n.r));
    CHECK(n.tr == doctest::Approx((1 - m * m) / (1 - std::pow(m, L))));
  }
  CHECK_THROWS_AS(normalization_set({-0.5, -0.5, -0.5, -0.5}, 5), InputError);
}

TEST_CASE("flat-band states are site indicators") {
  const int L = 14;
  const LatticeGeometry g = LatticeGeometry::ctap(L);
  const Couplings c = isotropic_couplings(0, 0);
  const StateVector tl = analytic_state(TopoLabel::TL, c, L);
  CHECK(std::abs(tl[flatten({1, 1}, g)] - 1.0) == 0.0);
  CHECK(tl.norm() == 1.0);
  const StateVector center = analytic_state(TopoLabel::C, c, L);
  CHECK(std::abs(center[flatten({14, 14}, g)] - 1.0) == 0.0);
  CHECK(center.norm() == 1.0);
  const StateVector br = analytic_state(TopoLabel::BR, c, L);
  CHECK(std::abs(overlap(tl, br)) == 0.0);
}

TEST_CASE("unit norm and mutual orthogonality") {
  for (int L : {4, 8, 14}) {
    for (double v : {0.1, 0.5, 0.9}) {
      for (double vp : {0.0, 0.3, 0.8}) {
        const Couplings c = isotropic_couplings(v, vp);
        std::vector<StateVector> states;
        for (TopoLabel l : kTopoLabels) states.push_back(analytic_state(l, c, L));
        for (std::size_t a = 0; a < 9; ++a) {
          CHECK(std::abs(overlap(states[a], states[a]) - 1.0) < 1e-12);
          for (std::size_t b = a + 1; b < 9; ++b) CHECK(std::abs(overlap(states[a], states[b])) < 1e-14);
        }
      }
    }
  }
}

TEST_CASE("anisotropic couplings keep unit norm") {
  Couplings c;
  c.v_x = 0.2;
  c.v_y = 0.6;
  c.v_prime_x = 0.7;
  c.v_prime_y = 0.1;
  c.w_x = 1.0;
  c.w_y = 1.3;
  for (TopoLabel l : kTopoLabels) CHECK(analytic_state(l, c, 10).norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("zero-mode residual bound") {
  const Couplings c = isotropic_couplings(0.5, 0.3);
  for (int L : {6, 8, 10, 14}) {
    const SparseHamiltonian h = build_ctap_hamiltonian(c, L);
    const double bound = 10 * std::pow(0.5, L / 2);
    for (TopoLabel l : kTopoLabels) {
      const double residual = sparse_apply(h, analytic_state(l, c, L)).norm();
      CHECK_MESSAGE(residual < bound, label_name(l), " L=", L);
    }
  }
}

TEST_CASE("corner states are exact zero modes of their own corner") {
  // TL lives on odd-odd sites of the upper-left block; H maps it onto
  // even sites only across the interface bond.
  const Couplings c = isotropic_couplings(0.5, 0.3);
  const int L = 8;
  const LatticeGeometry g = LatticeGeometry::ctap(L);
  const StateVector hpsi = sparse_apply(build_ctap_hamiltonian(c, L), analytic_state(TopoLabel::TL, c, L));
  for (Eigen::Index a = 0; a < hpsi.size(); ++a) {
    const SiteIndex s = unflatten(a, g);
    if (std::abs(hpsi[a]) > 1e-15) CHECK((s.i == L || s.j == L));
  }
}

TEST_CASE("overlap conjugates the bra and matches brute force") {
  StateVector a(3), b(3);
  a << std::complex<double>(0, 1), 2, 0;
  b << 1, std::complex<double>(0, 1), 5;
  CHECK(overlap(a, b) == std::complex<double>(0, -1) + std::complex<double>(0, 2));

  const Couplings c = isotropic_couplings(0.5, 0.5);
  const StateVector tl = analytic_state(TopoLabel::TL, c, 8);
  const StateVector t = analytic_state(TopoLabel::T, c, 8);
  std::complex<double> sum = 0;
  for (Eigen::Index k = 0; k < tl.size(); ++k) sum += std::conj(tl[k]) * t[k];
  CHECK(overlap(tl, t) == sum);
}
