#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerpump/numerics.hpp"

using namespace cornerpump;
using Complex = std::complex<double>;

namespace {

SparseHamiltonian random_sparse(int dim, double fill, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<SparseHamiltonian::Entry> upper;
  for (int r = 0; r < dim; ++r) {
    for (int c = r + 1; c < dim; ++c) {
      if (coin(rng) < fill) upper.push_back({r, c, u(rng)});
    }
  }
  Eigen::VectorXd diag(dim);
  for (int k = 0; k < dim; ++k) diag[k] = u(rng);
  return SparseHamiltonian(dim, upper, diag);
}

StateVector random_state(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  StateVector psi(dim);
  for (int k = 0; k < dim; ++k) psi[k] = Complex(g(rng), g(rng));
  return psi.normalized();
}

}  // namespace

TEST_CASE("symmetric_eig: identity and diagonal") {
  auto id = symmetric_eig(Eigen::Matrix3d::Identity());
  CHECK(id.values.isApprox(Eigen::Vector3d::Ones()));

  Eigen::Matrix3d d = Eigen::Vector3d(2, -1, 0).asDiagonal();
  auto e = symmetric_eig(d);
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(0));
  CHECK(e.values[2] == doctest::Approx(2));
}

TEST_CASE("symmetric_eig: pauli x with fixed gauge") {
  Eigen::Matrix2d m;
  m << 0, 1, 1, 0;
  auto e = symmetric_eig(m);
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(1));
  const double s = 1 / std::sqrt(2.0);
  // largest component ties go to the lowest index, which is made positive
  CHECK(e.vectors(0, 0) == doctest::Approx(s));
  CHECK(e.vectors(1, 0) == doctest::Approx(-s));
  CHECK(e.vectors(0, 1) == doctest::Approx(s));
  CHECK(e.vectors(1, 1) == doctest::Approx(s));
}

TEST_CASE("symmetric_eig: orthonormal and reconstructs") {
  std::mt19937 rng(7);
  const Eigen::MatrixXd m = random_sparse(12, 0.5, rng).dense();
  auto e = symmetric_eig(m);
  CHECK((e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(12, 12)).norm() < 1e-12);
  CHECK((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - m).norm() < 1e-12);
  for (int k = 1; k < 12; ++k) CHECK(e.values[k] >= e.values[k - 1]);
}

TEST_CASE("symmetric_eig rejects bad input") {
  Eigen::Matrix2d asym;
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(symmetric_eig(asym), InputError);
  Eigen::Matrix2d nan = Eigen::Matrix2d::Zero();
  nan(0, 0) = NAN;
  CHECK_THROWS_AS(symmetric_eig(nan), InputError);
  CHECK_THROWS_AS(symmetric_eig(Eigen::MatrixXd(2, 3)), InputError);
}

TEST_CASE("sparse_apply: zero, diagonal, dense oracle") {
  std::mt19937 rng(11);
  const StateVector psi = random_state(10, rng);

  SparseHamiltonian zero(10, {}, Eigen::VectorXd::Zero(10));
  CHECK(sparse_apply(zero, psi).norm() == 0.0);

  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(10, -2, 3);
  SparseHamiltonian diag(10, {}, d);
  CHECK((sparse_apply(diag, psi) - d.cast<Complex>().cwiseProduct(psi)).norm() < 1e-15);

  for (int trial = 0; trial < 5; ++trial) {
    const SparseHamiltonian h = random_sparse(10, 0.3, rng);
    const StateVector dense = h.dense().cast<Complex>() * psi;
    CHECK((sparse_apply(h, psi) - dense).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(sparse_apply(diag, StateVector(3)), InputError);
}

TEST_CASE("SparseHamiltonian validates entries") {
  using E = SparseHamiltonian::Entry;
  CHECK_THROWS_AS(SparseHamiltonian(3, {E{1, 0, 1.0}}, Eigen::VectorXd::Zero(3)), InputError);
  CHECK_THROWS_AS(SparseHamiltonian(3, {E{0, 3, 1.0}}, Eigen::VectorXd::Zero(3)), InputError);
  CHECK_THROWS_AS(SparseHamiltonian(3, {E{0, 1, 1.0}, E{0, 1, 2.0}}, Eigen::VectorXd::Zero(3)),
                  InputError);
  CHECK_THROWS_AS(SparseHamiltonian(3, {}, Eigen::VectorXd::Zero(2)), InputError);
  SparseHamiltonian h(3, {E{0, 1, -2.0}, E{1, 2, 0.5}}, Eigen::Vector3d(1, 0, 0));
  CHECK(h.inf_norm() == doctest::Approx(3.0));  // row 0: |1| + |-2|
}

TEST_CASE("rk4: zero hamiltonian leaves the state unchanged") {
  std::mt19937 rng(3);
  const StateVector psi0 = random_state(4, rng);
  SparseHamiltonian zero(4, {}, Eigen::VectorXd::Zero(4));
  auto out = rk4_propagate([&](double) -> const SparseHamiltonian& { return zero; }, psi0, 0.0, 5.0, 0.1);
  CHECK((out - psi0).norm() == 0.0);
}

TEST_CASE("rk4: single-level phase") {
  const double E = 0.7;
  SparseHamiltonian h(1, {}, Eigen::VectorXd::Constant(1, E));
  StateVector psi0 = StateVector::Constant(1, Complex(1, 0));
  for (double dt : {0.1, 0.05}) {
    auto out = rk4_propagate([&](double) -> const SparseHamiltonian& { return h; }, psi0, 0.0, 10.0, dt);
    const Complex exact = std::exp(Complex(0, -E * 10.0));
    // global error O(dt^4)
    CHECK(std::abs(out[0] - exact) < 10 * std::pow(E * dt, 4));
  }
}

TEST_CASE("rk4: two-site Rabi oscillation") {
  const double w = 0.8;
  SparseHamiltonian h(2, {{0, 1, w}}, Eigen::VectorXd::Zero(2));
  StateVector psi0(2);
  psi0 << 1, 0;
  const double period = std::numbers::pi / w;
  const double dt = 1e-3 / w;
  auto at = [&](double) -> const SparseHamiltonian& { return h; };
  // P_2(t) = sin^2(wt): full transfer at half period, return at one period
  auto half = rk4_propagate(at, psi0, 0.0, period / 2, dt);
  CHECK(std::norm(half[1]) == doctest::Approx(1.0).epsilon(1e-6));
  auto full = rk4_propagate(at, psi0, 0.0, period, dt);
  CHECK(std::norm(full[0]) == doctest::Approx(1.0).epsilon(1e-6));
  auto quarter = rk4_propagate(at, psi0, 0.0, period / 4, dt);
  CHECK(std::norm(quarter[1]) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("rk4: step count lands on t1 and guards stability") {
  CHECK(rk4_step_count(0.0, 1.0, 0.1) == 10);
  CHECK(rk4_step_count(0.0, 1.05, 0.1) == 11);
  CHECK(rk4_step_count(0.0, 0.01, 0.1) == 1);

  SparseHamiltonian h(2, {{0, 1, 10.0}}, Eigen::VectorXd::Zero(2));
  StateVector psi0(2);
  psi0 << 1, 0;
  auto at = [&](double) -> const SparseHamiltonian& { return h; };
  CHECK_THROWS_AS(rk4_propagate(at, psi0, 0.0, 1.0, 0.1), NumericalError);
  CHECK_THROWS_AS(rk4_propagate(at, psi0, 0.0, 1.0, 0.0), InputError);
  CHECK_THROWS_AS(rk4_propagate(at, psi0, 1.0, 1.0, 0.01), InputError);
}
