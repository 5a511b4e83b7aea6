#pragma once

// Small numerical kernel: dense symmetric eigendecomposition, a symmetric
// sparse operator stored as upper triplets plus diagonal, and a fixed-step
// RK4 integrator for i d/dt psi = H(t) psi.
//
// Everything is templated on the real scalar type; the rest of the library
// instantiates it with double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cornerpump/errors.hpp"

namespace cornerpump {

template <typename Scalar>
using DenseSymmetricT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using StateVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using DenseSymmetric = DenseSymmetricT<double>;
using StateVector = StateVectorT<double>;

template <typename Scalar>
struct SymmetricEigenT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;  // ascending
  DenseSymmetricT<Scalar> vectors;                   // orthonormal columns
};
using SymmetricEigen = SymmetricEigenT<double>;

namespace detail {

template <typename Derived>
void check_symmetric_finite(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InputError("symmetric_eig: matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw InputError("symmetric_eig: non-finite entries");
  const Scalar scale = std::max<Scalar>(m.cwiseAbs().maxCoeff(), Scalar(1));
  const Scalar asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(1e-12) * scale) {
    throw InputError("symmetric_eig: matrix is not symmetric");
  }
}

}  // namespace detail

/// Largest-|component| entry made positive; near-ties (relative 1e-10) go to
/// the lowest index so degenerate pairs come out reproducibly.
template <typename Derived>
void fix_eigenvector_gauge(Eigen::MatrixBase<Derived>& vectors) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index best = 0;
    Scalar best_mag = std::abs(vectors(0, k));
    for (Eigen::Index a = 1; a < vectors.rows(); ++a) {
      const Scalar mag = std::abs(vectors(a, k));
      if (mag > best_mag * (Scalar(1) + Scalar(1e-10))) {
        best = a;
        best_mag = mag;
      }
    }
    if (vectors(best, k) < Scalar(0)) vectors.col(k) *= Scalar(-1);
  }
}

template <typename Derived>
SymmetricEigenT<typename Derived::Scalar> symmetric_eig(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  detail::check_symmetric_finite(m);
  Eigen::SelfAdjointEigenSolver<DenseSymmetricT<Scalar>> solver(m.eval());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eig: eigensolver did not converge");
  }
  SymmetricEigenT<Scalar> out{solver.eigenvalues(), solver.eigenvectors()};
  fix_eigenvector_gauge(out.vectors);
  return out;
}

/// Eigenvalues only, ascending.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> symmetric_eigenvalues(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  detail::check_symmetric_finite(m);
  Eigen::SelfAdjointEigenSolver<DenseSymmetricT<Scalar>> solver(
      m.eval(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Real symmetric sparse matrix: off-diagonal pairs stored once with
/// row < col, plus a dense diagonal. The sparsity pattern is fixed at
/// construction; values may be rewritten in place.
template <typename Scalar>
class SparseHamiltonianT {
 public:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Scalar value;
  };

  SparseHamiltonianT() = default;

  SparseHamiltonianT(Eigen::Index dim, std::vector<Entry> upper,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diagonal)
      : dim_(dim), diagonal_(std::move(diagonal)) {
    if (dim <= 0) throw InputError("SparseHamiltonian: dim must be positive");
    if (diagonal_.size() != dim) {
      throw InputError("SparseHamiltonian: diagonal length != dim");
    }
    std::sort(upper.begin(), upper.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    rows_.reserve(upper.size());
    cols_.reserve(upper.size());
    values_.reserve(upper.size());
    for (std::size_t k = 0; k < upper.size(); ++k) {
      const Entry& e = upper[k];
      if (e.row < 0 || e.col >= dim || e.row >= e.col) {
        throw InputError("SparseHamiltonian: entries must satisfy 0 <= row < col < dim");
      }
      if (k > 0 && upper[k - 1].row == e.row && upper[k - 1].col == e.col) {
        throw InputError("SparseHamiltonian: duplicate (row, col) pair");
      }
      rows_.push_back(e.row);
      cols_.push_back(e.col);
      values_.push_back(e.value);
    }
  }

  Eigen::Index dim() const { return dim_; }
  std::size_t offdiag_count() const { return values_.size(); }

  std::span<const Eigen::Index> rows() const { return rows_; }
  std::span<const Eigen::Index> cols() const { return cols_; }
  std::span<const Scalar> values() const { return values_; }
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& diagonal() const { return diagonal_; }

  // Structure-preserving mutation for time-dependent coefficients.
  std::span<Scalar> mutable_values() { return values_; }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& mutable_diagonal() { return diagonal_; }

  DenseSymmetricT<Scalar> dense() const {
    DenseSymmetricT<Scalar> m = diagonal_.asDiagonal();
    for (std::size_t k = 0; k < values_.size(); ++k) {
      m(rows_[k], cols_[k]) += values_[k];
      m(cols_[k], rows_[k]) += values_[k];
    }
    return m;
  }

  /// Max absolute row sum; bounds the spectral norm.
  Scalar inf_norm() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sums = diagonal_.cwiseAbs();
    for (std::size_t k = 0; k < values_.size(); ++k) {
      sums[rows_[k]] += std::abs(values_[k]);
      sums[cols_[k]] += std::abs(values_[k]);
    }
    return sums.maxCoeff();
  }

  /// out = H * in, without allocation.
  template <typename In, typename Out>
  void apply_to(const Eigen::MatrixBase<In>& in, Eigen::MatrixBase<Out>& out) const {
    out = diagonal_.template cast<typename Out::Scalar>().cwiseProduct(in);
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const Eigen::Index r = rows_[k];
      const Eigen::Index c = cols_[k];
      out[r] += values_[k] * in[c];
      out[c] += values_[k] * in[r];
    }
  }

 private:
  Eigen::Index dim_ = 0;
  std::vector<Eigen::Index> rows_;
  std::vector<Eigen::Index> cols_;
  std::vector<Scalar> values_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diagonal_;
};
using SparseHamiltonian = SparseHamiltonianT<double>;

template <typename Scalar>
StateVectorT<Scalar> sparse_apply(const SparseHamiltonianT<Scalar>& h,
                                  const StateVectorT<Scalar>& psi) {
  if (psi.size() != h.dim()) throw InputError("sparse_apply: dimension mismatch");
  StateVectorT<Scalar> out(h.dim());
  h.apply_to(psi, out);
  return out;
}

/// Classical RK4 for d/dt psi = -i H(t) psi. Owns its stage buffers.
template <typename Scalar>
class Rk4Stepper {
 public:
  static constexpr Scalar kStabilityLimit = Scalar(0.5);

  explicit Rk4Stepper(Eigen::Index dim)
      : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  /// Advances psi from t to t + h. `hamiltonian_at(t)` must return a
  /// SparseHamiltonianT<Scalar> (by value or reference) valid until the
  /// next call.
  template <typename HamiltonianAt>
  void step(HamiltonianAt& hamiltonian_at, Scalar t, Scalar h, StateVectorT<Scalar>& psi) {
    using Complex = std::complex<Scalar>;
    const Complex minus_i(0, -1);
    {
      const auto& H = hamiltonian_at(t);
      if (h * H.inf_norm() > kStabilityLimit) {
        throw NumericalError("rk4: dt * |H| exceeds the stability guard 0.5");
      }
      H.apply_to(psi, k1_);
      k1_ *= minus_i;
    }
    {
      const auto& H = hamiltonian_at(t + h / 2);
      tmp_ = psi + (h / 2) * k1_;
      H.apply_to(tmp_, k2_);
      k2_ *= minus_i;
      tmp_ = psi + (h / 2) * k2_;
      H.apply_to(tmp_, k3_);
      k3_ *= minus_i;
    }
    {
      const auto& H = hamiltonian_at(t + h);
      tmp_ = psi + h * k3_;
      H.apply_to(tmp_, k4_);
      k4_ *= minus_i;
    }
    psi += (h / 6) * (k1_ + Scalar(2) * k2_ + Scalar(2) * k3_ + k4_);
    if (!psi.allFinite()) throw NumericalError("rk4: non-finite amplitudes");
  }

 private:
  StateVectorT<Scalar> k1_, k2_, k3_, k4_, tmp_;
};

/// Number of steps of size <= dt covering [t0, t1]; the last is shortened.
template <typename Scalar>
long rk4_step_count(Scalar t0, Scalar t1, Scalar dt) {
  return std::max(1L, static_cast<long>(std::ceil((t1 - t0) / dt - Scalar(1e-9))));
}

/// psi(t1) from psi(t0). Grid points are t0 + k dt, the final step lands
/// exactly on t1. The norm is not renormalized.
template <typename Scalar, typename HamiltonianAt>
StateVectorT<Scalar> rk4_propagate(HamiltonianAt&& hamiltonian_at,
                                   const StateVectorT<Scalar>& psi0, Scalar t0, Scalar t1,
                                   Scalar dt) {
  if (!(dt > 0)) throw InputError("rk4_propagate: dt must be positive");
  if (!(t1 > t0)) throw InputError("rk4_propagate: t1 must exceed t0");
  StateVectorT<Scalar> psi = psi0;
  Rk4Stepper<Scalar> stepper(psi.size());
  const long n = rk4_step_count(t0, t1, dt);
  for (long k = 0; k < n; ++k) {
    const Scalar ta = t0 + static_cast<Scalar>(k) * dt;
    const Scalar tb = (k + 1 == n) ? t1 : t0 + static_cast<Scalar>(k + 1) * dt;
    stepper.step(hamiltonian_at, ta, tb - ta, psi);
  }
  return psi;
}

}  // namespace cornerpump
