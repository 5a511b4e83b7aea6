#include "cornerpump/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cornerpump {

bool Couplings::in_topological_phase() const {
  return w_x > 0 && w_y > 0 && std::abs(v_x) < w_x && std::abs(v_prime_x) < w_x &&
         std::abs(v_y) < w_y && std::abs(v_prime_y) < w_y;
}

double Couplings::max_hopping() const {
  return std::max({std::abs(v_x), std::abs(v_y), std::abs(v_prime_x), std::abs(v_prime_y),
                   std::abs(w_x), std::abs(w_y)});
}

Couplings isotropic_couplings(double v, double v_prime, double w) {
  Couplings c;
  c.v_x = c.v_y = v;
  c.v_prime_x = c.v_prime_y = v_prime;
  c.w_x = c.w_y = w;
  return c;
}

LatticeGeometry::LatticeGeometry(LatticeModel model, int half_size)
    : model_(model), half_size_(half_size) {
  if (model == LatticeModel::CtapSuperlattice) {
    if (half_size < 4 || half_size % 2 != 0) {
      throw InputError("superlattice half-size L must be even and >= 4, got " +
                       std::to_string(half_size));
    }
  } else if (half_size < 2) {
    throw InputError("Rice-Mele half-size L must be >= 2, got " + std::to_string(half_size));
  }
}

Eigen::Index flatten(SiteIndex s, const LatticeGeometry& geometry) {
  const int side = geometry.side();
  if (s.i < 1 || s.i > side || s.j < 1 || s.j > side) {
    throw InputError("site (" + std::to_string(s.i) + "," + std::to_string(s.j) +
                     ") outside lattice of side " + std::to_string(side));
  }
  return static_cast<Eigen::Index>(s.j - 1) * side + (s.i - 1);
}

SiteIndex unflatten(Eigen::Index index, const LatticeGeometry& geometry) {
  const int side = geometry.side();
  if (index < 0 || index >= geometry.dim()) {
    throw InputError("flat index " + std::to_string(index) + " out of range");
  }
  return {static_cast<int>(index % side) + 1, static_cast<int>(index / side) + 1};
}

namespace {

CouplingClass superlattice_class(Axis axis, int r, int half_size) {
  const bool x = axis == Axis::X;
  if (r < half_size) {
    if (r % 2 == 1) return x ? CouplingClass::Vx : CouplingClass::Vy;
    return x ? CouplingClass::Wx : CouplingClass::Wy;
  }
  if (r % 2 == 1) return x ? CouplingClass::Wx : CouplingClass::Wy;
  return x ? CouplingClass::VPrimeX : CouplingClass::VPrimeY;
}

CouplingClass uniform_class(Axis axis, int r) {
  const bool x = axis == Axis::X;
  if (r % 2 == 1) return x ? CouplingClass::Vx : CouplingClass::Vy;
  return x ? CouplingClass::Wx : CouplingClass::Wy;
}

double parity_sign(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

double coupling_value(const Couplings& c, CouplingClass cls) {
  switch (cls) {
    case CouplingClass::Vx: return c.v_x;
    case CouplingClass::Wx: return c.w_x;
    case CouplingClass::VPrimeX: return c.v_prime_x;
    case CouplingClass::Vy: return c.v_y;
    case CouplingClass::Wy: return c.w_y;
    case CouplingClass::VPrimeY: return c.v_prime_y;
    case CouplingClass::DeltaX: return c.delta_x;
    case CouplingClass::DeltaY: return c.delta_y;
  }
  return 0.0;
}

double bond_amplitude(Axis axis, int r, const Couplings& c, int half_size) {
  if (r < 1 || r > 2 * half_size - 2) {
    throw InputError("bond coordinate " + std::to_string(r) + " outside [1, 2L-2]");
  }
  return coupling_value(c, superlattice_class(axis, r, half_size));
}

BondPattern BondPattern::ctap(int half_size) {
  BondPattern p(LatticeGeometry::ctap(half_size));
  const LatticeGeometry& g = p.geometry_;
  const int side = g.side();
  p.bonds_.reserve(2 * side * (side - 1));
  for (int j = 1; j <= side; ++j) {
    for (int i = 1; i <= side; ++i) {
      const Eigen::Index a = flatten({i, j}, g);
      if (i < side) {
        p.bonds_.push_back({a, flatten({i + 1, j}, g), 1.0,
                            superlattice_class(Axis::X, i, half_size)});
      }
      if (j < side) {
        p.bonds_.push_back({a, flatten({i, j + 1}, g), parity_sign(i),
                            superlattice_class(Axis::Y, j, half_size)});
      }
    }
  }
  return p;
}

BondPattern BondPattern::rice_mele(int half_size) {
  BondPattern p(LatticeGeometry::rice_mele(half_size));
  const LatticeGeometry& g = p.geometry_;
  const int side = g.side();
  p.bonds_.reserve(2 * side * (side - 1));
  p.onsite_.reserve(2 * g.dim());
  for (int j = 1; j <= side; ++j) {
    for (int i = 1; i <= side; ++i) {
      const Eigen::Index a = flatten({i, j}, g);
      if (i < side) p.bonds_.push_back({a, flatten({i + 1, j}, g), 1.0, uniform_class(Axis::X, i)});
      if (j < side) {
        p.bonds_.push_back({a, flatten({i, j + 1}, g), parity_sign(i), uniform_class(Axis::Y, j)});
      }
      p.onsite_.push_back({a, parity_sign(i), CouplingClass::DeltaX});
      p.onsite_.push_back({a, parity_sign(j), CouplingClass::DeltaY});
    }
  }
  return p;
}

SparseHamiltonian BondPattern::assemble(const Couplings& c) const {
  std::vector<SparseHamiltonian::Entry> entries;
  entries.reserve(bonds_.size());
  for (const Bond& b : bonds_) entries.push_back({b.a, b.b, b.sign * coupling_value(c, b.cls)});
  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(geometry_.dim());
  for (const OnSite& o : onsite_) diagonal[o.site] += o.sign * coupling_value(c, o.cls);
  return SparseHamiltonian(geometry_.dim(), std::move(entries), std::move(diagonal));
}

void BondPattern::update(const Couplings& c, SparseHamiltonian& h) const {
  // Bonds are generated in (a, b) order, which matches the sorted storage.
  auto values = h.mutable_values();
  for (std::size_t k = 0; k < bonds_.size(); ++k) {
    values[k] = bonds_[k].sign * coupling_value(c, bonds_[k].cls);
  }
  if (onsite_.empty()) return;
  Eigen::VectorXd& diagonal = h.mutable_diagonal();
  diagonal.setZero();
  for (const OnSite& o : onsite_) diagonal[o.site] += o.sign * coupling_value(c, o.cls);
}

SparseHamiltonian build_ctap_hamiltonian(const Couplings& c, int half_size) {
  if (c.delta_x != 0.0 || c.delta_y != 0.0) {
    throw InputError("superlattice Hamiltonian takes no staggered potential");
  }
  return BondPattern::ctap(half_size).assemble(c);
}

SparseHamiltonian build_ricemele_hamiltonian(const Couplings& c, int half_size) {
  return BondPattern::rice_mele(half_size).assemble(c);
}

Eigen::Matrix4cd bloch_hamiltonian(double k_x, double k_y, const Couplings& c) {
  using C = std::complex<double>;
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, C(0, -1), C(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < 2; ++s) out.block<2, 2>(2 * r, 2 * s) = a(r, s) * b;
    }
    return out;
  };
  return (c.v_x + c.w_x * std::cos(k_x)) * kron(id, sx) + c.w_x * std::sin(k_x) * kron(id, sy) -
         (c.v_y + c.w_y * std::cos(k_y)) * kron(sx, sz) + c.w_y * std::sin(k_y) * kron(sy, sz) +
         c.delta_x * kron(id, sz) + c.delta_y * kron(sz, id);
}

std::array<double, 4> bulk_bands(double k_x, double k_y, const Couplings& c) {
  const Eigen::Matrix4cd hk = bloch_hamiltonian(k_x, k_y, c);
  Eigen::Matrix<double, 8, 8> embedded;
  embedded << hk.real(), -hk.imag(), hk.imag(), hk.real();
  const Eigen::VectorXd doubled = symmetric_eigenvalues(embedded);
  return {doubled[0], doubled[2], doubled[4], doubled[6]};
}

}  // namespace cornerpump
