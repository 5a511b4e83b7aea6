#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cornerpump/numerics.hpp"

namespace cornerpump {

/// Hopping and on-site parameters at one instant. Energies in units of w.
struct Couplings {
  double v_x = 0, v_y = 0;
  double v_prime_x = 0, v_prime_y = 0;
  double w_x = 1, w_y = 1;
  double delta_x = 0, delta_y = 0;

  /// w > 0 along both axes and every weak bond weaker than w.
  bool in_topological_phase() const;
  double max_hopping() const;
};

/// Couplings with v_x = v_y = v, v'_x = v'_y = v', w_x = w_y = w.
Couplings isotropic_couplings(double v, double v_prime, double w = 1.0);

enum class LatticeModel { CtapSuperlattice, RiceMele };
enum class Axis { X, Y };

/// CtapSuperlattice: side 2L-1 made of four SSH blocks meeting at row and
/// column L; L must be even. RiceMele: uniform side 2L lattice.
class LatticeGeometry {
 public:
  LatticeGeometry(LatticeModel model, int half_size);

  static LatticeGeometry ctap(int half_size) {
    return {LatticeModel::CtapSuperlattice, half_size};
  }
  static LatticeGeometry rice_mele(int half_size) { return {LatticeModel::RiceMele, half_size}; }

  LatticeModel model() const { return model_; }
  int half_size() const { return half_size_; }
  int side() const { return model_ == LatticeModel::CtapSuperlattice ? 2 * half_size_ - 1 : 2 * half_size_; }
  int dim() const { return side() * side(); }

  friend bool operator==(const LatticeGeometry&, const LatticeGeometry&) = default;

 private:
  LatticeModel model_;
  int half_size_;
};

/// 1-based (column, row) coordinate.
struct SiteIndex {
  int i = 1;
  int j = 1;
  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

/// (j-1)*side + (i-1).
Eigen::Index flatten(SiteIndex s, const LatticeGeometry& geometry);
SiteIndex unflatten(Eigen::Index index, const LatticeGeometry& geometry);

/// Dimerized amplitude of the bond leaving coordinate r (1 <= r <= 2L-2)
/// along `axis` in the superlattice: r < L gives v (odd r) or w (even r);
/// r >= L gives w (odd r) or v' (even r).
double bond_amplitude(Axis axis, int r, const Couplings& c, int half_size);

/// Which coupling parameter a matrix element follows.
enum class CouplingClass : std::uint8_t { Vx, Wx, VPrimeX, Vy, Wy, VPrimeY, DeltaX, DeltaY };

double coupling_value(const Couplings& c, CouplingClass cls);

/// Fixed sparsity pattern of a lattice Hamiltonian with every element tagged
/// by its coupling class and a +-1 sign (pi flux, staggering). Updating the
/// couplings rewrites values in O(nnz) without touching the structure.
class BondPattern {
 public:
  struct Bond {
    Eigen::Index a;
    Eigen::Index b;
    double sign;
    CouplingClass cls;
  };
  struct OnSite {
    Eigen::Index site;
    double sign;
    CouplingClass cls;
  };

  static BondPattern ctap(int half_size);
  static BondPattern rice_mele(int half_size);

  const LatticeGeometry& geometry() const { return geometry_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const std::vector<OnSite>& onsite() const { return onsite_; }

  SparseHamiltonian assemble(const Couplings& c) const;
  /// `h` must come from assemble() on this pattern.
  void update(const Couplings& c, SparseHamiltonian& h) const;

 private:
  explicit BondPattern(LatticeGeometry geometry) : geometry_(geometry) {}

  LatticeGeometry geometry_;
  std::vector<Bond> bonds_;  // sorted by (a, b), a < b
  std::vector<OnSite> onsite_;
};

/// Coupled four-block 2D SSH superlattice with a pi flux per plaquette.
SparseHamiltonian build_ctap_hamiltonian(const Couplings& c, int half_size);

/// Uniformly dimerized 2L x 2L lattice with staggered potentials
/// (-1)^i Delta_x + (-1)^j Delta_y.
SparseHamiltonian build_ricemele_hamiltonian(const Couplings& c, int half_size);

/// Complex 4x4 Bloch matrix of one SSH block including the staggered terms.
Eigen::Matrix4cd bloch_hamiltonian(double k_x, double k_y, const Couplings& c);

/// Ascending bulk energies at (k_x, k_y), computed from the 8x8 real
/// embedding [[Re, -Im], [Im, Re]] whose spectrum is the 4x4 one doubled.
std::array<double, 4> bulk_bands(double k_x, double k_y, const Couplings& c);

}  // namespace cornerpump
