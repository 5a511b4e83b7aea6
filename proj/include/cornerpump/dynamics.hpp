#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "cornerpump/effective_model.hpp"
#include "cornerpump/protocols.hpp"
#include "cornerpump/topo_states.hpp"

namespace cornerpump {

/// Time-dependent lattice Hamiltonian: a fixed bond pattern whose values are
/// rewritten from the schedule on every call.
class ScheduledHamiltonian {
 public:
  ScheduledHamiltonian(const PulseSchedule& schedule, const LatticeGeometry& geometry);

  const SparseHamiltonian& operator()(double t);
  const LatticeGeometry& geometry() const { return pattern_.geometry(); }

 private:
  PulseSchedule schedule_;
  BondPattern pattern_;
  SparseHamiltonian h_;
};

/// Unit-norm state localized on a single site.
StateVector site_indicator(SiteIndex s, const LatticeGeometry& geometry);

/// |psi(s)|^2.
double occupation(const StateVector& psi, SiteIndex s, const LatticeGeometry& geometry);

struct Snapshot {
  double time;
  StateVector state;
};

struct EvolveOptions {
  std::optional<double> dt;  // default_time_step(schedule) when empty
  int sample_stride = 1;     // record every n-th step (the final instant always)
  std::vector<double> snapshot_times;
  /// Sites whose occupation is recorded; empty selects (1,1) and (side,side).
  std::vector<SiteIndex> tracked_sites;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SiteIndex> sites;
  std::vector<std::vector<double>> occupations;  // [sample][site]
  std::vector<double> norms;
  std::vector<Snapshot> snapshots;
  StateVector final_state;
  double max_norm_drift = 0;
  bool norm_drift_exceeded = false;  // |norm - 1| > 1e-3 somewhere

  static constexpr double kNormFailure = 1e-3;
};

/// RK4 evolution of psi0 across the schedule window. Snapshot instants are
/// inserted into the step grid so that they are hit exactly.
Trajectory evolve(const PulseSchedule& schedule, const LatticeGeometry& geometry,
                  const StateVector& psi0, const EvolveOptions& options = {});

enum class SpectrumMode { Full, InGap };

struct SpectralFlow {
  std::vector<double> times;
  /// Full: whole sorted spectrum. InGap on the superlattice: the nine
  /// smallest-|E| levels, sorted. InGap on Rice-Mele: the tracked corner level.
  std::vector<std::vector<double>> eigenvalues;
  /// Superlattice InGap: nearest bulk levels below and above the in-gap set.
  std::vector<std::pair<double, double>> bulk_edges;
  /// Rice-Mele InGap: |<previous tracked|current tracked>| per instant.
  std::vector<double> tracking_overlap;
  /// Tracked eigenvectors (Rice-Mele) or smallest-|E| eigenvectors
  /// (superlattice) at the requested snapshot instants.
  std::vector<Snapshot> snapshots;
};

/// Dense diagonalization of H(t) on each grid instant. Rice-Mele in-gap
/// tracking starts from the (1,1) indicator and follows the eigenvector of
/// maximum overlap, projected onto its (possibly degenerate) eigenspace.
SpectralFlow spectral_flow(const PulseSchedule& schedule, const LatticeGeometry& geometry,
                           const std::vector<double>& times, SpectrumMode mode,
                           const std::vector<double>& snapshot_times = {});

/// a_n = <n|psi> for the nine analytic states in ordinal order.
std::array<std::complex<double>, 9> project_topo(const StateVector& psi, const Couplings& c,
                                                 int half_size);

/// sum_n |<n|psi>|^2; the nine analytic states are mutually orthogonal.
double topo_subspace_weight(const StateVector& psi, const Couplings& c, int half_size);

}  // namespace cornerpump
