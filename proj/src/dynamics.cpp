#include "cornerpump/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace cornerpump {

namespace {

BondPattern pattern_for(const LatticeGeometry& geometry) {
  return geometry.model() == LatticeModel::CtapSuperlattice
             ? BondPattern::ctap(geometry.half_size())
             : BondPattern::rice_mele(geometry.half_size());
}

bool contains_time(const std::vector<double>& times, double t) {
  return std::any_of(times.begin(), times.end(),
                     [t](double s) { return std::abs(s - t) <= 1e-9 * std::max(1.0, std::abs(t)); });
}

}  // namespace

ScheduledHamiltonian::ScheduledHamiltonian(const PulseSchedule& schedule,
                                           const LatticeGeometry& geometry)
    : schedule_(schedule), pattern_(pattern_for(geometry)) {
  h_ = pattern_.assemble(couplings_at(schedule_, time_window(schedule_).first));
}

const SparseHamiltonian& ScheduledHamiltonian::operator()(double t) {
  pattern_.update(couplings_at(schedule_, t), h_);
  return h_;
}

StateVector site_indicator(SiteIndex s, const LatticeGeometry& geometry) {
  StateVector psi = StateVector::Zero(geometry.dim());
  psi[flatten(s, geometry)] = 1.0;
  return psi;
}

double occupation(const StateVector& psi, SiteIndex s, const LatticeGeometry& geometry) {
  if (psi.size() != geometry.dim()) throw InputError("occupation: state dimension mismatch");
  return std::norm(psi[flatten(s, geometry)]);
}

Trajectory evolve(const PulseSchedule& schedule, const LatticeGeometry& geometry,
                  const StateVector& psi0, const EvolveOptions& options) {
  if (psi0.size() != geometry.dim()) throw InputError("evolve: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InputError("evolve: initial state must have unit norm");
  if (options.sample_stride < 1) throw InputError("evolve: sample stride must be >= 1");
  const auto [t0, t1] = time_window(schedule);
  const double dt = options.dt.value_or(default_time_step(schedule));
  if (!(dt > 0.0)) throw InputError("evolve: dt must be positive");
  if (!(t1 > t0)) throw InputError("evolve: empty time window");

  Trajectory traj;
  traj.sites = options.tracked_sites;
  if (traj.sites.empty()) traj.sites = {{1, 1}, {geometry.side(), geometry.side()}};
  for (SiteIndex s : traj.sites) (void)flatten(s, geometry);

  // Uniform grid stops, flagged true, plus snapshot-only stops.
  std::vector<std::pair<double, bool>> stops;
  const long n = rk4_step_count(t0, t1, dt);
  for (long k = 1; k <= n; ++k) stops.emplace_back(k == n ? t1 : t0 + k * dt, true);
  for (double s : options.snapshot_times) {
    if (s > t0 && s < t1) {
      bool on_grid = std::any_of(stops.begin(), stops.end(), [s](const auto& p) {
        return std::abs(p.first - s) <= 1e-9 * std::max(1.0, std::abs(s));
      });
      if (!on_grid) stops.emplace_back(s, false);
    }
  }
  std::sort(stops.begin(), stops.end());

  ScheduledHamiltonian hamiltonian(schedule, geometry);
  Rk4Stepper<double> stepper(geometry.dim());
  StateVector psi = psi0;

  auto record = [&](double t) {
    traj.times.push_back(t);
    std::vector<double> row;
    row.reserve(traj.sites.size());
    for (SiteIndex s : traj.sites) row.push_back(occupation(psi, s, geometry));
    traj.occupations.push_back(std::move(row));
    traj.norms.push_back(psi.norm());
  };
  auto maybe_snapshot = [&](double t) {
    if (contains_time(options.snapshot_times, t)) traj.snapshots.push_back({t, psi});
  };

  record(t0);
  maybe_snapshot(t0);
  double t = t0;
  long grid_steps = 0;
  for (std::size_t k = 0; k < stops.size(); ++k) {
    const auto [next, on_grid] = stops[k];
    stepper.step(hamiltonian, t, next - t, psi);
    t = next;
    const double drift = std::abs(psi.norm() - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (on_grid) ++grid_steps;
    const bool last = k + 1 == stops.size();
    if (last || (on_grid && grid_steps % options.sample_stride == 0)) record(t);
    maybe_snapshot(t);
  }
  traj.norm_drift_exceeded = traj.max_norm_drift > Trajectory::kNormFailure;
  traj.final_state = std::move(psi);
  return traj;
}

SpectralFlow spectral_flow(const PulseSchedule& schedule, const LatticeGeometry& geometry,
                           const std::vector<double>& times, SpectrumMode mode,
                           const std::vector<double>& snapshot_times) {
  if (times.empty()) throw InputError("spectral_flow: empty time grid");
  const BondPattern pattern = pattern_for(geometry);
  const bool superlattice = geometry.model() == LatticeModel::CtapSuperlattice;

  std::vector<double> instants = times;
  for (double s : snapshot_times) {
    if (!contains_time(instants, s)) instants.push_back(s);
  }
  std::sort(instants.begin(), instants.end());

  SpectralFlow flow;
  Eigen::VectorXd reference;
  if (!superlattice && mode == SpectrumMode::InGap) {
    reference = site_indicator({1, 1}, geometry).real();
  }

  for (double t : instants) {
    const bool report = contains_time(times, t);
    const bool snapshot = contains_time(snapshot_times, t);
    const DenseSymmetric h = pattern.assemble(couplings_at(schedule, t)).dense();

    if (mode == SpectrumMode::Full && !snapshot) {
      if (report) {
        const Eigen::VectorXd values = symmetric_eigenvalues(h);
        flow.times.push_back(t);
        flow.eigenvalues.emplace_back(values.data(), values.data() + values.size());
      }
      continue;
    }

    if (superlattice) {
      const bool need_vectors = snapshot;
      SymmetricEigen eig;
      if (need_vectors) {
        eig = symmetric_eig(h);
      } else {
        eig.values = symmetric_eigenvalues(h);
      }
      const Eigen::Index dim = eig.values.size();
      std::vector<Eigen::Index> order(dim);
      for (Eigen::Index a = 0; a < dim; ++a) order[a] = a;
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(eig.values[a]) < std::abs(eig.values[b]);
      });
      if (report) {
        flow.times.push_back(t);
        if (mode == SpectrumMode::Full) {
          flow.eigenvalues.emplace_back(eig.values.data(), eig.values.data() + dim);
        } else {
          const Eigen::Index count = std::min<Eigen::Index>(9, dim);
          std::vector<double> ingap;
          Eigen::Index lo = dim, hi = -1;
          for (Eigen::Index k = 0; k < count; ++k) {
            ingap.push_back(eig.values[order[k]]);
            lo = std::min(lo, order[k]);
            hi = std::max(hi, order[k]);
          }
          std::sort(ingap.begin(), ingap.end());
          flow.eigenvalues.push_back(std::move(ingap));
          const double below = lo > 0 ? eig.values[lo - 1] : -INFINITY;
          const double above = hi + 1 < dim ? eig.values[hi + 1] : INFINITY;
          flow.bulk_edges.emplace_back(below, above);
        }
      }
      if (snapshot) {
        flow.snapshots.push_back({t, eig.vectors.col(order[0]).cast<std::complex<double>>()});
      }
      continue;
    }

    // Rice-Mele: overlap tracking needs eigenvectors at every instant.
    const SymmetricEigen eig = symmetric_eig(h);
    if (mode == SpectrumMode::Full) {
      if (report) {
        flow.times.push_back(t);
        flow.eigenvalues.emplace_back(eig.values.data(), eig.values.data() + eig.values.size());
      }
      continue;
    }
    const Eigen::VectorXd overlaps = (eig.vectors.transpose() * reference).cwiseAbs();
    Eigen::Index best = 0;
    overlaps.maxCoeff(&best);
    const double energy = eig.values[best];
    const double tol = 1e-8 * std::max(1.0, std::abs(energy));
    Eigen::VectorXd tracked = Eigen::VectorXd::Zero(reference.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      if (std::abs(eig.values[k] - energy) <= tol) {
        tracked += eig.vectors.col(k) * eig.vectors.col(k).dot(reference);
      }
    }
    tracked.normalize();
    const double continuity = std::abs(tracked.dot(reference));
    reference = tracked;
    if (report) {
      flow.times.push_back(t);
      flow.eigenvalues.push_back({energy});
      flow.tracking_overlap.push_back(continuity);
    }
    if (snapshot) flow.snapshots.push_back({t, tracked.cast<std::complex<double>>()});
  }
  return flow;
}

std::array<std::complex<double>, 9> project_topo(const StateVector& psi, const Couplings& c,
                                                 int half_size) {
  std::array<std::complex<double>, 9> amplitudes{};
  for (TopoLabel label : kTopoLabels) {
    amplitudes[ordinal(label) - 1] = overlap(analytic_state(label, c, half_size), psi);
  }
  return amplitudes;
}

double topo_subspace_weight(const StateVector& psi, const Couplings& c, int half_size) {
  double weight = 0.0;
  for (const auto& a : project_topo(psi, c, half_size)) weight += std::norm(a);
  return weight;
}

}  // namespace cornerpump
