#include "cornerpump/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "cornerpump/svg.hpp"

namespace cornerpump {

namespace {

std::vector<double> linspace(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = (k == n - 1) ? b : a + (b - a) * k / (n - 1);
  return out;
}

std::string site_column(SiteIndex s) {
  return "P_" + std::to_string(s.i) + "_" + std::to_string(s.j);
}

CtapSchedule ctap_schedule(const ExperimentConfig& cfg) {
  CtapSchedule s{cfg.omega_m, cfg.lambda, cfg.delta, cfg.T};
  s.validate();
  return s;
}

RiceMeleSchedule ricemele_schedule(const ExperimentConfig& cfg, double total_time) {
  RiceMeleSchedule s{cfg.t0, cfg.delta0, total_time};
  s.validate();
  return s;
}

void append_grid(ResultTable& table, double t, const StateVector& psi, const LatticeGeometry& g,
                 bool amplitudes) {
  for (Eigen::Index a = 0; a < psi.size(); ++a) {
    const SiteIndex s = unflatten(a, g);
    std::vector<double> row = {t, double(s.i), double(s.j), std::norm(psi[a])};
    if (amplitudes) row.push_back(psi[a].real());
    table.add_row(std::move(row));
  }
}

std::vector<std::string> grid_header(const char* first, bool amplitudes) {
  std::vector<std::string> h = {first, "i", "j", "probability"};
  if (amplitudes) h.push_back("amplitude");
  return h;
}

Trajectory checked_evolve(const PulseSchedule& schedule, const LatticeGeometry& geometry,
                          const EvolveOptions& options) {
  Trajectory traj = evolve(schedule, geometry, site_indicator({1, 1}, geometry), options);
  if (traj.norm_drift_exceeded) {
    throw NumericalError("norm drift " + format_number(traj.max_norm_drift) +
                         " exceeds 1e-3; reduce dt");
  }
  return traj;
}

ResultTable trajectory_table(const Trajectory& traj, bool with_phase, double omega) {
  std::vector<std::string> header = {"t"};
  if (with_phase) header.push_back("omega_t_over_pi");
  for (SiteIndex s : traj.sites) header.push_back(site_column(s));
  header.push_back("norm");
  ResultTable table(header);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row = {traj.times[k]};
    if (with_phase) row.push_back(omega * traj.times[k] / std::numbers::pi);
    row.insert(row.end(), traj.occupations[k].begin(), traj.occupations[k].end());
    row.push_back(traj.norms[k]);
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable snapshot_table(const std::vector<Snapshot>& snaps, const LatticeGeometry& g,
                           bool amplitudes) {
  ResultTable table(grid_header("t", amplitudes));
  for (const Snapshot& s : snaps) append_grid(table, s.time, s.state, g, amplitudes);
  return table;
}

// One sweep point; returns its row.
std::vector<double> sweep_point(const ExperimentConfig& cfg, double key) {
  EvolveOptions options;
  options.dt = cfg.dt;
  options.sample_stride = 1 << 30;  // only endpoints
  switch (cfg.experiment) {
    case Experiment::SweepT: {
      const double lambda = cfg.lambda_ratio * key;
      const double delta = cfg.delta_ratio * lambda;
      CtapSchedule s{cfg.omega_m, lambda, delta, key};
      s.validate();
      const LatticeGeometry g = LatticeGeometry::ctap(cfg.L);
      const Trajectory traj = checked_evolve(s, g, options);
      return {key, lambda, delta, traj.occupations.back()[1], traj.occupations.back()[0],
              traj.max_norm_drift};
    }
    case Experiment::SweepL: {
      const int L = static_cast<int>(key);
      const LatticeGeometry g = LatticeGeometry::ctap(L);
      const Trajectory traj = checked_evolve(ctap_schedule(cfg), g, options);
      return {key, double(g.side()), traj.occupations.back()[1], traj.occupations.back()[0],
              traj.max_norm_drift};
    }
    case Experiment::ThoulessSweep: {
      const LatticeGeometry g = LatticeGeometry::rice_mele(cfg.L);
      const Trajectory traj = checked_evolve(ricemele_schedule(cfg, key), g, options);
      return {key, cfg.delta0, traj.occupations.back()[1], traj.occupations.back()[0],
              traj.max_norm_drift};
    }
    default:
      throw InputError("experiment '" + std::string(experiment_name(cfg.experiment)) +
                       "' is not a sweep");
  }
}

ResultTable states_table(const ExperimentConfig& cfg, std::vector<NamedTable>& extra) {
  const Couplings c = isotropic_couplings(cfg.v, cfg.v_prime);
  const LatticeGeometry g = LatticeGeometry::ctap(cfg.L);
  std::vector<std::string> header = {"n", "i", "j", "probability"};
  if (cfg.amplitudes) header.push_back("amplitude");
  ResultTable table(header);
  ResultTable total({"i", "j", "probability"});
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(g.dim());
  for (TopoLabel label : kTopoLabels) {
    const StateVector psi = analytic_state(label, c, cfg.L);
    for (Eigen::Index a = 0; a < psi.size(); ++a) {
      const SiteIndex s = unflatten(a, g);
      std::vector<double> row = {double(ordinal(label)), double(s.i), double(s.j), std::norm(psi[a])};
      if (cfg.amplitudes) row.push_back(psi[a].real());
      table.add_row(std::move(row));
      sum[a] += std::norm(psi[a]);
    }
  }
  for (Eigen::Index a = 0; a < sum.size(); ++a) {
    const SiteIndex s = unflatten(a, g);
    total.add_row({double(s.i), double(s.j), sum[a]});
  }
  extra.push_back({"_total", std::move(total)});
  return table;
}

ResultTable spectrum_table(const ExperimentConfig& cfg, std::vector<NamedTable>& extra) {
  const CtapSchedule schedule = ctap_schedule(cfg);
  const LatticeGeometry g = LatticeGeometry::ctap(cfg.L);
  const auto times = linspace(-cfg.T / 2, cfg.T / 2, cfg.n_times);
  const SpectrumMode mode = cfg.mode == "full" ? SpectrumMode::Full : SpectrumMode::InGap;
  const SpectralFlow flow = spectral_flow(schedule, g, times, mode, cfg.snapshot_times);

  std::vector<std::string> header = {"t", "v", "v_prime"};
  const std::size_t levels = flow.eigenvalues.front().size();
  for (std::size_t k = 0; k < levels; ++k) header.push_back("e" + std::to_string(k + 1));
  if (mode == SpectrumMode::InGap) {
    header.push_back("bulk_below");
    header.push_back("bulk_above");
  }
  ResultTable table(header);
  for (std::size_t k = 0; k < flow.times.size(); ++k) {
    const Couplings c = ctap_couplings(schedule, flow.times[k]);
    std::vector<double> row = {flow.times[k], c.v_x, c.v_prime_x};
    row.insert(row.end(), flow.eigenvalues[k].begin(), flow.eigenvalues[k].end());
    if (mode == SpectrumMode::InGap) {
      row.push_back(flow.bulk_edges[k].first);
      row.push_back(flow.bulk_edges[k].second);
    }
    table.add_row(std::move(row));
  }
  if (!flow.snapshots.empty()) {
    extra.push_back({"_snapshots", snapshot_table(flow.snapshots, g, cfg.amplitudes)});
  }
  return table;
}

ResultTable effective_table(const ExperimentConfig& cfg, std::vector<NamedTable>& extra,
                            std::vector<std::string>& results) {
  const CtapSchedule schedule = ctap_schedule(cfg);
  const auto times = linspace(-cfg.T / 2, cfg.T / 2, cfg.n_times);
  std::vector<std::string> header = {"t", "v", "v_prime", "omega12", "omega23", "E1", "E2"};
  for (int n = 1; n <= 9; ++n) header.push_back("dark_" + std::to_string(n));
  ResultTable table(header);
  auto dark_or_nan = [](const EffectiveCouplings& e) {
    if (e.rms() == 0.0) return Eigen::Matrix<double, 9, 1>::Constant(NAN).eval();
    return dark_state(e);
  };
  for (double t : times) {
    const Couplings c = ctap_couplings(schedule, t);
    const EffectiveCouplings e = effective_couplings(c, cfg.L);
    const auto spectrum = heff_spectrum_closed_form(e);
    const auto d = dark_or_nan(e);
    std::vector<double> row = {t, c.v_x, c.v_prime_x, e.omega12, e.omega23, spectrum[5], spectrum[7]};
    for (int n = 0; n < 9; ++n) row.push_back(d[n]);
    table.add_row(std::move(row));
  }
  // Zero-energy eigenvector of the nine-level model at the snapshot instants.
  ResultTable snaps({"t", "n", "probability"});
  for (double t : cfg.snapshot_times) {
    const auto d = dark_or_nan(effective_couplings(ctap_couplings(schedule, t), cfg.L));
    for (int n = 0; n < 9; ++n) snaps.add_row({t, double(n + 1), d[n] * d[n]});
  }
  if (!snaps.empty()) extra.push_back({"_snapshots", std::move(snaps)});
  const double area = adiabaticity_integral(schedule, cfg.L, -cfg.T / 2, cfg.T / 2, cfg.quadrature_nodes);
  results.push_back("adiabaticity_integral = " + format_number(area));
  return table;
}

ResultTable evolve_table(const ExperimentConfig& cfg, std::vector<NamedTable>& extra,
                         std::vector<std::string>& results) {
  const LatticeGeometry g = LatticeGeometry::ctap(cfg.L);
  EvolveOptions options{cfg.dt, cfg.sample_stride, cfg.snapshot_times, {}};
  const Trajectory traj = checked_evolve(ctap_schedule(cfg), g, options);
  if (!traj.snapshots.empty()) {
    extra.push_back({"_snapshots", snapshot_table(traj.snapshots, g, cfg.amplitudes)});
  }
  results.push_back("final_" + site_column({g.side(), g.side()}) + " = " +
                    format_number(traj.occupations.back()[1]));
  results.push_back("max_norm_drift = " + format_number(traj.max_norm_drift));
  return trajectory_table(traj, false, 0.0);
}

ResultTable thouless_table(const ExperimentConfig& cfg, std::vector<NamedTable>& extra,
                           std::vector<std::string>& results) {
  const LatticeGeometry g = LatticeGeometry::rice_mele(cfg.L);
  const RiceMeleSchedule schedule = ricemele_schedule(cfg, cfg.T);
  const double omega = schedule.angular_frequency();
  EvolveOptions options{cfg.dt, cfg.sample_stride, cfg.snapshot_times, {}};
  const Trajectory traj = checked_evolve(schedule, g, options);
  if (!traj.snapshots.empty()) {
    extra.push_back({"_snapshots", snapshot_table(traj.snapshots, g, cfg.amplitudes)});
  }

  const auto times = linspace(0.0, cfg.T, cfg.n_times);
  const SpectralFlow flow = spectral_flow(schedule, g, times, SpectrumMode::InGap, cfg.snapshot_times);
  ResultTable spectrum({"t", "omega_t_over_pi", "tracked_energy", "tracking_overlap"});
  for (std::size_t k = 0; k < flow.times.size(); ++k) {
    spectrum.add_row({flow.times[k], omega * flow.times[k] / std::numbers::pi,
                      flow.eigenvalues[k].front(), flow.tracking_overlap[k]});
  }
  extra.push_back({"_spectrum", std::move(spectrum)});
  if (!flow.snapshots.empty()) {
    extra.push_back({"_eigen_snapshots", snapshot_table(flow.snapshots, g, cfg.amplitudes)});
  }
  results.push_back("final_" + site_column({g.side(), g.side()}) + " = " +
                    format_number(traj.occupations.back()[1]));
  results.push_back("max_norm_drift = " + format_number(traj.max_norm_drift));
  return trajectory_table(traj, true, omega);
}

PlotSpec plot_spec_for(const ExperimentConfig& cfg, const ResultTable& table) {
  PlotSpec spec;
  spec.title = std::string(experiment_name(cfg.experiment));
  switch (cfg.experiment) {
    case Experiment::States:
      spec.kind = PlotKind::Heatmap;
      break;
    case Experiment::SpectrumFlow:
      spec.x_column = "t";
      for (const auto& h : table.header()) {
        if (h.size() > 1 && h[0] == 'e' && std::isdigit(static_cast<unsigned char>(h[1]))) {
          spec.y_columns.push_back(h);
        }
      }
      break;
    case Experiment::Effective:
      spec.x_column = "t";
      spec.y_columns = {"omega12", "omega23"};
      break;
    case Experiment::Evolve:
    case Experiment::Thouless:
      spec.x_column = "t";
      for (const auto& h : table.header()) {
        if (h.rfind("P_", 0) == 0) spec.y_columns.push_back(h);
      }
      break;
    case Experiment::SweepT:
    case Experiment::ThoulessSweep:
      spec.x_column = "T";
      spec.y_columns = {"P_final"};
      break;
    case Experiment::SweepL:
      spec.x_column = "L";
      spec.y_columns = {"P_final"};
      break;
  }
  return spec;
}

}  // namespace

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ResultTable run_sweep_parallel(const ExperimentConfig& cfg) {
  std::vector<double> keys;
  std::vector<std::string> header;
  std::string key_name;
  switch (cfg.experiment) {
    case Experiment::SweepT:
      keys = cfg.sweep_T;
      key_name = "T";
      header = {"T", "lambda", "delta", "P_final", "P_start", "max_norm_drift"};
      break;
    case Experiment::SweepL:
      keys.assign(cfg.sweep_L.begin(), cfg.sweep_L.end());
      key_name = "L";
      header = {"L", "side", "P_final", "P_start", "max_norm_drift"};
      break;
    case Experiment::ThoulessSweep:
      keys = cfg.sweep_T;
      key_name = "T";
      header = {"T", "delta0", "P_final", "P_start", "max_norm_drift"};
      break;
    default:
      throw InputError("run_sweep_parallel: not a sweep experiment");
  }
  if (keys.empty()) throw ConfigError(0, "sweep list is empty");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<std::vector<double>> rows(keys.size());
  try {
    parallel_for(keys.size(), cfg.workers, [&](std::size_t k) {
      try {
        rows[k] = sweep_point(cfg, keys[k]);
      } catch (const std::exception& e) {
        throw SweepError("sweep point " + key_name + " = " + format_number(keys[k]) +
                         " failed: " + e.what());
      }
    });
  } catch (const SweepError&) {
    throw;
  }
  ResultTable table(header);
  for (auto& row : rows) table.add_row(std::move(row));
  return table;
}

ResultTable compute_experiment(const ExperimentConfig& cfg, std::vector<NamedTable>& extra,
                               std::vector<std::string>& result_lines) {
  switch (cfg.experiment) {
    case Experiment::States: return states_table(cfg, extra);
    case Experiment::SpectrumFlow: return spectrum_table(cfg, extra);
    case Experiment::Effective: return effective_table(cfg, extra, result_lines);
    case Experiment::Evolve: return evolve_table(cfg, extra, result_lines);
    case Experiment::Thouless: return thouless_table(cfg, extra, result_lines);
    case Experiment::SweepT:
    case Experiment::SweepL:
    case Experiment::ThoulessSweep: return run_sweep_parallel(cfg);
  }
  throw InputError("unknown experiment");
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  const std::string name(experiment_name(cfg.experiment));
  const fs::path dir(cfg.output_dir);
  std::vector<fs::path> written;
  auto write = [&](const fs::path& path, const std::string& text) {
    write_text_file(path, text);
    written.push_back(path);
  };
  try {
    std::vector<NamedTable> extra;
    std::vector<std::string> results;
    ResultTable table = compute_experiment(cfg, extra, results);

    fs::create_directories(dir);
    write(dir / (name + ".csv"), table.to_csv());
    std::string meta = "version = " + std::string(kArtifactVersion) + "\n" + cfg.echo();
    for (const auto& line : results) meta += "result." + line + "\n";
    write(dir / (name + ".meta"), meta);
    for (const NamedTable& t : extra) write(dir / (name + t.suffix + ".csv"), t.table.to_csv());
    if (cfg.svg) {
      const ResultTable& plotted =
          cfg.experiment == Experiment::States ? extra.front().table : table;
      write(dir / (name + ".svg"), emit_svg(plotted, plot_spec_for(cfg, plotted)));
    }
    return {std::move(table), std::move(written)};
  } catch (...) {
    std::error_code ec;
    for (const auto& path : written) fs::remove(path, ec);
    throw;
  }
}

}  // namespace cornerpump
