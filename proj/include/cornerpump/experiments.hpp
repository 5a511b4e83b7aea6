#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cornerpump/config.hpp"
#include "cornerpump/dynamics.hpp"
#include "cornerpump/result_table.hpp"

namespace cornerpump {

/// A sweep point failed; the message names the point.
class SweepError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct ExperimentOutput {
  ResultTable table;
  std::vector<std::filesystem::path> files;  // every file written, main CSV first
};

/// Runs fn(0..count-1) on `workers` threads. Every index is attempted; if
/// any throw, the exception of the lowest failing index is rethrown after
/// all workers have joined.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Evaluates every sweep point of a sweep-T, sweep-L or thouless-sweep
/// config independently and returns rows sorted by the sweep key. The
/// result does not depend on cfg.workers.
ResultTable run_sweep_parallel(const ExperimentConfig& cfg);

/// Computes the experiment's tables without touching the filesystem.
/// Secondary tables (snapshots, tracked spectra) are appended to `extra`
/// with their file suffix.
struct NamedTable {
  std::string suffix;  // e.g. "_snapshots"
  ResultTable table;
};
ResultTable compute_experiment(const ExperimentConfig& cfg, std::vector<NamedTable>& extra,
                               std::vector<std::string>& result_lines);

/// Writes <experiment>.csv, <experiment>.meta, secondary CSVs and, when
/// cfg.svg is set, <experiment>.svg into cfg.output_dir. On failure every
/// file written so far is removed before the exception propagates.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

}  // namespace cornerpump
