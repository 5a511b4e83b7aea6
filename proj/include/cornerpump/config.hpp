#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cornerpump {

enum class Experiment { States, SpectrumFlow, Evolve, Effective, SweepT, SweepL, Thouless, ThoulessSweep };

std::string_view experiment_name(Experiment e);
bool is_rice_mele(Experiment e);

/// Config problem; `line` is 1-based, 0 when not tied to a config line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Fully resolved experiment description. Every field has a value after
/// parse_config(); experiment-dependent defaults are applied there.
struct ExperimentConfig {
  Experiment experiment = Experiment::Evolve;

  int L = 14;
  double omega_m = 0.9;
  double lambda = 150.0;
  double delta = 50.0;
  double T = 600.0;
  std::optional<double> dt;  // unset: default_time_step of the schedule

  double t0 = 1.0;      // Rice-Mele hopping scale
  double delta0 = 0.4;  // Rice-Mele potential amplitude

  // Sweep rules: lambda = lambda_ratio * T, delta = delta_ratio * lambda.
  double lambda_ratio = 0.3;
  double delta_ratio = 1.0 / 3.0;
  std::vector<double> sweep_T;
  std::vector<int> sweep_L;

  // Static couplings for the `states` experiment.
  double v = 0.5;
  double v_prime = 0.3;

  int n_times = 121;  // spectrum-flow and effective instants
  std::string mode = "ingap";
  int sample_stride = 50;
  std::vector<double> snapshot_times;
  int quadrature_nodes = 2001;

  int workers = 1;
  std::string output_dir;
  bool svg = false;
  bool amplitudes = false;

  /// `key = value` lines of every resolved field in a fixed order.
  std::string echo() const;
};

/// One `key = value` assignment and where it came from.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses `key = value` lines (`#` starts a comment). `overrides` are
/// applied after the file, as from repeated `--set key=value`. Unknown keys,
/// duplicates within the file, malformed numbers and invalid ranges are
/// errors carrying the offending line.
ExperimentConfig parse_config(std::string_view text,
                              const std::vector<std::string>& overrides = {});

/// Parses "a, b, c" or an inclusive range "start:stop:step".
std::vector<double> parse_number_list(std::string_view text);

/// FNV-1a over the echo; used for the default output directory name.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace cornerpump
