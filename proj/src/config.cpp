#include "cornerpump/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "cornerpump/protocols.hpp"

namespace cornerpump {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 8> kExperimentNames = {{
    {Experiment::States, "states"},
    {Experiment::SpectrumFlow, "spectrum-flow"},
    {Experiment::Evolve, "evolve"},
    {Experiment::Effective, "effective"},
    {Experiment::SweepT, "sweep-T"},
    {Experiment::SweepL, "sweep-L"},
    {Experiment::Thouless, "thouless"},
    {Experiment::ThoulessSweep, "thouless-sweep"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string where(int line) {
  return line > 0 ? "line " + std::to_string(line) : std::string("--set override");
}

double parse_double(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ConfigError(line, "malformed number '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

int parse_int(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(line, "malformed integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(line, "expected true/false for " + std::string(key));
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ", ";
    out += format_double(xs[k]);
  }
  return out;
}

std::vector<double> parse_list_at(std::string_view text, int line, std::string_view key) {
  try {
    return parse_number_list(text);
  } catch (const ConfigError& e) {
    throw ConfigError(line, std::string(e.what()) + " for " + std::string(key));
  }
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "config error (line " + std::to_string(line) + "): " + message
                                  : "config error: " + message),
      line_(line) {}

std::string_view experiment_name(Experiment e) {
  for (const auto& [value, name] : kExperimentNames) {
    if (value == e) return name;
  }
  return "unknown";
}

bool is_rice_mele(Experiment e) {
  return e == Experiment::Thouless || e == Experiment::ThoulessSweep;
}

std::vector<double> parse_number_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(parse_double(text.substr(start, colon - start), 0, "range"));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
      throw ConfigError(0, "range must be start:stop:step with step > 0 and stop >= start");
    }
    const long count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= count; ++k) out.push_back(parts[0] + k * parts[2]);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_double(item, 0, "list item"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string ExperimentConfig::echo() const {
  std::vector<double> ls(sweep_L.begin(), sweep_L.end());
  std::ostringstream os;
  os << "experiment = " << experiment_name(experiment) << '\n'
     << "L = " << L << '\n'
     << "omega_m = " << format_double(omega_m) << '\n'
     << "lambda = " << format_double(lambda) << '\n'
     << "delta = " << format_double(delta) << '\n'
     << "T = " << format_double(T) << '\n'
     << "dt = " << format_double(dt.value_or(0.0)) << '\n'
     << "t0 = " << format_double(t0) << '\n'
     << "delta0 = " << format_double(delta0) << '\n'
     << "lambda_ratio = " << format_double(lambda_ratio) << '\n'
     << "delta_ratio = " << format_double(delta_ratio) << '\n'
     << "sweep_T = " << join(sweep_T) << '\n'
     << "sweep_L = " << join(ls) << '\n'
     << "v = " << format_double(v) << '\n'
     << "v_prime = " << format_double(v_prime) << '\n'
     << "n_times = " << n_times << '\n'
     << "mode = " << mode << '\n'
     << "sample_stride = " << sample_stride << '\n'
     << "snapshot_times = " << join(snapshot_times) << '\n'
     << "quadrature_nodes = " << quadrature_nodes << '\n'
     << "workers = " << workers << '\n'
     << "output_dir = " << output_dir << '\n'
     << "svg = " << (svg ? "true" : "false") << '\n'
     << "amplitudes = " << (amplitudes ? "true" : "false") << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  ExperimentConfig copy = cfg;
  copy.output_dir.clear();
  copy.workers = 1;  // output does not depend on the worker count
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : copy.echo()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 8);
}

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  std::vector<ConfigEntry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    if (!seen.insert(key).second) throw ConfigError(line_no, "duplicate key '" + key + "'");
    entries.push_back({key, std::string(trim(line.substr(eq + 1))), line_no});
  }
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError(0, "--set expects key=value, got '" + o + "'");
    entries.push_back({std::string(trim(std::string_view(o).substr(0, eq))),
                       std::string(trim(std::string_view(o).substr(eq + 1))), 0});
  }

  ExperimentConfig cfg;
  std::map<std::string, int> set_at;  // key -> line of the effective assignment
  bool have_experiment = false;

  using Setter = std::function<void(const ConfigEntry&)>;
  const std::map<std::string, Setter> setters = {
      {"experiment",
       [&](const ConfigEntry& e) {
         for (const auto& [value, name] : kExperimentNames) {
           if (name == e.value) {
             cfg.experiment = value;
             have_experiment = true;
             return;
           }
         }
         throw ConfigError(e.line, "unknown experiment '" + e.value + "'");
       }},
      {"L", [&](const ConfigEntry& e) { cfg.L = parse_int(e.value, e.line, e.key); }},
      {"omega_m", [&](const ConfigEntry& e) { cfg.omega_m = parse_double(e.value, e.line, e.key); }},
      {"lambda", [&](const ConfigEntry& e) { cfg.lambda = parse_double(e.value, e.line, e.key); }},
      {"delta", [&](const ConfigEntry& e) { cfg.delta = parse_double(e.value, e.line, e.key); }},
      {"T", [&](const ConfigEntry& e) { cfg.T = parse_double(e.value, e.line, e.key); }},
      {"dt", [&](const ConfigEntry& e) { cfg.dt = parse_double(e.value, e.line, e.key); }},
      {"t0", [&](const ConfigEntry& e) { cfg.t0 = parse_double(e.value, e.line, e.key); }},
      {"delta0", [&](const ConfigEntry& e) { cfg.delta0 = parse_double(e.value, e.line, e.key); }},
      {"lambda_ratio",
       [&](const ConfigEntry& e) { cfg.lambda_ratio = parse_double(e.value, e.line, e.key); }},
      {"delta_ratio",
       [&](const ConfigEntry& e) { cfg.delta_ratio = parse_double(e.value, e.line, e.key); }},
      {"sweep_T", [&](const ConfigEntry& e) { cfg.sweep_T = parse_list_at(e.value, e.line, e.key); }},
      {"sweep_L",
       [&](const ConfigEntry& e) {
         cfg.sweep_L.clear();
         for (double x : parse_list_at(e.value, e.line, e.key)) {
           if (x != std::floor(x)) throw ConfigError(e.line, "sweep_L entries must be integers");
           cfg.sweep_L.push_back(static_cast<int>(x));
         }
       }},
      {"v", [&](const ConfigEntry& e) { cfg.v = parse_double(e.value, e.line, e.key); }},
      {"v_prime", [&](const ConfigEntry& e) { cfg.v_prime = parse_double(e.value, e.line, e.key); }},
      {"n_times", [&](const ConfigEntry& e) { cfg.n_times = parse_int(e.value, e.line, e.key); }},
      {"mode",
       [&](const ConfigEntry& e) {
         if (e.value != "full" && e.value != "ingap") {
           throw ConfigError(e.line, "mode must be 'full' or 'ingap'");
         }
         cfg.mode = e.value;
       }},
      {"sample_stride",
       [&](const ConfigEntry& e) { cfg.sample_stride = parse_int(e.value, e.line, e.key); }},
      {"snapshot_times",
       [&](const ConfigEntry& e) { cfg.snapshot_times = parse_list_at(e.value, e.line, e.key); }},
      {"quadrature_nodes",
       [&](const ConfigEntry& e) { cfg.quadrature_nodes = parse_int(e.value, e.line, e.key); }},
      {"workers", [&](const ConfigEntry& e) { cfg.workers = parse_int(e.value, e.line, e.key); }},
      {"output_dir", [&](const ConfigEntry& e) { cfg.output_dir = e.value; }},
      {"svg", [&](const ConfigEntry& e) { cfg.svg = parse_bool(e.value, e.line, e.key); }},
      {"amplitudes", [&](const ConfigEntry& e) { cfg.amplitudes = parse_bool(e.value, e.line, e.key); }},
  };

  // The experiment is resolved first so defaults below can depend on it.
  for (const ConfigEntry& e : entries) {
    if (!setters.contains(e.key)) {
      throw ConfigError(e.line, "unknown key '" + e.key + "'" + (e.line > 0 ? "" : " in " + where(e.line)));
    }
  }
  for (const ConfigEntry& e : entries) {
    setters.at(e.key)(e);
    set_at[e.key] = e.line;
  }
  if (!have_experiment) throw ConfigError(0, "missing required key 'experiment'");

  const bool rm = is_rice_mele(cfg.experiment);
  auto has = [&](const char* key) { return set_at.contains(key); };
  auto line_of = [&](const char* key) { return has(key) ? set_at.at(key) : 0; };

  if (rm) {
    if (!has("L")) cfg.L = 13;
    if (!has("T")) cfg.T = 1000.0;
    if (!has("snapshot_times")) {
      // omega t in {0.1, 0.45, 2.35, 3.9} pi with omega = 4 pi / T
      cfg.snapshot_times.clear();
      for (double phase : {0.1, 0.45, 2.35, 3.9}) cfg.snapshot_times.push_back(phase * cfg.T / 4.0);
    }
  } else {
    const bool ratio_rule = cfg.experiment == Experiment::SweepT ||
                            (cfg.experiment == Experiment::SweepL && !has("lambda"));
    if (ratio_rule) cfg.lambda = cfg.lambda_ratio * cfg.T;
    if (!has("delta") || cfg.experiment == Experiment::SweepT) cfg.delta = cfg.delta_ratio * cfg.lambda;
    if (!has("snapshot_times") && (cfg.experiment == Experiment::SpectrumFlow ||
                                   cfg.experiment == Experiment::Effective)) {
      cfg.snapshot_times = {-100.0, -25.0, 0.0, 25.0, 100.0};
    }
  }

  // Validation.
  if (rm) {
    if (cfg.L < 2) throw ConfigError(line_of("L"), "L must be >= 2 for the Rice-Mele lattice");
  } else if (cfg.L % 2 != 0) {
    throw ConfigError(line_of("L"), "L must be even");
  } else if (cfg.L < 4) {
    throw ConfigError(line_of("L"), "L must be >= 4");
  }
  if (!(cfg.T > 0)) throw ConfigError(line_of("T"), "T must be positive");
  if (!rm) {
    if (!(cfg.omega_m >= 0 && cfg.omega_m < 1)) {
      throw ConfigError(line_of("omega_m"), "omega_m must lie in [0, 1)");
    }
    if (!(cfg.lambda > 0)) throw ConfigError(line_of("lambda"), "lambda must be positive");
    if (!(cfg.delta > 0)) throw ConfigError(line_of("delta"), "delta must be positive");
  } else {
    if (!(cfg.t0 > 0)) throw ConfigError(line_of("t0"), "t0 must be positive");
    if (!(cfg.delta0 > 0)) throw ConfigError(line_of("delta0"), "delta0 must be positive");
  }
  if (!(cfg.lambda_ratio > 0)) throw ConfigError(line_of("lambda_ratio"), "lambda_ratio must be positive");
  if (!(cfg.delta_ratio > 0)) throw ConfigError(line_of("delta_ratio"), "delta_ratio must be positive");
  if (cfg.dt && !(*cfg.dt > 0)) throw ConfigError(line_of("dt"), "dt must be positive");
  if (cfg.workers < 1) throw ConfigError(line_of("workers"), "workers must be >= 1");
  if (cfg.n_times < 1) throw ConfigError(line_of("n_times"), "n_times must be >= 1");
  if (cfg.sample_stride < 1) throw ConfigError(line_of("sample_stride"), "sample_stride must be >= 1");
  if (cfg.quadrature_nodes < 3) {
    throw ConfigError(line_of("quadrature_nodes"), "quadrature_nodes must be >= 3");
  }
  if (!(std::abs(cfg.v) < 1 && std::abs(cfg.v_prime) < 1)) {
    throw ConfigError(line_of(has("v") ? "v" : "v_prime"), "v and v_prime must satisfy |v| < w = 1");
  }
  if (cfg.experiment == Experiment::SweepT || cfg.experiment == Experiment::ThoulessSweep) {
    if (!has("sweep_T")) throw ConfigError(0, "missing required key 'sweep_T'");
    if (cfg.sweep_T.empty()) throw ConfigError(line_of("sweep_T"), "sweep_T is empty");
    for (double x : cfg.sweep_T) {
      if (!(x > 0)) throw ConfigError(line_of("sweep_T"), "sweep_T entries must be positive");
    }
  }
  if (cfg.experiment == Experiment::SweepL) {
    if (!has("sweep_L")) throw ConfigError(0, "missing required key 'sweep_L'");
    if (cfg.sweep_L.empty()) throw ConfigError(line_of("sweep_L"), "sweep_L is empty");
    for (int x : cfg.sweep_L) {
      if (x < 4 || x % 2 != 0) throw ConfigError(line_of("sweep_L"), "sweep_L entries must be even and >= 4");
    }
  }

  if (!cfg.dt) {
    const PulseSchedule schedule =
        rm ? PulseSchedule(RiceMeleSchedule{cfg.t0, cfg.delta0, cfg.T})
           : PulseSchedule(CtapSchedule{cfg.omega_m, cfg.lambda, cfg.delta, cfg.T});
    cfg.dt = default_time_step(schedule);
  }
  if (cfg.output_dir.empty()) {
    cfg.output_dir = "out/" + std::string(experiment_name(cfg.experiment)) + "-" + config_hash(cfg);
  }
  return cfg;
}

}  // namespace cornerpump
