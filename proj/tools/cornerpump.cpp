// Command-line front end: cornerpump <config> [--set key=value]... [--svg]
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cornerpump/experiments.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corner-state pumping experiments"};
  std::string config_path;
  std::vector<std::string> overrides;
  bool svg = false, amplitudes = false;
  int workers = 0;
  app.add_option("config", config_path, "experiment config file")->required();
  app.add_option("--set", overrides, "override a config key (key=value), repeatable");
  app.add_flag("--svg", svg, "also write <experiment>.svg");
  app.add_flag("--amplitudes", amplitudes, "add signed real amplitudes to grid tables");
  app.add_option("--workers", workers, "sweep worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read config " << config_path << "\n";
    return kExitConfig;
  }
  std::stringstream text;
  text << in.rdbuf();
  if (svg) overrides.push_back("svg = true");
  if (amplitudes) overrides.push_back("amplitudes = true");
  if (workers > 0) overrides.push_back("workers = " + std::to_string(workers));

  cornerpump::ExperimentConfig cfg;
  try {
    cfg = cornerpump::parse_config(text.str(), overrides);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const auto out = cornerpump::run_experiment(cfg);
    for (const auto& f : out.files) std::cout << f.string() << "\n";
  } catch (const cornerpump::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
