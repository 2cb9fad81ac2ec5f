// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <iostream>

#include "dickeamp/cli/cli.hpp"

namespace cli = dickeamp::cli;

namespace {

dickeamp::ProtocolConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  dickeamp::ProtocolConfig c = path.empty() ? cli::parse_config_text("{}") : cli::parse_config(path);
  if (seed) c.rng_seed = *seed;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded Dicke-state amplifier simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::optional<std::uint64_t> seed;
  std::int64_t trials = 100000;
  int jobs = 1;
  int n_atoms = 0;
  int n_max = 10;
  std::vector<std::string> axis_specs;

  auto* gain = app.add_subcommand("gain", "Closed-form gain table for both schedules (CSV on stdout)");
  gain->add_option("--N", n_atoms, "Number of atoms")->required();
  gain->add_option("--n-max", n_max, "Largest stage count")->capture_default_str();
  gain->add_option("--out", out_flag, "Also write gain.csv and manifest.json here");

  auto* simulate = app.add_subcommand("simulate", "Run one schedule; writes report.json, stages.csv, manifest.json");
  simulate->add_option("--config", config_path, "JSON config")->check(CLI::ExistingFile);
  simulate->add_option("--out", out_flag, "Output directory");
  simulate->add_option("--seed", seed, "Override the config seed");

  auto* sweep = app.add_subcommand("sweep", "Grid evaluation of the quality metrics; writes sweep.csv");
  sweep->add_option("--config", config_path, "JSON config template")->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis_specs, "name=v1,v2,... (p_w, p_r, beta, beta_w, beta_r, N, n, alpha)");
  sweep->add_option("--out", out_flag, "Output directory");
  sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  sweep->add_option("--seed", seed, "Override the config seed");

  auto* oracle = app.add_subcommand("oracle-check", "Brute-force check of the collective operators for N = 2..n-max");
  oracle->add_option("--n-max", n_max, "Largest ensemble (<= 14)")->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo sampling of herald outcomes; writes mc.json");
  mc->add_option("--config", config_path, "JSON config")->check(CLI::ExistingFile);
  mc->add_option("--trials", trials, "Number of trajectories")->capture_default_str();
  mc->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  mc->add_option("--seed", seed, "Override the config seed");
  mc->add_option("--out", out_flag, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (gain->parsed()) {
      const std::filesystem::path dir = out_flag;
      return cli::cmd_gain(n_atoms, n_max, out_flag.empty() ? nullptr : &dir, std::cout, std::cerr);
    }
    if (oracle->parsed()) return cli::cmd_oracle_check(n_max, std::cout, std::cerr);

    const dickeamp::ProtocolConfig config = load(config_path, seed);
    const auto out_dir = cli::resolve_out_dir(out_flag);
    if (simulate->parsed()) return cli::cmd_simulate(config, out_dir, std::cerr);
    if (sweep->parsed()) {
      std::vector<cli::SweepAxis> axes;
      for (const auto& s : axis_specs) axes.push_back(cli::parse_axis(s));
      return cli::cmd_sweep(config, axes, out_dir, jobs, std::cerr);
    }
    if (mc->parsed()) return cli::cmd_mc(config, trials, jobs, out_dir, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
  return cli::kExitUsage;
}
