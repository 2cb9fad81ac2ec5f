// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include "dickeamp/cli/cli.hpp"
#include "dickeamp/format.hpp"

namespace dickeamp::cli {

using nlohmann::json;

namespace {

const char* const kAxisNames[] = {"p_w", "p_r", "beta", "beta_w", "beta_r", "N", "n", "alpha"};

int integer_axis_value(const std::string& name, double v) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(ConfigErrorKind::InvalidValue, "axis " + name, "expects integer values");
  }
  return static_cast<int>(v);
}

std::string sweep_row(const ProtocolConfig& c, const std::string& status,
                      const AmplificationReport* r) {
  std::string row = std::to_string(c.n_atoms) + "," + std::to_string(c.stages) + "," +
                    std::string(schedule_name(c.schedule)) + "," + std::string(order_name(c.order)) +
                    "," + format_double(c.p_w) + "," + format_double(c.p_r) + "," +
                    format_double(c.beta_w) + "," + format_double(c.beta_r) + "," +
                    format_double(c.alpha.real()) + "," + format_double(c.alpha.imag()) + "," + status;
  if (r == nullptr) return row + ",,,,,,,,,,\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::optional<double> gain_sq;
  if (r->final_gain) gain_sq = *r->final_gain * *r->final_gain;
  row += "," + format_double(r->success_probability);
  if (r->quality) {
    const QualityReport& q = *r->quality;
    row += "," + format_double(q.p_mode) + "," + format_double(q.p_spon) + "," + format_double(q.p_amp) +
           "," + format_double(q.q_amp) + "," + format_double(q.fidelity);
  } else {
    row += ",,,,,";
  }
  row += "," + opt(r->final_gain) + "," + opt(gain_sq) + "," + format_double(r->analytic_gain) + "," +
         (r->quality ? (r->quality->valid ? "1" : "0") : "");
  return row + "\n";
}

std::string evaluate_point(const ProtocolConfig& c) {
  try {
    c.validate();
    const AmplificationReport r = run_schedule(c);
    return sweep_row(c, r.success ? "ok" : "failed", &r);
  } catch (const ResourceGuard&) {
    return sweep_row(c, "resource", nullptr);
  } catch (const TruncationOverflow&) {
    return sweep_row(c, "truncation", nullptr);
  } catch (const TruncationLeakage&) {
    return sweep_row(c, "truncation", nullptr);
  } catch (const DomainError&) {
    return sweep_row(c, "invalid", nullptr);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

SweepAxis parse_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(ConfigErrorKind::Syntax, std::string(spec), "axis must look like name=v1,v2");
  }
  SweepAxis axis{std::string(spec.substr(0, eq)), {}};
  bool known = false;
  for (const char* n : kAxisNames) known = known || axis.name == n;
  if (!known) throw ConfigError(ConfigErrorKind::UnknownKey, "axis " + axis.name, "unknown sweep axis");
  std::string_view rest = spec.substr(eq + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw ConfigError(ConfigErrorKind::InvalidValue, "axis " + axis.name,
                        "cannot parse \"" + std::string(item) + "\"");
    }
    axis.values.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return axis;
}

ProtocolConfig apply_axes(const ProtocolConfig& base, const std::vector<SweepAxis>& axes,
                          const std::vector<std::size_t>& index) {
  ProtocolConfig c = base;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string& name = axes[i].name;
    const double v = axes[i].values.at(index[i]);
    if (name == "p_w") c.p_w = v;
    else if (name == "p_r") c.p_r = v;
    else if (name == "beta") c.beta_w = c.beta_r = v;
    else if (name == "beta_w") c.beta_w = v;
    else if (name == "beta_r") c.beta_r = v;
    else if (name == "alpha") c.alpha = v;
    else if (name == "N") c.n_atoms = integer_axis_value(name, v);
    else if (name == "n") c.stages = integer_axis_value(name, v);
  }
  if (c.n_atoms >= 1 && c.stages >= 1) {
    const int wanted = default_truncation(c.n_atoms, c.schedule, c.stages, c.order).atomic_k_max;
    c.truncation.atomic_k_max = std::min(c.n_atoms, std::max(c.truncation.atomic_k_max, wanted));
  }
  return c;
}

std::string sweep_csv_header() {
  return "N,n,schedule,order,p_w,p_r,beta_w,beta_r,alpha_re,alpha_im,status,success_probability,"
         "p_mode,p_spon,p_amp,q_amp,fidelity,gain,gain_squared,analytic_gain,valid\n";
}

int cmd_gain(int n_atoms, int n_max, const std::filesystem::path* out_dir, std::ostream& out,
             std::ostream& log) {
  const std::string csv = gain_table_csv(n_atoms, n_max);
  out << csv;
  if (out_dir != nullptr) {
    write_file(*out_dir / "gain.csv", csv);
    RunManifest m{{{"N", n_atoms}, {"n_max", n_max}}, "gain", 0, {"gain.csv"}};
    write_file(*out_dir / "manifest.json", dump(manifest_json(m)));
    log << "wrote " << (*out_dir / "gain.csv").string() << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const ProtocolConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log) {
  const AmplificationReport report = run_schedule(config);
  write_file(out_dir / "report.json", dump(report_to_json(report)));
  write_file(out_dir / "stages.csv", stages_csv(report));
  RunManifest m{config_to_json(config), "simulate", config.rng_seed, {"report.json", "stages.csv"}};
  write_file(out_dir / "manifest.json", dump(manifest_json(m)));
  if (!report.success) {
    log << "protocol failure: stage " << report.failed_stage << " heralds with probability 0\n";
    return kExitProtocolFailure;
  }
  log << "success probability " << format_double(report.success_probability);
  if (report.final_gain) log << ", gain " << format_double(*report.final_gain);
  log << " (analytic " << format_double(report.analytic_gain) << ")\n";
  return kExitOk;
}

int cmd_sweep(const ProtocolConfig& base, const std::vector<SweepAxis>& axes,
              const std::filesystem::path& out_dir, int jobs, std::ostream& log) {
  if (jobs < 1) throw DomainError("--jobs must be >= 1");
  std::size_t points = 1;
  for (const SweepAxis& a : axes) {
    if (a.values.empty()) throw ResourceGuard("sweep axis " + a.name + " is empty");
    if (points > kMaxGridPoints / a.values.size()) {
      throw ResourceGuard("sweep grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
    points *= a.values.size();
  }

  // Row i decodes to axis indices with the first axis varying slowest.
  std::vector<std::string> rows(points);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::size_t> index(axes.size());
    for (std::size_t i = next++; i < points; i = next++) {
      std::size_t rem = i;
      for (std::size_t a = axes.size(); a-- > 0;) {
        index[a] = rem % axes[a].values.size();
        rem /= axes[a].values.size();
      }
      rows[i] = evaluate_point(apply_axes(base, axes, index));
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), points);
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::string csv = sweep_csv_header();
  for (const std::string& r : rows) csv += r;
  write_file(out_dir / "sweep.csv", csv);
  json axes_json = json::array();
  for (const SweepAxis& a : axes) axes_json.push_back({{"name", a.name}, {"values", a.values}});
  json config = config_to_json(base);
  config["axes"] = std::move(axes_json);
  RunManifest m{std::move(config), "sweep", base.rng_seed, {"sweep.csv"}};
  write_file(out_dir / "manifest.json", dump(manifest_json(m)));
  log << "wrote " << points << " grid points to " << (out_dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

int cmd_oracle_check(int n_max, std::ostream& out, std::ostream& log) {
  if (n_max > oracle::kMaxAtoms) {
    throw ResourceGuard("oracle check limited to N <= " + std::to_string(oracle::kMaxAtoms));
  }
  if (n_max < 2) throw DomainError("oracle check needs N_max >= 2");
  std::vector<oracle::VerificationReport> reports;
  bool pass = true;
  for (int n = 2; n <= n_max; ++n) {
    reports.push_back(oracle::verify_ladder(n));
    pass = pass && reports.back().pass;
  }
  out << oracle_csv(reports);
  log << (pass ? "oracle check passed\n" : "oracle check FAILED\n");
  return pass ? kExitOk : kExitProtocolFailure;
}

int cmd_mc(const ProtocolConfig& config, std::int64_t trials, int jobs,
           const std::filesystem::path& out_dir, std::ostream& log) {
  const MCReport r = monte_carlo(config, trials, jobs);
  write_file(out_dir / "mc.json", dump(mc_to_json(r)));
  json echo = config_to_json(config);
  echo["trials"] = trials;
  RunManifest m{std::move(echo), "mc", config.rng_seed, {"mc.json"}};
  write_file(out_dir / "manifest.json", dump(manifest_json(m)));
  log << r.successes << "/" << r.trials << " successes, frequency " << format_double(r.success_frequency)
      << " (expected " << format_double(r.expected_probability) << ")\n";
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ResourceGuard*>(&e) != nullptr ||
      dynamic_cast<const TruncationOverflow*>(&e) != nullptr ||
      dynamic_cast<const TruncationLeakage*>(&e) != nullptr) {
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace dickeamp::cli
