// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "dickeamp/cli/cli.hpp"
#include "dickeamp/format.hpp"

#ifndef DICKEAMP_VERSION
#define DICKEAMP_VERSION "0.0.0"
#endif

namespace dickeamp::cli {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

json density_json(const DensityMatrix& rho) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i <= rho.k_max(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (int j = 0; j <= rho.k_max(); ++j) {
      re_row.push_back(rho(i, j).real());
      im_row.push_back(rho(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"k_max", rho.k_max()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json quality_json(const QualityReport& q) {
  return {{"p_suc", q.p_suc},     {"p_mode", q.p_mode},
          {"p_spon", q.p_spon},   {"p_amp", q.p_amp},
          {"q_amp", q.q_amp},     {"gain", optional_number(q.gain)},
          {"fidelity", q.fidelity}, {"valid", q.valid}};
}

}  // namespace

std::string gain_table_csv(int n_atoms, int n_max) {
  if (n_max < 0) throw DomainError("gain table: n_max must be >= 0");
  if (n_atoms < n_max + 2) {
    throw DomainError("headroom violation: gain table needs N >= n_max + 2 (N = " +
                      std::to_string(n_atoms) + ", n_max = " + std::to_string(n_max) + ")");
  }
  std::string out = "n,gain_type1,gain_type2\n";
  for (int n = 0; n <= n_max; ++n) {
    out += std::to_string(n) + "," + format_double(relative_gain(Schedule::TypeI, n, n_atoms)) + "," +
           format_double(relative_gain(Schedule::TypeII, n, n_atoms)) + "\n";
  }
  return out;
}

json report_to_json(const AmplificationReport& r) {
  json stages = json::array();
  for (const StageReport& s : r.stages) {
    json outcomes = json::array();
    for (const auto& o : s.outcomes) {
      outcomes.push_back({{"detect_a", o.pattern.detect_a},
                          {"detect_b", o.pattern.detect_b},
                          {"probability", o.probability}});
    }
    stages.push_back({{"index", s.index},
                      {"kind", stage_kind_name(s.kind)},
                      {"detect_a", s.pattern.detect_a},
                      {"detect_b", s.pattern.detect_b},
                      {"probability", s.probability},
                      {"cumulative_probability", s.cumulative_probability},
                      {"success", s.success},
                      {"gain", optional_number(s.gain)},
                      {"state", s.state ? density_json(*s.state) : json(nullptr)},
                      {"outcomes", std::move(outcomes)}});
  }
  std::optional<double> gain_sq;
  if (r.final_gain) gain_sq = *r.final_gain * *r.final_gain;
  return {{"config", config_to_json(r.config)},
          {"success", r.success},
          {"failed_stage", r.failed_stage >= 0 ? json(r.failed_stage) : json(nullptr)},
          {"success_probability", r.success_probability},
          {"final_gain", optional_number(r.final_gain)},
          {"final_gain_squared", optional_number(gain_sq)},
          {"analytic_gain", r.analytic_gain},
          {"discrepancy", optional_number(r.discrepancy)},
          {"quality", r.quality ? quality_json(*r.quality) : json(nullptr)},
          {"stages", std::move(stages)}};
}

std::string stages_csv(const AmplificationReport& r) {
  std::string out =
      "stage,kind,detect_a,detect_b,probability,cumulative_probability,success,gain,gain_squared,"
      "rho_00,rho_11,rho_10_re,rho_10_im\n";
  for (const StageReport& s : r.stages) {
    std::optional<double> gain_sq;
    if (s.gain) gain_sq = *s.gain * *s.gain;
    out += std::to_string(s.index) + "," + std::string(stage_kind_name(s.kind)) + "," +
           std::to_string(s.pattern.detect_a) + "," + std::to_string(s.pattern.detect_b) + "," +
           format_double(s.probability) + "," + format_double(s.cumulative_probability) + "," +
           (s.success ? "1" : "0") + "," + csv_optional(s.gain) + "," + csv_optional(gain_sq);
    if (s.state) {
      const DensityMatrix& rho = *s.state;
      out += "," + format_double(rho(0, 0).real()) + "," + format_double(rho(1, 1).real()) + "," +
             format_double(rho(1, 0).real()) + "," + format_double(rho(1, 0).imag());
    } else {
      out += ",,,,";
    }
    out += "\n";
  }
  return out;
}

json mc_to_json(const MCReport& r) {
  json first = json::array();
  for (const auto& o : r.first_stage) {
    first.push_back({{"detect_a", o.pattern.detect_a},
                     {"detect_b", o.pattern.detect_b},
                     {"count", o.count},
                     {"expected_probability", o.expected}});
  }
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"successes", r.successes},
          {"success_frequency", r.success_frequency},
          {"expected_probability", r.expected_probability},
          {"standard_error", r.standard_error},
          {"ci95", json::array({r.ci_low, r.ci_high})},
          {"mean_gain", optional_number(r.mean_gain)},
          {"failures_by_stage", r.failures_by_stage},
          {"first_stage_outcomes", std::move(first)},
          {"chi_square", r.chi_square},
          {"chi_square_dof", r.chi_square_dof},
          {"chi_square_p_value", r.chi_square_p_value}};
}

std::string oracle_csv(const std::vector<oracle::VerificationReport>& reports) {
  std::string out = "N,max_deviation,max_residual,pass\n";
  for (const auto& r : reports) {
    out += std::to_string(r.n_atoms) + "," + format_double(r.max_deviation) + "," +
           format_double(r.max_residual) + "," + (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

json manifest_json(const RunManifest& m) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"tool", "dickeamp"},
          {"version", DICKEAMP_VERSION},
          {"command", m.command},
          {"seed", m.seed},
          {"timestamp", stamp},
          {"config", m.config},
          {"outputs", m.outputs}};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("DICKEAMP_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "dickeamp-out";
}

}  // namespace dickeamp::cli
