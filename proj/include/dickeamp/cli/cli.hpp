// SPDX-License-Identifier: Apache-2.0
#pragma once

// Front-end plumbing shared by the dickeamp tool and its tests: config
// parsing, report serialization and the subcommand bodies.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "dickeamp/errors.hpp"
#include "dickeamp/oracle.hpp"
#include "dickeamp/protocol.hpp"

namespace dickeamp::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,            // bad flags or config
  kExitProtocolFailure = 2,  // zero-probability herald, failed oracle check
  kExitResource = 3,         // resource, truncation or grid guard
};

enum class ConfigErrorKind { MissingFile, Syntax, UnknownKey, InvalidValue };

std::string_view config_error_tag(ConfigErrorKind kind);

/// Config problem; the message names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(ConfigErrorKind kind, std::string key, const std::string& detail);
  ConfigErrorKind kind() const { return kind_; }
  const std::string& key() const { return key_; }

 private:
  ConfigErrorKind kind_;
  std::string key_;
};

/// Reads and validates a JSON config. Unset keys take ProtocolConfig
/// defaults; the truncation defaults follow default_truncation(N, schedule, n, order)
/// and individual truncation keys override them.
ProtocolConfig parse_config(const std::filesystem::path& path);
ProtocolConfig parse_config_text(std::string_view text);

nlohmann::json config_to_json(const ProtocolConfig& config);

std::string_view schedule_name(Schedule s);
std::string_view order_name(EvolutionOrder o);
std::string_view stage_kind_name(StageKind k);

// Serialization. Numbers use the shortest round-trip decimal form.
std::string gain_table_csv(int n_atoms, int n_max);
nlohmann::json report_to_json(const AmplificationReport& report);
std::string stages_csv(const AmplificationReport& report);
nlohmann::json mc_to_json(const MCReport& report);
std::string oracle_csv(const std::vector<oracle::VerificationReport>& reports);

struct RunManifest {
  nlohmann::json config;
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

/// Manifest with tool version and UTC timestamp; the only output that is not
/// reproducible byte-for-byte.
nlohmann::json manifest_json(const RunManifest& manifest);

/// Writes `content` to `path` with LF line endings, creating parent dirs.
void write_file(const std::filesystem::path& path, std::string_view content);

/// --out when given, else $DICKEAMP_OUT_DIR, else ./dickeamp-out.
std::filesystem::path resolve_out_dir(const std::string& flag_value);

// Sweeps.
inline constexpr std::size_t kMaxGridPoints = 1'000'000;

struct SweepAxis {
  std::string name;  // p_w, p_r, beta, beta_w, beta_r, N, n, alpha
  std::vector<double> values;
};

/// "name=v1,v2,..." as given on the command line.
SweepAxis parse_axis(std::string_view spec);

/// Config for one grid point; atomic_k_max is raised to the default for the
/// point's N and n when the template's is smaller.
ProtocolConfig apply_axes(const ProtocolConfig& base, const std::vector<SweepAxis>& axes,
                          const std::vector<std::size_t>& index);

std::string sweep_csv_header();

// Subcommands. Each returns an exit code and writes human-readable
// diagnostics to `log`.
int cmd_gain(int n_atoms, int n_max, const std::filesystem::path* out_dir, std::ostream& out,
             std::ostream& log);
int cmd_simulate(const ProtocolConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log);
int cmd_sweep(const ProtocolConfig& base, const std::vector<SweepAxis>& axes,
              const std::filesystem::path& out_dir, int jobs, std::ostream& log);
int cmd_oracle_check(int n_max, std::ostream& out, std::ostream& log);
int cmd_mc(const ProtocolConfig& config, std::int64_t trials, int jobs,
           const std::filesystem::path& out_dir, std::ostream& log);

/// Maps a library exception to its exit code.
int exit_code_for(const std::exception& e);

}  // namespace dickeamp::cli
