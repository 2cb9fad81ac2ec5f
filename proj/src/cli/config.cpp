// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dickeamp/cli/cli.hpp"

namespace dickeamp::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {"N",      "alpha",  "p_w", "p_r",   "beta_w",
                                        "beta_r", "schedule", "n", "order", "truncation",
                                        "target_gain", "seed"};
const std::set<std::string> kTruncKeys = {"fock_a_max", "fock_b_max", "fock_c_max",
                                          "atomic_k_max", "max_dimension"};

[[noreturn]] void invalid(const std::string& key, const std::string& detail) {
  throw ConfigError(ConfigErrorKind::InvalidValue, key, detail);
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) invalid(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(key, "must be finite");
  return v;
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) invalid(key, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000'000 || v > 1'000'000'000) invalid(key, "integer out of range");
  return static_cast<int>(v);
}

cplx get_alpha(const json& j) {
  if (j.is_number()) return {get_real(j, "alpha"), 0.0};
  if (j.is_array() && j.size() == 2) return {get_real(j[0], "alpha"), get_real(j[1], "alpha")};
  invalid("alpha", "expected a number or [re, im]");
}

template <typename Enum, std::size_t M>
Enum get_enum(const json& j, const std::string& key,
              const std::pair<std::string_view, Enum> (&names)[M]) {
  if (!j.is_string()) invalid(key, "expected a string");
  const auto s = j.get<std::string>();
  for (const auto& [name, value] : names) {
    if (s == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  invalid(key, "unknown value \"" + s + "\" (allowed: " + allowed + ")");
}

constexpr std::pair<std::string_view, Schedule> kSchedules[] = {{"TypeI", Schedule::TypeI},
                                                                {"TypeII", Schedule::TypeII}};
constexpr std::pair<std::string_view, EvolutionOrder> kOrders[] = {
    {"FirstOrder", EvolutionOrder::FirstOrder}, {"Exact", EvolutionOrder::Exact}};
constexpr std::pair<std::string_view, TargetGain> kTargets[] = {{"Exact", TargetGain::Exact},
                                                                {"LargeN", TargetGain::LargeN}};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(ConfigErrorKind::UnknownKey, prefix + key, "unknown key");
    }
  }
}

// Maps a library validation message onto the config key it concerns.
std::string key_for(const std::string& message) {
  static const std::pair<std::string_view, std::string_view> kMap[] = {
      {"fock_a_max", "truncation.fock_a_max"}, {"fock_b_max", "truncation.fock_b_max"},
      {"fock_c_max", "truncation.fock_c_max"}, {"atomic_k_max", "truncation.atomic_k_max"},
      {"dimension", "truncation.max_dimension"}, {"headroom", "n"},
      {"stages", "n"},        {"p_w", "p_w"},   {"p_r", "p_r"},
      {"beta_w", "beta_w"},   {"beta_r", "beta_r"},
      {"alpha", "alpha"},     {"N must", "N"}};
  for (const auto& [needle, key] : kMap) {
    if (message.find(needle) != std::string::npos) return std::string(key);
  }
  return "config";
}

}  // namespace

std::string_view config_error_tag(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::MissingFile: return "missing-file";
    case ConfigErrorKind::Syntax: return "syntax";
    case ConfigErrorKind::UnknownKey: return "unknown-key";
    case ConfigErrorKind::InvalidValue: return "invalid-value";
  }
  return "config";
}

ConfigError::ConfigError(ConfigErrorKind kind, std::string key, const std::string& detail)
    : Error("config error [" + std::string(config_error_tag(kind)) + "] " + key + ": " + detail),
      kind_(kind),
      key_(std::move(key)) {}

std::string_view schedule_name(Schedule s) { return s == Schedule::TypeI ? "TypeI" : "TypeII"; }

std::string_view order_name(EvolutionOrder o) {
  return o == EvolutionOrder::FirstOrder ? "FirstOrder" : "Exact";
}

std::string_view stage_kind_name(StageKind k) {
  switch (k) {
    case StageKind::WriteThenRead: return "WriteThenRead";
    case StageKind::WriteOnly: return "WriteOnly";
    case StageKind::ReadOnly: return "ReadOnly";
  }
  return "?";
}

ProtocolConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::Syntax, "config", e.what());
  }
  if (!doc.is_object()) throw ConfigError(ConfigErrorKind::Syntax, "config", "top level must be an object");
  reject_unknown(doc, kTopKeys, "");

  ProtocolConfig c;
  if (doc.contains("N")) c.n_atoms = get_int(doc["N"], "N");
  if (doc.contains("alpha")) c.alpha = get_alpha(doc["alpha"]);
  if (doc.contains("p_w")) c.p_w = get_real(doc["p_w"], "p_w");
  if (doc.contains("p_r")) c.p_r = get_real(doc["p_r"], "p_r");
  if (doc.contains("beta_w")) c.beta_w = get_real(doc["beta_w"], "beta_w");
  if (doc.contains("beta_r")) c.beta_r = get_real(doc["beta_r"], "beta_r");
  if (doc.contains("schedule")) c.schedule = get_enum(doc["schedule"], "schedule", kSchedules);
  if (doc.contains("n")) c.stages = get_int(doc["n"], "n");
  if (doc.contains("order")) c.order = get_enum(doc["order"], "order", kOrders);
  if (doc.contains("target_gain")) c.target_gain = get_enum(doc["target_gain"], "target_gain", kTargets);
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) invalid("seed", "expected a nonnegative 64-bit integer");
    c.rng_seed = s.get<std::uint64_t>();
  }
  if (c.n_atoms < 2) invalid("N", "must be >= 2");
  if (c.stages < 1) invalid("n", "must be >= 1");

  c.truncation = default_truncation(c.n_atoms, c.schedule, c.stages, c.order);
  if (doc.contains("truncation")) {
    const json& t = doc["truncation"];
    if (!t.is_object()) invalid("truncation", "expected an object");
    reject_unknown(t, kTruncKeys, "truncation.");
    if (t.contains("fock_a_max")) c.truncation.fock_a_max = get_int(t["fock_a_max"], "truncation.fock_a_max");
    if (t.contains("fock_b_max")) c.truncation.fock_b_max = get_int(t["fock_b_max"], "truncation.fock_b_max");
    if (t.contains("fock_c_max")) c.truncation.fock_c_max = get_int(t["fock_c_max"], "truncation.fock_c_max");
    if (t.contains("atomic_k_max")) {
      c.truncation.atomic_k_max = get_int(t["atomic_k_max"], "truncation.atomic_k_max");
    }
    if (t.contains("max_dimension")) {
      const json& m = t["max_dimension"];
      if (!m.is_number_unsigned()) invalid("truncation.max_dimension", "expected a positive integer");
      c.truncation.max_dimension = m.get<std::size_t>();
    }
  }

  try {
    c.validate();
  } catch (const ResourceGuard&) {
    throw;
  } catch (const DomainError& e) {
    invalid(key_for(e.what()), e.what());
  }
  return c;
}

ProtocolConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(ConfigErrorKind::MissingFile, path.string(), "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json config_to_json(const ProtocolConfig& c) {
  json j;
  j["N"] = c.n_atoms;
  j["alpha"] = json::array({c.alpha.real(), c.alpha.imag()});
  j["p_w"] = c.p_w;
  j["p_r"] = c.p_r;
  j["beta_w"] = c.beta_w;
  j["beta_r"] = c.beta_r;
  j["schedule"] = schedule_name(c.schedule);
  j["n"] = c.stages;
  j["order"] = order_name(c.order);
  j["target_gain"] = c.target_gain == TargetGain::Exact ? "Exact" : "LargeN";
  j["seed"] = c.rng_seed;
  j["truncation"] = {{"fock_a_max", c.truncation.fock_a_max},
                     {"fock_b_max", c.truncation.fock_b_max},
                     {"fock_c_max", c.truncation.fock_c_max},
                     {"atomic_k_max", c.truncation.atomic_k_max},
                     {"max_dimension", c.truncation.max_dimension}};
  return j;
}

}  // namespace dickeamp::cli
