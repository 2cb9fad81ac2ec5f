// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dickeamp/errors.hpp"

namespace dickeamp {

namespace {

void require_probability(double p, const char* name) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void require_overlap(double beta, const char* name) {
  if (!std::isfinite(beta) || beta <= 0.0 || beta > 1.0) {
    throw DomainError(std::string(name) + " must lie in (0, 1], got " + std::to_string(beta));
  }
}

}  // namespace

int required_k_max(Schedule schedule, int stages) {
  // TypeI never holds more than one excitation between stages; the write half
  // of a stage adds one more. TypeII accumulates n writes on top of |S>.
  return schedule == Schedule::TypeI ? 2 : stages + 1;
}

ModeTruncation default_truncation(int n_atoms, Schedule schedule, int stages, EvolutionOrder order) {
  ModeTruncation t = ModeTruncation::defaults(n_atoms);
  if (order == EvolutionOrder::Exact) {
    t.fock_a_max = t.fock_b_max = t.fock_c_max = 6;
    t.atomic_k_max = std::min(n_atoms, std::max(t.atomic_k_max, required_k_max(schedule, stages) + 7));
  } else if (schedule == Schedule::TypeII) {
    t.atomic_k_max = std::min(n_atoms, std::max(t.atomic_k_max, stages + 4));
  }
  return t;
}

void ProtocolConfig::validate() const {
  if (n_atoms < 2) throw DomainError("N must be >= 2");
  if (stages < 1) throw DomainError("n (stages) must be >= 1");
  if (stages + 1 > n_atoms) {
    throw DomainError("headroom violation: n + 1 = " + std::to_string(stages + 1) + " exceeds N = " +
                      std::to_string(n_atoms));
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("alpha must be finite");
  }
  require_probability(p_w, "p_w");
  require_probability(p_r, "p_r");
  require_overlap(beta_w, "beta_w");
  require_overlap(beta_r, "beta_r");
  truncation.validate(n_atoms);
  if (truncation.fock_c_max == 0 && (beta_w != 1.0 || beta_r != 1.0)) {
    throw DomainError("fock_c_max = 0 requires beta_w = beta_r = 1");
  }
  const int need = std::min(n_atoms, required_k_max(schedule, stages));
  if (truncation.atomic_k_max < need) {
    throw DomainError("atomic_k_max = " + std::to_string(truncation.atomic_k_max) +
                      " is below the " + std::to_string(need) + " excitations the schedule reaches");
  }
}

double target_gain_value(const ProtocolConfig& config) {
  if (config.target_gain == TargetGain::Exact) {
    return relative_gain(config.schedule, config.stages, config.n_atoms);
  }
  if (config.schedule == Schedule::TypeI) return std::pow(2.0, config.stages);
  return config.stages + 1.0;
}

DickeVector amplified_target(const ProtocolConfig& config) {
  DickeVector v(config.n_atoms, 1);
  v.set(0, 1.0);
  v.set(1, target_gain_value(config) * config.alpha);
  return v.normalized();
}

}  // namespace dickeamp
