// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "dickeamp/dicke.hpp"
#include "dickeamp/joint.hpp"

namespace dickeamp {

/// Which gain defines the amplified target |G> + g alpha |S>.
enum class TargetGain {
  Exact,   // g = relative_gain(schedule, n, N), finite-N closed form
  LargeN,  // g = 2^n (TypeI) or n + 1 (TypeII), the N >> 1 limit
};

struct ProtocolConfig {
  int n_atoms = 100;
  cplx alpha{0.1, 0.0};
  double p_w = 0.01;
  double p_r = 0.01;
  double beta_w = 1.0;
  double beta_r = 1.0;
  Schedule schedule = Schedule::TypeI;
  int stages = 1;
  EvolutionOrder order = EvolutionOrder::FirstOrder;
  ModeTruncation truncation = ModeTruncation::defaults(100);
  TargetGain target_gain = TargetGain::Exact;
  std::uint64_t rng_seed = 0;

  /// Throws DomainError (or ResourceGuard for the dimension cap) naming the
  /// offending field.
  void validate() const;
};

/// Default truncation for a run. FirstOrder: Fock cutoffs 3/3/2 and
/// atomic_k_max = min(N, 8), raised to n + 4 for long TypeII schedules so the
/// repeated writes keep headroom. Exact: Fock cutoffs 6/6/6 and
/// atomic_k_max = min(N, max(8, required_k_max + 7)), which keeps the leakage
/// guard quiet for couplings up to about 1e-2.
ModeTruncation default_truncation(int n_atoms, Schedule schedule, int stages,
                                  EvolutionOrder order = EvolutionOrder::FirstOrder);

/// Highest excitation number a noiseless run of the schedule reaches.
int required_k_max(Schedule schedule, int stages);

/// g in |G> + g alpha |S> for the configured convention.
double target_gain_value(const ProtocolConfig& config);

/// Normalized amplified target |G> + g alpha |S>.
DickeVector amplified_target(const ProtocolConfig& config);

}  // namespace dickeamp
