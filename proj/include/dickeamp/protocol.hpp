// SPDX-License-Identifier: Apache-2.0
#pragma once

// Heralded amplification schedules built from write/read stages.

#include <cstdint>
#include <optional>
#include <vector>

#include "dickeamp/config.hpp"
#include "dickeamp/density.hpp"
#include "dickeamp/joint.hpp"
#include "dickeamp/metrics.hpp"

namespace dickeamp {

enum class StageKind { WriteThenRead, WriteOnly, ReadOnly };

/// Detection that counts as success: (1,1), (1,0) or (0,1).
HeraldPattern success_pattern(StageKind kind);

/// Stage kinds executed by a schedule. TypeI runs n WriteThenRead stages;
/// TypeII runs n WriteOnly then n ReadOnly stages, except at n = 1 where both
/// schedules are the same single WriteThenRead stage.
std::vector<StageKind> stage_sequence(Schedule schedule, int stages);

struct OutcomeProbability {
  HeraldPattern pattern;
  double probability;
};

struct StageReport {
  int index = 0;
  StageKind kind = StageKind::WriteThenRead;
  HeraldPattern pattern;
  double probability = 0.0;             // P(pattern) / total outcome weight
  double cumulative_probability = 0.0;  // product over stages so far
  bool success = false;
  std::optional<DensityMatrix> state;     // conditional atomic state, unit trace
  std::optional<DickeVector> pure_state;  // set when the conditional state is pure
  std::optional<double> gain;             // Re(rho_10 / (alpha rho_00)) so far
  /// Normalized distribution over every (n_a, n_b) the truncation holds,
  /// ordered by n_a then n_b.
  std::vector<OutcomeProbability> outcomes;
};

/// Stage report plus the joint state before detection, needed for the
/// loss metrics of the final stage.
struct StageEvolution {
  StageReport report;
  JointMixture joint;
};

StageEvolution evolve_stage(const DensityMatrix& state, const ProtocolConfig& config,
                            StageKind kind);

/// Fresh photon vacuum, evolution per `kind`, herald on success_pattern(kind).
/// A zero-probability herald yields success == false rather than throwing.
StageReport run_stage(const DickeVector& state, const ProtocolConfig& config, StageKind kind);
StageReport run_stage(const DensityMatrix& state, const ProtocolConfig& config, StageKind kind);

struct AmplificationReport {
  ProtocolConfig config;
  std::vector<StageReport> stages;
  bool success = false;
  int failed_stage = -1;  // index of the first zero-probability stage
  double success_probability = 0.0;
  std::optional<QualityReport> quality;
  std::optional<double> final_gain;  // c_1 / (alpha c_0), empty when alpha == 0
  double analytic_gain = 0.0;        // relative_gain(schedule, n, N)
  std::optional<double> discrepancy; // |final_gain - analytic_gain|
};

/// Post-selected pipeline on the configured weak coherent input.
AmplificationReport run_schedule(const ProtocolConfig& config);
/// Same pipeline on an arbitrary atomic input (normalized internally).
AmplificationReport run_schedule(const ProtocolConfig& config, const DickeVector& input);

struct OutcomeCount {
  HeraldPattern pattern;
  std::int64_t count = 0;
  double expected = 0.0;  // simulated probability
};

struct MCReport {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double success_frequency = 0.0;
  double expected_probability = 0.0;  // product of stage probabilities
  double standard_error = 0.0;        // binomial, at the expected probability
  double ci_low = 0.0;                // Wilson 95% interval
  double ci_high = 0.0;
  std::optional<double> mean_gain;    // over successful trials
  std::vector<std::int64_t> failures_by_stage;
  std::vector<OutcomeCount> first_stage;
  double chi_square = 0.0;  // first-stage outcomes vs simulated probabilities
  int chi_square_dof = 0;
  double chi_square_p_value = 1.0;
};

/// Trials run in chunks with per-chunk seeds derived from config.rng_seed, so
/// the report does not depend on `jobs`.
MCReport monte_carlo(const ProtocolConfig& config, std::int64_t trials, int jobs = 1);

}  // namespace dickeamp
