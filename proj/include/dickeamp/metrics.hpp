// SPDX-License-Identifier: Apache-2.0
#pragma once

// Amplifier figures of merit. rho_f is the joint state after the final
// stage's evolution (before detection); the amplified target is the atomic
// target (x) the detection pattern, with the undetected mode traced.

#include <optional>

#include "dickeamp/config.hpp"
#include "dickeamp/density.hpp"
#include "dickeamp/joint.hpp"

namespace dickeamp {

/// Slack allowed outside [0, 1] before a probability is declared invalid.
inline constexpr double kProbabilitySlack = 1e-10;

bool probability_in_range(double p);

struct QualityReport {
  double p_suc = 0.0;
  double p_mode = 0.0;
  double p_spon = 0.0;
  double p_amp = 0.0;
  double q_amp = 0.0;
  std::optional<double> gain;  // empty when alpha == 0
  double fidelity = 0.0;
  bool valid = true;  // every probability within kProbabilitySlack of [0, 1]
};

/// Builds the report with q_amp = p_amp (1 - p_spon)(1 - p_mode) and sets
/// `valid`. Values are never clamped.
QualityReport make_quality_report(double p_suc, double p_mode, double p_spon, double p_amp,
                                  std::optional<double> gain, double fidelity);

/// p_w p_r / (1 + p_w + p_r + p_w p_r): pair-detection probability to second
/// order in the couplings.
double p_success_analytic(double p_w, double p_r);

/// Probability of the (1,1) detection in one simulated write+read stage on
/// the configured weak coherent input, divided by the total outcome weight.
double p_success_numeric(const ProtocolConfig& config);

/// 1 - <Psi_amp|rho_f|Psi_amp> / P(detect pattern). Throws UndefinedMetric
/// when the pattern has zero probability.
double p_mode(const JointMixture& rho_f, const DickeVector& target_atomic, HeraldPattern pattern);

/// 1 - <Psi_amp|rho_f|Psi_amp> / <target|Tr_photons rho_f|target>. Throws
/// UndefinedMetric when the atomic target has zero weight.
double p_spon(const JointMixture& rho_f, const DickeVector& target_atomic, HeraldPattern pattern);

double quality(double p_amp, double p_spon, double p_mode);

/// <target|rho_f|target> for an atomic density matrix and a target vector.
double p_amp(const DensityMatrix& rho_f, const DickeVector& target_atomic);

}  // namespace dickeamp
