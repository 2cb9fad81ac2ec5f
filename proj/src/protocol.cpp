// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/protocol.hpp"

#include <cmath>
#include <utility>

#include "dickeamp/errors.hpp"

namespace dickeamp {

namespace {

using Components = std::vector<std::pair<double, DickeVector>>;

bool has_write(StageKind kind) { return kind != StageKind::ReadOnly; }
bool has_read(StageKind kind) { return kind != StageKind::WriteOnly; }

Components components_of(const DensityMatrix& rho) {
  if (auto pure = rho.pure_state()) return {{1.0, std::move(*pure)}};
  Components out;
  for (auto& c : rho.components()) out.emplace_back(c.weight, std::move(c.vector));
  return out;
}

std::optional<double> gain_of(const DensityMatrix& rho, cplx alpha) {
  if (alpha == cplx{} || rho.k_max() < 1 || rho(0, 0) == cplx{}) return std::nullopt;
  return (rho(1, 0) / (alpha * rho(0, 0))).real();
}

StageEvolution evolve(const Components& input, const ProtocolConfig& config, StageKind kind) {
  const ModeTruncation& trunc = config.truncation;
  const HeraldPattern pattern = success_pattern(kind);
  const int n_atoms = input.front().second.n_atoms();

  StageEvolution out;
  StageReport& report = out.report;
  report.kind = kind;
  report.pattern = pattern;

  std::vector<double> weights(static_cast<std::size_t>((trunc.fock_a_max + 1) * (trunc.fock_b_max + 1)));
  double total = 0.0;
  double detected = 0.0;
  DensityMatrix conditional = DensityMatrix::zero(n_atoms, trunc.atomic_k_max);
  std::optional<DickeVector> pure;

  for (const auto& [w, vec] : input) {
    // Leakage is judged on the mixture, so light components get a looser bound.
    const double tol = kLeakageTol / w;
    JointState psi = build_joint(vec, trunc);
    if (has_write(kind)) psi = apply_write(psi, config.p_w, config.beta_w, config.order, tol);
    if (has_read(kind)) psi = apply_read(psi, config.p_r, config.beta_r, config.order, tol);

    const OutcomeTable table(psi);
    total += w * table.total();
    std::size_t slot = 0;
    for (int na = 0; na <= trunc.fock_a_max; ++na) {
      for (int nb = 0; nb <= trunc.fock_b_max; ++nb) weights[slot++] += w * table.weight({na, nb});
    }
    const ConditionalDensity cd = reduced_conditional_density(psi, pattern);
    if (cd.probability > 0.0) {
      detected += w * cd.probability;
      DensityMatrix scaled(n_atoms, cd.rho.matrix() * (w * cd.probability));
      conditional += scaled;
      if (input.size() == 1) {
        try {
          pure = herald(psi, pattern).atomic;
        } catch (const MixedStateError&) {
        }
      }
    }
    out.joint.terms.emplace_back(w, std::move(psi));
  }

  if (total <= 0.0) throw DomainError("stage evolution produced a zero state");
  std::size_t slot = 0;
  for (int na = 0; na <= trunc.fock_a_max; ++na) {
    for (int nb = 0; nb <= trunc.fock_b_max; ++nb) {
      report.outcomes.push_back({{na, nb}, weights[slot++] / total});
    }
  }
  report.probability = detected / total;
  report.cumulative_probability = report.probability;
  report.success = detected > 0.0;
  if (report.success) {
    report.state = conditional.normalized();
    report.pure_state = pure ? std::move(pure) : report.state->pure_state();
    report.gain = gain_of(*report.state, config.alpha);
  }
  return out;
}

}  // namespace

HeraldPattern success_pattern(StageKind kind) {
  switch (kind) {
    case StageKind::WriteThenRead: return {1, 1};
    case StageKind::WriteOnly: return {1, 0};
    case StageKind::ReadOnly: return {0, 1};
  }
  throw DomainError("unknown stage kind");
}

std::vector<StageKind> stage_sequence(Schedule schedule, int stages) {
  if (stages < 1) throw DomainError("stage count must be >= 1");
  if (schedule == Schedule::TypeI || stages == 1) {
    return std::vector<StageKind>(static_cast<std::size_t>(stages), StageKind::WriteThenRead);
  }
  std::vector<StageKind> seq(static_cast<std::size_t>(stages), StageKind::WriteOnly);
  seq.insert(seq.end(), static_cast<std::size_t>(stages), StageKind::ReadOnly);
  return seq;
}

StageEvolution evolve_stage(const DensityMatrix& state, const ProtocolConfig& config,
                            StageKind kind) {
  config.validate();
  if (state.n_atoms() != config.n_atoms) throw DomainError("stage input: atom count differs from config");
  return evolve(components_of(state.normalized()), config, kind);
}

StageReport run_stage(const DickeVector& state, const ProtocolConfig& config, StageKind kind) {
  config.validate();
  if (state.n_atoms() != config.n_atoms) throw DomainError("stage input: atom count differs from config");
  return evolve({{1.0, state.normalized()}}, config, kind).report;
}

StageReport run_stage(const DensityMatrix& state, const ProtocolConfig& config, StageKind kind) {
  return evolve_stage(state, config, kind).report;
}

AmplificationReport run_schedule(const ProtocolConfig& config) {
  config.validate();
  return run_schedule(config, weak_coherent_atomic_state(config.alpha, config.n_atoms, 1));
}

AmplificationReport run_schedule(const ProtocolConfig& config, const DickeVector& input) {
  config.validate();
  if (input.n_atoms() != config.n_atoms) throw DomainError("schedule input: atom count differs from config");

  AmplificationReport report;
  report.config = config;
  report.analytic_gain = relative_gain(config.schedule, config.stages, config.n_atoms);

  Components current{{1.0, input.normalized()}};
  double cumulative = 1.0;
  std::optional<JointMixture> last_joint;
  const auto kinds = stage_sequence(config.schedule, config.stages);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    StageEvolution step = evolve(current, config, kinds[i]);
    cumulative *= step.report.probability;
    step.report.index = static_cast<int>(i);
    step.report.cumulative_probability = cumulative;
    const bool ok = step.report.success;
    if (ok) {
      if (step.report.pure_state) {
        current = {{1.0, *step.report.pure_state}};
      } else {
        current = components_of(*step.report.state);
      }
      last_joint = std::move(step.joint);
    }
    report.stages.push_back(std::move(step.report));
    if (!ok) {
      report.failed_stage = static_cast<int>(i);
      break;
    }
  }
  report.success_probability = cumulative;
  report.success = report.failed_stage < 0;
  if (!report.success) return report;

  const StageReport& final_stage = report.stages.back();
  report.final_gain = final_stage.gain;
  if (report.final_gain) report.discrepancy = std::abs(*report.final_gain - report.analytic_gain);

  const DickeVector target = amplified_target(config);
  try {
    const double mode = p_mode(*last_joint, target, final_stage.pattern);
    const double spon = p_spon(*last_joint, target, final_stage.pattern);
    const double amp = p_amp(*final_stage.state, target);
    report.quality = make_quality_report(cumulative, mode, spon, amp, report.final_gain, 1.0 - mode);
  } catch (const UndefinedMetric&) {
    // Inputs orthogonal to the amplified target have no loss metrics.
  }
  return report;
}

}  // namespace dickeamp
