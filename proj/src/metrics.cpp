// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/metrics.hpp"

#include <algorithm>
#include <string>

#include "dickeamp/errors.hpp"

namespace dickeamp {

namespace {

struct Overlaps {
  double matched = 0.0;   // sum_c |<target, da, db, c|psi>|^2
  double detected = 0.0;  // P(da, db)
  double atomic = 0.0;    // <target|Tr_photons|target>
};

// phi(n_a, n_b, n_c) = sum_k conj(t_k) psi(k, n_a, n_b, n_c) gives every
// overlap with the atomic target in one pass over the tensor.
Overlaps overlaps(const JointMixture& rho, const DickeVector& target, HeraldPattern pattern) {
  const double t_norm = target.norm_sq();
  if (t_norm == 0.0) throw DomainError("metric target is the zero vector");
  Overlaps acc;
  double trace = 0.0;
  for (const auto& [w, psi] : rho.terms) {
    if (psi.n_atoms() != target.n_atoms()) throw DomainError("metric target: atom counts differ");
    const auto& t = psi.truncation();
    if (pattern.detect_a < 0 || pattern.detect_a > t.fock_a_max || pattern.detect_b < 0 ||
        pattern.detect_b > t.fock_b_max) {
      throw DomainError("herald pattern outside the photon truncation");
    }
    const std::size_t block = psi.dim_a() * psi.dim_b() * psi.dim_c();
    const int k_top = std::min(t.atomic_k_max, target.k_max());
    std::vector<cplx> phi(block);
    const auto amps = psi.amplitudes();
    for (int k = 0; k <= k_top; ++k) {
      const cplx tk = std::conj(target[k]);
      if (tk == cplx{}) continue;
      const cplx* row = amps.data() + static_cast<std::size_t>(k) * block;
      for (std::size_t i = 0; i < block; ++i) phi[i] += tk * row[i];
    }
    double matched = 0.0;
    double atomic = 0.0;
    for (std::size_t i = 0; i < block; ++i) atomic += std::norm(phi[i]);
    for (int c = 0; c <= t.fock_c_max; ++c) {
      matched += std::norm(phi[psi.index(0, pattern.detect_a, pattern.detect_b, c)]);
    }
    acc.matched += w * matched / t_norm;
    acc.atomic += w * atomic / t_norm;
    acc.detected += w * OutcomeTable(psi).weight(pattern);
    trace += w * psi.norm_sq();
  }
  if (trace <= 0.0) throw UndefinedMetric("metric on a zero joint state");
  acc.matched /= trace;
  acc.atomic /= trace;
  acc.detected /= trace;
  return acc;
}

}  // namespace

bool probability_in_range(double p) {
  return std::isfinite(p) && p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack;
}

QualityReport make_quality_report(double p_suc, double p_mode, double p_spon, double p_amp,
                                  std::optional<double> gain, double fidelity) {
  QualityReport r;
  r.p_suc = p_suc;
  r.p_mode = p_mode;
  r.p_spon = p_spon;
  r.p_amp = p_amp;
  r.q_amp = quality(p_amp, p_spon, p_mode);
  r.gain = gain;
  r.fidelity = fidelity;
  r.valid = probability_in_range(p_suc) && probability_in_range(p_mode) &&
            probability_in_range(p_spon) && probability_in_range(p_amp) &&
            probability_in_range(r.q_amp) && probability_in_range(fidelity);
  return r;
}

double p_success_analytic(double p_w, double p_r) {
  if (!(p_w >= 0.0 && p_w <= 1.0 && p_r >= 0.0 && p_r <= 1.0)) {
    throw DomainError("p_success_analytic: probabilities must lie in [0, 1]");
  }
  return p_w * p_r / (1.0 + p_w + p_r + p_w * p_r);
}

double p_success_numeric(const ProtocolConfig& config) {
  config.validate();
  const auto atomic =
      weak_coherent_atomic_state(config.alpha, config.n_atoms, config.truncation.atomic_k_max);
  JointState psi = build_joint(atomic, config.truncation);
  psi = apply_write(psi, config.p_w, config.beta_w, config.order);
  psi = apply_read(psi, config.p_r, config.beta_r, config.order);
  const OutcomeTable table(psi);
  return table.weight(HeraldPattern{1, 1}) / table.total();
}

double p_mode(const JointMixture& rho_f, const DickeVector& target_atomic, HeraldPattern pattern) {
  const Overlaps o = overlaps(rho_f, target_atomic, pattern);
  if (o.detected == 0.0) throw UndefinedMetric("p_mode: detection pattern has zero probability");
  return 1.0 - o.matched / o.detected;
}

double p_spon(const JointMixture& rho_f, const DickeVector& target_atomic, HeraldPattern pattern) {
  const Overlaps o = overlaps(rho_f, target_atomic, pattern);
  if (o.atomic == 0.0) throw UndefinedMetric("p_spon: atomic target has zero probability");
  return 1.0 - o.matched / o.atomic;
}

double quality(double p_amp, double p_spon, double p_mode) {
  return p_amp * (1.0 - p_spon) * (1.0 - p_mode);
}

double p_amp(const DensityMatrix& rho_f, const DickeVector& target_atomic) {
  if (rho_f.n_atoms() != target_atomic.n_atoms()) throw DomainError("p_amp: atom counts differ");
  return rho_f.expectation(target_atomic);
}

}  // namespace dickeamp
