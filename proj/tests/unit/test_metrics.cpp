// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "dickeamp/errors.hpp"
#include "dickeamp/metrics.hpp"
#include "dickeamp/protocol.hpp"

using namespace dickeamp;

namespace {

// Reference values come from tests/oracles/joint_oracle.py, which builds the
// dense Kronecker operators and uses scipy's expm.
void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << "got " << got << " want " << want;
}

ProtocolConfig single_stage(int n_atoms, double alpha, double p, double beta, EvolutionOrder order) {
  ProtocolConfig c;
  c.n_atoms = n_atoms;
  c.alpha = alpha;
  c.p_w = c.p_r = p;
  c.beta_w = c.beta_r = beta;
  c.order = order;
  c.truncation = default_truncation(n_atoms, Schedule::TypeI, 1);
  return c;
}

ModeTruncation wide() {
  ModeTruncation t;
  t.atomic_k_max = 8;
  t.fock_a_max = t.fock_b_max = t.fock_c_max = 4;
  return t;
}

}  // namespace

TEST(SuccessAnalytic, Examples) {
  EXPECT_EQ(p_success_analytic(0.0, 0.5), 0.0);
  EXPECT_NEAR(p_success_analytic(0.01, 0.01), 9.802960494069209e-05, 1e-18);
  EXPECT_NEAR(p_success_analytic(0.1, 0.05), 0.005 / 1.155, 1e-15);
  EXPECT_THROW(p_success_analytic(1.5, 0.1), DomainError);
}

TEST(SuccessNumeric, FrozenValues) {
  auto c = single_stage(100, 0.0, 1e-3, 1.0, EvolutionOrder::FirstOrder);
  expect_rel(p_success_numeric(c), 9.990000009989996e-07, 1e-12);
  c.alpha = 0.1;
  const double with_alpha = p_success_numeric(c);
  expect_rel(with_alpha, 1.027865777880901e-06, 1e-12);
  // The alpha dependence is O(alpha^2 p) relative.
  EXPECT_LT(std::abs(with_alpha - 9.990000009989996e-07) / 9.990000009989996e-07, 10 * 0.01);
  c = single_stage(100, 0.0, 1e-2, 1.0, EvolutionOrder::Exact);
  c.truncation.fock_a_max = c.truncation.fock_b_max = 6;
  c.truncation.fock_c_max = 0;
  expect_rel(p_success_numeric(c), 9.803584772606669e-05, 1e-10);
}

TEST(SuccessNumeric, ZeroWriteCoupling) {
  auto c = single_stage(100, 0.1, 1e-2, 1.0, EvolutionOrder::FirstOrder);
  c.p_w = 0.0;
  EXPECT_EQ(p_success_numeric(c), 0.0);
}

TEST(Quality, Examples) {
  EXPECT_EQ(quality(1.0, 0.0, 0.0), 1.0);
  EXPECT_NEAR(quality(0.5, 0.3, 0.3), 0.245, 1e-15);
  EXPECT_EQ(quality(0.7, 1.0, 0.2), 0.0);
}

TEST(QualityReport, IdentityAndValidity) {
  const QualityReport q = make_quality_report(0.01, 0.2, 0.3, 0.9, 1.98, 0.8);
  EXPECT_NEAR(q.q_amp, 0.9 * 0.7 * 0.8, 1e-15);
  EXPECT_TRUE(q.valid);
  EXPECT_FALSE(make_quality_report(0.01, -1e-9, 0.3, 0.9, std::nullopt, 1.0).valid);
  EXPECT_TRUE(make_quality_report(0.01, -1e-11, 0.3, 0.9, std::nullopt, 1.0).valid);
  EXPECT_FALSE(probability_in_range(1.0 + 2e-10));
  EXPECT_FALSE(probability_in_range(std::nan("")));
}

TEST(PAmp, Examples) {
  const DickeVector t = weak_coherent_atomic_state(0.2, 100, 1);
  EXPECT_NEAR(p_amp(DensityMatrix::from_pure(t), t), 1.0, 1e-15);
  DickeVector orth(100, 1);
  orth.set(0, -0.2);
  orth.set(1, 1.0);
  EXPECT_NEAR(p_amp(DensityMatrix::from_pure(orth), t), 0.0, 1e-15);
  EXPECT_THROW(p_amp(DensityMatrix::from_pure(orth), DickeVector::basis(0, 50, 1)), DomainError);
}

TEST(PAmp, HeraldedLargeNRun) {
  auto c = single_stage(1000, 0.1, 1e-2, 1.0, EvolutionOrder::FirstOrder);
  c.target_gain = TargetGain::LargeN;
  const auto r = run_schedule(c);
  ASSERT_TRUE(r.quality.has_value());
  // Mismatch between 2 alpha and 2 alpha (1 - 1/N): fidelity of the two targets.
  EXPECT_NEAR(r.quality->p_amp, 0.9999999630149078, 1e-12);
}

TEST(PMode, LosslessFirstOrderIsZero) {
  auto c = single_stage(100, 0.1, 1e-2, 1.0, EvolutionOrder::FirstOrder);
  const auto r = run_schedule(c);
  ASSERT_TRUE(r.quality.has_value());
  EXPECT_LT(std::abs(r.quality->p_mode), 1e-10);
}

TEST(PMode, OrthogonalTargetGivesOne) {
  ModeTruncation t = ModeTruncation::defaults(20);
  JointState psi(20, t);
  psi(2, 1, 1, 0) = 1.0;
  const auto rho = JointMixture::pure(psi);
  EXPECT_NEAR(p_mode(rho, DickeVector::basis(0, 20, 1), {1, 1}), 1.0, 1e-15);
  EXPECT_THROW(p_mode(rho, DickeVector::basis(0, 20, 1), {0, 0}), UndefinedMetric);
}

TEST(PSpon, ExactTargetGivesZero) {
  ModeTruncation t = ModeTruncation::defaults(20);
  const DickeVector target = weak_coherent_atomic_state(0.3, 20, 1);
  JointState psi(20, t);
  psi(0, 1, 1, 0) = target[0];
  psi(1, 1, 1, 0) = target[1];
  const auto rho = JointMixture::pure(psi);
  EXPECT_NEAR(p_spon(rho, target, {1, 1}), 0.0, 1e-15);
  EXPECT_NEAR(p_mode(rho, target, {1, 1}), 0.0, 1e-15);
}

TEST(PSpon, ZeroAtomicWeightIsUndefined) {
  JointState psi(20, ModeTruncation::defaults(20));
  psi(3, 1, 1, 0) = 1.0;
  EXPECT_THROW(p_spon(JointMixture::pure(psi), DickeVector::basis(0, 20, 1), {1, 1}), UndefinedMetric);
}

TEST(PSpon, LosslessTendsToOneAsCouplingVanishes) {
  double previous = 0.0;
  for (double p : {1e-2, 1e-3, 1e-4}) {
    const auto r = run_schedule(single_stage(100, 0.1, p, 1.0, EvolutionOrder::FirstOrder));
    const double spon = r.quality->p_spon;
    EXPECT_GT(spon, previous);
    EXPECT_LT(1.0 - spon, 3.0 * p * p);
    previous = spon;
  }
}

TEST(Metrics, FrozenExactLossy) {
  auto c = single_stage(100, 0.1, 1e-3, 0.7, EvolutionOrder::Exact);
  c.truncation = wide();
  const auto r = run_schedule(c);
  ASSERT_TRUE(r.quality.has_value());
  const QualityReport& q = *r.quality;
  expect_rel(q.p_mode, 0.001093209813475271, 1e-9);
  expect_rel(q.p_spon, 0.999999491676598, 1e-12);
  expect_rel(q.p_amp, 0.998906790186525, 1e-12);
  expect_rel(q.p_suc, 5.037302215608513e-07, 1e-10);
  expect_rel(q.q_amp, 5.07212601275704e-07, 1e-9);
  expect_rel(*q.gain, 1.9792116606484484, 1e-12);
  EXPECT_NEAR(q.fidelity, q.p_amp, 1e-12);
  EXPECT_TRUE(q.valid);
}

TEST(Metrics, FrozenExactLossless) {
  auto c = single_stage(100, 0.1, 1e-3, 1.0, EvolutionOrder::Exact);
  c.truncation = wide();
  const QualityReport q = *run_schedule(c).quality;
  expect_rel(q.p_mode, 3.4833414153112585e-08, 1e-6);
  expect_rel(q.p_spon, 0.9999989626942551, 1e-12);
  expect_rel(q.p_amp, 0.999999965166586, 1e-12);
  expect_rel(q.p_suc, 1.026797220890572e-06, 1e-10);
  expect_rel(q.q_amp, 1.0373056725895881e-06, 1e-9);
  expect_rel(*q.gain, 1.9780605312397272, 1e-12);
}

TEST(Metrics, FrozenFirstOrderLossy) {
  auto c = single_stage(100, 0.1, 1e-3, 0.7, EvolutionOrder::FirstOrder);
  c.truncation = wide();
  const QualityReport q = *run_schedule(c).quality;
  // A first-order (1,1) detection always comes from the matched path.
  EXPECT_LT(std::abs(q.p_mode), 1e-12);
  expect_rel(q.p_spon, 0.9999994912063469, 1e-12);
  expect_rel(q.p_suc, 5.036540931878237e-07, 1e-10);
  expect_rel(*q.gain, 1.98, 1e-12);
}

TEST(Metrics, FrozenFirstOrderLargeN) {
  auto c = single_stage(1000, 0.1, 1e-2, 1.0, EvolutionOrder::FirstOrder);
  c.target_gain = TargetGain::LargeN;
  const QualityReport q = *run_schedule(c).quality;
  expect_rel(q.p_mode, 3.6985092100039196e-08, 1e-6);
  expect_rel(q.p_spon, 0.9998961087096336, 1e-12);
  expect_rel(q.p_suc, 0.00010191260049687505, 1e-12);
  expect_rel(q.q_amp, 0.00010389128268150694, 1e-8);
  expect_rel(*q.gain, 1.998, 1e-12);
}

TEST(Metrics, ModeLossGrowsAsOverlapShrinks) {
  double previous = -1.0;
  for (double beta : {1.0, 0.9, 0.7, 0.5}) {
    auto c = single_stage(100, 0.1, 1e-3, beta, EvolutionOrder::Exact);
    c.truncation = wide();
    const double mode = run_schedule(c).quality->p_mode;
    EXPECT_GT(mode, previous);
    previous = mode;
  }
}

TEST(Metrics, SuccessCoVariesWithCapturedFraction) {
  // P_suc and 1 - P_spon move together in both coupling and overlap; no
  // proportionality constant is asserted.
  double prev_suc = 0.0, prev_kept = 0.0;
  for (double p : {1e-5, 1e-4, 1e-3, 1e-2}) {
    const auto q = *run_schedule(single_stage(100, 0.1, p, 0.8, EvolutionOrder::FirstOrder)).quality;
    EXPECT_GT(q.p_suc, prev_suc);
    EXPECT_GT(1.0 - q.p_spon, prev_kept);
    prev_suc = q.p_suc;
    prev_kept = 1.0 - q.p_spon;
  }
  prev_suc = prev_kept = 0.0;
  for (double beta : {0.2, 0.5, 0.8, 1.0}) {
    const auto q = *run_schedule(single_stage(100, 0.1, 1e-3, beta, EvolutionOrder::FirstOrder)).quality;
    EXPECT_GT(q.p_suc, prev_suc);
    EXPECT_GT(1.0 - q.p_spon, prev_kept);
    prev_suc = q.p_suc;
    prev_kept = 1.0 - q.p_spon;
  }
}
