// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "dickeamp/dicke.hpp"
#include "dickeamp/errors.hpp"

using namespace dickeamp;

namespace {
constexpr double kTol = 1e-12;
const LadderDirection kRaise = LadderDirection::Raise;
const LadderDirection kLower = LadderDirection::Lower;
}  // namespace

TEST(DickeVector, ConstructionInvariants) {
  EXPECT_THROW(DickeVector(0, 0), DomainError);
  EXPECT_THROW(DickeVector(3, 4), DomainError);
  EXPECT_THROW(DickeVector(3, std::vector<cplx>{}), DomainError);
  EXPECT_THROW(DickeVector(3, std::vector<cplx>{std::nan("")}), DomainError);
  const DickeVector v(5, 2);
  EXPECT_EQ(v.k_max(), 2);
  EXPECT_TRUE(v.is_zero());
  EXPECT_FALSE(v.is_normalized());
  EXPECT_THROW(v.normalized(), DomainError);
}

TEST(DickeVector, NormalizedFlagClearedByMutation) {
  DickeVector v = DickeVector::basis(1, 10);
  EXPECT_TRUE(v.is_normalized());
  EXPECT_EQ(v.k_max(), 10);
  v.set(0, 1.0);
  EXPECT_FALSE(v.is_normalized());
  const DickeVector n = v.normalized();
  EXPECT_TRUE(n.is_normalized());
  EXPECT_NEAR(n.norm_sq(), 1.0, kTol);
}

TEST(DickeVector, DefaultCutoff) {
  EXPECT_EQ(default_k_max(5), 5);
  EXPECT_EQ(default_k_max(1000), 16);
}

TEST(DickeVector, WithKMaxRefusesToDropAmplitude) {
  DickeVector v(10, 4);
  v.set(3, 1.0);
  EXPECT_EQ(v.with_k_max(3).k_max(), 3);
  EXPECT_EQ(v.with_k_max(8)[3], cplx(1.0));
  EXPECT_THROW(v.with_k_max(2), TruncationOverflow);
}

TEST(LadderCoeff, Examples) {
  EXPECT_DOUBLE_EQ(ladder_coeff(kRaise, 0, 5), 1.0);
  EXPECT_DOUBLE_EQ(ladder_coeff(kLower, 1, 7), 1.0);
  EXPECT_NEAR(ladder_coeff(kRaise, 1, 10), 1.3416407864998738, kTol);
  EXPECT_EQ(ladder_coeff(kRaise, 10, 10), 0.0);
  EXPECT_EQ(ladder_coeff(kLower, 0, 10), 0.0);
}

TEST(LadderCoeff, OutOfRange) {
  EXPECT_THROW(ladder_coeff(kRaise, -1, 5), DomainError);
  EXPECT_THROW(ladder_coeff(kRaise, 6, 5), DomainError);
  EXPECT_THROW(ladder_coeff(kLower, 0, 0), DomainError);
}

TEST(ApplyLadder, Examples) {
  const DickeVector up = apply_ladder(kRaise, DickeVector::basis(0, 8));
  EXPECT_NEAR(std::abs(up[1] - 1.0), 0.0, kTol);
  EXPECT_TRUE(apply_ladder(kLower, DickeVector::basis(0, 8)).is_zero());
  const DickeVector r = apply_ladder(kRaise, DickeVector::basis(1, 10));
  EXPECT_NEAR(r[2].real(), 1.3416407864998738, kTol);
  EXPECT_NEAR(r.norm_sq(), 1.8, kTol);
}

TEST(ApplyLadder, RaiseOverflowAtCutoff) {
  EXPECT_THROW(apply_ladder(kRaise, DickeVector::basis(3, 100, 3)), TruncationOverflow);
  // At k_max = N the top state is annihilated; nothing leaves the space.
  EXPECT_TRUE(apply_ladder(kRaise, DickeVector::basis(4, 4, 4)).is_zero());
}

TEST(ApplySSDagger, Examples) {
  EXPECT_NEAR(apply_ss_dagger(DickeVector::basis(0, 30))[0].real(), 1.0, kTol);
  EXPECT_NEAR(apply_ss_dagger(DickeVector::basis(1, 100))[1].real(), 1.98, kTol);
  EXPECT_NEAR(apply_ss_dagger(DickeVector::basis(2, 4))[2].real(), 1.5, kTol);
}

TEST(GainEigenvalue, Examples) {
  EXPECT_NEAR(gain_eigenvalue(Schedule::TypeI, 1, 100, 3), 7.762392, kTol);
  EXPECT_NEAR(gain_eigenvalue(Schedule::TypeII, 0, 100, 2), 1.98, kTol);
  EXPECT_DOUBLE_EQ(gain_eigenvalue(Schedule::TypeI, 0, 50, 7), 1.0);
  EXPECT_DOUBLE_EQ(gain_eigenvalue(Schedule::TypeII, 3, 10, 0), 1.0);
  EXPECT_THROW(gain_eigenvalue(Schedule::TypeII, 5, 6, 2), DomainError);
}

TEST(GainEigenvalue, MatchesRepeatedOperators) {
  DickeVector v = DickeVector::basis(1, 100);
  for (int i = 0; i < 3; ++i) v = apply_ss_dagger(v);
  EXPECT_NEAR(v[1].real(), gain_eigenvalue(Schedule::TypeI, 1, 100, 3), kTol);

  DickeVector w = DickeVector::basis(0, 100);
  w = apply_ladder(kRaise, apply_ladder(kRaise, w));
  w = apply_ladder(kLower, apply_ladder(kLower, w));
  EXPECT_NEAR(w[0].real(), gain_eigenvalue(Schedule::TypeII, 0, 100, 2), kTol);
}

TEST(RelativeGain, Examples) {
  EXPECT_NEAR(relative_gain(Schedule::TypeI, 1, 1000), 1.998, kTol);
  EXPECT_NEAR(relative_gain(Schedule::TypeII, 3, 100), 3.88, kTol);
  EXPECT_DOUBLE_EQ(relative_gain(Schedule::TypeII, 0, 10), 1.0);
}

TEST(WeakCoherent, Examples) {
  const DickeVector g = weak_coherent_atomic_state(0.0, 5);
  EXPECT_DOUBLE_EQ(g[0].real(), 1.0);
  EXPECT_EQ(g[1], cplx{});

  const DickeVector w = weak_coherent_atomic_state(0.1, 1000);
  EXPECT_NEAR(w[0].real(), 1.0 / std::sqrt(1.01), kTol);
  EXPECT_NEAR(w[1].real(), 0.1 / std::sqrt(1.01), kTol);

  const DickeVector c = weak_coherent_atomic_state(cplx(0.0, 0.5), 3);
  EXPECT_NEAR(std::abs(c[1] / c[0] - cplx(0.0, 0.5)), 0.0, kTol);
  EXPECT_NEAR(c.norm_sq(), 1.0, kTol);
  EXPECT_TRUE(c.is_normalized());
}

TEST(Fidelity, Examples) {
  const DickeVector x = weak_coherent_atomic_state(cplx(0.3, -0.2), 9);
  EXPECT_NEAR(fidelity(x, x), 1.0, kTol);
  EXPECT_EQ(fidelity(DickeVector::basis(0, 9), DickeVector::basis(1, 9)), 0.0);
  // Independent evaluation: 0.9999999630149078.
  DickeVector a(100, 1), b(100, 1);
  a.set(0, 1.0);
  a.set(1, 0.2);
  b.set(0, 1.0);
  b.set(1, 0.1998);
  EXPECT_NEAR(fidelity(a, b), 0.9999999630149078, kTol);
}

TEST(Fidelity, Errors) {
  EXPECT_THROW(fidelity(DickeVector(4, 1), DickeVector::basis(0, 4)), DomainError);
  EXPECT_THROW(fidelity(DickeVector::basis(0, 4), DickeVector::basis(0, 5)), DomainError);
}

TEST(Fidelity, ZeroPadsDifferentCutoffs) {
  DickeVector a(20, 1);
  a.set(0, 1.0);
  a.set(1, 0.5);
  DickeVector b = a.with_k_max(6);
  EXPECT_NEAR(fidelity(a, b), 1.0, kTol);
}

// Property sweeps over every (k, N) with N up to 60.

TEST(DickeProperties, LadderAdjointness) {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k < n; ++k) {
      EXPECT_EQ(ladder_coeff(kRaise, k, n), ladder_coeff(kLower, k + 1, n)) << "N=" << n << " k=" << k;
    }
  }
}

TEST(DickeProperties, LowerRaiseIsDiagonal) {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      const DickeVector out = apply_ladder(kLower, apply_ladder(kRaise, DickeVector::basis(k, n, n)));
      const double expected = (k + 1) * (1.0 - static_cast<double>(k) / n);
      EXPECT_NEAR(out[k].real(), expected, kTol);
      EXPECT_NEAR(out.norm_sq(), expected * expected, 1e-10);
      EXPECT_NEAR(apply_ss_dagger(DickeVector::basis(k, n, n))[k].real(), expected, kTol);
    }
  }
}

TEST(DickeProperties, RelativeGainIsEigenvalueRatio) {
  for (int n_atoms : {3, 10, 100, 1000}) {
    for (int n = 0; n <= std::min(n_atoms - 1, 40); ++n) {
      for (Schedule s : {Schedule::TypeI, Schedule::TypeII}) {
        const double ratio =
            gain_eigenvalue(s, 1, n_atoms, n) / gain_eigenvalue(s, 0, n_atoms, n);
        const double g = relative_gain(s, n, n_atoms);
        EXPECT_NEAR(ratio, g, kTol * std::max(1.0, g));
      }
    }
  }
}

TEST(DickeProperties, TypesCoincideAtOneStage) {
  for (int n = 2; n <= 500; ++n) {
    const double expected = 2.0 * (1.0 - 1.0 / n);
    EXPECT_NEAR(relative_gain(Schedule::TypeI, 1, n), expected, kTol);
    EXPECT_NEAR(relative_gain(Schedule::TypeII, 1, n), expected, kTol);
  }
}

TEST(DickeProperties, TypeIDominates) {
  for (int n_atoms = 5; n_atoms <= 200; ++n_atoms) {
    for (int n = 2; 2 * n < n_atoms; ++n) {
      EXPECT_GT(relative_gain(Schedule::TypeI, n, n_atoms), relative_gain(Schedule::TypeII, n, n_atoms));
    }
  }
}

TEST(DickeProperties, GainThreshold) {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 1; k <= n; ++k) {
      const double eta = (k + 1) * (1.0 - static_cast<double>(k) / n);
      EXPECT_EQ(eta > 1.0 + kTol, n >= k + 2) << "N=" << n << " k=" << k;
    }
  }
}

TEST(DickeProperties, LargeNLimit) {
  for (int n = 0; n <= 20; ++n) {
    const double ideal = std::ldexp(1.0, n);
    EXPECT_LT(std::abs(relative_gain(Schedule::TypeI, n, 1'000'000'000) - ideal) / ideal, 1e-7);
  }
}
