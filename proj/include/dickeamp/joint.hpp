// SPDX-License-Identifier: Apache-2.0
#pragma once

// Joint atom-photon state on a truncated Fock space and the write/read Raman
// processes acting on it.
//
// Tensor layout is row-major over (k, n_a, n_b, n_c) with n_c fastest:
//   a = Stokes mode (detected, created with S^dag during write)
//   b = anti-Stokes mode (detected, created with S during read)
//   c = lumped undetected mode shared by both processes
// A mode-overlap fraction beta routes sqrt(beta) of each emission into the
// detected mode and sqrt(1 - beta) into c.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dickeamp/density.hpp"
#include "dickeamp/dicke.hpp"

namespace dickeamp {

/// Top-level population above which exact evolution reports leakage.
inline constexpr double kLeakageTol = 1e-8;

struct ModeTruncation {
  int fock_a_max = 3;
  int fock_b_max = 3;
  int fock_c_max = 2;  // 0 disables the loss mode
  int atomic_k_max = 8;
  std::size_t max_dimension = 2'000'000;

  /// Defaults with atomic_k_max = min(N, 8).
  static ModeTruncation defaults(int n_atoms);

  std::size_t dimension() const;
  /// Throws DomainError for bad bounds, ResourceGuard when over max_dimension.
  void validate(int n_atoms) const;

  bool operator==(const ModeTruncation&) const = default;
};

enum class EvolutionOrder { FirstOrder, Exact };

struct HeraldPattern {
  int detect_a = 1;
  int detect_b = 1;
  bool operator==(const HeraldPattern&) const = default;
};

class JointState {
 public:
  /// Zero state.
  JointState(int n_atoms, const ModeTruncation& trunc);

  int n_atoms() const { return n_atoms_; }
  const ModeTruncation& truncation() const { return trunc_; }

  std::size_t index(int k, int na, int nb, int nc) const {
    return ((static_cast<std::size_t>(k) * dim_a_ + static_cast<std::size_t>(na)) * dim_b_ +
            static_cast<std::size_t>(nb)) * dim_c_ + static_cast<std::size_t>(nc);
  }
  cplx operator()(int k, int na, int nb, int nc) const { return amps_[index(k, na, nb, nc)]; }
  cplx& operator()(int k, int na, int nb, int nc) { return amps_[index(k, na, nb, nc)]; }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  std::size_t dim_k() const { return dim_k_; }
  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dim_c() const { return dim_c_; }

  double norm_sq() const;

 private:
  int n_atoms_;
  ModeTruncation trunc_;
  std::size_t dim_k_, dim_a_, dim_b_, dim_c_;
  std::vector<cplx> amps_;
};

/// atomic (x) |0>_a |0>_b |0>_c. The atomic cutoff may exceed the joint one
/// only if the excess amplitudes are zero (TruncationOverflow otherwise).
JointState build_joint(const DickeVector& atomic, const ModeTruncation& trunc);

/// Write process: generator sqrt(p_w) (S^dag A^dag - S A) with
/// A = sqrt(beta_w) a + sqrt(1 - beta_w) c. FirstOrder applies 1 + generator;
/// Exact applies its exponential on the truncated space and throws
/// TruncationLeakage when a top level holds more than `leakage_tol`.
JointState apply_write(const JointState& joint, double p_w, double beta_w, EvolutionOrder order,
                       double leakage_tol = kLeakageTol);

/// Read process: generator sqrt(p_r) (S B^dag - S^dag B) with
/// B = sqrt(beta_r) b + sqrt(1 - beta_r) c.
JointState apply_read(const JointState& joint, double p_r, double beta_r, EvolutionOrder order,
                      double leakage_tol = kLeakageTol);

/// Unnormalized atomic vector psi(., detect_a, detect_b, c_sector).
DickeVector conditional_slice(const JointState& joint, HeraldPattern pattern, int c_sector = 0);

struct HeraldResult {
  std::optional<DickeVector> atomic;  // normalized; empty when probability == 0
  double probability;                 // squared norm of the detection slice, c summed
};

/// Projects onto the detection pattern and sums the loss mode incoherently.
/// Throws MixedStateError when the conditional state is not pure; use
/// reduced_conditional_density for that case.
HeraldResult herald(const JointState& joint, HeraldPattern pattern);

struct ConditionalDensity {
  DensityMatrix rho;   // unit trace, or zero when probability == 0
  double probability;  // same quantity as HeraldResult::probability
};

ConditionalDensity reduced_conditional_density(const JointState& joint, HeraldPattern pattern);

/// Unnormalized detection weights for every (n_a, n_b) with c traced.
class OutcomeTable {
 public:
  explicit OutcomeTable(const JointState& joint);
  double weight(HeraldPattern p) const;
  double total() const { return total_; }
  int a_max() const { return a_max_; }
  int b_max() const { return b_max_; }

 private:
  int a_max_, b_max_;
  std::vector<double> weight_;
  double total_;
};

/// Tr over photonic modes, divided by the joint norm^2.
DensityMatrix reduced_atomic_density(const JointState& joint);

/// Joint density operator sum_j w_j |psi_j><psi_j|. States need not be
/// normalized; expectation values divide by sum_j w_j <psi_j|psi_j>.
struct JointMixture {
  std::vector<std::pair<double, JointState>> terms;

  static JointMixture pure(JointState psi);
  double trace() const;
};

/// Text dump, one nonzero amplitude per line: "k n_a n_b n_c re im".
/// Debugging aid; the format is not a stable interface.
void write_text_dump(const JointState& joint, std::ostream& os);

}  // namespace dickeamp
