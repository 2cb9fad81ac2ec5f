// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/joint.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>

#include "dickeamp/errors.hpp"
#include "dickeamp/format.hpp"
#include "dickeamp/kernels.hpp"

namespace dickeamp {

ModeTruncation ModeTruncation::defaults(int n_atoms) {
  ModeTruncation t;
  t.atomic_k_max = std::min(n_atoms, 8);
  return t;
}

std::size_t ModeTruncation::dimension() const {
  return static_cast<std::size_t>(atomic_k_max + 1) * static_cast<std::size_t>(fock_a_max + 1) *
         static_cast<std::size_t>(fock_b_max + 1) * static_cast<std::size_t>(fock_c_max + 1);
}

void ModeTruncation::validate(int n_atoms) const {
  if (fock_a_max < 1) throw DomainError("truncation: fock_a_max must be >= 1");
  if (fock_b_max < 1) throw DomainError("truncation: fock_b_max must be >= 1");
  if (fock_c_max < 0) throw DomainError("truncation: fock_c_max must be >= 0");
  if (atomic_k_max < 1 || atomic_k_max > n_atoms) {
    throw DomainError("truncation: atomic_k_max must lie in [1, N]");
  }
  if (dimension() > max_dimension) {
    throw ResourceGuard("truncation: joint dimension " + std::to_string(dimension()) +
                        " exceeds cap " + std::to_string(max_dimension));
  }
}

JointState::JointState(int n_atoms, const ModeTruncation& trunc)
    : n_atoms_(n_atoms),
      trunc_(trunc),
      dim_k_(static_cast<std::size_t>(trunc.atomic_k_max) + 1),
      dim_a_(static_cast<std::size_t>(trunc.fock_a_max) + 1),
      dim_b_(static_cast<std::size_t>(trunc.fock_b_max) + 1),
      dim_c_(static_cast<std::size_t>(trunc.fock_c_max) + 1) {
  if (n_atoms < 1) throw DomainError("JointState: N must be >= 1");
  trunc.validate(n_atoms);
  amps_.assign(trunc.dimension(), cplx{});
}

double JointState::norm_sq() const { return kernels::norm_sq(amps_); }

JointState build_joint(const DickeVector& atomic, const ModeTruncation& trunc) {
  JointState joint(atomic.n_atoms(), trunc);
  const DickeVector fitted = atomic.with_k_max(std::min(atomic.k_max(), trunc.atomic_k_max));
  for (int k = 0; k <= fitted.k_max(); ++k) joint(k, 0, 0, 0) = fitted[k];
  return joint;
}

namespace {

enum class Process { Write, Read };

void check_coupling(double p, double beta, const ModeTruncation& trunc, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": coupling must lie in [0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError(std::string(what) + ": mode-overlap fraction must lie in (0, 1]");
  }
  if (trunc.fock_c_max == 0 && beta != 1.0) {
    throw DomainError(std::string(what) + ": beta < 1 needs a loss mode (fock_c_max >= 1)");
  }
}

[[noreturn]] void overflow(const char* what, const char* mode) {
  throw TruncationOverflow(std::string(what) + ": first-order term pushes nonzero amplitude past the " +
                           mode + " truncation");
}

bool any_nonzero(std::span<const cplx> x) {
  return std::any_of(x.begin(), x.end(), [](const cplx& c) { return c != cplx{}; });
}

// 1 + sqrt(p)(S^dag A^dag - S A), A = sqrt(beta) a + sqrt(1-beta) c.
JointState first_order_write(const JointState& in, double p, double beta) {
  JointState out = in;
  const int n = in.n_atoms();
  const int K = in.truncation().atomic_k_max;
  const int A = in.truncation().fock_a_max;
  const int B = in.truncation().fock_b_max;
  const int C = in.truncation().fock_c_max;
  const double ga = std::sqrt(p * beta);
  const double gc = std::sqrt(p * (1.0 - beta));
  const std::size_t slab = in.dim_b() * in.dim_c();
  auto src = in.amplitudes();
  auto dst = out.amplitudes();

  for (int k = 0; k <= K; ++k) {
    const double r = ladder_coeff(LadderDirection::Raise, k, n);
    if (r == 0.0) continue;
    for (int na = 0; na <= A; ++na) {
      const double coef = ga * r * std::sqrt(na + 1.0);
      if (coef == 0.0) continue;
      auto s = src.subspan(in.index(k, na, 0, 0), slab);
      if (k + 1 > K || na + 1 > A) {
        if (any_nonzero(s)) overflow("apply_write", k + 1 > K ? "atomic" : "Stokes-mode");
        continue;
      }
      auto t = src.subspan(in.index(k + 1, na + 1, 0, 0), slab);
      kernels::axpy(dst.subspan(in.index(k + 1, na + 1, 0, 0), slab), s, coef);
      kernels::axpy(dst.subspan(in.index(k, na, 0, 0), slab), t, -coef);
    }
    if (gc == 0.0) continue;
    for (int na = 0; na <= A; ++na) {
      for (int nb = 0; nb <= B; ++nb) {
        for (int nc = 0; nc <= C; ++nc) {
          const double coef = gc * r * std::sqrt(nc + 1.0);
          const cplx s = in(k, na, nb, nc);
          if (k + 1 > K || nc + 1 > C) {
            if (s != cplx{}) overflow("apply_write", k + 1 > K ? "atomic" : "loss-mode");
            continue;
          }
          out(k + 1, na, nb, nc + 1) += coef * s;
          out(k, na, nb, nc) -= coef * in(k + 1, na, nb, nc + 1);
        }
      }
    }
  }
  return out;
}

// 1 + sqrt(p)(S B^dag - S^dag B), B = sqrt(beta) b + sqrt(1-beta) c.
JointState first_order_read(const JointState& in, double p, double beta) {
  JointState out = in;
  const int n = in.n_atoms();
  const int K = in.truncation().atomic_k_max;
  const int A = in.truncation().fock_a_max;
  const int B = in.truncation().fock_b_max;
  const int C = in.truncation().fock_c_max;
  const double gb = std::sqrt(p * beta);
  const double gc = std::sqrt(p * (1.0 - beta));
  const std::size_t slab = in.dim_c();
  auto src = in.amplitudes();
  auto dst = out.amplitudes();

  for (int k = 1; k <= K; ++k) {
    const double l = ladder_coeff(LadderDirection::Lower, k, n);
    if (l == 0.0) continue;
    for (int na = 0; na <= A; ++na) {
      for (int nb = 0; nb <= B; ++nb) {
        const double coef = gb * l * std::sqrt(nb + 1.0);
        auto s = src.subspan(in.index(k, na, nb, 0), slab);
        if (nb + 1 > B) {
          if (any_nonzero(s)) overflow("apply_read", "anti-Stokes-mode");
          continue;
        }
        auto t = src.subspan(in.index(k - 1, na, nb + 1, 0), slab);
        kernels::axpy(dst.subspan(in.index(k - 1, na, nb + 1, 0), slab), s, coef);
        kernels::axpy(dst.subspan(in.index(k, na, nb, 0), slab), t, -coef);
      }
      if (gc == 0.0) continue;
      for (int nb = 0; nb <= B; ++nb) {
        for (int nc = 0; nc <= C; ++nc) {
          const double coef = gc * l * std::sqrt(nc + 1.0);
          const cplx s = in(k, na, nb, nc);
          if (nc + 1 > C) {
            if (s != cplx{}) overflow("apply_read", "loss-mode");
            continue;
          }
          out(k - 1, na, nb, nc + 1) += coef * s;
          out(k, na, nb, nc) -= coef * in(k - 1, na, nb, nc + 1);
        }
      }
    }
  }
  return out;
}

// Exact propagation. The write generator conserves k - n_a - n_c and the read
// generator conserves k + n_b + n_c, so the active subspace (k, m, c) splits
// into small blocks exponentiated independently; the other photon mode is a
// spectator.
JointState exact_evolve(const JointState& in, Process process, double p, double beta, double leakage_tol) {
  const int n = in.n_atoms();
  const int K = in.truncation().atomic_k_max;
  const int M = process == Process::Write ? in.truncation().fock_a_max : in.truncation().fock_b_max;
  const int C = in.truncation().fock_c_max;
  const int spectator_max = process == Process::Write ? in.truncation().fock_b_max : in.truncation().fock_a_max;
  const double gm = std::sqrt(p * beta);
  const double gc = std::sqrt(p * (1.0 - beta));

  struct Sub {
    int k, m, c;
  };
  std::map<int, std::vector<Sub>> blocks;
  for (int k = 0; k <= K; ++k) {
    for (int m = 0; m <= M; ++m) {
      for (int c = 0; c <= C; ++c) {
        const int charge = process == Process::Write ? k - m - c : k + m + c;
        blocks[charge].push_back({k, m, c});
      }
    }
  }

  auto joint_index = [&](const Sub& s, int spectator) {
    return process == Process::Write ? in.index(s.k, s.m, spectator, s.c) : in.index(s.k, spectator, s.m, s.c);
  };

  JointState out = in;
  for (const auto& [charge, subs] : blocks) {
    const auto dim = static_cast<Eigen::Index>(subs.size());
    if (dim == 1) continue;
    auto pos = [&](int k, int m, int c) -> Eigen::Index {
      for (Eigen::Index i = 0; i < dim; ++i) {
        const Sub& s = subs[static_cast<std::size_t>(i)];
        if (s.k == k && s.m == m && s.c == c) return i;
      }
      return -1;
    };
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Sub& s = subs[static_cast<std::size_t>(i)];
      const int k_to = process == Process::Write ? s.k + 1 : s.k - 1;
      if (k_to < 0 || k_to > K) continue;
      const double atomic = process == Process::Write ? ladder_coeff(LadderDirection::Raise, s.k, n)
                                                      : ladder_coeff(LadderDirection::Lower, s.k, n);
      if (s.m + 1 <= M) {
        const Eigen::Index j = pos(k_to, s.m + 1, s.c);
        const double coef = gm * atomic * std::sqrt(s.m + 1.0);
        gen(j, i) += coef;
        gen(i, j) -= coef;
      }
      if (s.c + 1 <= C) {
        const Eigen::Index j = pos(k_to, s.m, s.c + 1);
        const double coef = gc * atomic * std::sqrt(s.c + 1.0);
        gen(j, i) += coef;
        gen(i, j) -= coef;
      }
    }
    if (gen.cwiseAbs().maxCoeff() == 0.0) continue;

    // exp(G) = exp(-iH) with H = iG Hermitian.
    const Eigen::MatrixXcd herm = cplx(0.0, 1.0) * gen.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::VectorXcd phases =
        es.eigenvalues().unaryExpr([](double lam) { return std::exp(cplx(0.0, -lam)); });
    const Eigen::MatrixXcd unitary = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    Eigen::VectorXcd x(dim);
    for (int spec = 0; spec <= spectator_max; ++spec) {
      bool nonzero = false;
      for (Eigen::Index i = 0; i < dim; ++i) {
        x(i) = in.amplitudes()[joint_index(subs[static_cast<std::size_t>(i)], spec)];
        nonzero = nonzero || x(i) != cplx{};
      }
      if (!nonzero) continue;
      const Eigen::VectorXcd y = unitary * x;
      for (Eigen::Index i = 0; i < dim; ++i) {
        out.amplitudes()[joint_index(subs[static_cast<std::size_t>(i)], spec)] = y(i);
      }
    }
  }

  // Top-level population guard on every level this process feeds.
  double top_mode = 0.0, top_loss = 0.0, top_atomic = 0.0;
  const int A = in.truncation().fock_a_max;
  const int B = in.truncation().fock_b_max;
  for (int k = 0; k <= K; ++k) {
    for (int na = 0; na <= A; ++na) {
      for (int nb = 0; nb <= B; ++nb) {
        for (int nc = 0; nc <= C; ++nc) {
          const double w = std::norm(out(k, na, nb, nc));
          const int m = process == Process::Write ? na : nb;
          if (m == M) top_mode += w;
          if (gc != 0.0 && nc == C) top_loss += w;
          if (K < n && k == K) top_atomic += w;
        }
      }
    }
  }
  const char* what = process == Process::Write ? "apply_write" : "apply_read";
  auto guard = [&](double pop, const char* level) {
    if (pop > leakage_tol) {
      throw TruncationLeakage(std::string(what) + ": population " + format_double(pop) + " in the top " +
                              level + " level exceeds " + format_double(leakage_tol) +
                              "; raise the truncation");
    }
  };
  guard(top_mode, process == Process::Write ? "Stokes-mode" : "anti-Stokes-mode");
  guard(top_loss, "loss-mode");
  guard(top_atomic, "atomic");
  return out;
}

}  // namespace

JointState apply_write(const JointState& joint, double p_w, double beta_w, EvolutionOrder order,
                       double leakage_tol) {
  check_coupling(p_w, beta_w, joint.truncation(), "apply_write");
  if (p_w == 0.0) return joint;
  return order == EvolutionOrder::FirstOrder ? first_order_write(joint, p_w, beta_w)
                                             : exact_evolve(joint, Process::Write, p_w, beta_w, leakage_tol);
}

JointState apply_read(const JointState& joint, double p_r, double beta_r, EvolutionOrder order,
                      double leakage_tol) {
  check_coupling(p_r, beta_r, joint.truncation(), "apply_read");
  if (p_r == 0.0) return joint;
  return order == EvolutionOrder::FirstOrder ? first_order_read(joint, p_r, beta_r)
                                             : exact_evolve(joint, Process::Read, p_r, beta_r, leakage_tol);
}

namespace {

void check_pattern(const JointState& joint, HeraldPattern pattern) {
  if (pattern.detect_a < 0 || pattern.detect_a > joint.truncation().fock_a_max || pattern.detect_b < 0 ||
      pattern.detect_b > joint.truncation().fock_b_max) {
    throw DomainError("herald: pattern (" + std::to_string(pattern.detect_a) + "," +
                      std::to_string(pattern.detect_b) + ") outside the photon truncation");
  }
}

}  // namespace

DickeVector conditional_slice(const JointState& joint, HeraldPattern pattern, int c_sector) {
  check_pattern(joint, pattern);
  if (c_sector < 0 || c_sector > joint.truncation().fock_c_max) {
    throw DomainError("conditional_slice: loss-mode sector out of range");
  }
  std::vector<cplx> amps(joint.dim_k());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    amps[k] = joint(static_cast<int>(k), pattern.detect_a, pattern.detect_b, c_sector);
  }
  return DickeVector(joint.n_atoms(), std::move(amps));
}

ConditionalDensity reduced_conditional_density(const JointState& joint, HeraldPattern pattern) {
  check_pattern(joint, pattern);
  const auto dim = static_cast<Eigen::Index>(joint.dim_k());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (int c = 0; c <= joint.truncation().fock_c_max; ++c) {
    const DickeVector v = conditional_slice(joint, pattern, c);
    Eigen::Map<const Eigen::VectorXcd> u(v.amplitudes().data(), dim);
    rho += u * u.adjoint();
  }
  const double probability = rho.trace().real();
  if (probability > 0.0) rho /= probability;
  return {DensityMatrix(joint.n_atoms(), std::move(rho)), probability};
}

HeraldResult herald(const JointState& joint, HeraldPattern pattern) {
  check_pattern(joint, pattern);
  std::vector<DickeVector> sectors;
  double probability = 0.0;
  int dominant = 0;
  double dominant_w = -1.0;
  for (int c = 0; c <= joint.truncation().fock_c_max; ++c) {
    sectors.push_back(conditional_slice(joint, pattern, c));
    const double w = sectors.back().norm_sq();
    probability += w;
    if (w > dominant_w) {
      dominant_w = w;
      dominant = c;
    }
  }
  if (probability == 0.0) return {std::nullopt, 0.0};
  int populated = 0;
  for (const DickeVector& s : sectors) populated += s.norm_sq() > 0.0 ? 1 : 0;
  if (populated > 1) {
    const ConditionalDensity cd = reduced_conditional_density(joint, pattern);
    if (cd.rho.purity() < 1.0 - kExactTol) {
      throw MixedStateError("herald: conditional atomic state is mixed over loss-mode sectors; use "
                            "reduced_conditional_density");
    }
  }
  return {sectors[static_cast<std::size_t>(dominant)].normalized(), probability};
}

OutcomeTable::OutcomeTable(const JointState& joint)
    : a_max_(joint.truncation().fock_a_max), b_max_(joint.truncation().fock_b_max) {
  weight_.assign(joint.dim_a() * joint.dim_b(), 0.0);
  const auto amps = joint.amplitudes();
  for (int k = 0; k <= joint.truncation().atomic_k_max; ++k) {
    for (int na = 0; na <= a_max_; ++na) {
      for (int nb = 0; nb <= b_max_; ++nb) {
        weight_[static_cast<std::size_t>(na) * joint.dim_b() + static_cast<std::size_t>(nb)] +=
            kernels::norm_sq(amps.subspan(joint.index(k, na, nb, 0), joint.dim_c()));
      }
    }
  }
  total_ = 0.0;
  for (double w : weight_) total_ += w;
}

double OutcomeTable::weight(HeraldPattern p) const {
  if (p.detect_a < 0 || p.detect_a > a_max_ || p.detect_b < 0 || p.detect_b > b_max_) {
    throw DomainError("OutcomeTable: pattern outside truncation");
  }
  return weight_[static_cast<std::size_t>(p.detect_a) * static_cast<std::size_t>(b_max_ + 1) +
                 static_cast<std::size_t>(p.detect_b)];
}

DensityMatrix reduced_atomic_density(const JointState& joint) {
  const double n = joint.norm_sq();
  if (n == 0.0) throw DomainError("reduced_atomic_density: zero state");
  const auto rows = static_cast<Eigen::Index>(joint.dim_k());
  const auto cols = static_cast<Eigen::Index>(joint.dim_a() * joint.dim_b() * joint.dim_c());
  // Row-major (k, photons) view of the amplitude tensor.
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      joint.amplitudes().data(), rows, cols);
  Eigen::MatrixXcd rho = m * m.adjoint();
  return DensityMatrix(joint.n_atoms(), rho / n);
}

JointMixture JointMixture::pure(JointState psi) {
  JointMixture mix;
  mix.terms.emplace_back(1.0, std::move(psi));
  return mix;
}

double JointMixture::trace() const {
  double t = 0.0;
  for (const auto& [w, psi] : terms) t += w * psi.norm_sq();
  return t;
}

void write_text_dump(const JointState& joint, std::ostream& os) {
  const ModeTruncation& t = joint.truncation();
  os << "# dickeamp joint-state dump: N k_max a_max b_max c_max, then k n_a n_b n_c re im\n";
  os << joint.n_atoms() << ' ' << t.atomic_k_max << ' ' << t.fock_a_max << ' ' << t.fock_b_max << ' '
     << t.fock_c_max << '\n';
  for (int k = 0; k <= t.atomic_k_max; ++k) {
    for (int na = 0; na <= t.fock_a_max; ++na) {
      for (int nb = 0; nb <= t.fock_b_max; ++nb) {
        for (int nc = 0; nc <= t.fock_c_max; ++nc) {
          const cplx v = joint(k, na, nb, nc);
          if (v == cplx{}) continue;
          os << k << ' ' << na << ' ' << nb << ' ' << nc << ' ' << format_double(v.real()) << ' '
             << format_double(v.imag()) << '\n';
        }
      }
    }
  }
}

}  // namespace dickeamp
