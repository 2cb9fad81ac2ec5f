// SPDX-License-Identifier: Apache-2.0
#include "dickeamp/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "dickeamp/errors.hpp"

namespace dickeamp {

DensityMatrix::DensityMatrix(int n_atoms, Eigen::MatrixXcd rho) : n_atoms_(n_atoms), rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw DomainError("DensityMatrix: matrix must be square and nonempty");
  }
  if (k_max() > n_atoms_) throw DomainError("DensityMatrix: dimension exceeds N + 1");
  if (!rho_.allFinite()) throw DomainError("DensityMatrix: non-finite entry");
}

DensityMatrix DensityMatrix::from_pure(const DickeVector& v) {
  const double n = v.norm_sq();
  if (n == 0.0) throw DomainError("DensityMatrix::from_pure: zero vector");
  const auto amps = v.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> u(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return DensityMatrix(v.n_atoms(), (u * u.adjoint()) / n);
}

DensityMatrix DensityMatrix::zero(int n_atoms, int k_max) {
  return DensityMatrix(n_atoms, Eigen::MatrixXcd::Zero(k_max + 1, k_max + 1));
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const {
  const double t = trace();
  if (t == 0.0) throw DomainError("DensityMatrix::purity: zero trace");
  return (rho_ * rho_).trace().real() / (t * t);
}

double DensityMatrix::expectation(const DickeVector& v) const {
  const double n = v.norm_sq();
  if (n == 0.0) throw DomainError("DensityMatrix::expectation: zero vector");
  const Eigen::Index dim = rho_.rows();
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(dim, v.k_max() + 1); ++k) {
    u(k) = v[static_cast<int>(k)];
  }
  for (int k = static_cast<int>(dim); k <= v.k_max(); ++k) {
    if (v[k] != cplx{}) throw DomainError("DensityMatrix::expectation: vector exceeds cutoff");
  }
  return (u.adjoint() * rho_ * u)(0, 0).real() / n;
}

DensityMatrix DensityMatrix::normalized() const {
  const double t = trace();
  if (t == 0.0) throw DomainError("DensityMatrix::normalized: zero trace");
  return DensityMatrix(n_atoms_, rho_ / t);
}

std::vector<DensityMatrix::Component> DensityMatrix::components(double relative_cutoff) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_);
  const Eigen::VectorXd& w = es.eigenvalues();
  const double wmax = w.maxCoeff();
  std::vector<Component> out;
  if (wmax <= 0.0) return out;
  for (Eigen::Index j = w.size() - 1; j >= 0; --j) {
    if (w(j) <= relative_cutoff * wmax) continue;
    std::vector<cplx> u(es.eigenvectors().col(j).data(), es.eigenvectors().col(j).data() + w.size());
    out.push_back({w(j), DickeVector(n_atoms_, std::move(u))});
  }
  return out;
}

std::optional<DickeVector> DensityMatrix::pure_state(double tol) const {
  if (trace() <= 0.0 || purity() < 1.0 - tol) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_);
  const Eigen::Index top = rho_.rows() - 1;
  Eigen::VectorXcd u = es.eigenvectors().col(top);
  Eigen::Index imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  u *= std::conj(u(imax)) / std::abs(u(imax));
  return DickeVector(n_atoms_, std::vector<cplx>(u.data(), u.data() + u.size())).normalized();
}

DensityMatrix& DensityMatrix::operator+=(const DensityMatrix& other) {
  if (other.rho_.rows() != rho_.rows()) throw DomainError("DensityMatrix +=: dimension mismatch");
  rho_ += other.rho_;
  return *this;
}

}  // namespace dickeamp
