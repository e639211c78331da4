// Copyright 2026 The posparam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tolerance-aware dense complex kernel shared by every other module.
//
// All routines are pure functions of their arguments. Tolerances are
// relative: eigenvalue floors scale with the spectral norm, rank cutoffs
// with the largest singular value, pivot floors with the largest diagonal
// entry.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "posparam/errors.hpp"

namespace posparam {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
  /// Eigenvalue floor, relative to max(1, spectral norm).
  double psd_eig_tol = 1e-10;
  /// Singular-value cutoff, relative to the largest singular value.
  double rank_tol = 1e-10;
  /// Relative Frobenius tolerance for reconstructions.
  double recon_tol = 1e-8;

  void validate() const {
    if (!(psd_eig_tol >= 0.0) || !(rank_tol >= 0.0) || !(recon_tol >= 0.0)) {
      throw DomainError("tolerances must be finite and >= 0");
    }
  }
};

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw DomainError(std::string(what) + ": matrix has NaN or Inf entries");
}

inline double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

/// Hermitian within psd_eig_tol relative to max(1, ||A||_2).
inline bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, spectral_norm(a));
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol.psd_eig_tol * scale;
}

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

/// Eigendecomposition of the symmetrized input; rejects inputs that are not
/// Hermitian within tolerance.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "hermitian_eigen");
  require_finite(a, "hermitian_eigen");
  if (a.size() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  if (!is_hermitian(a, tol)) throw DomainError("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double psd_floor(double spectral, const Tolerances& tol) {
  return tol.psd_eig_tol * std::max(1.0, spectral);
}

inline bool is_psd(const ComplexMatrix& a, const Tolerances& tol = {}) {
  require_square(a, "is_psd");
  if (!a.allFinite()) return false;
  if (a.size() == 0) return true;
  if (!is_hermitian(a, tol)) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -psd_floor(spectral, tol);
}

namespace detail {

inline HermitianEigen psd_eigen(const ComplexMatrix& a, const Tolerances& tol, const char* what) {
  HermitianEigen e = hermitian_eigen(a, tol);
  if (e.values.size() == 0) return e;
  const double spectral = std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
  if (e.values(0) < -psd_floor(spectral, tol)) {
    throw DomainError(std::string(what) + ": matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(e.values(0)) + ")");
  }
  e.values = e.values.cwiseMax(0.0);
  return e;
}

inline ComplexMatrix spectral_function(const HermitianEigen& e, const RealVector& f) {
  return e.vectors * f.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace detail

/// Unique PSD square root; eigenvalues inside the tolerance floor clamp to 0.
inline ComplexMatrix principal_sqrt(const ComplexMatrix& a, const Tolerances& tol = {}) {
  const HermitianEigen e = detail::psd_eigen(a, tol, "principal_sqrt");
  return detail::spectral_function(e, e.values.cwiseSqrt());
}

/// Moore-Penrose pseudo-inverse of principal_sqrt(a).
inline ComplexMatrix pinv_sqrt(const ComplexMatrix& a, const Tolerances& tol = {}) {
  const HermitianEigen e = detail::psd_eigen(a, tol, "pinv_sqrt");
  if (e.values.size() == 0) return ComplexMatrix(0, 0);
  const double cutoff = tol.rank_tol * e.values.maxCoeff();
  RealVector f(e.values.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double lambda = e.values(i);
    f(i) = (lambda > cutoff && lambda > 0.0) ? 1.0 / std::sqrt(lambda) : 0.0;
  }
  return detail::spectral_function(e, f);
}

/// Moore-Penrose pseudo-inverse of a general matrix; singular values at or
/// below `cutoff` (absolute) are treated as zero.
inline ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double cutoff) {
  if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  ComplexMatrix sigma_inv = ComplexMatrix::Zero(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) sigma_inv(i, i) = 1.0 / sv(i);
  }
  return svd.matrixV() * sigma_inv * svd.matrixU().adjoint();
}

/// Pivot floor used by the semidefinite Cholesky: a Schur-complement pivot at
/// or below psd_eig_tol times the largest diagonal entry counts as zero.
inline double cholesky_pivot_floor(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() == 0) return 0.0;
  return tol.psd_eig_tol * a.diagonal().real().cwiseAbs().maxCoeff();
}

/// Upper-triangular F with real nonnegative diagonal and F*F = A. A pivot at
/// or below the floor zeroes its whole row; no permutation is applied, so
/// row k of F always belongs to index k.
inline ComplexMatrix semidefinite_cholesky(const ComplexMatrix& a, const Tolerances& tol = {}) {
  require_square(a, "semidefinite_cholesky");
  if (!is_psd(a, tol)) throw DomainError("semidefinite_cholesky: matrix is not positive semidefinite");
  const ComplexMatrix h = hermitian_part(a);
  const Eigen::Index n = h.rows();
  const double floor = cholesky_pivot_floor(h, tol);
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double pivot = h(k, k).real();
    for (Eigen::Index i = 0; i < k; ++i) pivot -= std::norm(f(i, k));
    if (pivot <= floor) continue;
    const double root = std::sqrt(pivot);
    f(k, k) = root;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      Complex acc = h(k, j);
      for (Eigen::Index i = 0; i < k; ++i) acc -= std::conj(f(i, k)) * f(i, j);
      f(k, j) = acc / root;
    }
  }
  return f;
}

/// Number of singular values above rank_tol times the largest one.
inline std::size_t numerical_rank(const ComplexMatrix& a, const Tolerances& tol = {}) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  const double cutoff = tol.rank_tol * sv(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

/// ||X - Y||_F <= recon_tol * max(||Y||_F, floor_scale).
inline bool within_recon(const ComplexMatrix& x, const ComplexMatrix& y, const Tolerances& tol,
                         double floor_scale = 0.0) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return (x - y).norm() <= tol.recon_tol * std::max(y.norm(), floor_scale);
}

}  // namespace posparam
