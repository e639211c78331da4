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

// Jacobi (near-tridiagonal) parametrization of positive matrices.
//
// An (n+1) x (n+1) PSD matrix A is written A = D*D with the upper
// triangular factor
//
//   D = [ s0 e0 | J1 e0 | J2 J1 e0 | ... | Jn ... J1 e0 ],
//
// where J_k carries a_1..a_n on the subdiagonal, b_0.. on the diagonal and,
// strictly above the diagonal, c_{i,j} in columns j <= k-1 and a_j on the
// remaining superdiagonal. J_1 is symmetric tridiagonal. Column k of D has
// diagonal entry a_1 ... a_k. Indices are 0-based.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "posparam/errors.hpp"
#include "posparam/matcore.hpp"

namespace posparam {

struct JacobiParameters {
  double s0 = 0.0;
  std::vector<double> a;   // a_1 .. a_n, stored at a[0] .. a[n-1]
  std::vector<Complex> b;  // b_0 .. b_{n-1}
  ComplexMatrix c;         // n x n, c(i, j) used for 0 <= i < j <= n-1

  JacobiParameters() = default;

  /// All-zero parameter set for an (n+1) x (n+1) matrix.
  explicit JacobiParameters(std::size_t n)
      : a(n, 0.0),
        b(n, Complex(0.0, 0.0)),
        c(ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

  std::size_t n() const { return a.size(); }
  double a_k(std::size_t k) const { return a.at(k - 1); }

  void validate() const {
    if (!(s0 >= 0.0) || !std::isfinite(s0)) throw DomainError("Jacobi parameters: s0 must be finite and >= 0");
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!(a[k] >= 0.0) || !std::isfinite(a[k])) {
        throw DomainError("Jacobi parameters: a_" + std::to_string(k + 1) + " must be finite and >= 0");
      }
    }
    if (b.size() != n()) throw DimensionError("Jacobi parameters: expected " + std::to_string(n()) + " b values");
    if (c.rows() != static_cast<Eigen::Index>(n()) || c.cols() != static_cast<Eigen::Index>(n())) {
      throw DimensionError("Jacobi parameters: c table must be n x n");
    }
  }
};

/// The (n+1) x (n+1) matrix J_k, 1 <= k <= n. Diagonal entries past b_{n-1}
/// are 0.
inline ComplexMatrix build_jk(const JacobiParameters& p, std::size_t k) {
  const std::size_t n = p.n();
  if (k < 1 || k > n) {
    throw DimensionError("build_jk: k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  const auto size = static_cast<Eigen::Index>(n + 1);
  ComplexMatrix j = ComplexMatrix::Zero(size, size);
  for (std::size_t i = 0; i < n; ++i) j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p.b[i];
  for (std::size_t i = 1; i <= n; ++i) {
    j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = p.a[i - 1];
  }
  for (std::size_t col = 1; col <= n; ++col) {
    if (col <= k - 1) {
      for (std::size_t row = 0; row < col; ++row) {
        j(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            p.c(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      }
    } else {
      j(static_cast<Eigen::Index>(col - 1), static_cast<Eigen::Index>(col)) = p.a[col - 1];
    }
  }
  return j;
}

/// Upper-triangular factor D with columns s0 e0, J1 e0, J2 J1 e0, ...
inline ComplexMatrix jacobi_cholesky(const JacobiParameters& p) {
  p.validate();
  const auto size = static_cast<Eigen::Index>(p.n() + 1);
  ComplexMatrix d = ComplexMatrix::Zero(size, size);
  d(0, 0) = p.s0;
  ComplexVector col = ComplexVector::Unit(size, 0);
  for (std::size_t k = 1; k <= p.n(); ++k) {
    col = build_jk(p, k) * col;
    d.col(static_cast<Eigen::Index>(k)) = col;
  }
  return d;
}

/// A = D*D, so A_ij = <col_i, col_j> (conjugate-linear in the first slot).
inline ComplexMatrix jacobi_reconstruct(const JacobiParameters& p) {
  const ComplexMatrix d = jacobi_cholesky(p);
  return d.adjoint() * d;
}

/// s0^2 * prod_k (a_1 ... a_k)^2.
inline double jacobi_determinant(const JacobiParameters& p) {
  double det = p.s0 * p.s0;
  double prefix = 1.0;
  for (double ak : p.a) {
    prefix *= ak;
    det *= prefix * prefix;
  }
  return det;
}

/// Near-tridiagonal model of a PSD matrix, column by column. At step k the
/// new factor column x solves D_{k-1}* x = (A_{0,k} .. A_{k-1,k}); its
/// entries are affine in the new unknowns c_{0,k-1} .. c_{k-2,k-1}, b_{k-1},
/// each scaled by the previous pivot a_1 ... a_{k-1}. Unknowns behind a
/// vanished pivot are set to 0 and the final residual decides.
inline JacobiParameters jacobi_extract(const ComplexMatrix& a, const Tolerances& tol = {}) {
  require_square(a, "jacobi_extract");
  if (a.rows() == 0) throw DimensionError("jacobi_extract: empty matrix");
  if (!is_psd(a, tol)) throw DomainError("jacobi_extract: matrix is not positive semidefinite");
  const ComplexMatrix h = hermitian_part(a);
  const Eigen::Index size = h.rows();
  const std::size_t n = static_cast<std::size_t>(size - 1);
  const double floor = cholesky_pivot_floor(h, tol);  // on squared pivots

  JacobiParameters p(n);
  p.s0 = std::sqrt(std::max(0.0, h(0, 0).real()));
  if (p.s0 * p.s0 <= floor) p.s0 = 0.0;

  ComplexMatrix d = ComplexMatrix::Zero(size, size);
  d(0, 0) = p.s0;
  ComplexVector prev = ComplexVector::Unit(size, 0);  // J_{k-1} ... J_1 e0 (e0 for k = 1)

  for (std::size_t k = 1; k <= n; ++k) {
    const auto ek = static_cast<Eigen::Index>(k);
    // For k = 1 the pivot is the unit entry of e0; afterwards it is a1 ... a_{k-1}.
    const Complex piv = prev(ek - 1);
    const bool piv_ok = k == 1 || std::norm(piv) > floor;

    // Column k with the new unknowns (and a_k) still zero.
    const ComplexVector known = build_jk(p, k) * prev;

    ComplexVector x = known.head(ek);
    if (piv_ok) {
      for (Eigen::Index r = 0; r < ek; ++r) {
        const double delta = d(r, r).real();
        if (delta * delta <= floor) continue;  // unknown behind a vanished pivot stays 0
        Complex acc = h(r, ek);
        for (Eigen::Index q = 0; q < r; ++q) acc -= std::conj(d(q, r)) * x(q);
        x(r) = acc / delta;
      }
      for (Eigen::Index r = 0; r < ek; ++r) {
        const Complex theta = (x(r) - known(r)) / piv;
        if (r == ek - 1) {
          p.b[k - 1] = theta;
        } else {
          p.c(r, ek - 1) = theta;
        }
      }
    }

    const double rem = h(ek, ek).real() - x.squaredNorm();
    double diag = 0.0;
    if (rem > floor) diag = std::sqrt(rem);
    if (piv_ok && std::abs(piv) > 0.0) p.a[k - 1] = diag / std::abs(piv);

    d.col(ek).head(ek) = x;
    d(ek, ek) = p.a[k - 1] * piv;
    prev = d.col(ek);
  }

  const ComplexMatrix back = jacobi_reconstruct(p);
  if ((back - h).norm() > tol.recon_tol * std::max(h.norm(), 1e-300)) {
    throw ExtractionError("jacobi_extract: no near-tridiagonal model reproduces the matrix "
                          "(a pivot vanished before the last column)");
  }
  return p;
}

/// Moment sequence s_0 .. s_{2*order}; its Hankel matrix H_ij = s_{i+j}
/// is checked PSD on construction.
class HankelMoments {
 public:
  HankelMoments(std::vector<Complex> s, const Tolerances& tol = {}) : s_(std::move(s)) {
    if (s_.empty() || s_.size() % 2 == 0) {
      throw DimensionError("HankelMoments: need an odd number 2n+1 of moments, got " + std::to_string(s_.size()));
    }
    if (!is_psd(hankel(), tol)) throw DomainError("HankelMoments: Hankel matrix is not positive semidefinite");
  }

  std::size_t order() const { return (s_.size() - 1) / 2; }
  const std::vector<Complex>& s() const { return s_; }

  ComplexMatrix hankel() const {
    const auto size = static_cast<Eigen::Index>(order() + 1);
    ComplexMatrix h(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) h(i, j) = s_[static_cast<std::size_t>(i + j)];
    }
    return h;
  }

 private:
  std::vector<Complex> s_;
};

namespace detail {

inline void require_hermitian_tridiagonal(const ComplexMatrix& j, const Tolerances& tol) {
  require_square(j, "tridiagonal matrix");
  require_finite(j, "tridiagonal matrix");
  const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
  for (Eigen::Index r = 0; r < j.rows(); ++r) {
    for (Eigen::Index c = 0; c < j.cols(); ++c) {
      if (std::abs(r - c) > 1 && std::abs(j(r, c)) > tol.psd_eig_tol * scale) {
        throw DomainError("expected a tridiagonal matrix; entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") is nonzero");
      }
      if (std::abs(j(r, c) - std::conj(j(c, r))) > tol.psd_eig_tol * scale) {
        throw DomainError("expected a real symmetric tridiagonal matrix; entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") breaks the symmetry");
      }
    }
  }
}

}  // namespace detail

/// s_0 = s0 and s_k = s0 <J^k e0, e0> for 1 <= k <= m; the Hankel matrix of
/// the result is the Gram matrix of sqrt(s0) J^i e0.
inline HankelMoments hankel_from_tridiagonal(const ComplexMatrix& j, double s0, std::size_t m,
                                             const Tolerances& tol = {}) {
  detail::require_hermitian_tridiagonal(j, tol);
  if (!(s0 >= 0.0)) throw DomainError("hankel_from_tridiagonal: s0 must be >= 0");
  if (m % 2 != 0) throw DimensionError("hankel_from_tridiagonal: m must be even");
  std::vector<Complex> s(m + 1);
  ComplexVector v = ComplexVector::Unit(j.rows(), 0);
  s[0] = s0;
  for (std::size_t k = 1; k <= m; ++k) {
    v = j * v;
    s[k] = s0 * v(0);
  }
  return HankelMoments(std::move(s), tol);
}

struct TridiagonalModel {
  ComplexMatrix j;
  double s0 = 0.0;
};

/// Inverts hankel_from_tridiagonal by Cholesky of the normalized Hankel
/// matrix H = R^T R: a_k = R_kk / R_{k-1,k-1},
/// b_k = R_{k,k+1} / R_kk - R_{k-1,k} / R_{k-1,k-1}.
///
/// With moments up to s_{2n} the result is (n+1) x (n+1) and its last
/// diagonal entry, which no moment of that order sees, is 0. When the
/// Hankel matrix becomes singular at size p + 1 the moments come from a
/// p-point measure and the p x p model is returned, provided it reproduces
/// every given moment.
inline TridiagonalModel tridiagonal_from_hankel(const HankelMoments& h, const Tolerances& tol = {}) {
  const std::vector<Complex>& raw = h.s();
  const double s0 = raw[0].real();
  std::vector<double> mu(raw.size());
  const double scale = std::max(1.0, std::abs(s0));
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (std::abs(raw[k].imag()) > tol.psd_eig_tol * scale) {
      throw DomainError("tridiagonal_from_hankel: moment s_" + std::to_string(k) + " is not real");
    }
  }
  if (!(s0 > 0.0)) throw RankDeficiencyError(0, "tridiagonal_from_hankel: s0 vanishes");
  for (std::size_t k = 0; k < raw.size(); ++k) mu[k] = raw[k].real() / s0;

  const std::size_t full = h.order() + 1;
  const std::size_t last = raw.size() - 1;
  auto moment = [&](std::size_t idx) { return mu[idx]; };

  double diag_scale = 0.0;
  for (std::size_t i = 0; i < full; ++i) diag_scale = std::max(diag_scale, std::abs(moment(2 * i)));
  const double pivot_floor = tol.psd_eig_tol * diag_scale;

  // Rows 0 .. full-1, columns 0 .. full of the Cholesky factor, where moments exist.
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full + 1));
  std::size_t p = 0;
  for (std::size_t i = 0; i < full; ++i) {
    double pivot = moment(2 * i);
    for (std::size_t l = 0; l < i; ++l) pivot -= r(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i)) *
                                             r(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(i));
    if (pivot <= pivot_floor) break;
    const double root = std::sqrt(pivot);
    const auto ei = static_cast<Eigen::Index>(i);
    r(ei, ei) = root;
    for (std::size_t jdx = i + 1; jdx <= full && i + jdx <= last; ++jdx) {
      double acc = moment(i + jdx);
      for (std::size_t l = 0; l < i; ++l) {
        acc -= r(static_cast<Eigen::Index>(l), ei) * r(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(jdx));
      }
      r(ei, static_cast<Eigen::Index>(jdx)) = acc / root;
    }
    ++p;
  }

  ComplexMatrix j = ComplexMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    const auto ek = static_cast<Eigen::Index>(k);
    if (k >= 1) {
      const double ak = r(ek, ek) / r(ek - 1, ek - 1);
      j(ek, ek - 1) = ak;
      j(ek - 1, ek) = ak;
    }
    // b_k needs s_{2k+1}; beyond the data it stays 0.
    if (2 * k + 1 <= last) {
      double bk = r(ek, ek + 1) / r(ek, ek);
      if (k >= 1) bk -= r(ek - 1, ek) / r(ek - 1, ek - 1);
      j(ek, ek) = bk;
    }
  }

  // Every supplied moment must come back.
  ComplexVector v = ComplexVector::Unit(static_cast<Eigen::Index>(p), 0);
  double mscale = 0.0;
  for (double m : mu) mscale = std::max(mscale, std::abs(m));
  for (std::size_t k = 1; k <= last; ++k) {
    v = j * v;
    if (std::abs(v(0).real() - mu[k]) > tol.recon_tol * std::max(1.0, mscale)) {
      throw RankDeficiencyError(p, "tridiagonal_from_hankel: Hankel matrix is singular and the moments are not "
                                   "those of a finitely supported measure");
    }
  }
  return {j, s0};
}

}  // namespace posparam
