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

// Schur-Constantinescu (SC) parametrization of positive matrices.
//
// A positive n x n matrix is encoded by its diagonal d_i and a table of
// contractions G_ij, i < j. The table is built bottom-up: the trailing 2x2
// block gives G_{n-1,n}; for k = n-2 .. 1 the off-diagonal row of k is
// written as sqrt(d_k) * R_k * L_{k+1}, where L_{k+1} is the upper Cholesky
// factor of the trailing block, and the row contraction R_k is peeled into
// G_{k,k+1} .. G_{k,n} by defect chains:
//
//   R_k = [ G_{k,k+1},  D_{k,k+1} G_{k,k+2},  D_{k,k+1} D_{k,k+2} G_{k,k+3}, ... ]
//
// with D = sqrt(1 - |G|^2). Indices in the public API are 1-based.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "posparam/errors.hpp"
#include "posparam/matcore.hpp"

namespace posparam {

class SCParameters {
 public:
  SCParameters() = default;

  explicit SCParameters(std::vector<double> diag)
      : diag_(std::move(diag)),
        gammas_(ComplexMatrix::Zero(static_cast<Eigen::Index>(diag_.size()),
                                    static_cast<Eigen::Index>(diag_.size()))) {}

  std::size_t n() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }
  double d(std::size_t i) const { return diag_.at(i - 1); }

  /// G_ij for 1 <= i < j <= n.
  Complex gamma(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    return gammas_(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
  }

  void set_gamma(std::size_t i, std::size_t j, Complex g) {
    check_pair(i, j);
    gammas_(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = g;
  }

  /// Checks d_i >= 0, |G_ij| <= 1 + psd_eig_tol and the zero-diagonal convention.
  void validate(const Tolerances& tol = {}) const {
    for (std::size_t i = 1; i <= n(); ++i) {
      if (!(d(i) >= 0.0) || !std::isfinite(d(i))) {
        throw DomainError("SC parameters: diagonal entry d_" + std::to_string(i) + " must be finite and >= 0");
      }
    }
    for (std::size_t i = 1; i <= n(); ++i) {
      for (std::size_t j = i + 1; j <= n(); ++j) {
        const double mag = std::abs(gamma(i, j));
        if (!(mag <= 1.0 + tol.psd_eig_tol)) {
          throw DomainError("SC parameters: |G_" + std::to_string(i) + "," + std::to_string(j) +
                            "| exceeds 1");
        }
        if (d(i) * d(j) == 0.0 && mag != 0.0) {
          throw DomainError("SC parameters: G_" + std::to_string(i) + "," + std::to_string(j) +
                            " must vanish when d_i * d_j = 0");
        }
      }
    }
  }

 private:
  void check_pair(std::size_t i, std::size_t j) const {
    if (i < 1 || j <= i || j > n()) {
      throw DimensionError("SC index (" + std::to_string(i) + "," + std::to_string(j) +
                           ") out of range for n = " + std::to_string(n()));
    }
  }

  std::vector<double> diag_;
  ComplexMatrix gammas_;
};

/// A contraction together with its two defect operators.
struct BlockContraction {
  ComplexMatrix gamma;
  ComplexMatrix defect;      // (I - G*G)^{1/2}
  ComplexMatrix defect_adj;  // (I - GG*)^{1/2}
};

namespace detail {

/// (I - X)^{1/2} for Hermitian 0 <= X <= I (up to rounding); eigenvalues of
/// I - X below zero clamp to zero.
inline ComplexMatrix defect_root(const ComplexMatrix& x) {
  const Eigen::Index n = x.rows();
  if (n == 0) return ComplexMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      hermitian_part(ComplexMatrix::Identity(n, n) - x));
  const RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Clamps singular values above 1 down to 1.
inline ComplexMatrix clamp_to_contraction(const ComplexMatrix& g) {
  if (g.size() == 0) return g;
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector sv = svd.singularValues().cwiseMin(1.0);
  return svd.matrixU() * sv.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace detail

inline BlockContraction make_contraction(const ComplexMatrix& gamma) {
  return {gamma, detail::defect_root(gamma.adjoint() * gamma),
          detail::defect_root(gamma * gamma.adjoint())};
}

/// Contraction G with A12 = A11^{1/2} G A22^{1/2}; exists iff the block
/// matrix [[A11, A12], [A12*, A22]] is PSD.
inline BlockContraction block_contraction(const ComplexMatrix& a11, const ComplexMatrix& a12,
                                          const ComplexMatrix& a22, const Tolerances& tol = {}) {
  require_square(a11, "block_contraction (A11)");
  require_square(a22, "block_contraction (A22)");
  if (a12.rows() != a11.rows() || a12.cols() != a22.rows()) {
    throw DimensionError("block_contraction: A12 is " + std::to_string(a12.rows()) + "x" +
                         std::to_string(a12.cols()) + ", expected " + std::to_string(a11.rows()) + "x" +
                         std::to_string(a22.rows()));
  }
  if (!is_psd(a11, tol) || !is_psd(a22, tol)) {
    throw DomainError("block_contraction: diagonal blocks must be positive semidefinite");
  }
  ComplexMatrix gamma = pinv_sqrt(a11, tol) * a12 * pinv_sqrt(a22, tol);
  const double scale = std::sqrt(a11.squaredNorm() + 2.0 * a12.squaredNorm() + a22.squaredNorm());
  const ComplexMatrix back = principal_sqrt(a11, tol) * gamma * principal_sqrt(a22, tol);
  if ((back - a12).norm() > tol.recon_tol * std::max(scale, 1e-300)) {
    throw DomainError("block matrix not PSD: A12 has components outside range(A11) x range(A22)");
  }
  const double norm = spectral_norm(gamma);
  if (norm > 1.0 + tol.psd_eig_tol) {
    throw DomainError("block matrix not PSD: contraction norm " + std::to_string(norm) + " > 1");
  }
  if (norm > 1.0) gamma = detail::clamp_to_contraction(gamma);
  return make_contraction(gamma);
}

/// Peels a row contraction [T_1 ... T_k] into G_1 .. G_k with
/// T_i = D_{G_1*} ... D_{G_{i-1}*} G_i. Singular defect chains take the
/// minimal-norm solution, which is G_i = 0 in the scalar case.
inline std::vector<BlockContraction> row_contraction_decompose(const std::vector<ComplexMatrix>& blocks,
                                                               const Tolerances& tol = {}) {
  std::vector<BlockContraction> out;
  if (blocks.empty()) return out;
  const Eigen::Index rows = blocks.front().rows();
  ComplexMatrix ttstar = ComplexMatrix::Zero(rows, rows);
  for (const ComplexMatrix& t : blocks) {
    if (t.rows() != rows) throw DimensionError("row_contraction_decompose: blocks differ in row count");
    require_finite(t, "row_contraction_decompose");
    ttstar += t * t.adjoint();
  }
  const double norm2 = spectral_norm(ttstar);
  if (norm2 > 1.0 + tol.psd_eig_tol) {
    throw DomainError("row_contraction_decompose: row is not a contraction (||TT*|| = " +
                      std::to_string(norm2) + ")");
  }
  ComplexMatrix chain = ComplexMatrix::Identity(rows, rows);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const ComplexMatrix& t = blocks[i];
    ComplexMatrix g = pseudo_inverse(chain, tol.rank_tol) * t;
    if ((chain * g - t).norm() > tol.recon_tol * std::max(1.0, t.norm())) {
      throw DecompositionError("row_contraction_decompose: block " + std::to_string(i + 1) +
                               " is not reachable through the defect chain");
    }
    g = detail::clamp_to_contraction(g);
    BlockContraction bc = make_contraction(g);
    chain = chain * bc.defect_adj;
    out.push_back(std::move(bc));
  }
  return out;
}

/// Inverse of row_contraction_decompose: T_i = D_{G_1*} ... D_{G_{i-1}*} G_i.
inline std::vector<ComplexMatrix> row_contraction_assemble(const std::vector<BlockContraction>& gammas) {
  std::vector<ComplexMatrix> out;
  if (gammas.empty()) return out;
  const Eigen::Index rows = gammas.front().gamma.rows();
  ComplexMatrix chain = ComplexMatrix::Identity(rows, rows);
  for (const BlockContraction& g : gammas) {
    if (g.gamma.rows() != rows) throw DimensionError("row_contraction_assemble: blocks differ in row count");
    out.push_back(chain * g.gamma);
    chain = chain * g.defect_adj;
  }
  return out;
}

namespace detail {

/// Scalar form of the row peeling. Entries flagged in `skip` (zero diagonal
/// or a zero row of the trailing factor) get G = 0 and leave the chain as is.
/// A squared chain at or below `chain_floor` is degenerate: later G are 0.
/// |G| with 1 - |G|^2 <= chain_floor snaps onto the unit circle.
inline std::vector<Complex> peel_scalar_row(const ComplexVector& r, const std::vector<bool>& skip,
                                            double chain_floor) {
  std::vector<Complex> g(static_cast<std::size_t>(r.size()), Complex(0.0, 0.0));
  double chain2 = 1.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    if (skip[static_cast<std::size_t>(j)] || chain2 <= chain_floor) continue;
    Complex v = r(j) / std::sqrt(chain2);
    const double mag = std::abs(v);
    if (mag > 1.0 || 1.0 - mag * mag <= chain_floor) {
      v = (mag == 0.0) ? Complex(1.0, 0.0) : v / mag;
      // v / |v| can round to a modulus of 1 + ulp.
      while (std::abs(v) > 1.0) v *= std::nextafter(1.0, 0.0);
    }
    g[static_cast<std::size_t>(j)] = v;
    chain2 *= std::max(0.0, 1.0 - std::norm(v));
  }
  return g;
}

inline ComplexVector assemble_scalar_row(const std::vector<Complex>& g) {
  ComplexVector r(static_cast<Eigen::Index>(g.size()));
  double chain2 = 1.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    r(static_cast<Eigen::Index>(j)) = std::sqrt(chain2) * g[j];
    chain2 *= std::max(0.0, 1.0 - std::norm(g[j]));
  }
  return r;
}

inline double diag_floor(const std::vector<double>& d, const Tolerances& tol) {
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return tol.psd_eig_tol * m;
}

}  // namespace detail

/// SC parameters of a scalar PSD matrix, by the bottom-up recursion.
inline SCParameters sc_extract(const ComplexMatrix& a, const Tolerances& tol = {}) {
  require_square(a, "sc_extract");
  if (!is_psd(a, tol)) throw DomainError("sc_extract: matrix is not positive semidefinite");
  const ComplexMatrix h = hermitian_part(a);
  const Eigen::Index n = h.rows();
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = std::max(0.0, h(i, i).real());
  SCParameters p(diag);
  const double dfloor = detail::diag_floor(diag, tol);

  for (Eigen::Index k = n - 2; k >= 0; --k) {
    const Eigen::Index m = n - k - 1;
    const double dk = diag[static_cast<std::size_t>(k)];
    if (dk <= dfloor) continue;  // G_kj = 0 convention
    const ComplexMatrix f = semidefinite_cholesky(h.bottomRightCorner(m, m), tol);
    const ComplexVector rhs = h.row(k).tail(m).transpose() / std::sqrt(dk);

    // R f = rhs, forward substitution over the upper-triangular factor;
    // zero rows of f leave their component of R at 0.
    ComplexVector r = ComplexVector::Zero(m);
    std::vector<bool> skip(static_cast<std::size_t>(m), false);
    for (Eigen::Index j = 0; j < m; ++j) {
      const bool zero_diag = diag[static_cast<std::size_t>(k + 1 + j)] <= dfloor;
      if (f(j, j).real() <= 0.0 || zero_diag) {
        skip[static_cast<std::size_t>(j)] = true;
        continue;
      }
      Complex acc = rhs(j);
      for (Eigen::Index i = 0; i < j; ++i) acc -= r(i) * f(i, j);
      r(j) = acc / f(j, j);
    }
    const ComplexVector fitted = (r.transpose() * f).transpose();
    if ((fitted - rhs).norm() > tol.recon_tol * std::max(rhs.norm(), f.norm())) {
      throw ExtractionError("sc_extract: row " + std::to_string(k + 1) +
                            " is inconsistent with the trailing Cholesky factor");
    }
    const std::vector<Complex> g = detail::peel_scalar_row(r, skip, tol.rank_tol);
    for (Eigen::Index j = 0; j < m; ++j) {
      p.set_gamma(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 2 + j),
                  g[static_cast<std::size_t>(j)]);
    }
  }
  return p;
}

/// The PSD matrix with diagonal d and SC parameters G (forward recursion).
inline ComplexMatrix sc_reconstruct(const SCParameters& p, const Tolerances& tol = {}) {
  p.validate(tol);
  const Eigen::Index n = static_cast<Eigen::Index>(p.n());
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  if (n == 0) return a;
  a(n - 1, n - 1) = p.diag().back();
  for (Eigen::Index k = n - 2; k >= 0; --k) {
    const Eigen::Index m = n - k - 1;
    const double dk = p.diag()[static_cast<std::size_t>(k)];
    a(k, k) = dk;
    std::vector<Complex> g(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
      g[static_cast<std::size_t>(j)] = p.gamma(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 2 + j));
    }
    const ComplexMatrix f = semidefinite_cholesky(a.bottomRightCorner(m, m), tol);
    const ComplexVector r = detail::assemble_scalar_row(g);
    const ComplexVector row = std::sqrt(dk) * (r.transpose() * f).transpose();
    a.row(k).tail(m) = row.transpose();
    a.col(k).tail(m) = row.conjugate();
  }
  return a;
}

/// Upper-triangular F, real diagonal >= 0, with F*F = sc_reconstruct(p).
inline ComplexMatrix sc_cholesky(const SCParameters& p, const Tolerances& tol = {}) {
  return semidefinite_cholesky(sc_reconstruct(p, tol), tol);
}

/// det = prod_i d_i * prod_{i<j} (1 - |G_ij|^2).
inline double sc_determinant(const SCParameters& p) {
  double det = 1.0;
  for (double v : p.diag()) det *= v;
  for (std::size_t i = 1; i <= p.n(); ++i) {
    for (std::size_t j = i + 1; j <= p.n(); ++j) det *= std::max(0.0, 1.0 - std::norm(p.gamma(i, j)));
  }
  return det;
}

/// Rank one iff every consecutive pair (p_l, p_{l+1}) of indices with a
/// positive diagonal has |G_{p_l, p_{l+1}}| = 1.
inline bool sc_is_rank_one(const SCParameters& p, const Tolerances& tol = {}) {
  const double dfloor = detail::diag_floor(p.diag(), tol);
  std::vector<std::size_t> support;
  for (std::size_t i = 1; i <= p.n(); ++i) {
    if (p.d(i) > dfloor) support.push_back(i);
  }
  if (support.empty()) throw DomainError("sc_is_rank_one: all diagonal entries vanish");
  for (std::size_t l = 0; l + 1 < support.size(); ++l) {
    if (1.0 - std::norm(p.gamma(support[l], support[l + 1])) > tol.rank_tol) return false;
  }
  return true;
}

}  // namespace posparam
