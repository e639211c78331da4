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

// Quantum-state layer: density matrices, bipartite blocks, partial
// transpose, Kraus operators from SC Cholesky rows, and Jacobi coordinates
// of qubit states.
//
// Bipartite ordering: system A indexes the outer m x m grid of n x n
// blocks, so basis vector |i>|j> sits at position i*n + j. vec(K) of an
// m x n matrix stacks its rows.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posparam/errors.hpp"
#include "posparam/matcore.hpp"
#include "posparam/sc.hpp"

namespace posparam {

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, const Tolerances& tol = {}) : mat_(std::move(mat)) {
    require_square(mat_, "DensityMatrix");
    if (mat_.rows() == 0) throw DimensionError("DensityMatrix: empty matrix");
    if (!is_psd(mat_, tol)) throw DomainError("DensityMatrix: matrix is not positive semidefinite");
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.recon_tol) {
      throw DomainError("DensityMatrix: trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    mat_ = hermitian_part(mat_);
  }

  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

class BipartiteState {
 public:
  BipartiteState(std::size_t dim_a, std::size_t dim_b, DensityMatrix rho)
      : dim_a_(dim_a), dim_b_(dim_b), rho_(std::move(rho)) {
    if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != rho_.dim()) {
      throw DimensionError("BipartiteState: dims " + std::to_string(dim_a) + "x" + std::to_string(dim_b) +
                           " do not factor a state of dimension " + std::to_string(rho_.dim()));
    }
  }

  BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexMatrix rho, const Tolerances& tol = {})
      : BipartiteState(dim_a, dim_b, DensityMatrix(std::move(rho), tol)) {}

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const DensityMatrix& rho() const { return rho_; }
  const ComplexMatrix& mat() const { return rho_.mat(); }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  DensityMatrix rho_;
};

enum class Verdict { kSeparable, kEntangled, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSeparable:
      return "SEPARABLE";
    case Verdict::kEntangled:
      return "ENTANGLED";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

/// One term w (u u*) (x) (v v*) of a product decomposition.
struct ProductTerm {
  double weight = 0.0;
  ComplexVector vec_a;
  ComplexVector vec_b;
};

struct SeparabilityVerdict {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<std::vector<ProductTerm>> certificate;
  std::string reason;
};

/// Sum of the certificate terms as an (m n) x (m n) matrix.
inline ComplexMatrix certificate_sum(const std::vector<ProductTerm>& terms, std::size_t dim_a, std::size_t dim_b) {
  const auto dim = static_cast<Eigen::Index>(dim_a * dim_b);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const ProductTerm& t : terms) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < t.vec_a.size(); ++i) {
      v.segment(i * t.vec_b.size(), t.vec_b.size()) = t.vec_a(i) * t.vec_b;
    }
    sum += t.weight * v * v.adjoint();
  }
  return sum;
}

/// Transposes every n x n block in place.
inline ComplexMatrix partial_transpose_b(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (rho.rows() != static_cast<Eigen::Index>(dim_a * dim_b) || rho.cols() != rho.rows()) {
    throw DimensionError("partial_transpose_b: matrix does not match dims");
  }
  const auto m = static_cast<Eigen::Index>(dim_a);
  const auto n = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out.block(i * n, j * n, n, n) = rho.block(i * n, j * n, n, n).transpose();
  }
  return out;
}

inline ComplexMatrix partial_transpose_b(const BipartiteState& s) {
  return partial_transpose_b(s.mat(), s.dim_a(), s.dim_b());
}

/// PPT is necessary for separability and sufficient for 2x2, 2x3 and 3x2.
inline SeparabilityVerdict ppt_verdict(const BipartiteState& s, const Tolerances& tol = {}) {
  const ComplexMatrix pt = partial_transpose_b(s);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(pt), Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues()(0);
  const double spectral = std::max(std::abs(min_ev), std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
  SeparabilityVerdict out;
  if (min_ev < -psd_floor(spectral, tol)) {
    out.verdict = Verdict::kEntangled;
    out.reason = "partial transpose has eigenvalue " + std::to_string(min_ev);
    return out;
  }
  const std::size_t m = s.dim_a();
  const std::size_t n = s.dim_b();
  const bool decidable = (m == 2 && (n == 2 || n == 3)) || (m == 3 && n == 2) || m == 1 || n == 1;
  out.verdict = decidable ? Verdict::kSeparable : Verdict::kInconclusive;
  out.reason = decidable ? "PPT holds and PPT is sufficient in these dimensions"
                         : "PPT holds but is not sufficient in these dimensions";
  return out;
}

struct KrausSet {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<ComplexMatrix> ops;
  std::vector<std::size_t> rows;  // source row of the Cholesky factor (0-based)
};

/// m x n operator K with vec(K) = conj(row) (row-major vec).
inline ComplexMatrix kraus_from_row(const ComplexVector& row, std::size_t dim_a, std::size_t dim_b) {
  const auto m = static_cast<Eigen::Index>(dim_a);
  const auto n = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix k(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = std::conj(row(i * n + j));
  }
  return k;
}

inline ComplexVector vec_rows(const ComplexMatrix& k) {
  ComplexVector v(k.size());
  for (Eigen::Index i = 0; i < k.rows(); ++i) v.segment(i * k.cols(), k.cols()) = k.row(i).transpose();
  return v;
}

/// Cholesky factor of the state computed through its SC parameters.
inline ComplexMatrix state_sc_factor(const BipartiteState& s, const Tolerances& tol = {}) {
  return sc_cholesky(sc_extract(s.mat(), tol), tol);
}

/// Kraus operators from the rows of the SC Cholesky factor F, rho = F*F =
/// sum_k vec(K_k) vec(K_k)*. Zero rows are dropped.
inline KrausSet kraus_from_state(const BipartiteState& s, const Tolerances& tol = {}) {
  const ComplexMatrix f = state_sc_factor(s, tol);
  KrausSet out{s.dim_a(), s.dim_b(), {}, {}};
  for (Eigen::Index r = 0; r < f.rows(); ++r) {
    if (f.row(r).cwiseAbs().maxCoeff() == 0.0) continue;
    out.ops.push_back(kraus_from_row(f.row(r).transpose(), s.dim_a(), s.dim_b()));
    out.rows.push_back(static_cast<std::size_t>(r));
  }
  return out;
}

inline ComplexMatrix kraus_sum(const KrausSet& k) {
  const auto dim = static_cast<Eigen::Index>(k.dim_a * k.dim_b);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& op : k.ops) {
    const ComplexVector v = vec_rows(op);
    sum += v * v.adjoint();
  }
  return sum;
}

/// (s0, a1, b0) with rho = [[s0^2, s0 b0], [s0 conj(b0), |b0|^2 + a1^2]].
struct QubitJacobiCoords {
  double s0 = 0.0;
  double a1 = 0.0;
  Complex b0{0.0, 0.0};

  void validate(const Tolerances& tol = {}) const {
    if (!(s0 >= 0.0) || !(a1 >= 0.0) || !std::isfinite(s0) || !std::isfinite(a1) || !std::isfinite(b0.real()) ||
        !std::isfinite(b0.imag())) {
      throw DomainError("qubit coordinates: s0 and a1 must be finite and >= 0");
    }
    const double radius2 = s0 * s0 + a1 * a1 + std::norm(b0);
    if (std::abs(radius2 - 1.0) > tol.recon_tol) {
      throw DomainError("qubit coordinates: s0^2 + a1^2 + |b0|^2 = " + std::to_string(radius2) + ", expected 1");
    }
    if (s0 == 0.0 && b0 != Complex(1.0, 0.0)) {
      throw DomainError("qubit coordinates: s0 = 0 requires b0 = 1");
    }
  }
};

/// Jacobi coordinates of a qubit state; a vanished s0 takes b0 = 1.
inline QubitJacobiCoords qubit_to_jacobi(const DensityMatrix& rho, const Tolerances& tol = {}) {
  if (rho.dim() != 2) throw DimensionError("qubit_to_jacobi: expected a 2x2 density matrix");
  const ComplexMatrix& a = rho.mat();
  const double floor = cholesky_pivot_floor(a, tol);
  QubitJacobiCoords q;
  const double a00 = a(0, 0).real();
  if (a00 > floor) {
    q.s0 = std::sqrt(a00);
    q.b0 = a(0, 1) / q.s0;
  } else {
    q.s0 = 0.0;
    q.b0 = Complex(1.0, 0.0);
  }
  const double rem = a(1, 1).real() - std::norm(q.b0);
  q.a1 = rem > floor ? std::sqrt(rem) : 0.0;
  return q;
}

inline DensityMatrix jacobi_to_qubit(const QubitJacobiCoords& q, const Tolerances& tol = {}) {
  q.validate(tol);
  ComplexMatrix m(2, 2);
  m(0, 0) = q.s0 * q.s0;
  m(0, 1) = q.s0 * q.b0;
  m(1, 0) = q.s0 * std::conj(q.b0);
  m(1, 1) = std::norm(q.b0) + q.a1 * q.a1;
  return DensityMatrix(m, tol);
}

inline bool qubit_is_pure(const QubitJacobiCoords& q, const Tolerances& tol = {}) { return q.a1 <= tol.rank_tol; }

/// Point of the hemisphere picture: (Re b0, Im b0, s0), s0 vertical.
inline Eigen::Vector3d hemisphere_point(const QubitJacobiCoords& q) {
  return {q.b0.real(), q.b0.imag(), q.s0};
}

}  // namespace posparam
