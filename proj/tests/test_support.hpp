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

// Random generators and independent oracles shared by the unit and
// acceptance suites.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "posparam/matcore.hpp"

namespace posparam::testing {

inline ComplexMatrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline ComplexVector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) { return gaussian(rng, n, 1).col(0); }

/// G G* with G of size n x rank.
inline ComplexMatrix random_psd(std::mt19937_64& rng, Eigen::Index n, Eigen::Index rank) {
  const ComplexMatrix g = gaussian(rng, n, rank);
  const ComplexMatrix a = g * g.adjoint();
  return (a + a.adjoint()) * 0.5;
}

inline ComplexMatrix random_pd(std::mt19937_64& rng, Eigen::Index n) { return random_psd(rng, n, n); }

inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index n, Eigen::Index rank) {
  ComplexMatrix a = random_psd(rng, n, rank);
  return a / a.trace().real();
}

inline ComplexMatrix pure_density(const ComplexVector& v) {
  const ComplexVector u = v.normalized();
  return u * u.adjoint();
}

/// Random matrix rescaled to the given spectral norm.
inline ComplexMatrix random_with_norm(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double norm) {
  const ComplexMatrix g = gaussian(rng, rows, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(g);
  return g * (norm / svd.singularValues()(0));
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Determinant by partial-pivot LU.
inline double lu_determinant(const ComplexMatrix& a) { return Eigen::PartialPivLU<ComplexMatrix>(a).determinant().real(); }

/// Rank from the eigenvalues of a Hermitian matrix, relative cutoff.
inline Eigen::Index eigen_rank(const ComplexMatrix& a, double rel) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > rel * top) ++r;
  }
  return r;
}

inline double min_eigenvalue(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((a + a.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double rel_error(const ComplexMatrix& x, const ComplexMatrix& y) { return (x - y).norm() / y.norm(); }

/// Maximally entangled state (1/sqrt(d)) sum |ii>.
inline ComplexMatrix maximally_entangled(Eigen::Index d) {
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return pure_density(v);
}

}  // namespace posparam::testing
