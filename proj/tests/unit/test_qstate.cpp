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

#include <gtest/gtest.h>

#include <random>

#include "posparam/qstate.hpp"
#include "test_support.hpp"

namespace posparam {
namespace {

using testing::kron;
using testing::pure_density;

TEST(DensityMatrixTest, Validation) {
  EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2) * 0.5));
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2)), DomainError);
  ComplexMatrix bad(2, 2);
  bad << 1.0, 1.0, 1.0, 0.0;
  EXPECT_THROW(DensityMatrix{bad}, DomainError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Zero(2, 3)), DimensionError);
  EXPECT_THROW(BipartiteState(2, 3, ComplexMatrix::Identity(4, 4) * 0.25), DimensionError);
}

TEST(PartialTransposeTest, InvolutionAndProducts) {
  std::mt19937_64 rng(31);
  const ComplexMatrix rho = testing::random_density(rng, 6, 6);
  EXPECT_LE((partial_transpose_b(partial_transpose_b(rho, 2, 3), 2, 3) - rho).norm(), 0.0);
  const ComplexVector u = testing::gaussian_vector(rng, 2);
  const ComplexVector w = testing::gaussian_vector(rng, 3);
  const ComplexMatrix prod = pure_density(kron(u, w));
  const ComplexMatrix expected = pure_density(kron(u, w.conjugate()));
  EXPECT_LE((partial_transpose_b(prod, 2, 3) - expected).norm(), 1e-14);
  EXPECT_THROW(partial_transpose_b(rho, 2, 2), DimensionError);
}

TEST(PptTest, BellIsEntangledMixedIsSeparable) {
  const BipartiteState bell(2, 2, testing::maximally_entangled(2));
  EXPECT_EQ(ppt_verdict(bell).verdict, Verdict::kEntangled);
  const BipartiteState mixed(2, 2, ComplexMatrix::Identity(4, 4) * 0.25);
  EXPECT_EQ(ppt_verdict(mixed).verdict, Verdict::kSeparable);
  const BipartiteState big(3, 3, ComplexMatrix::Identity(9, 9) / 9.0);
  EXPECT_EQ(ppt_verdict(big).verdict, Verdict::kInconclusive);
  const BipartiteState bell3(3, 3, testing::maximally_entangled(3));
  EXPECT_EQ(ppt_verdict(bell3).verdict, Verdict::kEntangled);
}

TEST(KrausTest, SumReproducesState) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index m = 2 + t % 2;
    const Eigen::Index n = 2 + (t / 2) % 2;
    const BipartiteState s(m, n, testing::random_density(rng, m * n, 1 + t % (m * n)));
    const KrausSet k = kraus_from_state(s);
    EXPECT_LE((kraus_sum(k) - s.mat()).norm(), 1e-8);
    for (const ComplexMatrix& op : k.ops) {
      EXPECT_EQ(op.rows(), m);
      EXPECT_EQ(op.cols(), n);
    }
  }
}

TEST(KrausTest, PureProductHasOneRankOneOperator) {
  std::mt19937_64 rng(33);
  const ComplexVector u = testing::gaussian_vector(rng, 3);
  const ComplexVector w = testing::gaussian_vector(rng, 2);
  const KrausSet k = kraus_from_state(BipartiteState(3, 2, pure_density(kron(u, w))));
  ASSERT_EQ(k.ops.size(), 1u);
  EXPECT_EQ(numerical_rank(k.ops[0]), 1u);
}

TEST(KrausTest, BellOperatorIsProportionalToIdentity) {
  const KrausSet k = kraus_from_state(BipartiteState(2, 2, testing::maximally_entangled(2)));
  ASSERT_EQ(k.ops.size(), 1u);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_LE((k.ops[0] - id).norm(), 1e-14);
}

TEST(KrausTest, VecRowsInvertsKrausFromRow) {
  std::mt19937_64 rng(34);
  const ComplexVector row = testing::gaussian_vector(rng, 6);
  EXPECT_EQ(vec_rows(kraus_from_row(row, 2, 3)), row.conjugate());
}

TEST(QubitTest, Poles) {
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  const QubitJacobiCoords qu = qubit_to_jacobi(DensityMatrix(up));
  EXPECT_EQ(qu.s0, 1.0);
  EXPECT_EQ(qu.a1, 0.0);
  EXPECT_EQ(qu.b0, Complex(0.0, 0.0));
  ComplexMatrix down = ComplexMatrix::Zero(2, 2);
  down(1, 1) = 1.0;
  const QubitJacobiCoords qd = qubit_to_jacobi(DensityMatrix(down));
  EXPECT_EQ(qd.s0, 0.0);
  EXPECT_EQ(qd.a1, 0.0);
  EXPECT_EQ(qd.b0, Complex(1.0, 0.0));
  EXPECT_EQ(hemisphere_point(qd), Eigen::Vector3d(1.0, 0.0, 0.0));
}

TEST(QubitTest, MaximallyMixed) {
  const QubitJacobiCoords q = qubit_to_jacobi(DensityMatrix(ComplexMatrix::Identity(2, 2) * 0.5));
  EXPECT_DOUBLE_EQ(q.s0, std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(q.a1, std::sqrt(0.5));
  EXPECT_EQ(q.b0, Complex(0.0, 0.0));
  EXPECT_FALSE(qubit_is_pure(q));
}

TEST(QubitTest, RandomPureAndMixedRoundTrip) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix pure(pure_density(testing::gaussian_vector(rng, 2)));
    const QubitJacobiCoords qp = qubit_to_jacobi(pure);
    EXPECT_TRUE(qubit_is_pure(qp));
    EXPECT_NEAR(qp.s0 * qp.s0 + std::norm(qp.b0), 1.0, 1e-12);
    EXPECT_LE((jacobi_to_qubit(qp).mat() - pure.mat()).norm(), 1e-12);

    const DensityMatrix mixed(testing::random_density(rng, 2, 2));
    const QubitJacobiCoords qm = qubit_to_jacobi(mixed);
    EXPECT_NEAR(qm.s0 * qm.s0 + qm.a1 * qm.a1 + std::norm(qm.b0), 1.0, 1e-12);
    EXPECT_LE((jacobi_to_qubit(qm).mat() - mixed.mat()).norm(), 1e-12);
  }
}

TEST(QubitTest, CoordinateValidation) {
  QubitJacobiCoords q;
  q.s0 = 0.5;
  q.a1 = 0.5;
  EXPECT_THROW(q.validate(), DomainError);
  q.s0 = 0.0;
  q.a1 = 0.0;
  q.b0 = Complex(0.0, 1.0);
  EXPECT_THROW(q.validate(), DomainError);
  q.b0 = Complex(1.0, 0.0);
  EXPECT_NO_THROW(q.validate());
  EXPECT_THROW(qubit_to_jacobi(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0)), DimensionError);
}

}  // namespace
}  // namespace posparam
