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
#include <vector>

#include "fixtures.hpp"
#include "posparam/separable.hpp"
#include "test_support.hpp"

namespace posparam {
namespace {

using testing::kron;
using testing::pure_density;

TEST(PatternTest, PrintedLayouts) {
  const Complex a(2.0, 0.0);
  const Complex b(3.0, 0.0);
  const Complex c(0.5, 0.25);
  const Complex cb = std::conj(c);
  ComplexMatrix s1(3, 3);
  s1 << a, a, c, a, a, c, cb, cb, b;
  EXPECT_EQ(pattern_matrix(PatternFamily::s1(), a, b, c), s1);
  ComplexMatrix s2(3, 3);
  s2 << a, c, a, cb, b, cb, a, c, a;
  EXPECT_EQ(pattern_matrix(PatternFamily::s2(), a, b, c), s2);
  ComplexMatrix s3(3, 3);
  s3 << a, c, c, cb, b, b, cb, b, b;
  EXPECT_EQ(pattern_matrix(PatternFamily::s3(), a, b, c), s3);
}

TEST(PatternTest, UnitValuesGiveAllOnes) {
  for (const PatternFamily& f : {PatternFamily::s1(), PatternFamily::s2(), PatternFamily::general(5, {2, 4})}) {
    EXPECT_EQ(pattern_matrix(f, 1.0, 1.0, 1.0), ComplexMatrix::Ones(f.n(), f.n()));
  }
}

TEST(PatternTest, PositivityMatchesTwoByTwoCore) {
  const PatternFamily f = PatternFamily::general(4, {1, 3});
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  for (double a : grid) {
    for (double b : grid) {
      for (double scale : {0.0, 0.5, 1.0, 1.5}) {
        const Complex c = std::polar(scale * std::sqrt(a * b), 0.7);
        const bool core = a >= 0.0 && b >= 0.0 && std::norm(c) <= a * b * (1.0 + 1e-12);
        EXPECT_EQ(is_psd(pattern_matrix(f, a, b, c)), core) << a << " " << b << " " << scale;
      }
    }
  }
  EXPECT_FALSE(is_psd(pattern_matrix(f, 1.0, 1.0, 1.5)));
  EXPECT_FALSE(is_psd(pattern_matrix(f, -1.0, 1.0, 0.0)));
}

TEST(PatternTest, RankOnePatternHasUnitNeighbourContractions) {
  const double s = 1.3;
  const double t = 0.6;
  for (const PatternFamily& f : {PatternFamily::s1(), PatternFamily::s2(), PatternFamily::s3()}) {
    const SCParameters p = sc_extract(pattern_matrix(f, s * s, t * t, s * t));
    for (std::size_t k = 1; k < f.n(); ++k) EXPECT_NEAR(std::abs(p.gamma(k, k + 1)), 1.0, 1e-8);
    EXPECT_TRUE(sc_is_rank_one(p));
  }
}

TEST(PatternTest, FamilyValidation) {
  EXPECT_THROW(PatternFamily::general(3, {1, 2, 3}), DomainError);
  EXPECT_THROW(PatternFamily::general(3, {}), DomainError);
  EXPECT_THROW(PatternFamily::general(3, {4}), DimensionError);
  EXPECT_EQ(parse_pattern_kind("S2"), PatternKind::kS2);
  EXPECT_THROW(parse_pattern_kind("S9"), DomainError);
}

bool blocks_in_pattern(const BipartiteState& s, const PatternFamily& f) {
  const auto n = static_cast<Eigen::Index>(f.n());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(s.dim_a()); ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(s.dim_a()); ++j) {
      const ComplexMatrix blk = s.mat().block(i * n, j * n, n, n);
      const Eigen::Index fs = static_cast<Eigen::Index>(f.i_s().front() - 1);
      const Eigen::Index ft = static_cast<Eigen::Index>(f.i_t().front() - 1);
      // Off-diagonal blocks need not be Hermitian: the two cross classes are
      // compared separately.
      for (std::size_t si : f.i_s()) {
        for (std::size_t ti : f.i_t()) {
          const auto a = static_cast<Eigen::Index>(si - 1);
          const auto b = static_cast<Eigen::Index>(ti - 1);
          if (std::abs(blk(a, b) - blk(fs, ft)) > 1e-12 || std::abs(blk(b, a) - blk(ft, fs)) > 1e-12) return false;
        }
      }
      for (const auto* set : {&f.i_s(), &f.i_t()}) {
        const auto r0 = static_cast<Eigen::Index>(set->front() - 1);
        for (std::size_t x : *set) {
          for (std::size_t y : *set) {
            if (std::abs(blk(static_cast<Eigen::Index>(x - 1), static_cast<Eigen::Index>(y - 1)) - blk(r0, r0)) >
                1e-12) {
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

TEST(GenPatternTest, BlocksLieInPatternSpace) {
  for (const PatternFamily& f : {PatternFamily::s1(), PatternFamily::s2(), PatternFamily::s3(),
                                 PatternFamily::general(4, {1, 4}), PatternFamily::symmetric_block()}) {
    for (std::size_t k : {1u, 2u, 3u}) {
      const BipartiteState s = gen_pattern_state(f, k, 100 + k);
      EXPECT_EQ(s.dim_a(), k);
      EXPECT_EQ(s.dim_b(), f.n());
      EXPECT_TRUE(blocks_in_pattern(s, f)) << to_string(f.kind()) << " k=" << k;
    }
  }
}

TEST(GenPatternTest, SingleBlockIsNormalizedPatternMatrix) {
  const BipartiteState s = gen_pattern_state(PatternFamily::s1(), 1, 5);
  EXPECT_NEAR(s.mat().trace().real(), 1.0, 1e-14);
  EXPECT_TRUE(blocks_in_pattern(s, PatternFamily::s1()));
}

TEST(GenPatternTest, Deterministic) {
  const BipartiteState a = gen_pattern_state(PatternFamily::s3(), 2, 99);
  const BipartiteState b = gen_pattern_state(PatternFamily::s3(), 2, 99);
  const BipartiteState c = gen_pattern_state(PatternFamily::s3(), 2, 100);
  EXPECT_EQ(a.mat(), b.mat());
  EXPECT_NE(a.mat(), c.mat());
}

TEST(GenPatternTest, PptAtDecidableDims) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(ppt_verdict(gen_pattern_state(PatternFamily::s1(), 2, seed)).verdict, Verdict::kSeparable);
    EXPECT_EQ(ppt_verdict(gen_pattern_state(PatternFamily::symmetric_block(), 2, seed)).verdict,
              Verdict::kSeparable);
  }
}

TEST(GenHankelTest, HankelStructureAndMoments) {
  const std::vector<double> nodes{-0.5, 0.25, 0.9};
  const std::vector<double> weights{0.2, 0.3, 0.5};
  const BipartiteState s = hankel_state_from_measure(2, nodes, weights);
  double total = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) total += [&] {
    double m = 0.0;
    for (std::size_t l = 0; l < 3; ++l) m += weights[l] * std::pow(nodes[l], 2.0 * static_cast<double>(i));
    return m;
  }();
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      double m = 0.0;
      for (std::size_t l = 0; l < 3; ++l) m += weights[l] * std::pow(nodes[l], static_cast<double>(i + j));
      EXPECT_NEAR(std::abs(s.mat()(i, j) - m / total), 0.0, 1e-14);
    }
  }
}

TEST(GenHankelTest, SingleAtomAtZeroIsMatrixUnit) {
  const BipartiteState s = hankel_state_from_measure(2, {0.0}, {1.0});
  ComplexMatrix e00 = ComplexMatrix::Zero(4, 4);
  e00(0, 0) = 1.0;
  EXPECT_EQ(s.mat(), e00);
}

TEST(GenHankelTest, RandomStatesArePpt) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteState s = gen_hankel_state(2, 1 + seed % 5, seed);
    EXPECT_EQ(ppt_verdict(s).verdict, Verdict::kSeparable);
  }
  EXPECT_THROW(gen_hankel_state(1, 2, 0), DimensionError);
  EXPECT_THROW(gen_hankel_state(2, 0, 0), DimensionError);
}

TEST(Rank1KrausTest, PureProductCertified) {
  std::mt19937_64 rng(41);
  const ComplexVector u = testing::gaussian_vector(rng, 2);
  const ComplexVector w = testing::gaussian_vector(rng, 3);
  const BipartiteState s(2, 3, pure_density(kron(u, w)));
  const SeparabilityVerdict v = rank1_kraus_test(s);
  ASSERT_EQ(v.verdict, Verdict::kSeparable);
  ASSERT_TRUE(v.certificate.has_value());
  ASSERT_EQ(v.certificate->size(), 1u);
  const ProductTerm& t = v.certificate->front();
  EXPECT_NEAR(t.weight, 1.0, 1e-12);
  EXPECT_NEAR(t.vec_a.norm(), 1.0, 1e-12);
  EXPECT_NEAR(t.vec_b.norm(), 1.0, 1e-12);
  EXPECT_LE((certificate_sum(*v.certificate, 2, 3) - s.mat()).norm(), 1e-8);
}

TEST(Rank1KrausTest, BellInconclusive) {
  const SeparabilityVerdict v = rank1_kraus_test(BipartiteState(2, 2, testing::maximally_entangled(2)));
  EXPECT_EQ(v.verdict, Verdict::kInconclusive);
  EXPECT_NE(v.reason.find("Kraus rank 2"), std::string::npos);
  EXPECT_FALSE(v.certificate.has_value());
}

TEST(Rank1KrausTest, DiagonalProductMixtureCertified) {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho.diagonal() << 0.1, 0.2, 0.3, 0.4;
  const SeparabilityVerdict v = rank1_kraus_test(BipartiteState(2, 2, rho));
  ASSERT_EQ(v.verdict, Verdict::kSeparable);
  EXPECT_EQ(v.certificate->size(), 4u);
}

TEST(Rank1KrausTest, BlockToeplitzPptStateFailsTest) {
  const BipartiteState s(2, 2, testing::block_toeplitz_fixture());
  EXPECT_EQ(ppt_verdict(s).verdict, Verdict::kSeparable);
  EXPECT_EQ(rank1_kraus_test(s).verdict, Verdict::kInconclusive);
}

BipartiteState product_3x3_with_gap() {
  ComplexVector u(3);
  u << 0.6, Complex(0.2, -0.5), 0.4;
  ComplexVector w(3);
  w << 0.0, Complex(0.7, 0.1), -0.3;
  return BipartiteState(3, 3, pure_density(kron(u, w)));
}

TEST(ChecklistTest, PureProductPasses) {
  const BipartiteState s = product_3x3_with_gap();
  const Checklist3x3 c = checklist_3x3(s);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(rank1_kraus_test(s).verdict, Verdict::kSeparable);
}

TEST(ChecklistTest, MaximallyMixedFailsUnimodularItems) {
  const Checklist3x3 c = checklist_3x3(BipartiteState(3, 3, ComplexMatrix::Identity(9, 9) / 9.0));
  EXPECT_FALSE(c.item1);
  EXPECT_FALSE(c.item2);
  EXPECT_FALSE(c.item4);
  EXPECT_TRUE(c.item6);
  EXPECT_FALSE(c.passed);
}

TEST(ChecklistTest, MaximallyEntangledFails) {
  const Checklist3x3 c = checklist_3x3(BipartiteState(3, 3, testing::maximally_entangled(3)));
  EXPECT_FALSE(c.item6);
  EXPECT_FALSE(c.passed);
}

TEST(ChecklistTest, WrongDims) {
  EXPECT_THROW(checklist_3x3(BipartiteState(2, 2, ComplexMatrix::Identity(4, 4) * 0.25)), DimensionError);
}

TEST(BatteryTest, RowsAndConsistency) {
  std::vector<BipartiteState> states;
  states.emplace_back(2, 2, testing::maximally_entangled(2));
  states.push_back(gen_hankel_state(2, 3, 1));
  states.push_back(product_3x3_with_gap());
  const BatteryReport r = run_detector_battery(states);
  ASSERT_EQ(r.rows.size(), 3u);
  int entangled = 0;
  for (const BatteryRow& row : r.rows) {
    entangled += row.ppt == "ENTANGLED";
    EXPECT_TRUE(row.consistent);
  }
  EXPECT_EQ(entangled, 1);
  EXPECT_EQ(r.rows[1].ppt, "SEPARABLE");
  EXPECT_EQ(r.rows[2].checklist, "PASS");
  EXPECT_EQ(r.rows[0].checklist, "NA");
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "state_id,dims,ppt,rank1,checklist,consistent");
  EXPECT_NE(csv.find("0,2x2,ENTANGLED,INCONCLUSIVE,NA,true"), std::string::npos);
}

TEST(BatteryTest, Empty) {
  const BatteryReport r = run_detector_battery({});
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.to_csv(), "state_id,dims,ppt,rank1,checklist,consistent\n");
}

}  // namespace
}  // namespace posparam
