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

// Separable state families and SC-based separability detectors.
//
// A pattern family splits {1..n} into I_s and I_t. Its pattern space holds
//
//   a e_s e_s^T + c (e_s e_t^T + e_t e_s^T) + b e_t e_t^T
//
// with e_s, e_t the 0/1 indicators of I_s, I_t. Every state whose B-side
// blocks lie in that space is separable. Naming: a is the I_s value, b the
// I_t value and c the cross value, for every kind.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "posparam/errors.hpp"
#include "posparam/matcore.hpp"
#include "posparam/qstate.hpp"
#include "posparam/sc.hpp"

namespace posparam {

enum class PatternKind { kGeneral, kS1, kS2, kS3, kSymmetricBlock, kHankel };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::kGeneral:
      return "GENERAL";
    case PatternKind::kS1:
      return "S1";
    case PatternKind::kS2:
      return "S2";
    case PatternKind::kS3:
      return "S3";
    case PatternKind::kSymmetricBlock:
      return "SYMMETRIC_BLOCK";
    case PatternKind::kHankel:
      return "HANKEL";
  }
  return "GENERAL";
}

inline PatternKind parse_pattern_kind(const std::string& s) {
  for (PatternKind k : {PatternKind::kGeneral, PatternKind::kS1, PatternKind::kS2, PatternKind::kS3,
                        PatternKind::kSymmetricBlock, PatternKind::kHankel}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown pattern kind '" + s + "'");
}

class PatternFamily {
 public:
  /// General family on {1..n}; `i_s` holds 1-based indices, I_t is the rest.
  static PatternFamily general(std::size_t n, std::vector<std::size_t> i_s) {
    std::sort(i_s.begin(), i_s.end());
    i_s.erase(std::unique(i_s.begin(), i_s.end()), i_s.end());
    std::vector<std::size_t> i_t;
    for (std::size_t i = 1; i <= n; ++i) {
      if (!std::binary_search(i_s.begin(), i_s.end(), i)) i_t.push_back(i);
    }
    for (std::size_t i : i_s) {
      if (i < 1 || i > n) throw DimensionError("pattern index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    if (i_s.empty() || i_t.empty()) throw DomainError("pattern family needs nonempty I_s and I_t");
    return PatternFamily(PatternKind::kGeneral, n, std::move(i_s), std::move(i_t));
  }

  /// [[a,a,c],[a,a,c],[c,c,b]]
  static PatternFamily s1() { return PatternFamily(PatternKind::kS1, 3, {1, 2}, {3}); }
  /// [[a,c,a],[c,b,c],[a,c,a]]
  static PatternFamily s2() { return PatternFamily(PatternKind::kS2, 3, {1, 3}, {2}); }
  /// [[a,c,c],[c,b,b],[c,b,b]]
  static PatternFamily s3() { return PatternFamily(PatternKind::kS3, 3, {1}, {2, 3}); }
  /// All symmetric 2x2 matrices; also the block shape of a Hankel state.
  static PatternFamily symmetric_block() { return PatternFamily(PatternKind::kSymmetricBlock, 2, {1}, {2}); }
  static PatternFamily hankel() { return PatternFamily(PatternKind::kHankel, 2, {1}, {2}); }

  static PatternFamily of_kind(PatternKind kind, std::size_t n = 0, std::vector<std::size_t> i_s = {}) {
    switch (kind) {
      case PatternKind::kGeneral:
        return general(n, std::move(i_s));
      case PatternKind::kS1:
        return s1();
      case PatternKind::kS2:
        return s2();
      case PatternKind::kS3:
        return s3();
      case PatternKind::kSymmetricBlock:
        return symmetric_block();
      case PatternKind::kHankel:
        return hankel();
    }
    return general(n, std::move(i_s));
  }

  PatternKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  const std::vector<std::size_t>& i_s() const { return i_s_; }
  const std::vector<std::size_t>& i_t() const { return i_t_; }

  RealVector indicator_s() const { return indicator(i_s_); }
  RealVector indicator_t() const { return indicator(i_t_); }

 private:
  PatternFamily(PatternKind kind, std::size_t n, std::vector<std::size_t> i_s, std::vector<std::size_t> i_t)
      : kind_(kind), n_(n), i_s_(std::move(i_s)), i_t_(std::move(i_t)) {}

  RealVector indicator(const std::vector<std::size_t>& idx) const {
    RealVector v = RealVector::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t i : idx) v(static_cast<Eigen::Index>(i - 1)) = 1.0;
    return v;
  }

  PatternKind kind_;
  std::size_t n_;
  std::vector<std::size_t> i_s_;
  std::vector<std::size_t> i_t_;
};

/// a e_s e_s* + c e_s e_t* + conj(c) e_t e_s* + b e_t e_t*.
/// PSD iff a >= 0, b >= 0 and |c|^2 <= a b (a, b real).
inline ComplexMatrix pattern_matrix(const PatternFamily& f, Complex a, Complex b, Complex c) {
  const ComplexVector es = f.indicator_s().cast<Complex>();
  const ComplexVector et = f.indicator_t().cast<Complex>();
  return a * es * es.transpose() + c * es * et.transpose() + std::conj(c) * et * es.transpose() +
         b * et * et.transpose();
}

namespace detail {

inline ComplexMatrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
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

/// I_k (x) x applied blockwise: block (i,j) of the result is x * blk * y.
inline ComplexMatrix local_b_map(const ComplexMatrix& rho, std::size_t k, const ComplexMatrix& left,
                                 const ComplexMatrix& right) {
  const Eigen::Index in = left.cols();
  const Eigen::Index out = left.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  ComplexMatrix res(kk * out, kk * out);
  for (Eigen::Index i = 0; i < kk; ++i) {
    for (Eigen::Index j = 0; j < kk; ++j) res.block(i * out, j * out, out, out) = left * rho.block(i * in, j * in, in, in) * right;
  }
  return res;
}

constexpr int kMaxDraws = 16;

}  // namespace detail

/// Random trace-one state on C^k (x) C^n whose every n x n block lies in the
/// pattern space of `f`.
///
/// A random PSD matrix on C^k (x) C^n is compressed to C^k (x) C^2 with
/// V = [e_s / sqrt(n_s) | e_t / sqrt(n_t)], made invariant under the partial
/// transpose (tau + tau^{T_B} + mu I, mu lifting the spectrum to >= 0) so
/// its 2x2 blocks are symmetric, and expanded back with V. Both steps are
/// completely positive or keep positivity, so the output is PSD.
inline BipartiteState gen_pattern_state(const PatternFamily& f, std::size_t k, std::uint64_t seed,
                                        const Tolerances& tol = {}) {
  if (k == 0) throw DimensionError("gen_pattern_state: k must be >= 1");
  const auto n = static_cast<Eigen::Index>(f.n());
  ComplexMatrix v(n, 2);
  v.col(0) = f.indicator_s().cast<Complex>() / std::sqrt(static_cast<double>(f.i_s().size()));
  v.col(1) = f.indicator_t().cast<Complex>() / std::sqrt(static_cast<double>(f.i_t().size()));

  std::mt19937_64 rng(seed);
  const auto dim = static_cast<Eigen::Index>(k) * n;
  for (int draw = 0; draw < detail::kMaxDraws; ++draw) {
    const ComplexMatrix g = detail::random_gaussian(rng, dim, dim);
    const ComplexMatrix rho0 = g * g.adjoint();
    const ComplexMatrix tau0 = detail::local_b_map(rho0, k, v.adjoint(), v);
    ComplexMatrix tau = tau0 + partial_transpose_b(tau0, k, 2);
    tau = hermitian_part(tau);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(tau, Eigen::EigenvaluesOnly);
    const double lift = std::max(0.0, -es.eigenvalues()(0));
    tau += lift * ComplexMatrix::Identity(tau.rows(), tau.cols());
    ComplexMatrix rho = hermitian_part(detail::local_b_map(tau, k, v, v.adjoint()));
    const double tr = rho.trace().real();
    if (!(tr > 0.0) || !rho.allFinite()) continue;
    rho /= tr;
    return BipartiteState(k, f.n(), rho, tol);
  }
  throw DomainError("gen_pattern_state: no usable draw after " + std::to_string(detail::kMaxDraws) + " attempts");
}

/// Trace-one state of the Hankel matrix sum_l w_l v(t_l) v(t_l)^T,
/// v(t) = (1, t, ..., t^{2m-1}), read as an m (x) 2 state.
inline BipartiteState hankel_state_from_measure(std::size_t m, const std::vector<double>& nodes,
                                                const std::vector<double>& weights, const Tolerances& tol = {}) {
  if (m < 1) throw DimensionError("hankel state: m must be >= 1");
  if (nodes.size() != weights.size() || nodes.empty()) {
    throw DimensionError("hankel state: need matching, nonempty nodes and weights");
  }
  const auto size = static_cast<Eigen::Index>(2 * m);
  std::vector<double> moments(static_cast<std::size_t>(2 * size - 1), 0.0);
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    if (!(weights[l] >= 0.0)) throw DomainError("hankel state: weights must be >= 0");
    double power = 1.0;
    for (double& mom : moments) {
      mom += weights[l] * power;
      power *= nodes[l];
    }
  }
  ComplexMatrix h(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) h(i, j) = moments[static_cast<std::size_t>(i + j)];
  }
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw DomainError("hankel state: measure has zero mass");
  return BipartiteState(m, 2, h / tr, tol);
}

/// Random nodes in [-1, 1] and weights in (0, 1].
inline BipartiteState gen_hankel_state(std::size_t m, std::size_t points, std::uint64_t seed,
                                       const Tolerances& tol = {}) {
  if (m < 2) throw DimensionError("gen_hankel_state: m must be >= 2");
  if (points < 1) throw DimensionError("gen_hankel_state: points must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> node(-1.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::vector<double> nodes(points);
  std::vector<double> weights(points);
  for (std::size_t l = 0; l < points; ++l) {
    nodes[l] = node(rng);
    weights[l] = 1.0 - weight(rng);  // (0, 1]
  }
  return hankel_state_from_measure(m, nodes, weights, tol);
}

/// Sufficient test: if every nonzero Kraus operator from the SC Cholesky
/// rows has rank one, the state is separable and the SVDs of the operators
/// give the product decomposition. Never reports ENTANGLED.
inline SeparabilityVerdict rank1_kraus_test(const BipartiteState& s, const Tolerances& tol = {}) {
  const KrausSet kraus = kraus_from_state(s, tol);
  SeparabilityVerdict out;
  std::vector<ProductTerm> terms;
  for (std::size_t idx = 0; idx < kraus.ops.size(); ++idx) {
    const ComplexMatrix& k = kraus.ops[idx];
    const std::size_t r = numerical_rank(k, tol);
    if (r == 0) continue;
    if (r > 1) {
      out.verdict = Verdict::kInconclusive;
      out.reason = "Kraus rank " + std::to_string(r) + " at factor row " + std::to_string(kraus.rows[idx] + 1);
      return out;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sigma = svd.singularValues()(0);
    // K = sigma u v*, vec(K) = sigma u (x) conj(v).
    terms.push_back({sigma * sigma, svd.matrixU().col(0), svd.matrixV().col(0).conjugate()});
  }
  if (!within_recon(certificate_sum(terms, s.dim_a(), s.dim_b()), s.mat(), tol)) {
    out.verdict = Verdict::kInconclusive;
    out.reason = "rank-one Kraus terms do not re-sum to the state";
    return out;
  }
  out.verdict = Verdict::kSeparable;
  out.reason = "all Kraus operators have rank one";
  out.certificate = std::move(terms);
  return out;
}

/// Items of the 3x3 checklist on the SC parameters of a 9x9 state. Indices
/// are the 1-based positions in the SC table.
struct Checklist3x3 {
  bool item1 = false;   // some |G_{i6}| = 1, i = 1..5
  bool item2 = false;   // some |G_{i5}| = 1, i = 1..4
  bool item3 = false;   // no unimodular G_{i6} (i = 2..5) forces |G_16| = 1 and G_15 = 0
  bool item3b = false;  // Kraus operator of factor row 4 has rank <= 1
  bool item4 = false;   // |G_23| = 1 or |G_13| = 1
  bool item5 = false;   // G_12 = 0
  bool item6 = false;   // Kraus operator of factor row 1 has rank <= 1
  bool passed = false;
};

inline Checklist3x3 checklist_3x3(const BipartiteState& s, const Tolerances& tol = {}) {
  if (s.dim_a() != 3 || s.dim_b() != 3) throw DimensionError("checklist_3x3: expected a 3x3 state");
  const SCParameters p = sc_extract(s.mat(), tol);
  const ComplexMatrix f = sc_cholesky(p, tol);
  auto unimodular = [&](std::size_t i, std::size_t j) { return 1.0 - std::norm(p.gamma(i, j)) <= tol.rank_tol; };
  auto vanishes = [&](std::size_t i, std::size_t j) { return std::abs(p.gamma(i, j)) <= tol.rank_tol; };
  auto row_rank_le1 = [&](Eigen::Index row) {
    return numerical_rank(kraus_from_row(f.row(row).transpose(), 3, 3), tol) <= 1;
  };

  Checklist3x3 c;
  for (std::size_t i = 1; i <= 5; ++i) c.item1 = c.item1 || unimodular(i, 6);
  for (std::size_t i = 1; i <= 4; ++i) c.item2 = c.item2 || unimodular(i, 5);
  bool later_unimodular = false;
  for (std::size_t i = 2; i <= 5; ++i) later_unimodular = later_unimodular || unimodular(i, 6);
  c.item3 = later_unimodular || (unimodular(1, 6) && vanishes(1, 5));
  c.item3b = row_rank_le1(3);
  c.item4 = unimodular(2, 3) || unimodular(1, 3);
  c.item5 = vanishes(1, 2);
  c.item6 = row_rank_le1(0);
  c.passed = c.item1 && c.item2 && c.item3 && c.item3b && c.item4 && c.item5 && c.item6;
  return c;
}

struct BatteryRow {
  std::size_t state_id = 0;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::string ppt;        // verdict name or "ERROR"
  std::string rank1;      // verdict name or "ERROR"
  std::string checklist;  // PASS, FAIL or NA
  std::optional<bool> oracle_all_rank1;  // 3x3 only: every factor row has Kraus rank <= 1
  bool consistent = true;
  std::string error;
};

struct BatteryReport {
  std::vector<BatteryRow> rows;

  std::string to_csv() const {
    std::ostringstream os;
    os << "state_id,dims,ppt,rank1,checklist,consistent\n";
    for (const BatteryRow& r : rows) {
      os << r.state_id << ',' << r.dim_a << 'x' << r.dim_b << ',' << r.ppt << ',' << r.rank1 << ',' << r.checklist
         << ',' << (r.consistent ? "true" : "false") << '\n';
    }
    return os.str();
  }
};

/// Runs every detector on every state and cross-checks them. Failures are
/// recorded per row; the report keeps input order.
inline BatteryReport run_detector_battery(const std::vector<BipartiteState>& states, const Tolerances& tol = {}) {
  BatteryReport report;
  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const BipartiteState& s = states[idx];
    BatteryRow row;
    row.state_id = idx;
    row.dim_a = s.dim_a();
    row.dim_b = s.dim_b();
    row.checklist = "NA";
    std::optional<Verdict> ppt;
    std::optional<Verdict> rank1;
    try {
      ppt = ppt_verdict(s, tol).verdict;
      row.ppt = to_string(*ppt);
    } catch (const Error& e) {
      row.ppt = "ERROR";
      row.error += std::string("ppt: ") + e.what() + "; ";
    }
    try {
      rank1 = rank1_kraus_test(s, tol).verdict;
      row.rank1 = to_string(*rank1);
    } catch (const Error& e) {
      row.rank1 = "ERROR";
      row.error += std::string("rank1: ") + e.what() + "; ";
    }
    if (s.dim_a() == 3 && s.dim_b() == 3) {
      try {
        const Checklist3x3 c = checklist_3x3(s, tol);
        row.checklist = c.passed ? "PASS" : "FAIL";
        const ComplexMatrix f = state_sc_factor(s, tol);
        bool all = true;
        for (Eigen::Index r = 0; r < f.rows(); ++r) {
          all = all && numerical_rank(kraus_from_row(f.row(r).transpose(), 3, 3), tol) <= 1;
        }
        row.oracle_all_rank1 = all;
        if (c.passed && rank1 != Verdict::kSeparable) row.consistent = false;
      } catch (const Error& e) {
        row.checklist = "ERROR";
        row.error += std::string("checklist: ") + e.what() + "; ";
      }
    }
    if (ppt == Verdict::kEntangled && rank1 == Verdict::kSeparable) row.consistent = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace posparam
