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

// JSON schemas for matrices, parameter sets, states and verdicts.
//
// Complex numbers are [re, im] pairs; a bare number is read as a real
// entry. Floats are written with 17 significant digits so that a value
// survives a write/read cycle bit for bit.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "posparam/jacobi.hpp"
#include "posparam/matcore.hpp"
#include "posparam/qstate.hpp"
#include "posparam/sc.hpp"
#include "posparam/separable.hpp"

namespace posparam::io {

using Json = nlohmann::ordered_json;

/// Input that is not valid JSON or does not follow the expected schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `text`; syntax errors report the 1-based line and column.
inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    const char* msg = std::strstr(e.what(), "syntax error");
    throw FormatError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      (msg ? msg : e.what()));
  }
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_string(const std::string& s, std::string& out) {
  out += Json(s).dump();
}

inline void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        write_string(it.key(), out);
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError(std::string(what) + ": number is not finite");
  return v;
}

inline std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw FormatError(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace detail

/// Compact single-line rendering with 17-digit floats.
inline std::string dump(const Json& j) {
  std::string out;
  detail::write(j, out);
  return out;
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j, const char* what = "complex number") {
  if (j.is_number()) return {detail::number(j, what), 0.0};
  if (!j.is_array() || j.size() != 2) throw FormatError(std::string(what) + ": expected [re, im]");
  return {detail::number(j[0], what), detail::number(j[1], what)};
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    data.push_back(std::move(row));
  }
  Json out = Json::object();
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = detail::count(detail::field(j, "rows", "matrix"), "matrix rows");
  const std::size_t cols = detail::count(detail::field(j, "cols", "matrix"), "matrix cols");
  const Json& data = detail::field(j, "data", "matrix");
  if (!data.is_array() || data.size() != rows) {
    throw FormatError("matrix: data must hold " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!data[i].is_array() || data[i].size() != cols) {
      throw FormatError("matrix: row " + std::to_string(i) + " must hold " + std::to_string(cols) + " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(data[i][k], "matrix entry");
    }
  }
  return m;
}

inline Json complex_list_to_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) out.push_back(complex_to_json(z));
  return out;
}

inline std::vector<Complex> complex_list_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + ": expected an array");
  std::vector<Complex> out;
  for (const Json& e : j) out.push_back(complex_from_json(e, what));
  return out;
}

inline Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

// SC parameters: 1-based pairs i < j.

inline Json sc_to_json(const SCParameters& p) {
  Json gammas = Json::array();
  for (std::size_t i = 1; i <= p.n(); ++i) {
    for (std::size_t j = i + 1; j <= p.n(); ++j) {
      const Complex g = p.gamma(i, j);
      gammas.push_back(Json{{"i", i}, {"j", j}, {"re", g.real()}, {"im", g.imag()}});
    }
  }
  Json out = Json::object();
  out["n"] = p.n();
  out["diag"] = p.diag();
  out["gammas"] = std::move(gammas);
  return out;
}

inline SCParameters sc_from_json(const Json& j) {
  const std::size_t n = detail::count(detail::field(j, "n", "SC parameters"), "SC parameters n");
  const Json& diag = detail::field(j, "diag", "SC parameters");
  if (!diag.is_array() || diag.size() != n) throw FormatError("SC parameters: diag must hold n values");
  std::vector<double> d;
  for (const Json& v : diag) d.push_back(detail::number(v, "SC parameters diag"));
  SCParameters p(std::move(d));
  const Json& gammas = detail::field(j, "gammas", "SC parameters");
  if (!gammas.is_array()) throw FormatError("SC parameters: gammas must be an array");
  for (const Json& g : gammas) {
    const std::size_t i = detail::count(detail::field(g, "i", "gamma"), "gamma i");
    const std::size_t k = detail::count(detail::field(g, "j", "gamma"), "gamma j");
    if (i < 1 || k <= i || k > n) {
      throw FormatError("SC parameters: gamma index (" + std::to_string(i) + "," + std::to_string(k) +
                        ") outside 1 <= i < j <= n");
    }
    p.set_gamma(i, k, {detail::number(detail::field(g, "re", "gamma"), "gamma re"),
                       detail::number(detail::field(g, "im", "gamma"), "gamma im")});
  }
  return p;
}

// Jacobi parameters: 0-based, c pairs i < j.

inline Json jacobi_to_json(const JacobiParameters& p) {
  Json c = Json::array();
  for (std::size_t i = 0; i < p.n(); ++i) {
    for (std::size_t k = i + 1; k < p.n(); ++k) {
      const Complex v = p.c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      c.push_back(Json{{"i", i}, {"j", k}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  Json out = Json::object();
  out["n"] = p.n();
  out["s0"] = p.s0;
  out["a"] = p.a;
  out["b"] = complex_list_to_json(p.b);
  out["c"] = std::move(c);
  return out;
}

inline JacobiParameters jacobi_from_json(const Json& j) {
  const std::size_t n = detail::count(detail::field(j, "n", "Jacobi parameters"), "Jacobi parameters n");
  JacobiParameters p(n);
  p.s0 = detail::number(detail::field(j, "s0", "Jacobi parameters"), "Jacobi s0");
  const Json& a = detail::field(j, "a", "Jacobi parameters");
  if (!a.is_array() || a.size() != n) throw FormatError("Jacobi parameters: a must hold n values");
  for (std::size_t k = 0; k < n; ++k) p.a[k] = detail::number(a[k], "Jacobi a");
  p.b = complex_list_from_json(detail::field(j, "b", "Jacobi parameters"), "Jacobi b");
  if (p.b.size() != n) throw FormatError("Jacobi parameters: b must hold n values");
  const Json& c = detail::field(j, "c", "Jacobi parameters");
  if (!c.is_array()) throw FormatError("Jacobi parameters: c must be an array");
  for (const Json& e : c) {
    const std::size_t i = detail::count(detail::field(e, "i", "c entry"), "c i");
    const std::size_t k = detail::count(detail::field(e, "j", "c entry"), "c j");
    if (k <= i || k >= n) {
      throw FormatError("Jacobi parameters: c index (" + std::to_string(i) + "," + std::to_string(k) +
                        ") outside 0 <= i < j < n");
    }
    p.c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {
        detail::number(detail::field(e, "re", "c entry"), "c re"),
        detail::number(detail::field(e, "im", "c entry"), "c im")};
  }
  return p;
}

// States: a matrix object with dim_a and dim_b.

inline Json state_to_json(const BipartiteState& s) {
  Json out = Json::object();
  out["dim_a"] = s.dim_a();
  out["dim_b"] = s.dim_b();
  const Json m = matrix_to_json(s.mat());
  for (auto it = m.begin(); it != m.end(); ++it) out[it.key()] = it.value();
  return out;
}

/// Reads a state; `dims` overrides or supplies dim_a, dim_b.
inline BipartiteState state_from_json(const Json& j, const Tolerances& tol,
                                      std::optional<std::pair<std::size_t, std::size_t>> dims = {}) {
  ComplexMatrix m = matrix_from_json(j);
  std::size_t da = 0;
  std::size_t db = 0;
  if (dims) {
    std::tie(da, db) = *dims;
  } else if (j.contains("dim_a") && j.contains("dim_b")) {
    da = detail::count(j["dim_a"], "state dim_a");
    db = detail::count(j["dim_b"], "state dim_b");
  } else {
    throw FormatError("state: dim_a and dim_b are required (or pass --dims)");
  }
  return BipartiteState(da, db, std::move(m), tol);
}

inline Json kraus_to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const ComplexMatrix& op : k.ops) ops.push_back(matrix_to_json(op));
  Json out = Json::object();
  out["dim_a"] = k.dim_a;
  out["dim_b"] = k.dim_b;
  out["rows"] = k.rows;
  out["ops"] = std::move(ops);
  return out;
}

inline Json qubit_to_json(const QubitJacobiCoords& q) {
  Json out = Json::object();
  out["s0"] = q.s0;
  out["a1"] = q.a1;
  out["b0"] = complex_to_json(q.b0);
  return out;
}

inline QubitJacobiCoords qubit_from_json(const Json& j) {
  QubitJacobiCoords q;
  q.s0 = detail::number(detail::field(j, "s0", "qubit coordinates"), "qubit s0");
  q.a1 = detail::number(detail::field(j, "a1", "qubit coordinates"), "qubit a1");
  q.b0 = complex_from_json(detail::field(j, "b0", "qubit coordinates"), "qubit b0");
  return q;
}

inline Json moments_to_json(const HankelMoments& h) {
  Json out = Json::object();
  out["order"] = h.order();
  out["s"] = complex_list_to_json(h.s());
  return out;
}

inline HankelMoments moments_from_json(const Json& j, const Tolerances& tol) {
  return HankelMoments(complex_list_from_json(detail::field(j, "s", "moments"), "moment"), tol);
}

inline Json tridiagonal_to_json(const TridiagonalModel& t) {
  Json out = Json::object();
  out["s0"] = t.s0;
  out["j"] = matrix_to_json(t.j);
  return out;
}

inline TridiagonalModel tridiagonal_from_json(const Json& j) {
  TridiagonalModel t;
  t.s0 = detail::number(detail::field(j, "s0", "tridiagonal model"), "s0");
  t.j = matrix_from_json(detail::field(j, "j", "tridiagonal model"));
  return t;
}

inline Json verdict_to_json(const SeparabilityVerdict& v) {
  Json out = Json::object();
  out["verdict"] = to_string(v.verdict);
  out["reason"] = v.reason;
  if (v.certificate) {
    Json terms = Json::array();
    for (const ProductTerm& t : *v.certificate) {
      Json term = Json::object();
      term["weight"] = t.weight;
      term["vec_a"] = vector_to_json(t.vec_a);
      term["vec_b"] = vector_to_json(t.vec_b);
      terms.push_back(std::move(term));
    }
    out["certificate"] = std::move(terms);
  }
  return out;
}

inline Json checklist_to_json(const Checklist3x3& c) {
  Json items = Json::object();
  items["1"] = c.item1;
  items["2"] = c.item2;
  items["3"] = c.item3;
  items["3b"] = c.item3b;
  items["4"] = c.item4;
  items["5"] = c.item5;
  items["6"] = c.item6;
  Json out = Json::object();
  out["passed"] = c.passed;
  out["items"] = std::move(items);
  return out;
}

inline Json battery_to_json(const BatteryReport& r) {
  Json rows = Json::array();
  for (const BatteryRow& row : r.rows) {
    Json e = Json::object();
    e["state_id"] = row.state_id;
    e["dims"] = std::to_string(row.dim_a) + "x" + std::to_string(row.dim_b);
    e["ppt"] = row.ppt;
    e["rank1"] = row.rank1;
    e["checklist"] = row.checklist;
    e["consistent"] = row.consistent;
    if (row.oracle_all_rank1) e["oracle_all_rank1"] = *row.oracle_all_rank1;
    if (!row.error.empty()) e["error"] = row.error;
    rows.push_back(std::move(e));
  }
  return rows;
}

}  // namespace posparam::io
