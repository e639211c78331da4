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

// Frozen fixtures stored as JSON next to the tests.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "posparam/matcore.hpp"

#ifndef POSPARAM_FIXTURE_DIR
#error "POSPARAM_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace posparam::testing {

inline nlohmann::json load_fixture(const std::string& name) {
  std::ifstream f(std::string(POSPARAM_FIXTURE_DIR) + "/" + name);
  if (!f) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(f);
}

inline ComplexMatrix complex_block(const nlohmann::json& rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
    }
  }
  return m;
}

/// [[T0, T1], [T1*, T0]] normalized to trace one.
inline ComplexMatrix block_toeplitz_fixture() {
  const nlohmann::json j = load_fixture("block_toeplitz.json");
  const ComplexMatrix t0 = complex_block(j["t0"]);
  const ComplexMatrix t1 = complex_block(j["t1"]);
  ComplexMatrix rho(4, 4);
  rho << t0, t1, t1.adjoint(), t0;
  return rho / rho.trace().real();
}

}  // namespace posparam::testing
