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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posparam {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not conform (non-square input, mismatched blocks, bad index).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the mathematical domain of the operation
/// (not PSD, not a contraction, trace not 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter extraction produced a reconstruction residual above recon_tol.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// Row-contraction peeling could not reproduce a block within recon_tol.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// A moment sequence is singular at some order and cannot be inverted there.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::size_t order, const std::string& what)
      : Error(what + " (order " + std::to_string(order) + ")"), order_(order) {}

  std::size_t order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

}  // namespace posparam
