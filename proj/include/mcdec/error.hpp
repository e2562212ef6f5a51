// Copyright 2026 The mcdec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace mcdec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that was required to be (special) unitary is not.
class NotUnitaryError : public Error {
 public:
  NotUnitaryError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}

  /// max |(M M^dagger - I)_ij| of the offending matrix.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Malformed builder program or instruction: control/target clash,
/// duplicate controls, unbalanced scopes, out-of-range qubits.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Not enough (or colliding) auxiliary qubits for a decomposition.
class AncillaError : public Error {
 public:
  using Error::Error;
};

/// The dense oracle refuses registers beyond its size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Bad user-supplied data (probability lists, serialized circuits, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcdec
