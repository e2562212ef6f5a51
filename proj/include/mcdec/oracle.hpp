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

// Brute-force reference semantics. Qubit 0 is the most significant bit of a
// basis index, so on m qubits qubit q selects bit (m - 1 - q).

#include <cstddef>
#include <span>
#include <vector>

#include "mcdec/circuit.hpp"
#include "mcdec/qmat.hpp"

namespace mcdec {

inline constexpr std::size_t kOracleMaxQubits = 14;

/// Dense 2^m x 2^m matrix, column-major.
class DenseUnitary {
 public:
  /// Identity on `num_qubits` qubits. Throws SizeLimitError above 14.
  explicit DenseUnitary(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[col * dim_ + row]; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return data_[col * dim_ + row];
  }
  std::span<Complex> column(std::size_t col) {
    return {data_.data() + col * dim_, dim_};
  }
  std::span<const Complex> column(std::size_t col) const {
    return {data_.data() + col * dim_, dim_};
  }

  /// max |(U U^dagger - I)_ij|
  double unitarity_deviation() const;

 private:
  std::size_t num_qubits_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Applies one instruction to a statevector over `num_qubits` qubits.
void apply_instruction(std::span<Complex> state, std::size_t num_qubits,
                       const Instruction& inst);

/// Runs the circuit on an initial state (defaults to |0...0>).
std::vector<Complex> simulate(const Circuit& c, std::vector<Complex> state = {});

DenseUnitary build_unitary(const Circuit& c);

/// Identity except the last 2x2 block, which is u. Controls are qubits
/// 0..n-1, the target is qubit n.
DenseUnitary reference_cnu(const Mat2& u, std::size_t n);

struct EquivReport {
  bool equivalent = false;
  double max_deviation = 0.0;
  /// Largest 2-norm of amplitude leaked into aux = |1> (aux checks only).
  double max_leakage = 0.0;
  /// First column violating the tolerance, or -1.
  long long failing_column = -1;
};

/// Elementwise comparison. With up_to_global_phase, `a` is first rotated by
/// the phase of the largest-magnitude diagonal entry of a^dagger b.
/// Throws InputError on dimension mismatch.
EquivReport equiv(const DenseUnitary& a, const DenseUnitary& b, double tol,
                  bool up_to_global_phase);

/// Compares `full` (one extra qubit `aux`) against `ref` on the inputs with
/// aux = |0>: each such column must keep aux in |0> and match ref's column.
/// Column indices in the report refer to `ref`.
EquivReport equiv_on_aux_zero(const DenseUnitary& full, const DenseUnitary& ref,
                              Qubit aux, double tol);

}  // namespace mcdec
