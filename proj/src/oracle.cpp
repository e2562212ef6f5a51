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

#include "mcdec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcdec/error.hpp"

namespace mcdec {

namespace {

void check_size(std::size_t num_qubits) {
  if (num_qubits > kOracleMaxQubits) {
    throw SizeLimitError("dense oracle is limited to " + std::to_string(kOracleMaxQubits) +
                         " qubits, got " + std::to_string(num_qubits));
  }
}

std::size_t bit_of(std::size_t num_qubits, Qubit q) {
  return std::size_t{1} << (num_qubits - 1 - q.index);
}

}  // namespace

DenseUnitary::DenseUnitary(std::size_t num_qubits)
    : num_qubits_(num_qubits), dim_(0) {
  check_size(num_qubits);
  dim_ = std::size_t{1} << num_qubits;
  data_.assign(dim_ * dim_, Complex{0.0});
  for (std::size_t i = 0; i < dim_; ++i) (*this)(i, i) = 1.0;
}

double DenseUnitary::unitarity_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      // (U U^dagger)_ij = sum_k U_ik conj(U_jk)
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) acc += (*this)(i, k) * std::conj((*this)(j, k));
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

namespace {

struct CompiledInstruction {
  Mat2 m;
  std::size_t ctrl_mask = 0;
  std::size_t tbit = 0;
};

CompiledInstruction compile(std::size_t num_qubits, const Instruction& inst) {
  CompiledInstruction ci{gate_matrix(inst.gate), 0, bit_of(num_qubits, inst.target)};
  for (Qubit q : inst.controls) ci.ctrl_mask |= bit_of(num_qubits, q);
  return ci;
}

void apply_compiled(std::span<Complex> state, const CompiledInstruction& ci) {
  const std::size_t dim = state.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & ci.tbit) != 0 || (i & ci.ctrl_mask) != ci.ctrl_mask) continue;
    const std::size_t j = i | ci.tbit;
    const Complex a = state[i];
    const Complex b = state[j];
    state[i] = ci.m.m00 * a + ci.m.m01 * b;
    state[j] = ci.m.m10 * a + ci.m.m11 * b;
  }
}

}  // namespace

void apply_instruction(std::span<Complex> state, std::size_t num_qubits,
                       const Instruction& inst) {
  apply_compiled(state, compile(num_qubits, inst));
}

std::vector<Complex> simulate(const Circuit& c, std::vector<Complex> state) {
  check_size(c.num_qubits());
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  if (state.empty()) {
    state.assign(dim, Complex{0.0});
    state[0] = 1.0;
  }
  if (state.size() != dim) throw InputError("simulate: state size does not match register");
  for (const auto& inst : c.instructions()) apply_instruction(state, c.num_qubits(), inst);
  return state;
}

DenseUnitary build_unitary(const Circuit& c) {
  DenseUnitary u(c.num_qubits());
  for (const auto& inst : c.instructions()) {
    const CompiledInstruction ci = compile(c.num_qubits(), inst);
    for (std::size_t col = 0; col < u.dim(); ++col) apply_compiled(u.column(col), ci);
  }
  return u;
}

DenseUnitary reference_cnu(const Mat2& u, std::size_t n) {
  DenseUnitary out(n + 1);
  const std::size_t d = out.dim();
  out(d - 2, d - 2) = u.m00;
  out(d - 2, d - 1) = u.m01;
  out(d - 1, d - 2) = u.m10;
  out(d - 1, d - 1) = u.m11;
  return out;
}

EquivReport equiv(const DenseUnitary& a, const DenseUnitary& b, double tol,
                  bool up_to_global_phase) {
  if (a.dim() != b.dim()) throw InputError("equiv: dimension mismatch");
  const std::size_t dim = a.dim();

  Complex rot = 1.0;
  if (up_to_global_phase) {
    double best = -1.0;
    Complex best_entry = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      Complex d = 0.0;
      for (std::size_t i = 0; i < dim; ++i) d += std::conj(a(i, j)) * b(i, j);
      if (std::abs(d) > best) {
        best = std::abs(d);
        best_entry = d;
      }
    }
    if (best > 0.0) rot = best_entry / best;
  }

  EquivReport r;
  for (std::size_t j = 0; j < dim; ++j) {
    double col_dev = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      col_dev = std::max(col_dev, std::abs(rot * a(i, j) - b(i, j)));
    }
    r.max_deviation = std::max(r.max_deviation, col_dev);
    if (!(col_dev <= tol) && r.failing_column < 0) r.failing_column = static_cast<long long>(j);
  }
  r.equivalent = r.failing_column < 0;
  return r;
}

EquivReport equiv_on_aux_zero(const DenseUnitary& full, const DenseUnitary& ref, Qubit aux,
                              double tol) {
  if (full.dim() != 2 * ref.dim() || aux.index >= full.num_qubits()) {
    throw InputError("equiv_on_aux_zero: full register must be ref plus the aux qubit");
  }
  const std::size_t m = full.num_qubits();
  const std::size_t aux_bit = bit_of(m, aux);
  // Bits above the aux position shift up by one when the aux bit is inserted.
  const std::size_t low_mask = aux_bit - 1;
  auto widen = [&](std::size_t k) { return ((k & ~low_mask) << 1) | (k & low_mask); };

  EquivReport r;
  for (std::size_t col = 0; col < ref.dim(); ++col) {
    const std::size_t full_col = widen(col);
    double leak_sq = 0.0;
    double dev = 0.0;
    for (std::size_t row = 0; row < ref.dim(); ++row) {
      const std::size_t full_row = widen(row);
      leak_sq += std::norm(full(full_row | aux_bit, full_col));
      dev = std::max(dev, std::abs(full(full_row, full_col) - ref(row, col)));
    }
    const double leak = std::sqrt(leak_sq);
    r.max_leakage = std::max(r.max_leakage, leak);
    r.max_deviation = std::max(r.max_deviation, dev);
    if ((!(leak <= tol) || !(dev <= tol)) && r.failing_column < 0) {
      r.failing_column = static_cast<long long>(col);
    }
  }
  r.equivalent = r.failing_column < 0;
  return r;
}

}  // namespace mcdec
