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

// Program generators for the two benchmark workloads (a Grover layer and
// recursive state preparation) and the harnesses that count their
// decomposed gates.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "mcdec/circuit.hpp"
#include "mcdec/decompose.hpp"

namespace mcdec {

/// Binary tree of RY angles with leaf phases. Node value is
/// 2 asin(sqrt(p_right)) where p_right is the normalised probability of the
/// right half; leaves carry the phases of their two amplitudes.
struct ParamTree {
  double value = 0.0;
  std::unique_ptr<ParamTree> left;
  std::unique_ptr<ParamTree> right;
  double phase0 = 0.0;
  double phase1 = 0.0;

  bool is_leaf() const noexcept { return !left && !right; }
  std::size_t depth() const noexcept { return is_leaf() ? 1 : 1 + left->depth(); }
};

/// Builds the tree for the state sum_k sqrt(prob_k / total) e^{i amp_k} |k>.
/// Throws InputError unless both lists have the same power-of-two length
/// >= 2, probabilities are non-negative and the total is positive.
ParamTree param_tree_new(std::span<const double> prob, std::span<const double> amp);

/// Seeded random tree over 2^n amplitudes: probabilities uniform in (0, 1]
/// before normalisation, phases uniform in [0, 2 pi).
struct RandomState {
  std::vector<double> prob;
  std::vector<double> amp;
};
RandomState random_state(std::size_t num_qubits, std::uint64_t seed);

/// Emits the recursive preparation routine. qubits.size() must equal the
/// tree depth.
void prepare_program(Builder& b, std::span<const Qubit> qubits, const ParamTree& tree);

/// C^{n-1}Z on the last qubit: flips the sign of |1...1>.
void grover_oracle(Builder& b, std::span<const Qubit> qubits);
/// around(H then X on all qubits) { C^{n-1}Z }.
void grover_diffusion(Builder& b, std::span<const Qubit> qubits);
void grover_layer(Builder& b, std::span<const Qubit> qubits);
/// floor(pi / 4 * sqrt(2^n)).
std::size_t grover_steps(std::size_t n);

Circuit grover_layer_circuit(std::size_t n);
Circuit prepare_circuit(std::size_t n, std::uint64_t seed, bool around_elision = true);

struct BenchRecord {
  std::size_t n = 0;
  bool optimized = false;
  std::size_t cnot_count = 0;
  std::size_t total_gates = 0;
  std::size_t controlled_gate_count = 0;
  std::size_t depth = 0;
  double wall_time_s = 0.0;
};

/// Stats of `c` after decomposition, counted without storing the output.
BenchRecord count_decomposed(const Circuit& c, const DecomposeConfig& cfg);

/// One record per n in [n_min, n_max] for a single Grover layer.
std::vector<BenchRecord> run_grover_bench(std::size_t n_min, std::size_t n_max,
                                          bool optimized);
/// One record per n in [n_min, n_max] for a seeded prepare program.
std::vector<BenchRecord> run_prepare_bench(std::size_t n_min, std::size_t n_max,
                                           std::uint64_t seed, bool optimized);

/// Config used by the benches: optimized() or baseline().
DecomposeConfig bench_config(bool optimized);

inline constexpr const char* kBenchCsvHeader =
    "n,optimized,cnot_count,total_gates,controlled_gate_count,depth,wall_time_s";

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records);

}  // namespace mcdec
