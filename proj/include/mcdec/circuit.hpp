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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "mcdec/qmat.hpp"

namespace mcdec {

/// Index of a qubit in a register.
struct Qubit {
  std::uint32_t index = 0;

  constexpr Qubit() = default;
  constexpr explicit Qubit(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Qubit, Qubit) = default;
};

inline namespace literals {
constexpr Qubit operator""_q(unsigned long long i) {
  return Qubit(static_cast<std::uint32_t>(i));
}
}  // namespace literals

/// Contiguous qubits [first, first + count).
std::vector<Qubit> qubit_range(std::uint32_t first, std::uint32_t count);

/// A single-qubit gate applied to `target` when every qubit in `controls`
/// is |1>. Controls are kept in emission order.
struct Instruction {
  Gate gate;
  std::vector<Qubit> controls;
  Qubit target;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

using Fragment = std::vector<Instruction>;

/// Throws StructureError if controls repeat or contain the target.
void check_instruction(const Instruction& inst);

/// Consumer of emitted instructions. Decomposition passes write into a sink
/// so large outputs can be counted without being stored.
class GateSink {
 public:
  virtual ~GateSink() = default;
  virtual void push(Instruction inst) = 0;
};

class FragmentSink final : public GateSink {
 public:
  void push(Instruction inst) override { fragment.push_back(std::move(inst)); }

  Fragment fragment;
};

/// Runs `fn(sink)` against a fresh FragmentSink and returns what it emitted.
template <class Fn>
Fragment collect(Fn&& fn) {
  FragmentSink sink;
  std::forward<Fn>(fn)(static_cast<GateSink&>(sink));
  return std::move(sink.fragment);
}

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}
  Circuit(std::size_t num_qubits, Fragment instructions);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const Fragment& instructions() const noexcept { return instructions_; }
  std::size_t size() const noexcept { return instructions_.size(); }
  bool empty() const noexcept { return instructions_.empty(); }

  /// Validates qubit range and control/target distinctness.
  void append(Instruction inst);
  void append(const Fragment& fragment);
  void append(Gate g, Qubit target, std::vector<Qubit> controls = {});

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_ = 0;
  Fragment instructions_;
};

/// Reversed order with each gate inverted; controls and targets kept.
Fragment dagger_fragment(std::span<const Instruction> f);

struct Stats {
  std::size_t cnot_count = 0;             ///< X with exactly one control
  std::size_t single_qubit_count = 0;     ///< no controls
  std::size_t multi_controlled_count = 0; ///< two or more controls
  std::size_t controlled_gate_count = 0;  ///< one or more controls
  std::size_t total_instructions = 0;
  std::size_t depth = 0;

  friend bool operator==(const Stats&, const Stats&) = default;
};

/// Streams instructions into Stats without retaining them. Depth is the
/// longest chain of instructions sharing a qubit.
class StatsAccumulator final : public GateSink {
 public:
  explicit StatsAccumulator(std::size_t num_qubits = 0) : layer_(num_qubits, 0) {}

  void push(Instruction inst) override { add(inst); }
  void add(const Instruction& inst);
  const Stats& stats() const noexcept { return stats_; }

 private:
  Stats stats_;
  std::vector<std::size_t> layer_;
};

Stats stats_of(const Circuit& c);

/// Name of the environment switch that disables the decomposition
/// optimizations (aux-qubit rewrites and around elision).
inline constexpr const char* kDisableOptimizationEnv =
    "MCDEC_DISABLE_DECOMPOSITION_OPTIMIZATION";

/// True when the kill switch is set to "true" (case-insensitive) or "1".
bool optimization_disabled_by_env();

struct BuilderOptions {
  /// Strip outer controls from the A part of around scopes.
  bool around_elision = true;

  /// Defaults with elision turned off when the kill switch is set.
  static BuilderOptions from_env();
};

/// Scoped circuit construction.
///
/// `control` adds qubits as controls to everything emitted inside its body.
/// `around(a, b)` emits A, then B, then A^dagger. With elision enabled, the
/// controls opened outside the around statement are attached to B only,
/// which yields A^dagger (C^n B) A instead of (C^n A^dagger)(C^n B)(C^n A).
/// Both forms are the same unitary because A^dagger A = I when the controls
/// are off. Controls opened inside A itself are always kept.
class Builder {
 public:
  using Body = std::function<void()>;

  explicit Builder(std::size_t num_qubits, BuilderOptions options = {});

  void apply(const Gate& g, Qubit target);
  void control(std::span<const Qubit> qubits, const Body& body);
  void control(std::initializer_list<Qubit> qubits, const Body& body) {
    control(std::span<const Qubit>(qubits.begin(), qubits.size()), body);
  }
  void around(const Body& a_body, const Body& b_body);

  /// Controls that would be attached to an instruction emitted now.
  std::vector<Qubit> active_controls() const;
  bool scopes_balanced() const noexcept {
    return control_stack_.empty() && recordings_.empty() && floor_ == 0;
  }
  const BuilderOptions& options() const noexcept { return options_; }

  const Circuit& circuit() const noexcept { return circuit_; }
  /// Moves the finished circuit out. Throws StructureError if a scope is open.
  Circuit take();

 private:
  void emit(Instruction inst);
  bool is_any_control(Qubit q) const;

  Circuit circuit_;
  BuilderOptions options_;
  std::vector<std::vector<Qubit>> control_stack_;
  // control_stack_ entries below floor_ are elided for the current emission.
  std::size_t floor_ = 0;
  std::vector<Fragment> recordings_;
};

}  // namespace mcdec
