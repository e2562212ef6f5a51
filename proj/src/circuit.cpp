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

#include "mcdec/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>

#include "mcdec/error.hpp"

namespace mcdec {

std::vector<Qubit> qubit_range(std::uint32_t first, std::uint32_t count) {
  std::vector<Qubit> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.emplace_back(first + i);
  return out;
}

void check_instruction(const Instruction& inst) {
  const auto& c = inst.controls;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == inst.target) {
      throw StructureError("qubit " + std::to_string(c[i].index) +
                           " is both a control and the target");
    }
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) {
        throw StructureError("duplicate control qubit " + std::to_string(c[i].index));
      }
    }
  }
}

Circuit::Circuit(std::size_t num_qubits, Fragment instructions) : num_qubits_(num_qubits) {
  instructions_.reserve(instructions.size());
  for (auto& inst : instructions) append(std::move(inst));
}

void Circuit::append(Instruction inst) {
  check_instruction(inst);
  auto in_range = [&](Qubit q) { return q.index < num_qubits_; };
  if (!in_range(inst.target) || !std::all_of(inst.controls.begin(), inst.controls.end(), in_range)) {
    throw StructureError("instruction addresses a qubit outside the " +
                         std::to_string(num_qubits_) + "-qubit register");
  }
  instructions_.push_back(std::move(inst));
}

void Circuit::append(const Fragment& fragment) {
  for (const auto& inst : fragment) append(inst);
}

void Circuit::append(Gate g, Qubit target, std::vector<Qubit> controls) {
  append(Instruction{std::move(g), std::move(controls), target});
}

Fragment dagger_fragment(std::span<const Instruction> f) {
  Fragment out;
  out.reserve(f.size());
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    out.push_back(Instruction{dagger_gate(it->gate), it->controls, it->target});
  }
  return out;
}

void StatsAccumulator::add(const Instruction& inst) {
  const std::size_t nc = inst.controls.size();
  ++stats_.total_instructions;
  if (nc == 0) ++stats_.single_qubit_count;
  if (nc >= 1) ++stats_.controlled_gate_count;
  if (nc >= 2) ++stats_.multi_controlled_count;
  if (nc == 1 && inst.gate.kind() == GateKind::X) ++stats_.cnot_count;

  std::size_t top = inst.target.index;
  for (Qubit q : inst.controls) top = std::max<std::size_t>(top, q.index);
  if (layer_.size() <= top) layer_.resize(top + 1, 0);

  std::size_t level = layer_[inst.target.index];
  for (Qubit q : inst.controls) level = std::max(level, layer_[q.index]);
  ++level;
  layer_[inst.target.index] = level;
  for (Qubit q : inst.controls) layer_[q.index] = level;
  stats_.depth = std::max(stats_.depth, level);
}

Stats stats_of(const Circuit& c) {
  StatsAccumulator acc(c.num_qubits());
  for (const auto& inst : c.instructions()) acc.add(inst);
  return acc.stats();
}

bool optimization_disabled_by_env() {
  const char* raw = std::getenv(kDisableOptimizationEnv);
  if (raw == nullptr) return false;
  std::string v(raw);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return v == "true" || v == "1";
}

BuilderOptions BuilderOptions::from_env() {
  BuilderOptions o;
  if (optimization_disabled_by_env()) o.around_elision = false;
  return o;
}

Builder::Builder(std::size_t num_qubits, BuilderOptions options)
    : circuit_(num_qubits), options_(options) {}

std::vector<Qubit> Builder::active_controls() const {
  std::vector<Qubit> out;
  for (std::size_t i = floor_; i < control_stack_.size(); ++i) {
    out.insert(out.end(), control_stack_[i].begin(), control_stack_[i].end());
  }
  return out;
}

bool Builder::is_any_control(Qubit q) const {
  for (const auto& scope : control_stack_) {
    if (std::find(scope.begin(), scope.end(), q) != scope.end()) return true;
  }
  return false;
}

void Builder::emit(Instruction inst) {
  for (auto& rec : recordings_) rec.push_back(inst);
  circuit_.append(std::move(inst));
}

void Builder::apply(const Gate& g, Qubit target) {
  // Elided outer controls still count: A must not touch them for
  // A^dagger (C^n B) A to equal C^n (A^dagger B A).
  if (is_any_control(target)) {
    throw StructureError("target qubit " + std::to_string(target.index) +
                         " is an active control");
  }
  emit(Instruction{g, active_controls(), target});
}

namespace {

// Restores the builder's scope stacks when a body exits, normally or not.
template <class Fn>
struct ScopeExit {
  Fn fn;
  ~ScopeExit() { fn(); }
};
template <class Fn>
ScopeExit(Fn) -> ScopeExit<Fn>;

}  // namespace

void Builder::control(std::span<const Qubit> qubits, const Body& body) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (is_any_control(qubits[i])) {
      throw StructureError("qubit " + std::to_string(qubits[i].index) +
                           " is already an active control");
    }
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw StructureError("duplicate control qubit " + std::to_string(qubits[i].index));
      }
    }
  }
  const std::size_t depth = control_stack_.size();
  control_stack_.emplace_back(qubits.begin(), qubits.end());
  ScopeExit pop{[&] { control_stack_.resize(depth); }};
  body();
  if (control_stack_.size() != depth + 1) {
    throw StructureError("control scope closed with unbalanced inner scopes");
  }
}

void Builder::around(const Body& a_body, const Body& b_body) {
  const std::size_t depth = control_stack_.size();
  const std::size_t saved_floor = floor_;
  const std::size_t saved_recordings = recordings_.size();

  Fragment a_fragment;
  {
    recordings_.emplace_back();
    ScopeExit restore{[&] {
      floor_ = saved_floor;
      recordings_.resize(saved_recordings);
    }};
    if (options_.around_elision) floor_ = depth;
    a_body();
    if (control_stack_.size() != depth || recordings_.size() != saved_recordings + 1) {
      throw StructureError("around: A body left unbalanced scopes");
    }
    a_fragment = std::move(recordings_.back());
  }

  b_body();
  if (control_stack_.size() != depth || floor_ != saved_floor) {
    throw StructureError("around: B body left unbalanced scopes");
  }

  for (auto& inst : dagger_fragment(a_fragment)) emit(std::move(inst));
}

Circuit Builder::take() {
  if (!scopes_balanced()) throw StructureError("Builder::take with open scopes");
  Circuit out = std::move(circuit_);
  circuit_ = Circuit(out.num_qubits());
  return out;
}

}  // namespace mcdec
