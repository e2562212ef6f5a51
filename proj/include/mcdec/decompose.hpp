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

// Rewrites multi-controlled single-target gates into CNOTs and single-qubit
// gates.
//
// Every pass writes into a GateSink; wrap a call in collect() to get the
// emitted fragment. Qubit lists are never modified. Unless stated
// otherwise a pass is exact on the full register: no global phase, no
// subspace restriction.
//
// CNOT counts for n controls (n >= 3):
//   mcx_vchain          8n - 6       (n - 2 dirty ancillas)
//   mcx_split clean     12n - 10 / 12n - 6 for even / odd n
//   mcx_split dirty     16n - 8
//   mc_su2              16n - 24
//   mc_phase            16n - 8
//   mc_u2_rewrite       32n - 48
//   mc_u2_baseline      Theta(n^2)

#include <cstddef>
#include <span>

#include "mcdec/circuit.hpp"
#include "mcdec/qmat.hpp"

namespace mcdec {

enum class AuxMode { CleanAux, NoAux };

struct DecomposeConfig {
  AuxMode aux_mode = AuxMode::CleanAux;
  /// Route non-SU(2) gates (Phase, H, U2) through the aux-qubit rewrite.
  bool use_u2_rewrite = true;
  /// Consumed by program generators when they configure their Builder.
  bool use_around_elision = true;
  /// Pauli gates with at most this many controls use ancilla-free closed
  /// forms. Values below 2 are treated as 2.
  std::size_t small_n_threshold = 2;

  /// Everything enabled.
  static DecomposeConfig optimized() { return {}; }
  /// No auxiliary qubit, quadratic fallback for non-SU(2) gates.
  static DecomposeConfig baseline();
  /// `base`, overridden by the baseline when the kill switch is set.
  static DecomposeConfig from_env(const DecomposeConfig& base);
  static DecomposeConfig from_env() { return from_env(DecomposeConfig{}); }

  friend bool operator==(const DecomposeConfig&, const DecomposeConfig&) = default;
};

/// The single clean ancilla shared by every rewrite in a circuit. It must
/// be |0> whenever a pass starts and every pass leaves it in |0>.
class AuxAllocator {
 public:
  explicit AuxAllocator(Qubit aux) : aux_(aux) {}

  Qubit acquire() noexcept {
    used_ = true;
    return aux_;
  }
  Qubit qubit() const noexcept { return aux_; }
  bool used() const noexcept { return used_; }

 private:
  Qubit aux_;
  bool used_ = false;
};

/// Toffoli up to relative phases on basis states; 3 CNOTs.
void rp_toffoli(GateSink& out, Qubit c0, Qubit c1, Qubit t);

/// Exact Toffoli; 6 CNOTs.
void toffoli_exact(GateSink& out, Qubit c0, Qubit c1, Qubit t);

/// C^kX using k - 2 dirty ancillas (k >= 3); dirty qubits are restored for
/// any input state. Requires only the first k - 2 entries of `dirty`.
void mcx_vchain(GateSink& out, std::span<const Qubit> controls, Qubit target,
                std::span<const Qubit> dirty);

/// C^nX (n >= 3) split into two half-size chains joined through `aux`.
/// With aux_clean the input must have aux = |0>; it is returned as |0>.
/// Otherwise aux may hold any state and is restored.
void mcx_split(GateSink& out, std::span<const Qubit> controls, Qubit target,
               Qubit aux, bool aux_clean);

/// C^nX, C^nY or C^nZ. n <= 2 needs no aux; larger n uses a clean aux.
void mc_pauli(GateSink& out, GateKind pauli, std::span<const Qubit> controls,
              Qubit target, Qubit aux);

/// C^n(u_bar) for special unitary u_bar, no ancilla.
void mc_su2(GateSink& out, const Mat2& u_bar, std::span<const Qubit> controls,
            Qubit target);

/// C^n(u) for any unitary u: C^n(u_bar) on the target plus C^n RZ(-2 phi)
/// on the clean aux, which turns into the phase e^{i phi} on aux = |0>.
/// Exact on the aux = |0> subspace.
void mc_u2_rewrite(GateSink& out, const Mat2& u, std::span<const Qubit> controls,
                   Qubit target, Qubit aux);

/// C^nP(theta) as a single C^{n+1} RZ(-2 theta) on the clean aux, with the
/// target joining the controls. Exact on the aux = |0> subspace.
void mc_phase(GateSink& out, double theta, std::span<const Qubit> controls,
              Qubit target, Qubit aux);

/// Ancilla-free C^n(u): C^n(u_bar) followed by C^{n-1}P(phi) on the
/// controls, the phase stage going through mc_u2_baseline. n >= 1.
void phase_fix_cn1p(GateSink& out, const Mat2& u, std::span<const Qubit> controls,
                    Qubit target);

/// Ancilla-free recursive C^n(u) with a quadratic CNOT count, built on
/// V^2 = u. Reference point for the linear passes.
void mc_u2_baseline(GateSink& out, const Mat2& u, std::span<const Qubit> controls,
                    Qubit target);

/// Decomposes one instruction. Instructions with no controls and CNOTs are
/// forwarded unchanged.
void decompose_instruction(GateSink& out, const Instruction& inst,
                           const DecomposeConfig& cfg, AuxAllocator& aux);

/// Decomposes every instruction of `c` into `out`. The aux qubit, when
/// needed, is index c.num_qubits(). Returns whether it was used.
bool decompose_into(GateSink& out, const Circuit& c, const DecomposeConfig& cfg);

/// Output holds only uncontrolled gates and CNOTs. Its register grows by one
/// qubit (the last index) when the aux was used.
Circuit decompose_circuit(const Circuit& c, const DecomposeConfig& cfg);

}  // namespace mcdec
