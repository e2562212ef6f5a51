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

#include "mcdec/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mcdec/error.hpp"

namespace mcdec {

namespace {

constexpr double kPi = std::numbers::pi;
// Phase corrections below this are not emitted.
constexpr double kPhaseCutoff = 1e-12;

void gate(GateSink& out, const Gate& g, Qubit t) { out.push(Instruction{g, {}, t}); }

void cx(GateSink& out, Qubit c, Qubit t) { out.push(Instruction{Gate::x(), {c}, t}); }

void t_gate(GateSink& out, Qubit q) { gate(out, Gate::p(kPi / 4), q); }
void tdg_gate(GateSink& out, Qubit q) { gate(out, Gate::p(-kPi / 4), q); }

std::vector<Qubit> concat(std::span<const Qubit> a, std::span<const Qubit> b) {
  std::vector<Qubit> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_distinct(std::span<const Qubit> qs, const char* where) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      if (qs[i] == qs[j]) {
        throw AncillaError(std::string(where) + ": qubit " + std::to_string(qs[i].index) +
                           " is used in two roles");
      }
    }
  }
}

// Half of a relative-phase Toffoli on `t`: H T CX(c) T^dagger CX(a).
// reset_half is its inverse.
void action_half(GateSink& out, Qubit c, Qubit a, Qubit t) {
  gate(out, Gate::h(), t);
  t_gate(out, t);
  cx(out, c, t);
  tdg_gate(out, t);
  cx(out, a, t);
}

void reset_half(GateSink& out, Qubit c, Qubit a, Qubit t) {
  cx(out, a, t);
  t_gate(out, t);
  cx(out, c, t);
  tdg_gate(out, t);
  gate(out, Gate::h(), t);
}

// C^kX where the idle `borrow` qubit may serve as dirty ancilla.
void mcx_borrowing(GateSink& out, std::span<const Qubit> controls, Qubit target, Qubit borrow) {
  if (controls.size() <= 2) {
    mcx_vchain(out, controls, target, {});
  } else {
    mcx_split(out, controls, target, borrow, /*aux_clean=*/false);
  }
}

bool is_identity(const Mat2& m) { return max_abs_diff(m, Mat2::identity()) <= 1e-15; }

}  // namespace

DecomposeConfig DecomposeConfig::baseline() {
  DecomposeConfig c;
  c.aux_mode = AuxMode::NoAux;
  c.use_u2_rewrite = false;
  return c;
}

DecomposeConfig DecomposeConfig::from_env(const DecomposeConfig& base) {
  if (!optimization_disabled_by_env()) return base;
  DecomposeConfig c = baseline();
  c.use_around_elision = false;
  c.small_n_threshold = base.small_n_threshold;
  return c;
}

void rp_toffoli(GateSink& out, Qubit c0, Qubit c1, Qubit t) {
  const Qubit qs[] = {c0, c1, t};
  require_distinct(qs, "rp_toffoli");
  gate(out, Gate::h(), t);
  t_gate(out, t);
  cx(out, c0, t);
  tdg_gate(out, t);
  cx(out, c1, t);
  t_gate(out, t);
  cx(out, c0, t);
  tdg_gate(out, t);
  gate(out, Gate::h(), t);
}

void toffoli_exact(GateSink& out, Qubit c0, Qubit c1, Qubit t) {
  const Qubit qs[] = {c0, c1, t};
  require_distinct(qs, "toffoli_exact");
  gate(out, Gate::h(), t);
  cx(out, c1, t);
  tdg_gate(out, t);
  cx(out, c0, t);
  t_gate(out, t);
  cx(out, c1, t);
  tdg_gate(out, t);
  cx(out, c0, t);
  t_gate(out, c1);
  t_gate(out, t);
  gate(out, Gate::h(), t);
  cx(out, c0, c1);
  t_gate(out, c0);
  tdg_gate(out, c1);
  cx(out, c0, c1);
}

void mcx_vchain(GateSink& out, std::span<const Qubit> controls, Qubit target,
                std::span<const Qubit> dirty) {
  const std::size_t k = controls.size();
  switch (k) {
    case 0: gate(out, Gate::x(), target); return;
    case 1: cx(out, controls[0], target); return;
    case 2: toffoli_exact(out, controls[0], controls[1], target); return;
    default: break;
  }

  const std::size_t na = k - 2;
  if (dirty.size() < na) {
    std::ostringstream os;
    os << "mcx_vchain: " << k << " controls need " << na << " dirty ancillas, got "
       << dirty.size();
    throw AncillaError(os.str());
  }
  const auto anc = dirty.first(na);
  std::vector<Qubit> all = concat(controls, anc);
  all.push_back(target);
  require_distinct(all, "mcx_vchain");

  // Toffoli ladder run twice. Only the Toffolis hitting the target are
  // exact; the ancilla Toffolis are split into relative-phase halves whose
  // phases cancel between the descending and ascending sweeps.
  for (int sweep = 0; sweep < 2; ++sweep) {
    toffoli_exact(out, controls[k - 1], anc[na - 1], target);
    for (std::size_t i = 1; i < k - 2; ++i) {
      action_half(out, controls[k - i - 1], anc[na - i - 1], anc[na - i]);
    }
    rp_toffoli(out, controls[0], controls[1], anc[0]);
    for (std::size_t i = 0; i + 1 < na; ++i) {
      reset_half(out, controls[2 + i], anc[i], anc[i + 1]);
    }
  }
}

void mcx_split(GateSink& out, std::span<const Qubit> controls, Qubit target, Qubit aux,
               bool aux_clean) {
  const std::size_t n = controls.size();
  if (n < 3) {
    throw StructureError("mcx_split needs at least 3 controls, got " + std::to_string(n));
  }
  std::vector<Qubit> all(controls.begin(), controls.end());
  all.push_back(target);
  all.push_back(aux);
  require_distinct(all, "mcx_split");

  const std::size_t k0 = (n + 1) / 2;
  const auto first = controls.first(k0);
  const auto second = controls.subspan(k0);

  std::vector<Qubit> first_dirty(second.begin(), second.end());
  first_dirty.push_back(target);
  std::vector<Qubit> second_controls(second.begin(), second.end());
  second_controls.push_back(aux);

  mcx_vchain(out, first, aux, first_dirty);
  mcx_vchain(out, second_controls, target, first);
  mcx_vchain(out, first, aux, first_dirty);
  // A clean aux is back to |0> here, so the final block would be a no-op.
  if (!aux_clean) mcx_vchain(out, second_controls, target, first);
}

void mc_pauli(GateSink& out, GateKind pauli, std::span<const Qubit> controls, Qubit target,
              Qubit aux) {
  if (pauli != GateKind::X && pauli != GateKind::Y && pauli != GateKind::Z) {
    throw InputError("mc_pauli: gate is not a Pauli");
  }
  const std::size_t n = controls.size();
  if (n == 0) {
    gate(out, Gate::named(pauli), target);
    return;
  }
  // Z = H X H and Y = P(pi/2) X P(-pi/2) as operators.
  if (pauli == GateKind::Z) gate(out, Gate::h(), target);
  if (pauli == GateKind::Y) gate(out, Gate::p(-kPi / 2), target);
  if (n <= 2) {
    mcx_vchain(out, controls, target, {});
  } else {
    mcx_split(out, controls, target, aux, /*aux_clean=*/true);
  }
  if (pauli == GateKind::Z) gate(out, Gate::h(), target);
  if (pauli == GateKind::Y) gate(out, Gate::p(kPi / 2), target);
}

void mc_su2(GateSink& out, const Mat2& u_bar, std::span<const Qubit> controls, Qubit target) {
  if (!u_bar.is_special_unitary(1e-10)) {
    throw NotUnitaryError("mc_su2: matrix is not special unitary: " + to_string(u_bar),
                          std::max(u_bar.unitarity_deviation(), std::abs(u_bar.det() - 1.0)));
  }
  const std::size_t n = controls.size();
  if (n == 0) {
    gate(out, Gate::u2(u_bar), target);
    return;
  }
  if (is_identity(u_bar)) return;
  std::vector<Qubit> all(controls.begin(), controls.end());
  all.push_back(target);
  require_distinct(all, "mc_su2");

  // u_bar = V RZ(d) V^dagger. With A = RZ(-d/4),
  // A^dagger X A X A^dagger X A X = RZ(d); when either half of the controls
  // is off the A's cancel pairwise, and V is harmless uncontrolled.
  const EigenDecomp e = eig_su2(u_bar);
  const bool has_basis = !is_identity(e.v);
  const Gate a = Gate::rz(-e.d_theta / 4);
  const Gate a_dg = Gate::rz(e.d_theta / 4);

  const std::size_t k0 = n / 2;
  const auto first = controls.first(k0);
  const auto second = controls.subspan(k0);

  if (has_basis) gate(out, Gate::u2(e.v.adjoint()), target);
  for (int rep = 0; rep < 2; ++rep) {
    mcx_vchain(out, first, target, second);
    gate(out, a, target);
    mcx_vchain(out, second, target, first);
    gate(out, a_dg, target);
  }
  if (has_basis) gate(out, Gate::u2(e.v), target);
}

void mc_u2_rewrite(GateSink& out, const Mat2& u, std::span<const Qubit> controls, Qubit target,
                   Qubit aux) {
  const Su2Part split = su2_part(u);
  if (controls.empty()) {
    gate(out, Gate::u2(u), target);
    return;
  }
  std::vector<Qubit> all(controls.begin(), controls.end());
  all.push_back(target);
  all.push_back(aux);
  require_distinct(all, "mc_u2_rewrite");

  mc_su2(out, split.su2, controls, target);
  // RZ(-2 phi)|0> = e^{i phi}|0>: the aux picks up the missing phase.
  if (std::abs(split.phase) > kPhaseCutoff) {
    mc_su2(out, gate_matrix(Gate::rz(-2.0 * split.phase)), controls, aux);
  }
}

void mc_phase(GateSink& out, double theta, std::span<const Qubit> controls, Qubit target,
              Qubit aux) {
  if (controls.empty()) {
    gate(out, Gate::p(theta), target);
    return;
  }
  if (std::abs(std::remainder(theta, 2 * kPi)) <= kPhaseCutoff) return;
  std::vector<Qubit> all(controls.begin(), controls.end());
  all.push_back(target);
  all.push_back(aux);
  require_distinct(all, "mc_phase");
  all.pop_back();
  mc_su2(out, gate_matrix(Gate::rz(-2.0 * theta)), all, aux);
}

void phase_fix_cn1p(GateSink& out, const Mat2& u, std::span<const Qubit> controls,
                    Qubit target) {
  const std::size_t n = controls.size();
  if (n == 0) throw StructureError("phase_fix_cn1p needs at least one control");
  const Su2Part split = su2_part(u);
  mc_su2(out, split.su2, controls, target);
  if (std::abs(split.phase) <= kPhaseCutoff) return;
  if (n == 1) {
    gate(out, Gate::p(split.phase), controls[0]);
  } else {
    mc_u2_baseline(out, gate_matrix(Gate::p(split.phase)), controls.first(n - 1), controls[n - 1]);
  }
}

void mc_u2_baseline(GateSink& out, const Mat2& u, std::span<const Qubit> controls,
                    Qubit target) {
  const std::size_t n = controls.size();
  if (n == 0) {
    gate(out, Gate::u2(u), target);
    return;
  }
  if (n == 1) {
    phase_fix_cn1p(out, u, controls, target);
    return;
  }
  // C^n U = C^{n-1}V . CX_{rest -> last} . C^1 V^dagger . CX_{rest -> last} . C^1 V
  // with V^2 = U; the target is idle during the CX stages and is borrowed.
  const Mat2 v = unitary_sqrt(u);
  const Mat2 v_dg = v.adjoint();
  const Qubit last = controls[n - 1];
  const auto rest = controls.first(n - 1);
  const Qubit one[] = {last};

  phase_fix_cn1p(out, v, one, target);
  mcx_borrowing(out, rest, last, target);
  phase_fix_cn1p(out, v_dg, one, target);
  mcx_borrowing(out, rest, last, target);
  mc_u2_baseline(out, v, rest, target);
}

void decompose_instruction(GateSink& out, const Instruction& inst, const DecomposeConfig& cfg,
                           AuxAllocator& aux) {
  const auto& controls = inst.controls;
  const std::size_t n = controls.size();
  const GateKind kind = inst.gate.kind();
  if (n == 0 || (n == 1 && kind == GateKind::X)) {
    out.push(inst);
    return;
  }
  const bool clean_aux = cfg.aux_mode == AuxMode::CleanAux;
  const std::size_t threshold = std::max<std::size_t>(cfg.small_n_threshold, 2);

  if (inst.gate.is_pauli()) {
    if (n <= 2) {
      mc_pauli(out, kind, controls, inst.target, aux.qubit());
    } else if (!clean_aux || n <= threshold) {
      mc_u2_baseline(out, gate_matrix(inst.gate), controls, inst.target);
    } else {
      mc_pauli(out, kind, controls, inst.target, aux.acquire());
    }
    return;
  }

  const Mat2 m = gate_matrix(inst.gate);
  const bool rotation =
      kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  if (rotation || (kind == GateKind::U2 && m.is_special_unitary(1e-12))) {
    mc_su2(out, m, controls, inst.target);
    return;
  }
  if (n == 1) {
    phase_fix_cn1p(out, m, controls, inst.target);
    return;
  }
  if (!clean_aux || !cfg.use_u2_rewrite) {
    mc_u2_baseline(out, m, controls, inst.target);
  } else if (kind == GateKind::P) {
    mc_phase(out, inst.gate.theta(), controls, inst.target, aux.acquire());
  } else {
    mc_u2_rewrite(out, m, controls, inst.target, aux.acquire());
  }
}

namespace {

// Forwards to another sink and records whether a given qubit was touched.
class TouchTracker final : public GateSink {
 public:
  TouchTracker(GateSink& inner, Qubit watched) : inner_(inner), watched_(watched) {}

  void push(Instruction inst) override {
    if (!touched_) {
      touched_ = inst.target == watched_ ||
                 std::find(inst.controls.begin(), inst.controls.end(), watched_) !=
                     inst.controls.end();
    }
    inner_.push(std::move(inst));
  }
  bool touched() const noexcept { return touched_; }

 private:
  GateSink& inner_;
  Qubit watched_;
  bool touched_ = false;
};

}  // namespace

bool decompose_into(GateSink& out, const Circuit& c, const DecomposeConfig& cfg) {
  AuxAllocator aux(Qubit(static_cast<std::uint32_t>(c.num_qubits())));
  TouchTracker tracker(out, aux.qubit());
  for (const auto& inst : c.instructions()) decompose_instruction(tracker, inst, cfg, aux);
  return tracker.touched();
}

Circuit decompose_circuit(const Circuit& c, const DecomposeConfig& cfg) {
  FragmentSink sink;
  const bool used_aux = decompose_into(sink, c, cfg);
  return Circuit(c.num_qubits() + (used_aux ? 1 : 0), std::move(sink.fragment));
}

}  // namespace mcdec
