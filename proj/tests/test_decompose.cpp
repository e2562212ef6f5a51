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

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "mcdec/decompose.hpp"
#include "mcdec/error.hpp"
#include "mcdec/oracle.hpp"

using namespace mcdec;
using namespace mcdec::literals;
using mcdec::testing::kPi;

namespace {

std::size_t cnots(const Fragment& f) {
  std::size_t n = 0;
  for (const auto& i : f) n += (i.gate.kind() == GateKind::X && i.controls.size() == 1);
  return n;
}

bool closed(const Fragment& f) {
  for (const auto& i : f) {
    if (i.controls.size() > 1) return false;
    if (i.controls.size() == 1 && i.gate.kind() != GateKind::X) return false;
  }
  return true;
}

Circuit on(std::size_t nq, const Fragment& f) { return Circuit(nq, f); }

// The undecomposed gate as a single instruction, simulated natively.
DenseUnitary single(std::size_t nq, const Gate& g, std::vector<Qubit> controls, Qubit t) {
  Circuit c(nq);
  c.append(g, t, std::move(controls));
  return build_unitary(c);
}

std::vector<Qubit> q(std::uint32_t first, std::uint32_t count) { return qubit_range(first, count); }

Qubit Q(std::size_t i) { return Qubit(static_cast<std::uint32_t>(i)); }

struct EnvGuard {
  explicit EnvGuard(const char* v) { ::setenv(kDisableOptimizationEnv, v, 1); }
  ~EnvGuard() { ::unsetenv(kDisableOptimizationEnv); }
};

}  // namespace

TEST_CASE("toffolis") {
  const Fragment rp = collect([](GateSink& s) { rp_toffoli(s, 0_q, 1_q, 2_q); });
  CHECK(cnots(rp) == 3);
  CHECK(closed(rp));
  // Same permutation as CCX, up to phases on basis states.
  const DenseUnitary u = build_unitary(on(3, rp));
  const DenseUnitary ccx = single(3, Gate::x(), {0_q, 1_q}, 2_q);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(std::abs(u(i, j)) - std::abs(ccx(i, j))) < 1e-12);
  CHECK_FALSE(equiv(u, ccx, 1e-8, true).equivalent);

  const Fragment ex = collect([](GateSink& s) { toffoli_exact(s, 0_q, 1_q, 2_q); });
  CHECK(cnots(ex) == 6);
  CHECK(equiv(build_unitary(on(3, ex)), ccx, 1e-12, false).equivalent);
  std::vector<Complex> in(8);
  in[4] = 1.0;
  const auto out = simulate(on(3, ex), in);
  CHECK(std::abs(out[4] - 1.0) < 1e-12);
}

TEST_CASE("mcx_vchain") {
  CHECK(collect([](GateSink& s) { mcx_vchain(s, q(0, 1), 1_q, {}); }).size() == 1);
  CHECK(cnots(collect([](GateSink& s) { mcx_vchain(s, q(0, 2), 2_q, {}); })) == 6);

  // k = 5 with 3 dirty: every one of the 512 columns, so dirty qubits in
  // any state are restored.
  const auto ctrls = q(0, 5);
  const auto dirty = q(6, 3);
  const Fragment f = collect([&](GateSink& s) { mcx_vchain(s, ctrls, 5_q, dirty); });
  CHECK(cnots(f) == 34);
  CHECK(closed(f));
  const EquivReport r = equiv(build_unitary(on(9, f)), single(9, Gate::x(), ctrls, 5_q), 1e-10, false);
  CHECK(r.equivalent);

  for (std::size_t k = 3; k <= 6; ++k) {
    const auto c = q(0, static_cast<std::uint32_t>(k));
    const auto d = q(static_cast<std::uint32_t>(k + 1), static_cast<std::uint32_t>(k - 2));
    const Fragment g = collect([&](GateSink& s) { mcx_vchain(s, c, Q(k), d); });
    CHECK(cnots(g) == 8 * k - 6);
    CHECK(equiv(build_unitary(on(2 * k - 1, g)), single(2 * k - 1, Gate::x(), c, Q(k)), 1e-10, false)
              .equivalent);
  }

  try {
    collect([&](GateSink& s) { mcx_vchain(s, ctrls, 5_q, q(6, 2)); });
    FAIL("expected AncillaError");
  } catch (const AncillaError& e) {
    CHECK(std::string(e.what()).find("need 3") != std::string::npos);
  }
  CHECK_THROWS_AS(collect([&](GateSink& s) { mcx_vchain(s, ctrls, 5_q, q(4, 3)); }), AncillaError);
}

TEST_CASE("mcx_split") {
  const auto c8 = q(0, 8);
  CHECK(cnots(collect([&](GateSink& s) { mcx_split(s, c8, 8_q, 9_q, true); })) <= 96);
  CHECK(cnots(collect([&](GateSink& s) { mcx_split(s, c8, 8_q, 9_q, false); })) <= 128);

  for (std::size_t n = 3; n <= 6; ++n) {
    const auto c = q(0, static_cast<std::uint32_t>(n));
    const Qubit t = Q(n);
    const Qubit aux = Q(n + 1);
    const DenseUnitary ref_clean = single(n + 1, Gate::x(), c, t);
    const Fragment clean = collect([&](GateSink& s) { mcx_split(s, c, t, aux, true); });
    CHECK(cnots(clean) <= 12 * n);
    const EquivReport rc = equiv_on_aux_zero(build_unitary(on(n + 2, clean)), ref_clean, aux, 1e-10);
    CHECK(rc.equivalent);
    CHECK(rc.max_leakage < 1e-10);

    const Fragment dirty = collect([&](GateSink& s) { mcx_split(s, c, t, aux, false); });
    CHECK(cnots(dirty) <= 16 * n);
    CHECK(equiv(build_unitary(on(n + 2, dirty)), single(n + 2, Gate::x(), c, t), 1e-10, false)
              .equivalent);
  }

  // Once both halves reach 3 controls the chains cost 8k - 6 each.
  for (std::size_t n = 5; n <= 64; ++n) {
    const auto c = q(0, static_cast<std::uint32_t>(n));
    const Qubit t = Q(n);
    const Qubit aux = Q(n + 1);
    CHECK(cnots(collect([&](GateSink& s) { mcx_split(s, c, t, aux, true); })) ==
          (n % 2 == 0 ? 12 * n - 10 : 12 * n - 6));
    CHECK(cnots(collect([&](GateSink& s) { mcx_split(s, c, t, aux, false); })) == 16 * n - 8);
  }
}

TEST_CASE("mc_pauli") {
  const Fragment z3 = collect([](GateSink& s) { mc_pauli(s, GateKind::Z, q(0, 3), 3_q, 4_q); });
  CHECK(cnots(z3) <= 36);
  CHECK(equiv_on_aux_zero(build_unitary(on(5, z3)), single(4, Gate::z(), q(0, 3), 3_q), 4_q, 1e-10)
            .equivalent);

  const Fragment z0 = collect([](GateSink& s) { mc_pauli(s, GateKind::Z, {}, 0_q, 1_q); });
  REQUIRE(z0.size() == 1);
  CHECK(z0[0] == Instruction{Gate::z(), {}, 0_q});

  const Fragment y2 = collect([](GateSink& s) { mc_pauli(s, GateKind::Y, q(0, 2), 2_q, 3_q); });
  CHECK(equiv(build_unitary(on(3, y2)), single(3, Gate::y(), q(0, 2), 2_q), 1e-10, false).equivalent);

  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto c = q(0, static_cast<std::uint32_t>(n));
      const Fragment f = collect([&](GateSink& s) { mc_pauli(s, k, c, Q(n), Q(n + 1)); });
      CHECK(closed(f));
      CHECK(equiv_on_aux_zero(build_unitary(on(n + 2, f)), single(n + 1, Gate::named(k), c, Q(n)),
                              Q(n + 1), 1e-10)
                .equivalent);
    }
  }
}

TEST_CASE("mc_su2") {
  const Mat2 ry = gate_matrix(Gate::ry(1.0));
  const Fragment f0 = collect([&](GateSink& s) { mc_su2(s, ry, {}, 0_q); });
  REQUIRE(f0.size() == 1);
  CHECK(f0[0].gate.kind() == GateKind::U2);

  for (std::size_t n = 1; n <= 5; ++n) {
    const Fragment rz =
        collect([&](GateSink& s) { mc_su2(s, gate_matrix(Gate::rz(0.8)), q(0, static_cast<std::uint32_t>(n)), Q(n)); });
    for (const auto& i : rz) CHECK(i.gate.kind() != GateKind::U2);
  }

  const Fragment f3 = collect([&](GateSink& s) { mc_su2(s, ry, q(0, 3), 3_q); });
  CHECK(cnots(f3) <= 48);
  CHECK(equiv(build_unitary(on(4, f3)), single(4, Gate::ry(1.0), q(0, 3), 3_q), 1e-10, false).equivalent);

  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 7; ++n) {
    const Mat2 u = mcdec::testing::random_su2(rng);
    const auto c = q(0, static_cast<std::uint32_t>(n));
    const Fragment f = collect([&](GateSink& s) { mc_su2(s, u, c, Q(n)); });
    CHECK(closed(f));
    CHECK(equiv(build_unitary(on(n + 1, f)), single(n + 1, Gate::u2(u), c, Q(n)), 1e-10, false).equivalent);
  }
  for (std::size_t n = 6; n <= 40; ++n) {
    const Mat2 u = mcdec::testing::random_su2(rng);
    CHECK(cnots(collect([&](GateSink& s) { mc_su2(s, u, q(0, static_cast<std::uint32_t>(n)), Q(n)); })) ==
          16 * n - 24);
  }

  CHECK(collect([&](GateSink& s) { mc_su2(s, Mat2::identity(), q(0, 4), 4_q); }).empty());
  CHECK_THROWS_AS(collect([&](GateSink& s) { mc_su2(s, gate_matrix(Gate::h()), q(0, 2), 2_q); }),
                  NotUnitaryError);
}

TEST_CASE("mc_u2_rewrite") {
  const Mat2 h = gate_matrix(Gate::h());
  CHECK(cnots(collect([&](GateSink& s) { mc_u2_rewrite(s, h, q(0, 5), 5_q, 6_q); })) <= 160);

  const Fragment su = collect([&](GateSink& s) { mc_u2_rewrite(s, gate_matrix(Gate::rx(0.3)), q(0, 3), 3_q, 4_q); });
  for (const auto& i : su) CHECK(i.target != 4_q);

  const Fragment h2 = collect([&](GateSink& s) { mc_u2_rewrite(s, h, q(0, 2), 2_q, 3_q); });
  const EquivReport r = equiv_on_aux_zero(build_unitary(on(4, h2)), reference_cnu(h, 2), 3_q, 1e-10);
  CHECK(r.equivalent);
  CHECK(r.max_leakage < 1e-10);
  // Not exact on the full register: aux = |1> picks up the wrong phase.
  CHECK_FALSE(equiv(build_unitary(on(4, h2)), single(4, Gate::h(), q(0, 2), 2_q), 1e-8, false).equivalent);

  std::mt19937_64 rng(77);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Mat2 u = mcdec::testing::random_u2(rng);
    const auto c = q(0, static_cast<std::uint32_t>(n));
    const Fragment f = collect([&](GateSink& s) { mc_u2_rewrite(s, u, c, Q(n), Q(n + 1)); });
    CHECK(closed(f));
    CHECK(equiv_on_aux_zero(build_unitary(on(n + 2, f)), reference_cnu(u, n), Q(n + 1), 1e-10).equivalent);
  }
  for (std::size_t n = 6; n <= 40; ++n) {
    CHECK(cnots(collect([&](GateSink& s) {
            mc_u2_rewrite(s, h, q(0, static_cast<std::uint32_t>(n)), Q(n), Q(n + 1));
          })) == 32 * n - 48);
  }
}

TEST_CASE("mc_phase") {
  CHECK(cnots(collect([](GateSink& s) { mc_phase(s, 0.4, q(0, 4), 4_q, 5_q); })) <= 64);
  const Fragment p0 = collect([](GateSink& s) { mc_phase(s, 0.4, {}, 0_q, 1_q); });
  REQUIRE(p0.size() == 1);
  CHECK(p0[0] == Instruction{Gate::p(0.4), {}, 0_q});

  const Fragment p2 = collect([](GateSink& s) { mc_phase(s, kPi / 3, q(0, 2), 2_q, 3_q); });
  CHECK(equiv_on_aux_zero(build_unitary(on(4, p2)), reference_cnu(gate_matrix(Gate::p(kPi / 3)), 2), 3_q,
                          1e-10)
            .equivalent);

  CHECK(collect([](GateSink& s) { mc_phase(s, 0.0, q(0, 3), 3_q, 4_q); }).empty());
  CHECK(collect([](GateSink& s) { mc_phase(s, 2 * kPi, q(0, 3), 3_q, 4_q); }).empty());

  for (std::size_t n = 5; n <= 40; ++n) {
    CHECK(cnots(collect([&](GateSink& s) {
            mc_phase(s, 1.1, q(0, static_cast<std::uint32_t>(n)), Q(n), Q(n + 1));
          })) == 16 * n - 8);
  }
}

TEST_CASE("phase_fix_cn1p") {
  const double t = 0.9;
  const Fragment f = collect([&](GateSink& s) { phase_fix_cn1p(s, gate_matrix(Gate::p(t)), q(0, 1), 1_q); });
  REQUIRE_FALSE(f.empty());
  CHECK(f.back() == Instruction{Gate::p(t / 2), {}, 0_q});
  const Fragment rz = collect([&](GateSink& s) { mc_su2(s, gate_matrix(Gate::rz(t)), q(0, 1), 1_q); });
  CHECK(Fragment(f.begin(), f.end() - 1) == rz);
  CHECK(equiv(build_unitary(on(2, f)), reference_cnu(gate_matrix(Gate::p(t)), 1), 1e-12, false).equivalent);

  const Mat2 ry = gate_matrix(Gate::ry(0.4));
  CHECK(collect([&](GateSink& s) { phase_fix_cn1p(s, ry, q(0, 3), 3_q); }) ==
        collect([&](GateSink& s) { mc_su2(s, ry, q(0, 3), 3_q); }));

  const Fragment h3 = collect([&](GateSink& s) { phase_fix_cn1p(s, gate_matrix(Gate::h()), q(0, 3), 3_q); });
  CHECK(equiv(build_unitary(on(4, h3)), reference_cnu(gate_matrix(Gate::h()), 3), 1e-10, false).equivalent);

  CHECK_THROWS_AS(collect([&](GateSink& s) { phase_fix_cn1p(s, ry, {}, 0_q); }), StructureError);
}

TEST_CASE("mc_u2_baseline") {
  const Fragment x1 = collect([](GateSink& s) { mc_u2_baseline(s, gate_matrix(Gate::x()), q(0, 1), 1_q); });
  CHECK(cnots(x1) <= 2);
  CHECK(equiv(build_unitary(on(2, x1)), reference_cnu(gate_matrix(Gate::x()), 1), 1e-12, false).equivalent);
  CHECK(collect([](GateSink& s) { mc_u2_baseline(s, gate_matrix(Gate::h()), {}, 0_q); }).size() == 1);

  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 7; ++n) {
    const Mat2 u = mcdec::testing::random_u2(rng);
    const auto c = q(0, static_cast<std::uint32_t>(n));
    const Fragment f = collect([&](GateSink& s) { mc_u2_baseline(s, u, c, Q(n)); });
    CHECK(closed(f));
    CHECK(equiv(build_unitary(on(n + 1, f)), reference_cnu(u, n), 1e-9, false).equivalent);
  }

  auto count = [](std::size_t n) {
    StatsAccumulator acc(n + 1);
    mc_u2_baseline(acc, gate_matrix(Gate::h()), qubit_range(0, static_cast<std::uint32_t>(n)), Q(n));
    return static_cast<double>(acc.stats().cnot_count);
  };
  // count(n) / count(n / 2) falls toward 4.
  double prev = count(8);
  double prev_ratio = 1e9;
  for (std::size_t n : {16u, 32u, 64u}) {
    const double cur = count(n);
    const double ratio = cur / prev;
    MESSAGE("baseline C^" << n << "H cnots " << cur << " ratio " << ratio);
    CHECK(ratio < prev_ratio);
    CHECK(ratio > 3.4);
    prev = cur;
    prev_ratio = ratio;
  }
  CHECK(prev_ratio < 4.6);
}

TEST_CASE("decompose_circuit routing and closure") {
  Circuit plain(2);
  plain.append(Gate::h(), 0_q);
  plain.append(Gate::x(), 1_q, {0_q});
  plain.append(Gate::rz(0.2), 1_q);
  CHECK(decompose_circuit(plain, DecomposeConfig::optimized()) == plain);

  Circuit z5(6);
  z5.append(Gate::z(), 5_q, q(0, 5));
  const Circuit dz = decompose_circuit(z5, DecomposeConfig::optimized());
  CHECK(dz.num_qubits() == 7);
  CHECK(stats_of(dz).cnot_count <= 60);
  CHECK(closed(dz.instructions()));

  Circuit h5(6);
  h5.append(Gate::h(), 5_q, q(0, 5));
  const std::size_t clean = stats_of(decompose_circuit(h5, DecomposeConfig::optimized())).cnot_count;
  DecomposeConfig none = DecomposeConfig::optimized();
  none.aux_mode = AuxMode::NoAux;
  const Circuit dn = decompose_circuit(h5, none);
  CHECK(dn.num_qubits() == 6);
  const std::size_t noaux = stats_of(dn).cnot_count;
  MESSAGE("C^5H cnots: clean aux " << clean << ", no aux " << noaux);
  CHECK(clean <= 160);
  CHECK(clean == 96);
  CHECK(noaux > clean);

  // SU(2) targets never touch the aux.
  Circuit ry(5);
  ry.append(Gate::ry(0.3), 4_q, q(0, 4));
  CHECK(decompose_circuit(ry, DecomposeConfig::optimized()).num_qubits() == 5);
}

TEST_CASE("decompose_circuit oracle sweep") {
  std::mt19937_64 rng(2026);
  std::vector<Gate> gates = {Gate::x(), Gate::y(), Gate::z(), Gate::h(), Gate::p(0.7),
                             Gate::rx(1.3), Gate::ry(-0.4), Gate::rz(2.2)};
  for (int i = 0; i < 4; ++i) gates.push_back(Gate::u2(mcdec::testing::random_u2(rng)));
  DecomposeConfig none = DecomposeConfig::optimized();
  none.aux_mode = AuxMode::NoAux;
  for (const DecomposeConfig& cfg : {DecomposeConfig::optimized(), none, DecomposeConfig::baseline()}) {
    for (const Gate& g : gates) {
      for (std::size_t n = 0; n <= 5; ++n) {
        Circuit c(n + 1);
        c.append(g, Q(n), q(0, static_cast<std::uint32_t>(n)));
        const Circuit d = decompose_circuit(c, cfg);
        CHECK(closed(d.instructions()));
        const DenseUnitary ref = reference_cnu(gate_matrix(g), n);
        const EquivReport r = d.num_qubits() > c.num_qubits()
                                  ? equiv_on_aux_zero(build_unitary(d), ref, Q(n + 1), 1e-9)
                                  : equiv(build_unitary(d), ref, 1e-9, false);
        CHECK_MESSAGE(r.equivalent, gate_name(g.kind()) << " n=" << n << " dev " << r.max_deviation);
        if (cfg.aux_mode == AuxMode::NoAux) CHECK(d.num_qubits() == c.num_qubits());
      }
    }
  }
}

TEST_CASE("multi-gate circuits share one aux") {
  Circuit c(4);
  c.append(Gate::h(), 3_q, q(0, 3));
  c.append(Gate::p(0.5), 0_q, {1_q, 2_q, 3_q});
  c.append(Gate::x(), 1_q, {0_q, 2_q, 3_q});
  c.append(Gate::u2(gate_matrix(Gate::y())), 2_q, {3_q});
  const Circuit d = decompose_circuit(c, DecomposeConfig::optimized());
  REQUIRE(d.num_qubits() == 5);
  CHECK(equiv_on_aux_zero(build_unitary(d), build_unitary(c), 4_q, 1e-9).equivalent);
}

TEST_CASE("determinism") {
  Circuit c(7);
  c.append(Gate::u2(gate_matrix(Gate::h())), 6_q, q(0, 6));
  c.append(Gate::p(0.3), 0_q, q(1, 6));
  CHECK(decompose_circuit(c, DecomposeConfig::optimized()) == decompose_circuit(c, DecomposeConfig::optimized()));
}

TEST_CASE("CNOT bounds for n = 3..64") {
  DecomposeConfig cfg = DecomposeConfig::optimized();
  std::mt19937_64 rng(1);
  const Gate u = Gate::u2(mcdec::testing::random_u2(rng));
  for (std::size_t n = 3; n <= 64; ++n) {
    auto count = [&](const Gate& g) {
      Circuit c(n + 1);
      c.append(g, Q(n), q(0, static_cast<std::uint32_t>(n)));
      StatsAccumulator acc(n + 2);
      decompose_into(acc, c, cfg);
      return acc.stats().cnot_count;
    };
    CHECK(count(Gate::x()) <= 12 * n);
    CHECK(count(Gate::y()) <= 12 * n);
    CHECK(count(Gate::z()) <= 12 * n);
    CHECK(count(Gate::p(0.4)) <= 16 * n);
    CHECK(count(Gate::h()) <= 32 * n);
    CHECK(count(u) <= 32 * n);
    CHECK(count(Gate::rx(0.4)) <= 16 * n);
    CHECK(count(Gate::ry(0.4)) <= 16 * n);
    CHECK(count(Gate::rz(0.4)) <= 16 * n);
  }
}

TEST_CASE("kill switch selects the baseline") {
  CHECK(DecomposeConfig::from_env() == DecomposeConfig::optimized());
  EnvGuard g("true");
  const DecomposeConfig c = DecomposeConfig::from_env();
  CHECK(c.aux_mode == AuxMode::NoAux);
  CHECK_FALSE(c.use_u2_rewrite);
  CHECK_FALSE(c.use_around_elision);
}
