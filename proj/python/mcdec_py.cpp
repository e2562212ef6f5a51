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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>

#include "mcdec/bench.hpp"
#include "mcdec/decompose.hpp"
#include "mcdec/error.hpp"
#include "mcdec/io.hpp"
#include "mcdec/oracle.hpp"
#include "mcdec/qmat.hpp"

namespace py = pybind11;
using namespace mcdec;

namespace {

using Rows = std::array<std::array<Complex, 2>, 2>;

Mat2 to_mat(const Rows& r) { return Mat2{r[0][0], r[0][1], r[1][0], r[1][1]}; }
Rows from_mat(const Mat2& m) { return {{{m.m00, m.m01}, {m.m10, m.m11}}}; }

Gate make_gate(const std::string& name, double theta, const std::optional<Rows>& matrix) {
  if (matrix) return Gate::u2(to_mat(*matrix));
  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::P, GateKind::RX,
                     GateKind::RY, GateKind::RZ}) {
    if (name == gate_name(k)) return Gate::named(k, theta);
  }
  throw InputError("unknown gate '" + name + "'");
}

DecomposeConfig make_config(const std::string& aux, bool optimized) {
  DecomposeConfig cfg = optimized ? DecomposeConfig::optimized() : DecomposeConfig::baseline();
  if (aux == "none") {
    cfg.aux_mode = AuxMode::NoAux;
  } else if (aux != "clean") {
    throw InputError("aux must be 'clean' or 'none'");
  }
  return DecomposeConfig::from_env(cfg);
}

Circuit single_gate(const Gate& g, std::size_t n) {
  Circuit c(n + 1);
  c.append(g, Qubit(static_cast<std::uint32_t>(n)), qubit_range(0, static_cast<std::uint32_t>(n)));
  return c;
}

py::dict stats_dict(const Stats& s) {
  py::dict d;
  d["cnot_count"] = s.cnot_count;
  d["single_qubit_count"] = s.single_qubit_count;
  d["multi_controlled_count"] = s.multi_controlled_count;
  d["controlled_gate_count"] = s.controlled_gate_count;
  d["total_instructions"] = s.total_instructions;
  d["depth"] = s.depth;
  return d;
}

py::list records(const std::vector<BenchRecord>& rs) {
  py::list out;
  for (const auto& r : rs) {
    py::dict d;
    d["n"] = r.n;
    d["optimized"] = r.optimized;
    d["cnot_count"] = r.cnot_count;
    d["total_gates"] = r.total_gates;
    d["controlled_gate_count"] = r.controlled_gate_count;
    d["depth"] = r.depth;
    d["wall_time_s"] = r.wall_time_s;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-controlled gate decomposition";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NotUnitaryError>(m, "NotUnitaryError", PyExc_ValueError);
  py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);

  m.def("global_phase_of", [](const Rows& u) { return global_phase_of(to_mat(u)); }, py::arg("u"));
  m.def(
      "su2_part",
      [](const Rows& u) {
        const Su2Part p = su2_part(to_mat(u));
        return py::make_tuple(from_mat(p.su2), p.phase);
      },
      py::arg("u"), "Returns (u_bar, phi) with u = exp(i phi) u_bar and det(u_bar) = 1.");
  m.def(
      "gate_matrix",
      [](const std::string& name, double theta) { return from_mat(gate_matrix(make_gate(name, theta, {}))); },
      py::arg("gate"), py::arg("theta") = 0.0);

  m.def(
      "decompose",
      [](const std::string& gate, std::size_t controls, double theta, std::optional<Rows> matrix,
         const std::string& aux, bool optimized, const std::string& format) -> py::object {
        const Circuit in = single_gate(make_gate(gate, theta, matrix), controls);
        const DecomposeConfig cfg = make_config(aux, optimized);
        if (format == "stats") {
          StatsAccumulator acc(in.num_qubits() + 1);
          decompose_into(acc, in, cfg);
          return stats_dict(acc.stats());
        }
        const Circuit d = decompose_circuit(in, cfg);
        if (format == "qasm") return py::str(to_qasm(d));
        if (format == "json") {
          std::optional<Qubit> a;
          if (d.num_qubits() > in.num_qubits()) a = Qubit(static_cast<std::uint32_t>(controls + 1));
          return py::str(to_json(d, a));
        }
        throw InputError("format must be 'stats', 'qasm' or 'json'");
      },
      py::arg("gate") = "x", py::arg("controls") = 1, py::arg("theta") = 0.0,
      py::arg("matrix") = py::none(), py::arg("aux") = "clean", py::arg("optimized") = true,
      py::arg("format") = "stats");

  m.def(
      "verify",
      [](const std::string& gate, std::size_t controls, double theta, std::optional<Rows> matrix,
         const std::string& aux, double tol) {
        if (controls + 2 > kOracleMaxQubits) throw InputError("too many controls for the dense oracle");
        const Gate g = make_gate(gate, theta, matrix);
        const Circuit in = single_gate(g, controls);
        const Circuit d = decompose_circuit(in, make_config(aux, true));
        const DenseUnitary ref = reference_cnu(gate_matrix(g), controls);
        const EquivReport r =
            d.num_qubits() > in.num_qubits()
                ? equiv_on_aux_zero(build_unitary(d), ref, Qubit(static_cast<std::uint32_t>(controls + 1)), tol)
                : equiv(build_unitary(d), ref, tol, false);
        py::dict out;
        out["equivalent"] = r.equivalent;
        out["max_deviation"] = r.max_deviation;
        out["max_leakage"] = r.max_leakage;
        out["failing_column"] = r.failing_column;
        return out;
      },
      py::arg("gate") = "x", py::arg("controls") = 1, py::arg("theta") = 0.0,
      py::arg("matrix") = py::none(), py::arg("aux") = "clean", py::arg("tol") = 1e-8);

  m.def(
      "grover_bench",
      [](std::size_t n_min, std::size_t n_max, bool optimized) {
        return records(run_grover_bench(n_min, n_max, optimized));
      },
      py::arg("n_min"), py::arg("n_max"), py::arg("optimized") = true);
  m.def(
      "prepare_bench",
      [](std::size_t n_min, std::size_t n_max, std::uint64_t seed, bool optimized) {
        return records(run_prepare_bench(n_min, n_max, seed, optimized));
      },
      py::arg("n_min"), py::arg("n_max"), py::arg("seed") = 1, py::arg("optimized") = true);
}
