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

#include "mcdec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "mcdec/bench.hpp"
#include "mcdec/decompose.hpp"
#include "mcdec/error.hpp"
#include "mcdec/io.hpp"
#include "mcdec/oracle.hpp"

namespace mcdec::cli {

namespace {

struct GateSpec {
  std::string gate;
  std::string matrix;
  double theta = 0.0;
  std::size_t controls = 0;
  std::string aux = "clean";
  bool no_opt = false;
};

void add_gate_options(CLI::App& cmd, GateSpec& spec) {
  auto* gate = cmd.add_option("--gate", spec.gate, "x, y, z, h, p, rx, ry, rz");
  auto* matrix = cmd.add_option("--matrix", spec.matrix, "U(2) matrix as \"a,b;c,d\"");
  gate->excludes(matrix);
  cmd.add_option("--theta", spec.theta, "Angle for p, rx, ry, rz");
  cmd.add_option("--controls", spec.controls, "Number of controls")->required();
  cmd.add_option("--aux", spec.aux, "Auxiliary qubit policy")
      ->check(CLI::IsMember({"clean", "none"}));
  cmd.add_flag("--no-opt", spec.no_opt, "Disable the aux-qubit optimizations");
}

Gate gate_from_spec(const GateSpec& spec) {
  if (!spec.matrix.empty()) return Gate::u2(parse_matrix(spec.matrix));
  static const std::pair<const char*, GateKind> names[] = {
      {"x", GateKind::X},   {"y", GateKind::Y},   {"z", GateKind::Z},
      {"h", GateKind::H},   {"p", GateKind::P},   {"rx", GateKind::RX},
      {"ry", GateKind::RY}, {"rz", GateKind::RZ},
  };
  if (spec.gate.empty()) throw InputError("one of --gate or --matrix is required");
  for (const auto& [name, kind] : names) {
    if (spec.gate == name) return Gate::named(kind, spec.theta);
  }
  throw InputError("unknown gate '" + spec.gate + "' (use --matrix for arbitrary U(2))");
}

DecomposeConfig config_from_spec(const GateSpec& spec) {
  DecomposeConfig cfg = spec.no_opt ? DecomposeConfig::baseline() : DecomposeConfig::optimized();
  if (spec.aux == "none") cfg.aux_mode = AuxMode::NoAux;
  return DecomposeConfig::from_env(cfg);
}

Circuit single_gate_circuit(const Gate& g, std::size_t n) {
  Circuit c(n + 1);
  c.append(g, Qubit(static_cast<std::uint32_t>(n)),
           qubit_range(0, static_cast<std::uint32_t>(n)));
  return c;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

int cmd_decompose(const GateSpec& spec, const std::string& format, const std::string& path,
                  std::ostream& out) {
  const Gate g = gate_from_spec(spec);
  const Circuit in = single_gate_circuit(g, spec.controls);
  const DecomposeConfig cfg = config_from_spec(spec);
  if (format == "stats") {
    StatsAccumulator acc(in.num_qubits() + 1);
    decompose_into(acc, in, cfg);
    emit(path, stats_line(acc.stats()) + "\n", out);
    return kOk;
  }
  const Circuit dec = decompose_circuit(in, cfg);
  std::optional<Qubit> aux;
  if (dec.num_qubits() > in.num_qubits()) aux = Qubit(static_cast<std::uint32_t>(in.num_qubits()));
  emit(path, format == "qasm" ? to_qasm(dec) : to_json(dec, aux), out);
  return kOk;
}

int cmd_verify(const GateSpec& spec, double tol, bool inject_fault, std::ostream& out,
               std::ostream& err) {
  if (spec.controls + 2 > kOracleMaxQubits) {
    throw InputError("verify supports at most " + std::to_string(kOracleMaxQubits - 2) +
                     " controls");
  }
  const Gate g = gate_from_spec(spec);
  const std::size_t n = spec.controls;
  const Circuit in = single_gate_circuit(g, n);
  Circuit dec = decompose_circuit(in, config_from_spec(spec));
  if (inject_fault) dec.append(Gate::x(), Qubit(static_cast<std::uint32_t>(n)));

  const DenseUnitary ref = reference_cnu(gate_matrix(g), n);
  const DenseUnitary full = build_unitary(dec);
  const bool with_aux = dec.num_qubits() > in.num_qubits();
  const EquivReport r =
      with_aux ? equiv_on_aux_zero(full, ref, Qubit(static_cast<std::uint32_t>(n + 1)), tol)
               : equiv(full, ref, tol, false);
  char line[160];
  std::snprintf(line, sizeof line, "max_deviation=%.3e max_leakage=%.3e aux=%s", r.max_deviation,
                r.max_leakage, with_aux ? "used" : "unused");
  out << line << '\n';
  if (!r.equivalent) {
    err << "verify: not equivalent, first failing column " << r.failing_column << '\n';
    return kVerifyFailed;
  }
  out << "equivalent\n";
  return kOk;
}

int cmd_bench(const std::string& which, std::size_t n_min, std::size_t n_max,
              std::uint64_t seed, const std::string& path, bool no_opt, std::ostream& out) {
  if (n_min > n_max) throw InputError("bench: --min exceeds --max");
  const bool optimized = !no_opt && !optimization_disabled_by_env();
  const auto records = which == "grover" ? run_grover_bench(n_min, n_max, optimized)
                                         : run_prepare_bench(n_min, n_max, seed, optimized);
  std::ostringstream csv;
  write_bench_csv(csv, records);
  emit(path, csv.str(), out);
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-controlled gate decomposition", "mcdec"};
  app.require_subcommand(1);

  GateSpec dspec;
  std::string format = "stats";
  std::string out_path;
  auto* dec = app.add_subcommand("decompose", "Decompose one multi-controlled gate");
  add_gate_options(*dec, dspec);
  dec->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"qasm", "json", "stats"}));
  dec->add_option("--out", out_path, "Output file (default stdout)");

  GateSpec vspec;
  double tol = 1e-8;
  bool inject_fault = false;
  auto* ver = app.add_subcommand("verify", "Check a decomposition against the dense oracle");
  add_gate_options(*ver, vspec);
  ver->add_option("--tol", tol, "Elementwise tolerance");
  ver->add_flag("--inject-fault", inject_fault)->group("");

  std::string which;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::uint64_t seed = 1;
  std::string csv_path;
  bool bench_no_opt = false;
  auto* bench = app.add_subcommand("bench", "Count gates of benchmark programs");
  bench->add_option("which", which, "grover or prepare")
      ->required()
      ->check(CLI::IsMember({"grover", "prepare"}));
  bench->add_option("--min", n_min, "Smallest qubit count")->required();
  bench->add_option("--max", n_max, "Largest qubit count")->required();
  bench->add_option("--seed", seed, "Seed for prepare");
  bench->add_option("--csv", csv_path, "Output CSV (default stdout)");
  bench->add_flag("--no-opt", bench_no_opt, "Disable the aux-qubit optimizations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (dec->parsed()) return cmd_decompose(dspec, format, out_path, out);
    if (ver->parsed()) return cmd_verify(vspec, tol, inject_fault, out, err);
    return cmd_bench(which, n_min, n_max, seed, csv_path, bench_no_opt, out);
  } catch (const NotUnitaryError& e) {
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.3e", e.deviation());
    err << "error: " << e.what() << " (max deviation " << dev << ")\n";
    return kBadInput;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace mcdec::cli
