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

#include "mcdec/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "mcdec/error.hpp"

namespace mcdec {

namespace {

std::unique_ptr<ParamTree> build_tree(std::span<const double> prob, std::span<const double> amp) {
  auto node = std::make_unique<ParamTree>();
  const double total = std::accumulate(prob.begin(), prob.end(), 0.0);
  std::vector<double> norm(prob.size());
  if (total > 0.0) {
    std::transform(prob.begin(), prob.end(), norm.begin(), [&](double p) { return p / total; });
  } else {
    // A zero-weight subtree never contributes amplitude; any valid angles do.
    std::fill(norm.begin(), norm.end(), 1.0 / static_cast<double>(prob.size()));
  }
  const std::size_t half = prob.size() / 2;
  const double right = std::accumulate(norm.begin() + static_cast<std::ptrdiff_t>(half), norm.end(), 0.0);
  node->value = 2.0 * std::asin(std::sqrt(std::clamp(right, 0.0, 1.0)));
  if (prob.size() > 2) {
    const std::span<const double> n(norm);
    node->left = build_tree(n.first(half), amp.first(half));
    node->right = build_tree(n.subspan(half), amp.subspan(half));
  } else {
    node->phase0 = amp[0];
    node->phase1 = amp[1];
  }
  return node;
}

}  // namespace

ParamTree param_tree_new(std::span<const double> prob, std::span<const double> amp) {
  const std::size_t len = prob.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw InputError("param_tree_new: probability list length " + std::to_string(len) +
                     " is not a power of two >= 2");
  }
  if (amp.size() != len) {
    throw InputError("param_tree_new: amplitude list length differs from probability list");
  }
  for (double p : prob) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InputError("param_tree_new: probabilities must be finite and non-negative");
    }
  }
  if (std::accumulate(prob.begin(), prob.end(), 0.0) == 0.0) {
    throw InputError("param_tree_new: probabilities sum to zero");
  }
  return std::move(*build_tree(prob, amp));
}

RandomState random_state(std::size_t num_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t len = std::size_t{1} << num_qubits;
  RandomState s;
  s.prob.reserve(len);
  s.amp.reserve(len);
  for (std::size_t i = 0; i < len; ++i) s.prob.push_back(1.0 - unit(rng));
  for (std::size_t i = 0; i < len; ++i) s.amp.push_back(2.0 * std::numbers::pi * unit(rng));
  return s;
}

void prepare_program(Builder& b, std::span<const Qubit> qubits, const ParamTree& tree) {
  if (qubits.size() != tree.depth()) {
    throw InputError("prepare_program: " + std::to_string(qubits.size()) +
                     " qubits for a tree of depth " + std::to_string(tree.depth()));
  }
  const Qubit head = qubits[0];
  const auto tail = qubits.subspan(1);
  b.apply(Gate::ry(tree.value), head);
  if (tree.is_leaf()) {
    b.around([&] { b.apply(Gate::x(), head); }, [&] { b.apply(Gate::p(tree.phase0), head); });
    b.apply(Gate::p(tree.phase1), head);
    return;
  }
  b.around([&] { b.apply(Gate::x(), head); },
           [&] { b.control({head}, [&] { prepare_program(b, tail, *tree.left); }); });
  b.control({head}, [&] { prepare_program(b, tail, *tree.right); });
}

void grover_oracle(Builder& b, std::span<const Qubit> qubits) {
  if (qubits.size() < 2) throw InputError("grover_oracle needs at least 2 qubits");
  b.control(qubits.first(qubits.size() - 1), [&] { b.apply(Gate::z(), qubits.back()); });
}

void grover_diffusion(Builder& b, std::span<const Qubit> qubits) {
  if (qubits.size() < 2) throw InputError("grover_diffusion needs at least 2 qubits");
  b.around(
      [&] {
        for (Qubit q : qubits) b.apply(Gate::h(), q);
        for (Qubit q : qubits) b.apply(Gate::x(), q);
      },
      [&] { grover_oracle(b, qubits); });
}

void grover_layer(Builder& b, std::span<const Qubit> qubits) {
  grover_oracle(b, qubits);
  grover_diffusion(b, qubits);
}

std::size_t grover_steps(std::size_t n) {
  return static_cast<std::size_t>(std::numbers::pi / 4.0 *
                                  std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
}

Circuit grover_layer_circuit(std::size_t n) {
  Builder b(n);
  const auto qs = qubit_range(0, static_cast<std::uint32_t>(n));
  grover_layer(b, qs);
  return b.take();
}

Circuit prepare_circuit(std::size_t n, std::uint64_t seed, bool around_elision) {
  const RandomState s = random_state(n, seed);
  const ParamTree tree = param_tree_new(s.prob, s.amp);
  Builder b(n, BuilderOptions{around_elision});
  const auto qs = qubit_range(0, static_cast<std::uint32_t>(n));
  prepare_program(b, qs, tree);
  return b.take();
}

DecomposeConfig bench_config(bool optimized) {
  return optimized ? DecomposeConfig::optimized() : DecomposeConfig::baseline();
}

BenchRecord count_decomposed(const Circuit& c, const DecomposeConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  StatsAccumulator acc(c.num_qubits() + 1);
  decompose_into(acc, c, cfg);
  const Stats& s = acc.stats();
  BenchRecord r;
  r.cnot_count = s.cnot_count;
  r.total_gates = s.total_instructions;
  r.controlled_gate_count = s.controlled_gate_count;
  r.depth = s.depth;
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

template <class MakeCircuit>
std::vector<BenchRecord> run_bench(std::size_t n_min, std::size_t n_max, bool optimized,
                                   MakeCircuit make) {
  if (n_min > n_max) throw InputError("bench: min exceeds max");
  const DecomposeConfig cfg = bench_config(optimized);
  std::vector<BenchRecord> out;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    BenchRecord r = count_decomposed(make(n, cfg), cfg);
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.n = n;
    r.optimized = optimized;
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> run_grover_bench(std::size_t n_min, std::size_t n_max, bool optimized) {
  if (n_min < 2) throw InputError("grover bench needs at least 2 qubits");
  return run_bench(n_min, n_max, optimized,
                   [](std::size_t n, const DecomposeConfig&) { return grover_layer_circuit(n); });
}

std::vector<BenchRecord> run_prepare_bench(std::size_t n_min, std::size_t n_max,
                                           std::uint64_t seed, bool optimized) {
  if (n_min < 1) throw InputError("prepare bench needs at least 1 qubit");
  return run_bench(n_min, n_max, optimized, [seed](std::size_t n, const DecomposeConfig& cfg) {
    return prepare_circuit(n, seed, cfg.use_around_elision);
  });
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << kBenchCsvHeader << '\n';
  char wall[32];
  for (const auto& r : records) {
    std::snprintf(wall, sizeof wall, "%.6f", r.wall_time_s);
    os << r.n << ',' << (r.optimized ? 1 : 0) << ',' << r.cnot_count << ',' << r.total_gates
       << ',' << r.controlled_gate_count << ',' << r.depth << ',' << wall << '\n';
  }
}

}  // namespace mcdec
