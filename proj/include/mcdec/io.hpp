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

// Circuit serialization: an OpenQASM 2.0 subset, a JSON document, and a
// one-line stats summary.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mcdec/circuit.hpp"

namespace mcdec {

/// Header, one `qreg q[N];`, then one statement per instruction: x, y, z,
/// h, p, rx, ry, rz, cx, and u3(theta, phi, lambda) for U2 gates (global
/// phase dropped). Angles use 17 significant digits. Throws StructureError
/// for controlled gates other than CNOT.
std::string to_qasm(const Circuit& c);

/// Parses the subset written by to_qasm. Throws InputError otherwise.
Circuit from_qasm(std::string_view text);

/// {"num_qubits", "aux", "instructions": [{"gate", "theta", "matrix",
/// "controls", "target"}]} with fields in that order.
std::string to_json(const Circuit& c, std::optional<Qubit> aux = std::nullopt);

struct ParsedCircuit {
  Circuit circuit;
  std::optional<Qubit> aux;
};
ParsedCircuit from_json(std::string_view text);

/// "key=value" pairs separated by spaces.
std::string stats_line(const Stats& s);

/// Euler angles (theta, phi, lambda) with m = e^{i gamma} U3(theta, phi, lambda).
struct U3Angles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};
U3Angles u3_angles(const Mat2& m);
Mat2 u3_matrix(const U3Angles& a);

/// Parses "a,b;c,d" where each entry is a complex literal like 1, -0.5i,
/// 0.7071+0.7071i or 1e-3-2i. Throws InputError.
Mat2 parse_matrix(std::string_view text);

/// Writes to a sibling temp file and renames it over `path`.
/// Throws std::ios_base::failure on I/O errors.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace mcdec
