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

// 2x2 complex linear algebra for single-qubit gates.

#include <array>
#include <complex>
#include <string>

namespace mcdec {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
  Complex m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 diag(Complex d0, Complex d1) { return {d0, 0.0, 0.0, d1}; }

  Complex det() const { return m00 * m11 - m01 * m10; }
  Complex trace() const { return m00 + m11; }
  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  bool is_finite() const;
  bool is_diagonal(double tol) const {
    return std::abs(m01) <= tol && std::abs(m10) <= tol;
  }

  /// max_ij |(M M^dagger - I)_ij|
  double unitarity_deviation() const;
  bool is_unitary(double tol) const { return unitarity_deviation() <= tol; }
  bool is_special_unitary(double tol) const {
    return is_unitary(tol) && std::abs(det() - 1.0) <= tol;
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend Mat2 operator*(Complex s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Elementwise max |a_ij - b_ij|.
double max_abs_diff(const Mat2& a, const Mat2& b);

std::string to_string(const Mat2& m);

enum class GateKind { X, Y, Z, H, P, RX, RY, RZ, U2 };

/// A single-qubit gate from the base catalog. Angles are in radians.
/// The U2 variant carries an arbitrary unitary matrix.
class Gate {
 public:
  static Gate x() { return Gate(GateKind::X); }
  static Gate y() { return Gate(GateKind::Y); }
  static Gate z() { return Gate(GateKind::Z); }
  static Gate h() { return Gate(GateKind::H); }
  static Gate p(double theta) { return Gate(GateKind::P, theta); }
  static Gate rx(double theta) { return Gate(GateKind::RX, theta); }
  static Gate ry(double theta) { return Gate(GateKind::RY, theta); }
  static Gate rz(double theta) { return Gate(GateKind::RZ, theta); }
  /// Throws NotUnitaryError unless `m` is finite and unitary within 1e-12.
  static Gate u2(const Mat2& m);
  /// Builds a parametrised or named gate from its kind; theta is ignored
  /// for the fixed gates. Not valid for U2.
  static Gate named(GateKind kind, double theta = 0.0);

  GateKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  /// The stored matrix of a U2 gate (identity for named kinds).
  const Mat2& stored_matrix() const noexcept { return matrix_; }

  bool is_pauli() const noexcept {
    return kind_ == GateKind::X || kind_ == GateKind::Y || kind_ == GateKind::Z;
  }
  bool has_angle() const noexcept {
    return kind_ == GateKind::P || kind_ == GateKind::RX ||
           kind_ == GateKind::RY || kind_ == GateKind::RZ;
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  explicit Gate(GateKind kind, double theta = 0.0) : kind_(kind), theta_(theta) {}

  GateKind kind_;
  double theta_ = 0.0;
  Mat2 matrix_{};
};

/// Lower-case mnemonic ("x", "rz", "u2", ...).
const char* gate_name(GateKind kind);

/// Closed-form matrix of the gate.
Mat2 gate_matrix(const Gate& g);

/// Inverse gate: Paulis and H are self-inverse, rotations negate the angle.
Gate dagger_gate(const Gate& g);

/// Phase angle in (-pi/2, pi/2] such that e^{-i phi} m has unit determinant.
/// Throws NotUnitaryError when m is not unitary within 1e-10.
double global_phase_of(const Mat2& m);

struct Su2Part {
  Mat2 su2;
  double phase = 0.0;
};

/// Splits m = e^{i phase} * su2 with det(su2) = 1.
Su2Part su2_part(const Mat2& m);

struct EigenDecomp {
  Mat2 v;               ///< unitary eigenbasis
  double d_theta = 0.0; ///< input = v * RZ(d_theta) * v^dagger
};

/// Closed-form eigendecomposition of a special unitary. Column 0 of v holds
/// the eigenvector for e^{-i d_theta / 2}; every column is phased so its
/// first nonzero component is real and positive. Diagonal inputs return
/// v = I without solving.
EigenDecomp eig_su2(const Mat2& m);

/// Principal square root of a unitary, r * r = m.
Mat2 unitary_sqrt(const Mat2& m);

}  // namespace mcdec
