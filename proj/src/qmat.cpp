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

#include "mcdec/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mcdec/error.hpp"

namespace mcdec {

namespace {

constexpr double kConstructTol = 1e-12;
constexpr double kInputTol = 1e-10;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex phase(double angle) { return std::polar(1.0, angle); }

void require_unitary(const Mat2& m, double tol, const char* where) {
  const double dev = m.unitarity_deviation();
  if (!m.is_finite() || !(dev <= tol)) {
    std::ostringstream os;
    os << where << ": matrix is not unitary (max |MM^dagger - I| = " << dev << ")";
    throw NotUnitaryError(os.str(), dev);
  }
}

}  // namespace

bool Mat2::is_finite() const {
  return finite(m00) && finite(m01) && finite(m10) && finite(m11);
}

double Mat2::unitarity_deviation() const {
  const Mat2 p = *this * adjoint();
  return max_abs_diff(p, Mat2::identity());
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01),
                   std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)});
}

std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[[" << m.m00 << ", " << m.m01 << "], [" << m.m10 << ", " << m.m11 << "]]";
  return os.str();
}

Gate Gate::u2(const Mat2& m) {
  require_unitary(m, kConstructTol, "Gate::u2");
  Gate g(GateKind::U2);
  g.matrix_ = m;
  return g;
}

Gate Gate::named(GateKind kind, double theta) {
  if (kind == GateKind::U2) {
    throw InputError("Gate::named: U2 needs a matrix");
  }
  return Gate(kind, theta);
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::P: return "p";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::U2: return "u2";
  }
  return "?";
}

Mat2 gate_matrix(const Gate& g) {
  using namespace std::complex_literals;
  const double half = g.theta() / 2.0;
  switch (g.kind()) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -1i, 1i, 0.0};
    case GateKind::Z: return Mat2::diag(1.0, -1.0);
    case GateKind::H: {
      const double s = std::numbers::sqrt2 / 2.0;
      return {s, s, s, -s};
    }
    case GateKind::P: return Mat2::diag(1.0, phase(g.theta()));
    case GateKind::RX: {
      const Complex c = std::cos(half);
      const Complex s = -1i * std::sin(half);
      return {c, s, s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(half);
      const double s = std::sin(half);
      return {c, -s, s, c};
    }
    case GateKind::RZ: return Mat2::diag(phase(-half), phase(half));
    case GateKind::U2: return g.stored_matrix();
  }
  return Mat2::identity();
}

Gate dagger_gate(const Gate& g) {
  switch (g.kind()) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H: return g;
    case GateKind::P:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: return Gate::named(g.kind(), -g.theta());
    case GateKind::U2: return Gate::u2(g.stored_matrix().adjoint());
  }
  return g;
}

double global_phase_of(const Mat2& m) {
  require_unitary(m, kInputTol, "global_phase_of");
  const Complex d = m.det();
  // atan2(-0, x < 0) is -pi; treat a signed zero as +0 so det = -1 maps to +pi/2.
  const double im = d.imag() == 0.0 ? 0.0 : d.imag();
  return 0.5 * std::atan2(im, d.real());
}

Su2Part su2_part(const Mat2& m) {
  const double phi = global_phase_of(m);
  return {phase(-phi) * m, phi};
}

EigenDecomp eig_su2(const Mat2& m) {
  require_unitary(m, kInputTol, "eig_su2");
  if (std::abs(m.det() - 1.0) > kInputTol) {
    std::ostringstream os;
    os << "eig_su2: determinant " << m.det() << " is not 1";
    throw NotUnitaryError(os.str(), std::abs(m.det() - 1.0));
  }

  // Projection onto [[a, -conj(b)], [b, conj(a)]].
  const Complex a = 0.5 * (m.m00 + std::conj(m.m11));
  const Complex b = 0.5 * (m.m10 - std::conj(m.m01));

  if (std::abs(b) <= 1e-15) {
    // Already diagonal: m = RZ(d_theta) with m00 = e^{-i d_theta / 2}.
    return {Mat2::identity(), -2.0 * std::arg(a)};
  }

  // Eigenvalues e^{-+i alpha}, sin(alpha) from the imaginary parts so small
  // rotations keep full relative precision.
  const double s = std::hypot(a.imag(), std::abs(b));
  const double alpha = std::atan2(s, a.real());

  // Eigenvector for lambda0 = e^{-i alpha}. Pick the row of (m - lambda0 I)
  // that gives the better-conditioned null vector.
  using namespace std::complex_literals;
  Complex v0, v1;
  if (a.imag() >= 0.0) {
    v0 = -std::conj(b);
    v1 = -1i * (s + a.imag());
  } else {
    v0 = -1i * (s - a.imag());
    v1 = b;
  }
  const double norm = std::hypot(std::abs(v0), std::abs(v1));
  v0 /= norm;
  v1 /= norm;
  // First component real positive; v0 != 0 because b != 0.
  const Complex fix = std::conj(v0) / std::abs(v0);
  v0 *= fix;
  v1 *= fix;

  // Second column orthogonal to the first; its first entry is -conj(v1).
  Complex w0 = -std::conj(v1);
  Complex w1 = std::conj(v0);
  if (std::abs(w0) > 1e-15) {
    const Complex wfix = std::conj(w0) / std::abs(w0);
    w0 *= wfix;
    w1 *= wfix;
  } else {
    w0 = 0.0;
    w1 = 1.0;
  }
  return {Mat2{v0, w0, v1, w1}, 2.0 * alpha};
}

Mat2 unitary_sqrt(const Mat2& m) {
  const Su2Part split = su2_part(m);
  const EigenDecomp e = eig_su2(split.su2);
  const Mat2 half = gate_matrix(Gate::rz(e.d_theta / 2.0));
  return phase(split.phase / 2.0) * (e.v * half * e.v.adjoint());
}

}  // namespace mcdec
