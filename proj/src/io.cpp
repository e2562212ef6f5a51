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

#include "mcdec/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "mcdec/error.hpp"

namespace mcdec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::P,
                     GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::U2}) {
    if (name == gate_name(k)) return k;
  }
  return std::nullopt;
}

std::uint32_t parse_qasm_qubit(std::string_view s, std::size_t num_qubits) {
  s = trim(s);
  if (s.size() < 4 || s.substr(0, 2) != "q[" || s.back() != ']') {
    throw InputError("qasm: bad qubit operand '" + std::string(s) + "'");
  }
  const auto digits = s.substr(2, s.size() - 3);
  std::uint32_t idx = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || idx >= num_qubits) {
    throw InputError("qasm: bad qubit operand '" + std::string(s) + "'");
  }
  return idx;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

U3Angles u3_angles(const Mat2& m) {
  constexpr double eps = 1e-12;
  const double c = std::abs(m.m00);
  const double s = std::abs(m.m10);
  U3Angles a;
  a.theta = 2.0 * std::atan2(s, c);
  if (c > eps) {
    const double gamma = std::arg(m.m00);
    if (s > eps) {
      a.phi = std::arg(m.m10) - gamma;
      a.lambda = std::arg(-m.m01) - gamma;
    } else {
      a.lambda = std::arg(m.m11) - gamma;
    }
  } else {
    const double gamma = std::arg(-m.m01);
    a.phi = std::arg(m.m10) - gamma;
  }
  return a;
}

Mat2 u3_matrix(const U3Angles& a) {
  const double c = std::cos(a.theta / 2.0);
  const double s = std::sin(a.theta / 2.0);
  const Complex ep = std::polar(1.0, a.phi);
  const Complex el = std::polar(1.0, a.lambda);
  return Mat2{Complex(c), -el * s, ep * s, ep * el * c};
}

std::string to_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  os << "qreg q[" << c.num_qubits() << "];\n";
  for (const auto& inst : c.instructions()) {
    const Gate& g = inst.gate;
    const auto t = inst.target.index;
    if (!inst.controls.empty()) {
      if (g.kind() != GateKind::X || inst.controls.size() != 1) {
        throw StructureError("to_qasm: controlled " + std::string(gate_name(g.kind())) +
                             " has no QASM form; decompose first");
      }
      os << "cx q[" << inst.controls[0].index << "],q[" << t << "];\n";
      continue;
    }
    if (g.kind() == GateKind::U2) {
      const U3Angles a = u3_angles(g.stored_matrix());
      os << "u3(" << fmt17(a.theta) << ',' << fmt17(a.phi) << ',' << fmt17(a.lambda) << ") q["
         << t << "];\n";
    } else if (g.has_angle()) {
      os << gate_name(g.kind()) << '(' << fmt17(g.theta()) << ") q[" << t << "];\n";
    } else {
      os << gate_name(g.kind()) << " q[" << t << "];\n";
    }
  }
  return os.str();
}

Circuit from_qasm(std::string_view text) {
  // Drop // comments, then split on ';'.
  std::string cleaned;
  for (auto line : split(text, '\n')) {
    cleaned.append(line.substr(0, line.find("//")));
    cleaned.push_back('\n');
  }
  std::vector<std::string_view> stmts;
  for (auto s : split(cleaned, ';')) {
    s = trim(s);
    if (!s.empty()) stmts.push_back(s);
  }
  if (stmts.size() < 3 || stmts[0] != "OPENQASM 2.0" || stmts[1] != "include \"qelib1.inc\"") {
    throw InputError("qasm: expected OPENQASM 2.0 header and qelib1 include");
  }
  const auto reg = stmts[2];
  if (reg.substr(0, 7) != "qreg q[" || reg.back() != ']') {
    throw InputError("qasm: expected 'qreg q[N]'");
  }
  std::size_t n = 0;
  {
    const auto digits = reg.substr(7, reg.size() - 8);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InputError("qasm: bad register size");
    }
  }
  Circuit c(n);
  for (std::size_t i = 3; i < stmts.size(); ++i) {
    const auto st = stmts[i];
    std::string_view head;
    std::string_view operands;
    std::vector<double> args;
    const auto paren = st.find('(');
    if (paren != std::string_view::npos) {
      const auto close = st.find(')', paren);
      if (close == std::string_view::npos) throw InputError("qasm: unbalanced parenthesis");
      head = trim(st.substr(0, paren));
      for (auto a : split(st.substr(paren + 1, close - paren - 1), ',')) {
        double v = 0.0;
        if (!parse_double(a, v)) throw InputError("qasm: bad angle '" + std::string(a) + "'");
        args.push_back(v);
      }
      operands = st.substr(close + 1);
    } else {
      const auto sp = st.find_first_of(" \t");
      if (sp == std::string_view::npos) throw InputError("qasm: missing operands");
      head = st.substr(0, sp);
      operands = st.substr(sp + 1);
    }
    const auto qs = split(operands, ',');
    try {
      if (head == "cx") {
        if (qs.size() != 2 || !args.empty()) throw InputError("qasm: cx takes two qubits");
        c.append(Gate::x(), Qubit(parse_qasm_qubit(qs[1], n)),
                 {Qubit(parse_qasm_qubit(qs[0], n))});
        continue;
      }
      if (qs.size() != 1) throw InputError("qasm: expected one qubit operand");
      const Qubit t(parse_qasm_qubit(qs[0], n));
      if (head == "u3") {
        if (args.size() != 3) throw InputError("qasm: u3 takes three angles");
        c.append(Gate::u2(u3_matrix({args[0], args[1], args[2]})), t);
        continue;
      }
      const auto kind = kind_from_name(head);
      if (!kind || *kind == GateKind::U2) {
        throw InputError("qasm: unsupported gate '" + std::string(head) + "'");
      }
      const Gate g = Gate::named(*kind, args.empty() ? 0.0 : args[0]);
      if (args.size() != (g.has_angle() ? 1u : 0u)) {
        throw InputError("qasm: wrong argument count for '" + std::string(head) + "'");
      }
      c.append(g, t);
    } catch (const StructureError& e) {
      throw InputError(std::string("qasm: ") + e.what());
    }
  }
  return c;
}

std::string to_json(const Circuit& c, std::optional<Qubit> aux) {
  ordered_json doc;
  doc["num_qubits"] = c.num_qubits();
  doc["aux"] = aux ? ordered_json(aux->index) : ordered_json(nullptr);
  auto insts = ordered_json::array();
  for (const auto& inst : c.instructions()) {
    ordered_json j;
    const Gate& g = inst.gate;
    j["gate"] = gate_name(g.kind());
    j["theta"] = g.has_angle() ? ordered_json(g.theta()) : ordered_json(nullptr);
    if (g.kind() == GateKind::U2) {
      const Mat2& m = g.stored_matrix();
      auto mat = ordered_json::array();
      for (const Complex& z : {m.m00, m.m01, m.m10, m.m11}) {
        mat.push_back(ordered_json::array({z.real(), z.imag()}));
      }
      j["matrix"] = std::move(mat);
    } else {
      j["matrix"] = nullptr;
    }
    auto ctrls = ordered_json::array();
    for (Qubit q : inst.controls) ctrls.push_back(q.index);
    j["controls"] = std::move(ctrls);
    j["target"] = inst.target.index;
    insts.push_back(std::move(j));
  }
  doc["instructions"] = std::move(insts);
  return doc.dump(2) + "\n";
}

ParsedCircuit from_json(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    const auto n = doc.at("num_qubits").get<std::size_t>();
    ParsedCircuit out{Circuit(n), std::nullopt};
    if (!doc.at("aux").is_null()) out.aux = Qubit(doc.at("aux").get<std::uint32_t>());
    for (const auto& j : doc.at("instructions")) {
      const auto name = j.at("gate").get<std::string>();
      const auto kind = kind_from_name(name);
      if (!kind) throw InputError("json: unknown gate '" + name + "'");
      Gate g = Gate::x();
      if (*kind == GateKind::U2) {
        const auto& mat = j.at("matrix");
        if (!mat.is_array() || mat.size() != 4) throw InputError("json: matrix needs 4 entries");
        Complex e[4];
        for (std::size_t k = 0; k < 4; ++k) {
          e[k] = Complex(mat[k].at(0).get<double>(), mat[k].at(1).get<double>());
        }
        g = Gate::u2(Mat2{e[0], e[1], e[2], e[3]});
      } else {
        const auto& th = j.at("theta");
        g = Gate::named(*kind, th.is_null() ? 0.0 : th.get<double>());
      }
      std::vector<Qubit> controls;
      for (const auto& q : j.at("controls")) controls.emplace_back(q.get<std::uint32_t>());
      out.circuit.append(g, Qubit(j.at("target").get<std::uint32_t>()), std::move(controls));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  } catch (const StructureError& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

std::string stats_line(const Stats& s) {
  std::ostringstream os;
  os << "cnot_count=" << s.cnot_count << " single_qubit_count=" << s.single_qubit_count
     << " multi_controlled_count=" << s.multi_controlled_count
     << " controlled_gate_count=" << s.controlled_gate_count
     << " total_instructions=" << s.total_instructions << " depth=" << s.depth;
  return os.str();
}

Mat2 parse_matrix(std::string_view text) {
  const auto rows = split(text, ';');
  if (rows.size() != 2) throw InputError("matrix: expected two rows separated by ';'");
  Complex e[4];
  std::size_t k = 0;
  for (auto row : rows) {
    const auto cols = split(row, ',');
    if (cols.size() != 2) throw InputError("matrix: expected two entries per row");
    for (auto entry : cols) {
      auto s = trim(entry);
      if (s.empty()) throw InputError("matrix: empty entry");
      // Split "re+imi" at the last sign that is not part of an exponent.
      std::size_t cut = std::string_view::npos;
      for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
          cut = i;
          break;
        }
      }
      double re = 0.0;
      double im = 0.0;
      auto parse_imag = [&](std::string_view part) {
        part = part.substr(0, part.size() - 1);
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        double v = 0.0;
        if (part.front() == '+') part.remove_prefix(1);
        if (!parse_double(part, v)) throw InputError("matrix: bad entry '" + std::string(s) + "'");
        return v;
      };
      auto parse_real = [&](std::string_view part) {
        double v = 0.0;
        if (!part.empty() && part.front() == '+') part.remove_prefix(1);
        if (!parse_double(part, v)) throw InputError("matrix: bad entry '" + std::string(s) + "'");
        return v;
      };
      if (s.back() == 'i' || s.back() == 'j') {
        if (cut == std::string_view::npos) {
          im = parse_imag(s);
        } else {
          re = parse_real(s.substr(0, cut));
          im = parse_imag(s.substr(cut));
        }
      } else {
        re = parse_real(s);
      }
      e[k++] = Complex(re, im);
    }
  }
  return Mat2{e[0], e[1], e[2], e[3]};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.flush();
    if (!os) throw std::ios_base::failure("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::ios_base::failure("cannot rename onto " + path.string());
  }
}

}  // namespace mcdec
