#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "srbb/circuit.hpp"
#include "srbb/grouping.hpp"

namespace srbb {

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// OpenQASM 2.0. Internal RZ(th) = diag(e^{i th}, e^{-i th}) maps to the QASM
// convention rz(lambda) = diag(e^{-i lambda/2}, e^{i lambda/2}) via
// lambda = -2 th; likewise ry. Qubit 1 becomes q[0].
inline std::string export_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << c.n << "];\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::CNOT:
        out << "cx q[" << g.control - 1 << "],q[" << g.target - 1 << "];\n";
        break;
      case GateKind::RZ:
        out << "rz(" << detail::fmt17(-2.0 * g.angle) << ") q[" << g.target - 1 << "];\n";
        break;
      case GateKind::RY:
        out << "ry(" << detail::fmt17(-2.0 * g.angle) << ") q[" << g.target - 1 << "];\n";
        break;
    }
  }
  return out.str();
}

inline Circuit import_qasm(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  auto parse_qubit = [](const std::string& s, size_t pos) {
    const size_t open = s.find("q[", pos);
    if (open == std::string::npos) throw srbb_error("import_qasm: malformed qubit reference");
    return std::stoi(s.substr(open + 2)) + 1;
  };
  while (std::getline(in, line)) {
    const size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.rfind("//", 0) == 0 || line.rfind("OPENQASM", 0) == 0 ||
        line.rfind("include", 0) == 0)
      continue;
    if (line.rfind("qreg", 0) == 0) {
      c.n = std::stoi(line.substr(line.find('[') + 1));
      continue;
    }
    if (line.rfind("cx", 0) == 0) {
      const int control = parse_qubit(line, 2);
      const int target = parse_qubit(line, line.find(',', 2));
      c.add(Gate::cnot(control, target));
      continue;
    }
    if (line.rfind("rz", 0) == 0 || line.rfind("ry", 0) == 0) {
      const bool z = line[1] == 'z';
      const size_t open = line.find('(');
      const double lambda = std::stod(line.substr(open + 1));
      const int qubit = parse_qubit(line, line.find(')'));
      c.add(z ? Gate::rz(qubit, -0.5 * lambda) : Gate::ry(qubit, -0.5 * lambda));
      continue;
    }
    if (line.empty() || line == ";") continue;
    throw srbb_error("import_qasm: unsupported statement: " + line);
  }
  if (c.n == 0) throw srbb_error("import_qasm: missing qreg declaration");
  return c;
}

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    nlohmann::json item;
    switch (g.kind) {
      case GateKind::CNOT:
        item = {{"kind", "cnot"}, {"control", g.control}, {"target", g.target}};
        break;
      case GateKind::RZ:
        item = {{"kind", "rz"}, {"qubit", g.target}, {"angle", g.angle}};
        break;
      case GateKind::RY:
        item = {{"kind", "ry"}, {"qubit", g.target}, {"angle", g.angle}};
        break;
    }
    gates.push_back(std::move(item));
  }
  return nlohmann::json{{"n", c.n}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c(j.at("n").get<int>());
  for (const auto& item : j.at("gates")) {
    const std::string kind = item.at("kind").get<std::string>();
    if (kind == "cnot")
      c.add(Gate::cnot(item.at("control").get<int>(), item.at("target").get<int>()));
    else if (kind == "rz")
      c.add(Gate::rz(item.at("qubit").get<int>(), item.at("angle").get<double>()));
    else if (kind == "ry")
      c.add(Gate::ry(item.at("qubit").get<int>(), item.at("angle").get<double>()));
    else
      throw srbb_error("circuit_from_json: unknown gate kind " + kind);
  }
  return c;
}

}  // namespace srbb
