#pragma once

#include <string>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

enum class GateKind { CNOT, RZ, RY };

// Qubits are 1-based, qubit 1 most significant in the ket |v_1...v_n>.
// RZ(theta) = diag(e^{i theta}, e^{-i theta}); RY(theta) = [[cos, sin], [-sin, cos]].
struct Gate {
  GateKind kind = GateKind::CNOT;
  int control = 0;  // CNOT only
  int target = 0;   // CNOT target, or the rotated qubit
  double angle = 0.0;
  int tag = -1;  // section label id, see Circuit::tag_names

  static Gate cnot(int control, int target) {
    if (control == target) throw srbb_error("cnot: control == target");
    Gate g;
    g.kind = GateKind::CNOT;
    g.control = control;
    g.target = target;
    return g;
  }
  static Gate rz(int qubit, double angle) { return Gate{GateKind::RZ, 0, qubit, angle}; }
  static Gate ry(int qubit, double angle) { return Gate{GateKind::RY, 0, qubit, angle}; }

  // Tags are bookkeeping; equality is the physical gate.
  bool operator==(const Gate& o) const {
    return kind == o.kind && control == o.control && target == o.target && angle == o.angle;
  }
};

// Gates are listed in application order: gates.front() acts first. Sections
// (zeta/psi/phi, x-group) are tracked per gate through tag ids.
struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
  std::vector<std::string> tag_names;

  Circuit() = default;
  explicit Circuit(int n_) : n(n_) {}

  Circuit& add(const Gate& g) {
    check(g);
    gates.push_back(g);
    return *this;
  }
  Circuit& add(const Circuit& other) {
    if (other.n != n) throw srbb_error("circuit concat: qubit count mismatch");
    const int offset = static_cast<int>(tag_names.size());
    for (const std::string& name : other.tag_names) tag_names.push_back(name);
    for (Gate g : other.gates) {
      if (g.tag >= 0) g.tag += offset;
      gates.push_back(g);
    }
    return *this;
  }

  // Tag every currently untagged gate with a section label.
  Circuit& tag_untagged(const std::string& name) {
    const int id = static_cast<int>(tag_names.size());
    tag_names.push_back(name);
    for (Gate& g : gates)
      if (g.tag < 0) g.tag = id;
    return *this;
  }

  void check(const Gate& g) const {
    auto in_range = [&](int q) { return q >= 1 && q <= n; };
    if (!in_range(g.target) || (g.kind == GateKind::CNOT && !in_range(g.control)))
      throw srbb_error("gate qubit out of range");
  }
};

struct GateCounts {
  long cnot = 0;
  long rz = 0;
  long ry = 0;
  long total() const { return cnot + rz + ry; }
  long one_qubit() const { return rz + ry; }
};

inline GateCounts count_gates(const Circuit& c) {
  GateCounts gc;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::CNOT: ++gc.cnot; break;
      case GateKind::RZ: ++gc.rz; break;
      case GateKind::RY: ++gc.ry; break;
    }
  }
  return gc;
}

// Per-section counts; index -1 collects untagged gates under "".
inline std::vector<std::pair<std::string, GateCounts>> count_gates_by_tag(const Circuit& c) {
  std::vector<std::pair<std::string, GateCounts>> out;
  for (const std::string& name : c.tag_names) out.emplace_back(name, GateCounts{});
  GateCounts untagged;
  bool any_untagged = false;
  for (const Gate& g : c.gates) {
    GateCounts& gc = (g.tag >= 0 && g.tag < static_cast<int>(out.size()))
                         ? out[g.tag].second
                         : (any_untagged = true, untagged);
    switch (g.kind) {
      case GateKind::CNOT: ++gc.cnot; break;
      case GateKind::RZ: ++gc.rz; break;
      case GateKind::RY: ++gc.ry; break;
    }
  }
  if (any_untagged) out.emplace_back("", untagged);
  return out;
}

namespace detail {

inline bool commutes(const Gate& a, const Gate& b) {
  auto touches = [](const Gate& g, int q) {
    return g.target == q || (g.kind == GateKind::CNOT && g.control == q);
  };
  // Conservative rules, enough for the structural cancellations we emit:
  // disjoint supports commute; CNOTs sharing a control or sharing a target
  // commute; RZ commutes with a CNOT through its control.
  if (a.kind == GateKind::CNOT && b.kind == GateKind::CNOT) {
    if (a.control == b.control && a.target == b.target) return true;
    if (a.control == b.control || a.target == b.target)
      return a.control != b.target && b.control != a.target;
    return a.control != b.target && b.control != a.target && a.target != b.control;
  }
  if (a.kind == GateKind::CNOT || b.kind == GateKind::CNOT) {
    const Gate& cn = a.kind == GateKind::CNOT ? a : b;
    const Gate& rot = a.kind == GateKind::CNOT ? b : a;
    if (!touches(cn, rot.target)) return true;
    return rot.kind == GateKind::RZ && rot.target == cn.control;
  }
  return a.target != b.target || a.kind == b.kind;
}

}  // namespace detail

// Structural cleanup: cancel adjacent identical CNOT pairs and merge adjacent
// same-axis rotations on the same wire, allowing moves across commuting gates.
// Angle values are never inspected, so counts are input-independent.
inline Circuit peephole(const Circuit& c) {
  std::vector<Gate> gs = c.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < gs.size() && !changed; ++i) {
      for (size_t j = i + 1; j < gs.size(); ++j) {
        if (j > i + 1 && !detail::commutes(gs[j - 1], gs[i])) break;
        const Gate &a = gs[i], &b = gs[j];
        if (a.kind == GateKind::CNOT && b.kind == GateKind::CNOT &&
            a.control == b.control && a.target == b.target) {
          gs.erase(gs.begin() + j);
          gs.erase(gs.begin() + i);
          changed = true;
          break;
        }
        if (a.kind != GateKind::CNOT && a.kind == b.kind && a.target == b.target) {
          gs[i].angle += b.angle;
          gs.erase(gs.begin() + j);
          changed = true;
          break;
        }
        if (!detail::commutes(gs[j], gs[i])) break;
      }
    }
  }
  Circuit out(c.n);
  out.gates = std::move(gs);
  out.tag_names = c.tag_names;
  return out;
}

}  // namespace srbb
