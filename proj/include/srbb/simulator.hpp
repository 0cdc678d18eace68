#pragma once

#include "srbb/circuit.hpp"
#include "srbb/types.hpp"

namespace srbb {

inline constexpr int kSimulatorQubitCap = 10;

namespace detail {

// Bit value of qubit q (1-based, qubit 1 = MSB) inside basis index r.
inline int qubit_bit(long r, int q, int n) { return (r >> (n - q)) & 1; }

}  // namespace detail

// Dense left-multiplication of one gate onto an accumulator, O(4^n).
inline void apply_gate_left(const Gate& g, int n, Mat& acc) {
  const long d = acc.rows();
  switch (g.kind) {
    case GateKind::RZ: {
      for (long r = 0; r < d; ++r)
        acc.row(r) *= std::polar(1.0, detail::qubit_bit(r, g.target, n) ? -g.angle : g.angle);
      return;
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle), s = std::sin(g.angle);
      const long stride = 1L << (n - g.target);
      for (long r = 0; r < d; ++r) {
        if (detail::qubit_bit(r, g.target, n)) continue;
        Eigen::RowVectorXcd r0 = acc.row(r), r1 = acc.row(r + stride);
        acc.row(r) = c * r0 + s * r1;
        acc.row(r + stride) = -s * r0 + c * r1;
      }
      return;
    }
    case GateKind::CNOT: {
      const long stride = 1L << (n - g.target);
      for (long r = 0; r < d; ++r) {
        if (!detail::qubit_bit(r, g.control, n)) continue;
        if (detail::qubit_bit(r, g.target, n)) continue;
        acc.row(r).swap(acc.row(r + stride));
      }
      return;
    }
  }
}

// Left-to-right gate application under the qubit-1-MSB ket convention.
inline Mat circuit_to_unitary(const Circuit& c, int qubit_cap = kSimulatorQubitCap) {
  if (c.n < 1 || c.n > qubit_cap)
    throw srbb_error("circuit_to_unitary: qubit count outside simulator cap");
  const long d = 1L << c.n;
  Mat u = Mat::Identity(d, d);
  for (const Gate& g : c.gates) apply_gate_left(g, c.n, u);
  return u;
}

// Dense matrix of a single gate (for Kronecker cross-checks).
inline Mat gate_unitary(const Gate& g, int n) {
  Circuit c(n);
  c.add(g);
  return circuit_to_unitary(c);
}

}  // namespace srbb
