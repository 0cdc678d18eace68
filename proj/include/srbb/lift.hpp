#pragma once

#include "srbb/approximate.hpp"
#include "srbb/circuits.hpp"

namespace srbb {

// Shift every gate down one wire inside an (n+1)-qubit register.
inline Circuit pad_top(const Circuit& c) {
  Circuit out(c.n + 1);
  for (Gate g : c.gates) {
    g.target += 1;
    if (g.kind == GateKind::CNOT) g.control += 1;
    out.add(g);
  }
  return out;
}

// Pi T^e_{n+1,y} from Pi T^e_{n,x}: pad for y = x, pad plus a leading
// CNOT(n+1, 1) for y = 2^{n-1} + x.
inline Circuit lift_perm_even(const Circuit& even_base, long x, long y) {
  const int n = even_base.n;
  const long half = 1L << (n - 1);
  if (y != x && y != half + x) throw srbb_error("lift_perm_even: inconsistent (x, y)");
  Circuit padded = pad_top(even_base);
  if (y == x) return padded;
  Circuit out(n + 1);
  out.add(Gate::cnot(n + 1, 1));
  out.add(padded);
  return out;
}

// Pi T^o_{n+1,y}: pad of the odd base for y = x; otherwise the padded even
// base wrapped by CNOT(1,n+1), CNOT(n+1,1) on the left and CNOT(1,n+1) on the
// right.
inline Circuit lift_perm_odd(const Circuit& even_base, const Circuit& odd_base, long x, long y) {
  const int n = even_base.n;
  if (odd_base.n != n) throw srbb_error("lift_perm_odd: base circuits disagree on n");
  const long half = 1L << (n - 1);
  if (y != x && y != half + x) throw srbb_error("lift_perm_odd: inconsistent (x, y)");
  if (y == x) return pad_top(odd_base);
  Circuit out(n + 1);
  out.add(Gate::cnot(1, n + 1));
  out.add(Gate::cnot(n + 1, 1));
  out.add(pad_top(even_base));
  out.add(Gate::cnot(1, n + 1));
  return out;
}

// F_{n+1}(R_a(psi)) from two n-qubit multiplexed rotations carrying the
// half-angle vectors: psi_j = theta_j + phi_j, psi_{j+2^{n-1}} = theta_j - phi_j.
inline Circuit lift_multiplexed(const Circuit& circ_theta, const Circuit& circ_phi, Axis axis) {
  const int n = circ_theta.n;
  if (circ_phi.n != n) throw srbb_error("lift_multiplexed: operand qubit counts differ");
  const GateKind want = axis == Axis::Z ? GateKind::RZ : GateKind::RY;
  for (const Circuit* c : {&circ_theta, &circ_phi})
    for (const Gate& g : c->gates)
      if (g.kind != GateKind::CNOT && g.kind != want)
        throw srbb_error("lift_multiplexed: axis mismatch in operand circuit");
  Circuit out(n + 1);
  out.add(pad_top(circ_theta));
  out.add(Gate::cnot(1, n + 1));
  Circuit rev = pad_top(circ_phi);
  std::reverse(rev.gates.begin(), rev.gates.end());
  out.add(rev);
  out.add(Gate::cnot(1, n + 1));
  return peephole(out);
}

enum class LiftMode { ZeroPad, ReSolve };

struct LiftedLayer {
  LayerParams params;  // (n+1)-qubit parameter vector
  Circuit circuit;
};

// Transport an n-qubit layer to n+1 qubits. Old angles keep their basis
// index (non-diagonal elements keep (p,q); diagonal words gain a leading I).
// New components start at zero; ReSolve additionally fits them so the lifted
// layer tracks I_2 (x) U_n.
inline LiftedLayer lift_layer(const LayerParams& params, LiftMode mode = LiftMode::ZeroPad,
                              const OptimizerConfig& cfg = {}) {
  const int n = params.n;
  LayerParams lifted(n + 1);
  const long old_ident = 1L << (2 * n);
  for (long j = 1; j < old_ident; ++j) lifted.at(j) = params.at(j);

  if (mode == LiftMode::ReSolve) {
    const long d2 = 1L << (n + 1);
    Mat base = assemble_layers({params}, n);
    Mat want = Mat::Zero(d2, d2);
    want.block(0, 0, d2 / 2, d2 / 2) = base;
    want.block(d2 / 2, d2 / 2, d2 / 2, d2 / 2) = base;
    std::vector<long> fresh;
    for (long j = old_ident; j < d2 * d2; ++j) fresh.push_back(j);
    const auto basis2 = build_srbb(n + 1);
    auto fn = [&](const std::vector<double>& x) {
      LayerParams trial = lifted;
      for (size_t k = 0; k < fresh.size(); ++k) trial.at(fresh[k]) = x[k];
      return (want - assemble_layer(trial, n + 1, basis2)).norm();
    };
    OptimizerConfig local = cfg;
    NelderMeadResult best;
    const int restarts = std::max(2, cfg.restarts / 8);
    for (int r = 0; r < restarts; ++r) {
      NelderMeadResult nm = nelder_mead(fn, detail::random_start(fresh.size(), local, r), local);
      if (!nm.nan_abort && nm.f < best.f) best = nm;
    }
    if (!best.x.empty())
      for (size_t k = 0; k < fresh.size(); ++k) lifted.at(fresh[k]) = best.x[k];
  }

  return LiftedLayer{lifted, layer_circuit(lifted, n + 1)};
}

}  // namespace srbb
