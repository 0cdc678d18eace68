#pragma once

#include <algorithm>
#include <vector>

#include "srbb/circuit.hpp"
#include "srbb/grouping.hpp"
#include "srbb/mzyz.hpp"
#include "srbb/partition.hpp"
#include "srbb/simulator.hpp"

namespace srbb {

enum class Axis { Y, Z };

// Permutation circuits Pi T^{e/o}_{n,x} as CNOT patterns:
//   even: one CNOT(n, n-j-1) per set bit x_j (targets emitted ascending);
//   odd:  the even circuit conjugated by CNOT(n-m-1, n), m the top set bit.
inline Circuit perm_circuit(int n, long x, bool even) {
  if (n < 1 || x < 0 || x >= (1L << (n - 1))) throw srbb_error("perm_circuit: x out of range");
  Circuit c(n);
  if (x == 0) return c;
  int m = 0;
  for (int j = 0; j <= n - 2; ++j)
    if (x & (1L << j)) m = j;
  if (!even) c.add(Gate::cnot(n - m - 1, n));
  for (int j = n - 2; j >= 0; --j)
    if (x & (1L << j)) c.add(Gate::cnot(n, n - j - 1));
  if (!even) c.add(Gate::cnot(n - m - 1, n));
  return c;
}

// exp(i theta U_{j^2-1}) for a single I/Z word: CNOT ladder into the lowest
// Z-qubit, one RZ, mirrored ladder.
inline Circuit diag_exp_circuit(const IZWord& word, double theta, int n) {
  if (word.is_identity()) throw srbb_error("diag_exp_circuit: identity word");
  Circuit c(n);
  std::vector<int> zs;
  for (int i = 1; i <= word.m; ++i)
    if (word.z_bits & (1u << (i - 1))) zs.push_back(i);
  const int last = zs.back();
  for (size_t k = 0; k + 1 < zs.size(); ++k) c.add(Gate::cnot(zs[k], last));
  c.add(Gate::rz(last, theta));
  for (size_t k = zs.size() - 1; k-- > 0;) c.add(Gate::cnot(zs[k], last));
  return c;
}

namespace detail {

// Multiplexed rotation on explicit wires: controls[0..k-1] select the angle
// (controls[0] most significant), rotation applied to `target`. `reversed`
// emits the gate list backwards, which realizes the same unitary.
inline void emit_multiplexed(Circuit& c, Axis axis, const std::vector<double>& angles,
                             const std::vector<int>& controls, int target, bool reversed) {
  auto rot = [&](double a) { return axis == Axis::Z ? Gate::rz(target, a) : Gate::ry(target, a); };
  if (angles.size() == 1) {
    c.add(rot(angles[0]));
    return;
  }
  const size_t h = angles.size() / 2;
  std::vector<double> sum(h), diff(h);
  for (size_t j = 0; j < h; ++j) {
    sum[j] = 0.5 * (angles[j] + angles[j + h]);
    diff[j] = 0.5 * (angles[j] - angles[j + h]);
  }
  std::vector<int> sub(controls.begin() + 1, controls.end());
  const Gate link = Gate::cnot(controls[0], target);
  if (!reversed) {
    emit_multiplexed(c, axis, sum, sub, target, false);
    c.add(link);
    emit_multiplexed(c, axis, diff, sub, target, true);
    c.add(link);
  } else {
    c.add(link);
    emit_multiplexed(c, axis, diff, sub, target, false);
    c.add(link);
    emit_multiplexed(c, axis, sum, sub, target, true);
  }
}

// Arbitrary zero-sum phase pattern on wires qubits[0..m-1]: the standard
// multiplexed-RZ cascade, 2^m - 2 CNOTs.
inline void emit_diag_cascade(Circuit& c, const std::vector<double>& phases,
                              const std::vector<int>& qubits) {
  if (qubits.empty()) return;
  if (qubits.size() == 1) {
    if (phases[0] != 0.0 || phases[1] != 0.0) c.add(Gate::rz(qubits[0], phases[0]));
    return;
  }
  const size_t h = phases.size() / 2;
  std::vector<double> anti(h), sym(h);
  for (size_t b = 0; b < h; ++b) {
    anti[b] = 0.5 * (phases[2 * b] - phases[2 * b + 1]);
    sym[b] = 0.5 * (phases[2 * b] + phases[2 * b + 1]);
  }
  std::vector<int> controls(qubits.begin(), qubits.end() - 1);
  emit_diag_cascade(c, sym, controls);
  emit_multiplexed(c, Axis::Z, anti, controls, qubits.back(), false);
}

}  // namespace detail

// F_n(R_axis(angles)): controls 1..n-1, rotation on qubit n.
inline Circuit multiplexed_rotation_circuit(Axis axis, const std::vector<double>& angles, int n) {
  if (static_cast<long>(angles.size()) != (1L << (n - 1)))
    throw srbb_error("multiplexed_rotation_circuit: need 2^(n-1) angles");
  Circuit c(n);
  std::vector<int> controls(n - 1);
  for (int i = 0; i < n - 1; ++i) controls[i] = i + 1;
  detail::emit_multiplexed(c, axis, angles, controls, n, false);
  return peephole(c);
}

// Dense F_n(R_a) from the definition, for verification.
inline Mat multiplexed_rotation_dense(Axis axis, const std::vector<double>& angles, int n) {
  const long d = 1L << n;
  Mat m = Mat::Zero(d, d);
  for (long b = 0; b < d / 2; ++b) {
    const double a = angles[b];
    if (axis == Axis::Z) {
      m(2 * b, 2 * b) = std::polar(1.0, a);
      m(2 * b + 1, 2 * b + 1) = std::polar(1.0, -a);
    } else {
      m(2 * b, 2 * b) = std::cos(a);
      m(2 * b, 2 * b + 1) = std::sin(a);
      m(2 * b + 1, 2 * b) = -std::sin(a);
      m(2 * b + 1, 2 * b + 1) = std::cos(a);
    }
  }
  return m;
}

namespace detail {

enum class MuxShape { Lead, Tail };  // Lead: starts with a CNOT; Tail: ends with one.

// One MnZYZ block circuit: Z(beta), Y(gamma), Z(alpha) multiplexors in
// application order, oriented so the inner seams cancel. Shape controls
// whether the boundary CNOT sits at the start (Lead) or the end (Tail).
inline Circuit mzyz_circuit_shaped(const MnZYZ& m, MuxShape shape) {
  const int n = m.n;
  Circuit c(n);
  const long half = 1L << (n - 1);
  std::vector<double> alphas(half), betas(half), gammas(half);
  for (long b = 0; b < half; ++b) {
    alphas[b] = m.blocks[b].alpha;
    betas[b] = m.blocks[b].beta;
    gammas[b] = m.blocks[b].gamma;
  }
  if (n == 1) {
    c.add(Gate::rz(1, betas[0])).add(Gate::ry(1, gammas[0])).add(Gate::rz(1, alphas[0]));
    return peephole(c);
  }
  std::vector<int> controls(n - 1);
  for (int i = 0; i < n - 1; ++i) controls[i] = i + 1;
  const bool lead = shape == MuxShape::Lead;
  detail::emit_multiplexed(c, Axis::Z, betas, controls, n, lead);
  detail::emit_multiplexed(c, Axis::Y, gammas, controls, n, !lead);
  detail::emit_multiplexed(c, Axis::Z, alphas, controls, n, lead);
  return peephole(c);
}

}  // namespace detail

// Circuit for an MnZYZ matrix; at most 3*2^(n-1) - 2 CNOTs.
inline Circuit mzyz_circuit(const MnZYZ& m) {
  return detail::mzyz_circuit_shaped(m, detail::MuxShape::Tail);
}

// Circuit for a block-diagonal special unitary with 2x2 blocks: per-block
// scalar phases via a diagonal cascade on qubits 1..n-1, then an MnZYZ
// circuit for the special-unitary parts. At most 5*2^(n-1) - 6 CNOTs.
inline Circuit block_diag_circuit(const Mat& target, double tol = 1e-9) {
  const int n = log2_exact(target.rows());
  const long half = target.rows() / 2;
  std::vector<double> delta(half);
  MnZYZ su;
  su.n = n;
  double total = 0.0;
  for (long b = 0; b < half; ++b) {
    Eigen::Matrix2cd blk = target.block(2 * b, 2 * b, 2, 2);
    if (!blk.isUnitary(tol)) throw srbb_error("block_diag_circuit: block not unitary");
    delta[b] = 0.5 * std::arg(blk.determinant());
    total += delta[b];
  }
  // det(target) = 1 forces sum(delta) onto a multiple of pi; fold the residue
  // into the first block, whose SU(2) part absorbs the sign.
  const double residue = total;
  delta[0] -= residue;
  for (long b = 0; b < half; ++b) {
    Eigen::Matrix2cd blk = target.block(2 * b, 2 * b, 2, 2);
    Eigen::Matrix2cd s = blk * std::polar(1.0, -delta[b]);
    if (std::abs(s.determinant() - cplx(1.0)) > 1e-6)
      throw srbb_error("block_diag_circuit: target is not special unitary");
    su.blocks.push_back(zyz_from_su2(s, tol));
  }
  Circuit c = detail::mzyz_circuit_shaped(su, detail::MuxShape::Tail);
  if (n >= 2) {
    std::vector<int> qubits(n - 1);
    for (int i = 0; i < n - 1; ++i) qubits[i] = i + 1;
    detail::emit_diag_cascade(c, delta, qubits);
  }
  return peephole(c);
}

namespace detail {

inline Mat conj_by_perm(const std::vector<Transposition>& ts, const Mat& m) {
  Mat pi = transposition_product(ts, m.rows());
  return pi * m * pi;
}

// Dense zeta split into the sigma3-suffixed part (merges into the first
// MnZYZ) and the I-suffixed remainder (emitted as a cascade on 1..n-1).
struct ZetaSplit {
  std::vector<double> z_part;  // per block: exp(i z_b sigma3)
  std::vector<double> i_part;  // per block: exp(i s_b) I_2
};

inline ZetaSplit split_zeta(const LayerParams& params, int n,
                            const std::vector<SrbbElement>& basis) {
  const long d = 1L << n;
  RVec phase = RVec::Zero(d);
  for (long m = 2; m <= d; ++m) {
    const SrbbElement& e = basis[m * m - 1 - 1];
    for (long r = 0; r < d; ++r) phase[r] += params.at(m * m - 1) * e.diag_signs[r];
  }
  ZetaSplit out;
  out.z_part.resize(d / 2);
  out.i_part.resize(d / 2);
  for (long b = 0; b < d / 2; ++b) {
    out.z_part[b] = 0.5 * (phase[2 * b] - phase[2 * b + 1]);
    out.i_part[b] = 0.5 * (phase[2 * b] + phase[2 * b + 1]);
  }
  return out;
}

inline Mat blockwise_rz(const std::vector<double>& z, long d) {
  Mat m = Mat::Zero(d, d);
  for (long b = 0; b < d / 2; ++b) {
    m(2 * b, 2 * b) = std::polar(1.0, z[b]);
    m(2 * b + 1, 2 * b + 1) = std::polar(1.0, -z[b]);
  }
  return m;
}

inline Circuit two_qubit_layer_circuit(const LayerParams& params);

}  // namespace detail

// One-layer circuit: Phi sandwiches, Psi sandwiches, the leading MnZYZ with
// zeta's sigma3-words absorbed, then zeta's remaining I-suffixed diagonal.
inline Circuit layer_circuit(const LayerParams& params, int n) {
  if (params.n != n) throw srbb_error("layer_circuit: parameter qubit count mismatch");
  const auto basis = build_srbb(n);
  const long d = 1L << n;
  if (n == 1) {
    // zeta * exp(i th1 sigma1) exp(i th2 sigma2): one ZYZ triple.
    MergedZY m = merge_zy(params.at(1), params.at(2));
    Circuit c(1);
    c.add(Gate::rz(1, -0.5 * (m.gamma + m.beta)))
        .add(Gate::ry(1, m.phi))
        .add(Gate::rz(1, params.at(3) + 0.5 * (m.gamma - m.beta)));
    return peephole(c);
  }
  if (n == 2) return detail::two_qubit_layer_circuit(params);

  const auto part = build_partition(n);
  const long half = d / 2;
  Circuit c(n);
  for (long x = half - 1; x >= 1; --x) {
    Circuit pi = perm_circuit(n, x, /*even=*/false);
    c.add(pi);
    c.add(block_diag_circuit(group_odd(params, n, x, part, basis)));
    c.add(pi);
    c.tag_untagged("phi,x=" + std::to_string(x));
  }
  for (long x = half - 1; x >= 1; --x) {
    Circuit pi = perm_circuit(n, x, /*even=*/true);
    c.add(pi);
    c.add(mzyz_circuit(mzyz_from_dense(group_even(params, n, x, part, basis))));
    c.add(pi);
    c.tag_untagged("psi,x=" + std::to_string(x));
  }
  detail::ZetaSplit zeta = detail::split_zeta(params, n, basis);
  Mat m0 = detail::blockwise_rz(zeta.z_part, d) * psi_leading_product(params, n, basis);
  c.add(mzyz_circuit(mzyz_from_dense(m0)));
  c.tag_untagged("psi,lead");
  std::vector<int> outer(n - 1);
  for (int i = 0; i < n - 1; ++i) outer[i] = i + 1;
  detail::emit_diag_cascade(c, zeta.i_part, outer);
  c.tag_untagged("zeta");
  return peephole(c);
}

// The explicit two-qubit layer: 14 CNOTs and 16 one-qubit gates.
inline Circuit two_qubit_circuit(const LayerParams& params) {
  if (params.n != 2) throw srbb_error("two_qubit_circuit: expects n = 2");
  return layer_circuit(params, 2);
}

namespace detail {

inline Circuit two_qubit_layer_circuit(const LayerParams& params) {
  const int n = 2;
  const auto basis = build_srbb(n);
  const auto part = build_partition(n);

  // M^o_1 at n=2 is itself M_2ZYZ.
  Mat g1 = group_odd(params, n, 1, part, basis);
  // M^e_1 absorbs zeta's Z(x)I phase conjugated through the Pi T^e CNOT into
  // a Z(x)Z word: exp(i th8 Z(x)Z) is block-wise Rz(+-th8).
  const double th8 = params.at(8);
  Mat zz = blockwise_rz({th8, -th8}, 4);
  Mat g2 = zz * group_even(params, n, 1, part, basis);
  // Leading MnZYZ with zeta's sigma3-suffixed words (indices 3 and 15).
  RVec phase(4);
  const auto& u3 = basis[2];
  const auto& u15 = basis[14];
  for (long r = 0; r < 4; ++r)
    phase[r] = params.at(3) * u3.diag_signs[r] + params.at(15) * u15.diag_signs[r];
  std::vector<double> zpart = {0.5 * (phase[0] - phase[1]), 0.5 * (phase[2] - phase[3])};
  Mat g3 = blockwise_rz(zpart, 4) * psi_leading_product(params, n, basis);

  Circuit c(n);
  c.add(Gate::cnot(1, 2)).add(Gate::cnot(2, 1));
  c.add(mzyz_circuit_shaped(mzyz_from_dense(g1), MuxShape::Lead));
  c.gates.erase(c.gates.begin() + 2);  // lead CNOT cancelled against Pi T^o
  c.tag_untagged("phi,x=1");
  c.add(Gate::cnot(2, 1));
  Circuit g2c = mzyz_circuit_shaped(mzyz_from_dense(g2), MuxShape::Lead);
  g2c.gates.erase(g2c.gates.begin());  // lead CNOT cancelled against the braid
  c.add(g2c);
  c.tag_untagged("psi,x=1");
  c.add(Gate::cnot(2, 1));
  c.add(mzyz_circuit_shaped(mzyz_from_dense(g3), MuxShape::Tail));
  c.tag_untagged("psi,lead+zeta");
  return peephole(c);
}

}  // namespace detail

}  // namespace srbb
