#pragma once

#include <map>

#include "srbb/basis.hpp"
#include "srbb/walsh.hpp"

namespace srbb {

// Identity except for one 2x2 unitary block at rows/cols (p, q), scaled by a
// global phase.
struct TwoLevelUnitary {
  int n = 0;
  long p = 0, q = 0;  // 1-based, p < q
  Eigen::Matrix2cd block = Eigen::Matrix2cd::Identity();
  double global_phase = 0.0;

  Mat dense() const {
    const long d = 1L << n;
    Mat m = Mat::Identity(d, d);
    m(p - 1, p - 1) = block(0, 0);
    m(p - 1, q - 1) = block(0, 1);
    m(q - 1, p - 1) = block(1, 0);
    m(q - 1, q - 1) = block(1, 1);
    return m * std::polar(1.0, global_phase);
  }
};

// U = e^{i alpha} (prod_{j in J} exp(i t_j U_j)) exp(i t_l U_l)
//     (prod_{j in J} exp(i t'_j U_j)), keys are diagonal SRBB indices.
struct TwoLevelSynthesis {
  int n = 0;
  double global_phase = 0.0;
  std::map<long, double> t;        // left diagonal coefficients
  long l = 0;                      // middle sigma2-type index
  double t_l = 0.0;
  std::map<long, double> t_prime;  // right diagonal coefficients
};

namespace detail {

// Coefficient map over the diagonal SRBB indices realizing exp(i diag(v)).
inline std::map<long, double> diag_vector_to_coeffs(const std::vector<double>& v, int n) {
  const long d = 1L << n;
  std::vector<double> c = solve_diag_words_msb(v);
  std::map<long, double> out;
  for (long w = 0; w < d; ++w) {
    if (std::abs(c[w]) < 1e-15) continue;
    const long index = (w == 0) ? d * d : (w + 1) * (w + 1) - 1;
    out[index] = c[w];
  }
  return out;
}

}  // namespace detail

inline TwoLevelSynthesis synth_two_level(const TwoLevelUnitary& target) {
  const int n = target.n;
  const long d = 1L << n;
  if (target.p < 1 || target.q > d || target.p >= target.q)
    throw srbb_error("synth_two_level: pair out of range");
  if (!target.block.isUnitary(1e-8)) throw srbb_error("synth_two_level: block not unitary");

  // Split the block into e^{i alpha} times an SU(2) matrix and read off the
  // two-level angles.
  const cplx det = target.block.determinant();
  const double alpha = 0.5 * std::arg(det) + target.global_phase;
  Eigen::Matrix2cd su = target.block * std::polar(1.0, -0.5 * std::arg(det));
  const cplx z = su(0, 0), w = su(1, 0);
  const double half_theta = std::atan2(std::abs(w), std::abs(z));
  const double az = std::abs(z) > 1e-12 ? std::arg(z) : 0.0;
  const double aw = std::abs(w) > 1e-12 ? std::arg(w) : 0.0;
  const double beta = -az + aw;
  const double delta = -az - aw;

  const long l = f_index(target.q, target.p);
  const SrbbElement middle = element_pair_and_signs(l, d);

  std::vector<double> vl(d), vr(d);
  for (long r = 0; r < d; ++r) {
    vl[r] = -0.5 * alpha + 0.5 * half_theta * middle.diag_signs[r];
    vr[r] = vl[r];
  }
  vl[target.p - 1] = -0.5 * beta;
  vl[target.q - 1] = 0.5 * beta;
  vr[target.p - 1] = -0.5 * delta;
  vr[target.q - 1] = 0.5 * delta;

  TwoLevelSynthesis sol;
  sol.n = n;
  sol.global_phase = alpha;
  sol.t = detail::diag_vector_to_coeffs(vl, n);
  sol.l = l;
  sol.t_l = -half_theta;
  sol.t_prime = detail::diag_vector_to_coeffs(vr, n);
  return sol;
}

inline Mat two_level_reconstruct(const TwoLevelSynthesis& sol,
                                 const std::vector<SrbbElement>& basis) {
  const int n = sol.n;
  const long d = 1L << n;
  Vec right = exp_diag_combination(sol.t_prime, n);
  Mat acc = Mat(right.asDiagonal());
  apply_exp_element_left(basis[sol.l - 1], sol.t_l, acc);
  Vec left = exp_diag_combination(sol.t, n);
  for (long r = 0; r < d; ++r) acc.row(r) *= left[r];
  return acc * std::polar(1.0, sol.global_phase);
}

}  // namespace srbb
