#pragma once

#include <vector>

#include "srbb/basis.hpp"
#include "srbb/walsh.hpp"

namespace srbb {

struct ZYZTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  // U(a,b,g) = [[e^{i(a+b)} cos g, e^{i(a-b)} sin g],
  //             [-e^{-i(a-b)} sin g, e^{-i(a+b)} cos g]]
  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    const double c = std::cos(gamma), s = std::sin(gamma);
    m << std::polar(c, alpha + beta), std::polar(s, alpha - beta),
        -std::polar(s, -(alpha - beta)), std::polar(c, -(alpha + beta));
    return m;
  }
};

// Block-diagonal with 2x2 special unitary blocks in ZYZ form.
struct MnZYZ {
  int n = 0;
  std::vector<ZYZTriple> blocks;  // 2^{n-1} entries

  Mat dense() const {
    const long d = 1L << n;
    Mat m = Mat::Zero(d, d);
    for (size_t j = 0; j < blocks.size(); ++j)
      m.block(2 * j, 2 * j, 2, 2) = blocks[j].matrix();
    return m;
  }
};

// ZYZ parameters of an SU(2) matrix [[z, w], [-conj(w), conj(z)]].
inline ZYZTriple zyz_from_su2(const Eigen::Matrix2cd& u, double tol = 1e-9) {
  const cplx z = u(0, 0), w = u(0, 1);
  ZYZTriple t;
  t.gamma = std::atan2(std::abs(w), std::abs(z));
  const double az = std::abs(z) > tol ? std::arg(z) : 0.0;
  const double aw = std::abs(w) > tol ? std::arg(w) : 0.0;
  t.alpha = 0.5 * (az + aw);
  t.beta = 0.5 * (az - aw);
  return t;
}

// Split a block-diagonal unitary into per-block scalar phases and SU(2) parts.
inline MnZYZ mzyz_from_dense(const Mat& m, double tol = 1e-9) {
  const int n = log2_exact(m.rows());
  const long half = m.rows() / 2;
  MnZYZ out{n, {}};
  out.blocks.reserve(half);
  for (long j = 0; j < half; ++j) {
    Eigen::Matrix2cd b = m.block(2 * j, 2 * j, 2, 2);
    const cplx det = b.determinant();
    if (std::abs(std::abs(det) - 1.0) > tol)
      throw srbb_error("mzyz_from_dense: block is not unitary");
    if (std::abs(det - cplx(1.0)) > tol)
      throw srbb_error("mzyz_from_dense: block is not special unitary");
    out.blocks.push_back(zyz_from_su2(b, tol));
  }
  return out;
}

// exp(i th_h sigma1) exp(i th_f sigma2) as the merged block
// [[e^{-i beta} cos phi, e^{i gamma} sin phi],
//  [-e^{-i gamma} sin phi, e^{i beta} cos phi]].
struct MergedZY {
  double phi = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    const double c = std::cos(phi), s = std::sin(phi);
    m << std::polar(c, -beta), std::polar(s, gamma), -std::polar(s, -gamma), std::polar(c, beta);
    return m;
  }
};

inline MergedZY merge_zy(double th_h, double th_f) {
  const double ch = std::cos(th_h), sh = std::sin(th_h);
  const double cf = std::cos(th_f), sf = std::sin(th_f);
  MergedZY out;
  out.phi = std::acos(std::min(1.0, std::sqrt(ch * ch * cf * cf + sh * sh * sf * sf)));
  // Phases read off the complex entries directly; atan2 covers the branches
  // where the arcsin forms divide by a vanishing cos(phi) or sin(phi).
  out.beta = std::atan2(sh * sf, ch * cf);
  out.gamma = std::atan2(sh * cf, ch * sf);
  return out;
}

// Parameters realizing an MnZYZ as
//   (prod_p exp(i t_p chi^{-1}_{n-1}(p) (x) sigma3))
//   (prod_j exp(i gamma_j U_{4j^2-2j}))
//   (prod_p exp(i t'_p chi^{-1}_{n-1}(p) (x) sigma3)).
struct MzyzSolution {
  int n = 0;
  std::vector<double> t;        // indexed by p, chi labeling
  std::vector<double> t_prime;  // indexed by p
  std::vector<double> gamma;    // gamma_j = theta_{4j^2-2j}, j = 1..2^{n-1}
};

namespace detail {

// Solve sum_p x_p * eta^{(2l-1)}(chi^{-1}_{n-1}(p) (x) sigma3) = rhs_l.
inline std::vector<double> solve_eta_system(const std::vector<double>& rhs, int n) {
  const int m = n - 1;
  std::vector<double> c = solve_diag_words_msb(rhs);  // indexed by MSB pattern
  std::vector<double> x(rhs.size());
  for (size_t p = 0; p < x.size(); ++p)
    x[p] = c[bit_reverse(static_cast<uint32_t>(p), m)];
  return x;
}

}  // namespace detail

inline Vec diag_word_sigma3_phases(const std::vector<double>& t, int n) {
  const long d = 1L << n;
  const long half = d / 2;
  RVec phase = RVec::Zero(d);
  for (long p = 0; p < half; ++p) {
    IZWord w{n, static_cast<uint32_t>(p) | (1u << (n - 1))};  // chi word with sigma3 appended
    for (long r = 0; r < d; ++r) phase[r] += t[p] * word_diag_entry(w, r);
  }
  Vec out(d);
  for (long r = 0; r < d; ++r) out[r] = std::polar(1.0, phase[r]);
  return out;
}

inline MzyzSolution mzyz_solve(const MnZYZ& target) {
  const int n = target.n;
  const long half = 1L << (n - 1);
  if (static_cast<long>(target.blocks.size()) != half)
    throw srbb_error("mzyz_solve: wrong block count");
  MzyzSolution sol;
  sol.n = n;
  sol.gamma.resize(half);
  for (long j = 0; j < half; ++j) sol.gamma[j] = target.blocks[j].gamma;

  double total = 0.0;
  for (double g : sol.gamma) total += g;
  std::vector<double> rhs_a(half), rhs_b(half);
  double before = 0.0;
  for (long l = 0; l < half; ++l) {
    const double g = sol.gamma[l];
    const double after = total - before - g;
    const double x_l = before + after;
    const double y_l = before - after;
    const double rhs1 = target.blocks[l].alpha + target.blocks[l].beta - x_l;
    const double rhs2 = target.blocks[l].alpha - target.blocks[l].beta - y_l;
    rhs_a[l] = 0.5 * (rhs1 + rhs2);
    rhs_b[l] = 0.5 * (rhs1 - rhs2);
    before += g;
  }
  sol.t = detail::solve_eta_system(rhs_a, n);
  sol.t_prime = detail::solve_eta_system(rhs_b, n);
  return sol;
}

// Dense reconstruction of an MzyzSolution (test oracle path).
inline Mat mzyz_reconstruct(const MzyzSolution& sol, const std::vector<SrbbElement>& basis) {
  const int n = sol.n;
  const long d = 1L << n;
  const long half = d / 2;
  Mat acc = Mat(diag_word_sigma3_phases(sol.t_prime, n).asDiagonal());
  for (long j = half; j >= 1; --j)
    apply_exp_element_left(basis[4 * j * j - 2 * j - 1], sol.gamma[j - 1], acc);
  Vec left = diag_word_sigma3_phases(sol.t, n);
  for (long r = 0; r < d; ++r) acc.row(r) *= left[r];
  return acc;
}

}  // namespace srbb
