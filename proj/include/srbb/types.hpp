#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srbb {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

// Strict structural errors (bad index, wrong kind, shape mismatch) throw this.
struct srbb_error : std::runtime_error {
  explicit srbb_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

inline int log2_exact(long v) {
  if (!is_power_of_two(v)) throw srbb_error("dimension is not a power of two");
  int n = 0;
  while ((1L << n) < v) ++n;
  return n;
}

inline double frobenius_norm(const Mat& a) { return a.norm(); }

inline double frobenius_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw srbb_error("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

// min over a global phase: ||A - e^{i phi} B||_F = sqrt(2d - 2|tr(B^dag A)|).
inline double phase_invariant_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw srbb_error("phase_invariant_distance: shape mismatch");
  const double t = std::abs((b.adjoint() * a).trace());
  const double v = a.squaredNorm() + b.squaredNorm() - 2.0 * t;
  return std::sqrt(std::max(0.0, v));
}

inline bool is_unitary(const Mat& u, double tol = 1e-8) {
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() < tol;
}

}  // namespace srbb
