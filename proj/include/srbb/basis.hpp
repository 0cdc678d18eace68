#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "srbb/index_maps.hpp"
#include "srbb/types.hpp"

namespace srbb {

enum class ElementKind {
  Sigma1,             // symmetric off-diagonal block
  Sigma2,             // antisymmetric (-i/+i) off-diagonal block
  DiagonalIZ,         // I/Z tensor word (SRBB)
  DiagonalRecursive,  // diagonal from the plain recursion (generic basis)
  Identity,
};

// One basis element, held structurally: the 2x2 block support (p,q) plus the
// +/-1 pattern on the remaining diagonal, or the diagonal itself. Dense form
// is materialized on demand; all products elsewhere use the O(d) form.
struct SrbbElement {
  long dim = 0;
  long index = 0;  // 1-based, 1..dim^2
  ElementKind kind = ElementKind::Identity;
  long p = 0, q = 0;              // 1-based pair for sigma kinds
  std::vector<int> diag_signs;    // size dim; 0 at p,q for sigma kinds
  std::optional<IZWord> iz_word;  // set for DiagonalIZ

  bool is_diagonal() const {
    return kind == ElementKind::DiagonalIZ || kind == ElementKind::DiagonalRecursive ||
           kind == ElementKind::Identity;
  }

  Mat dense() const {
    Mat m = Mat::Zero(dim, dim);
    if (kind == ElementKind::Identity) return Mat::Identity(dim, dim);
    if (is_diagonal()) {
      for (long r = 0; r < dim; ++r) m(r, r) = diag_signs[r];
      return m;
    }
    for (long r = 0; r < dim; ++r) m(r, r) = diag_signs[r];
    if (kind == ElementKind::Sigma1) {
      m(p - 1, q - 1) = 1.0;
      m(q - 1, p - 1) = 1.0;
    } else {
      m(p - 1, q - 1) = cplx(0, -1);
      m(q - 1, p - 1) = cplx(0, 1);
    }
    return m;
  }

  long trace_int() const {
    long t = 0;
    if (kind == ElementKind::Identity) return dim;
    for (int s : diag_signs) t += s;
    return t;
  }
};

namespace detail {

// Level of a non-diagonal index: q with (q-1)^2 <= j <= q^2-2.
inline long element_level(long j) {
  long q = static_cast<long>(std::llround(std::floor(std::sqrt(static_cast<double>(j))))) + 1;
  while ((q - 1) * (q - 1) > j) --q;
  while (q * q - 2 < j) ++q;
  return q;
}

inline bool is_diagonal_index(long j, long d) {
  if (j == d * d) return true;
  long m = static_cast<long>(std::llround(std::sqrt(static_cast<double>(j + 1))));
  return m >= 2 && m <= d && m * m - 1 == j;
}

// Off-block diagonal signs shared by both sigma kinds at (p, q), level q:
// (-1)^(m-1) at position m, except position q-1 (when p < q-1) inherits the
// sign (-1)^(p-1) displaced by the recursion's transposition.
inline std::vector<int> sigma_diag_signs(long d, long p, long q) {
  std::vector<int> s(d, 0);
  for (long m = 1; m <= d; ++m) {
    if (m == p || m == q) continue;
    if (m == q - 1 && p != q - 1)
      s[m - 1] = (p % 2 == 1) ? 1 : -1;
    else
      s[m - 1] = (m % 2 == 1) ? 1 : -1;
  }
  return s;
}

// Diagonal of the generic recursion's element m^2-1 inside dimension d.
inline std::vector<int> recursive_diag_signs(long d, long m) {
  std::vector<int> s(d, 1);
  if (m == 2) {
    s[1] = -1;  // sigma3, the Pauli base case
  } else if (m % 2 == 1) {
    // diag(I_{floor(m/2)+1}, -I_{floor(m/2)})
    for (long r = m / 2 + 1; r < m; ++r) s[r] = -1;
  } else {
    // diag(Sigma, -sigma3) with Sigma = diag(I_{m/2-1}, -I_{m/2-1})
    for (long r = m / 2 - 1; r < m - 2; ++r) s[r] = -1;
    s[m - 2] = -1;
    s[m - 1] = 1;
  }
  for (long e = m + 1; e <= d; ++e) s[e - 1] = (e % 2 == 1) ? 1 : -1;
  return s;
}

}  // namespace detail

// Structured form of a non-diagonal element: kind, pair, signs.
inline SrbbElement element_pair_and_signs(long j, long d) {
  if (d < 2) throw srbb_error("element_pair_and_signs: d < 2");
  if (j < 1 || j > d * d) throw srbb_error("element_pair_and_signs: index out of range");
  if (detail::is_diagonal_index(j, d))
    throw srbb_error("element_pair_and_signs: index " + std::to_string(j) + " is diagonal");
  const long q = detail::element_level(j);
  const long r = j - (q - 1) * (q - 1);
  SrbbElement e;
  e.dim = d;
  e.index = j;
  long rr;
  if (r <= q - 2) {
    e.kind = ElementKind::Sigma1;
    rr = r;
  } else {
    e.kind = ElementKind::Sigma2;
    rr = r - (q - 1);
  }
  e.p = (rr == 0) ? q - 1 : rr;
  e.q = q;
  e.diag_signs = detail::sigma_diag_signs(d, e.p, e.q);
  return e;
}

// Hermitian unitary basis of C^{dxd} via the bordering recursion, Pauli basis
// at d=2. Diagonal elements sit at indices m^2-1 (2<=m<=d) and d^2.
inline std::vector<SrbbElement> build_generic_basis(long d) {
  if (d < 2) throw srbb_error("build_generic_basis: d must be >= 2");
  std::vector<SrbbElement> basis;
  basis.reserve(d * d);
  for (long j = 1; j <= d * d; ++j) {
    if (j == d * d) {
      SrbbElement e;
      e.dim = d;
      e.index = j;
      e.kind = ElementKind::Identity;
      e.diag_signs.assign(d, 1);
      basis.push_back(std::move(e));
    } else if (detail::is_diagonal_index(j, d)) {
      const long m = static_cast<long>(std::llround(std::sqrt(static_cast<double>(j + 1))));
      SrbbElement e;
      e.dim = d;
      e.index = j;
      e.kind = ElementKind::DiagonalRecursive;
      e.diag_signs = detail::recursive_diag_signs(d, m);
      basis.push_back(std::move(e));
    } else {
      basis.push_back(element_pair_and_signs(j, d));
    }
  }
  return basis;
}

// SRBB: the generic basis of C^{2^n x 2^n} with the diagonal indices replaced
// by I/Z tensor words. Index m^2-1 receives the word whose qubit-1-as-MSB bit
// pattern is m-1; the identity word sits at 2^{2n}. This deterministic
// assignment reproduces Example 4.1 at n=2 (U3=I(x)Z, U8=Z(x)I, U15=Z(x)Z).
inline std::vector<SrbbElement> build_srbb(int n) {
  if (n < 1) throw srbb_error("build_srbb: n must be >= 1");
  const long d = 1L << n;
  std::vector<SrbbElement> basis = build_generic_basis(d);
  for (long m = 2; m <= d; ++m) {
    SrbbElement& e = basis[m * m - 1 - 1];
    e.kind = ElementKind::DiagonalIZ;
    const uint32_t msb_pattern = static_cast<uint32_t>(m - 1);
    e.iz_word = IZWord{n, bit_reverse(msb_pattern, n)};
    for (long pos = 0; pos < d; ++pos)
      e.diag_signs[pos] = word_diag_entry(*e.iz_word, pos);
  }
  return basis;
}

// exp(i theta B) = cos(theta) I + i sin(theta) B, built in O(d) work.
inline Mat exp_element(const SrbbElement& e, double theta) {
  const long d = e.dim;
  const double c = std::cos(theta), s = std::sin(theta);
  Mat m = Mat::Zero(d, d);
  if (e.kind == ElementKind::Identity) {
    m.diagonal().setConstant(std::polar(1.0, theta));
    return m;
  }
  if (e.is_diagonal()) {
    for (long r = 0; r < d; ++r) m(r, r) = std::polar(1.0, theta * e.diag_signs[r]);
    return m;
  }
  for (long r = 0; r < d; ++r)
    if (e.diag_signs[r] != 0) m(r, r) = std::polar(1.0, theta * e.diag_signs[r]);
  m(e.p - 1, e.p - 1) = c;
  m(e.q - 1, e.q - 1) = c;
  if (e.kind == ElementKind::Sigma1) {
    m(e.p - 1, e.q - 1) = kI * s;
    m(e.q - 1, e.p - 1) = kI * s;
  } else {
    m(e.p - 1, e.q - 1) = s;
    m(e.q - 1, e.p - 1) = -s;
  }
  return m;
}

// Left-multiply a dense accumulator by exp(i theta B) in O(d^2).
inline void apply_exp_element_left(const SrbbElement& e, double theta, Mat& acc) {
  const long d = e.dim;
  if (e.kind == ElementKind::Identity) {
    acc *= std::polar(1.0, theta);
    return;
  }
  if (e.is_diagonal()) {
    for (long r = 0; r < d; ++r) acc.row(r) *= std::polar(1.0, theta * e.diag_signs[r]);
    return;
  }
  const double c = std::cos(theta), s = std::sin(theta);
  for (long r = 0; r < d; ++r)
    if (e.diag_signs[r] != 0) acc.row(r) *= std::polar(1.0, theta * e.diag_signs[r]);
  Eigen::RowVectorXcd rp = acc.row(e.p - 1), rq = acc.row(e.q - 1);
  if (e.kind == ElementKind::Sigma1) {
    acc.row(e.p - 1) = c * rp + kI * s * rq;
    acc.row(e.q - 1) = kI * s * rp + c * rq;
  } else {
    acc.row(e.p - 1) = c * rp + s * rq;
    acc.row(e.q - 1) = -s * rp + c * rq;
  }
}

// Product of exponentials of commuting diagonal SRBB elements, as the phase
// vector of exp(sum_j i c_j U_j). Keys are basis indices (m^2-1 or 2^{2n}).
inline Vec exp_diag_combination(const std::map<long, double>& coeffs, int n) {
  const long d = 1L << n;
  const std::vector<SrbbElement> basis = build_srbb(n);
  RVec phase = RVec::Zero(d);
  for (const auto& [j, c] : coeffs) {
    if (j < 1 || j > d * d) throw srbb_error("exp_diag_combination: bad index");
    const SrbbElement& e = basis[j - 1];
    if (!e.is_diagonal()) throw srbb_error("exp_diag_combination: non-diagonal index");
    for (long r = 0; r < d; ++r) phase[r] += c * e.diag_signs[r];
  }
  Vec out(d);
  for (long r = 0; r < d; ++r) out[r] = std::polar(1.0, phase[r]);
  return out;
}

}  // namespace srbb
