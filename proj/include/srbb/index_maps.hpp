#pragma once

#include <cstdint>

#include "srbb/types.hpp"

namespace srbb {

// chi on a single factor: chi(I)=0, chi(Z)=1. A word of m factors is held as a
// bit string with bit (i-1) <-> tensor factor i, so chi_m(word) is the plain
// integer value of that string (weight 2^{i-1} on position i).
//
// Positions inside matrices follow the ket convention |v_1...v_n> with qubit 1
// most significant: row index = sum_j 2^{n-j} v_j (0-based). chi's bit layout
// is the reverse of that, which is why diag lookups below bit-reverse.

struct IZWord {
  int m = 0;           // number of factors
  uint32_t z_bits = 0; // bit (i-1) set <=> factor i is Z (chi layout)

  bool is_identity() const { return z_bits == 0; }
};

inline uint32_t bit_reverse(uint32_t v, int width) {
  uint32_t r = 0;
  for (int i = 0; i < width; ++i)
    if (v & (1u << i)) r |= 1u << (width - 1 - i);
  return r;
}

inline long chi(const IZWord& w) { return w.z_bits; }

inline IZWord chi_inv(long k, int m) {
  if (m < 1 || k < 0 || k >= (1L << m)) throw srbb_error("chi_inv: k out of range");
  return IZWord{m, static_cast<uint32_t>(k)};
}

// Diagonal entry of the word at matrix position `pos` (0-based, qubit 1 MSB).
inline int word_diag_entry(const IZWord& w, long pos) {
  const uint32_t msb_first = bit_reverse(w.z_bits, w.m);
  return (__builtin_popcount(msb_first & static_cast<uint32_t>(pos)) & 1) ? -1 : 1;
}

inline RVec word_diag(const IZWord& w) {
  const long d = 1L << w.m;
  RVec v(d);
  for (long p = 0; p < d; ++p) v[p] = word_diag_entry(w, p);
  return v;
}

// f, h locate the sigma2- and sigma1-type elements of recursion level n.
inline long f_index(long n, long k) {
  if (n < 2) throw srbb_error("f_index: n must be >= 2");
  long r = k % (n - 1);
  if (r < 0) r += n - 1;
  return (n - 1) * (n - 1) + (n - 1) + r;
}

inline long h_index(long n, long k) {
  if (n < 2) throw srbb_error("h_index: n must be >= 2");
  long r = k % (n - 1);
  if (r < 0) r += n - 1;
  return (n - 1) * (n - 1) + r;
}

// eta: j-th diagonal entry (1-based) of a +/-1 diagonal matrix.
inline int eta(const RVec& diag_entries, long j) {
  if (j < 1 || j > diag_entries.size()) throw srbb_error("eta: index out of range");
  const double v = diag_entries[j - 1];
  if (v != 1.0 && v != -1.0) throw srbb_error("eta: matrix is not a +/-1 diagonal");
  return v > 0 ? 1 : -1;
}

inline int eta(const Mat& m, long j) {
  if (j < 1 || j > m.rows() || m.rows() != m.cols())
    throw srbb_error("eta: index out of range");
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      if (r != c && std::abs(m(r, c)) != 0.0)
        throw srbb_error("eta: matrix is not diagonal");
  const cplx v = m(j - 1, j - 1);
  if (v != cplx(1.0) && v != cplx(-1.0)) throw srbb_error("eta: entries must be +/-1");
  return v.real() > 0 ? 1 : -1;
}

}  // namespace srbb
