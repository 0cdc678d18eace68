#pragma once

#include <vector>

#include "srbb/index_maps.hpp"
#include "srbb/types.hpp"

namespace srbb {

// In-place Walsh-Hadamard transform, H[r][c] = (-1)^popcount(r & c).
inline void fwht(std::vector<double>& v) {
  const size_t n = v.size();
  for (size_t h = 1; h < n; h <<= 1) {
    for (size_t i = 0; i < n; i += h << 1) {
      for (size_t j = i; j < i + h; ++j) {
        const double x = v[j], y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

// Solve sum_w c_w * diag(word_w)[pos] = rhs[pos] for all positions of an
// m-qubit register, where word_w = chi_inv(w, m) in the MSB-first labeling:
// diag(word with MSB pattern W)[pos] = (-1)^popcount(W & pos). Returns c
// indexed by the MSB-first pattern W. O(m 2^m).
inline std::vector<double> solve_diag_words_msb(const std::vector<double>& rhs) {
  std::vector<double> c(rhs);
  fwht(c);
  const double scale = 1.0 / static_cast<double>(rhs.size());
  for (double& x : c) x *= scale;
  return c;
}

}  // namespace srbb
