#pragma once

#include <utility>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

using Transposition = std::pair<long, long>;  // (alpha, beta), 1-based, alpha < beta

// The circuit-induced partition of P_{2^n,even} and P_{2^n,odd} into
// 2^{n-1}-1 sets of 2^{n-2} disjoint transpositions each:
//   T^e_x = {(2m+2, 2(m xor x)+2)},  T^o_x = {(2m+2, 2(m xor x)+1)},
// keeping representatives with alpha < beta.
struct TranspositionPartition {
  int n = 0;
  std::vector<std::vector<Transposition>> even;  // index x-1
  std::vector<std::vector<Transposition>> odd;

  const std::vector<Transposition>& even_set(long x) const { return even.at(x - 1); }
  const std::vector<Transposition>& odd_set(long x) const { return odd.at(x - 1); }
};

inline TranspositionPartition build_partition(int n) {
  if (n < 2) throw srbb_error("build_partition: n must be >= 2");
  const long half = 1L << (n - 1);
  TranspositionPartition part;
  part.n = n;
  part.even.resize(half - 1);
  part.odd.resize(half - 1);
  for (long x = 1; x < half; ++x) {
    for (long m = 0; m < half; ++m) {
      const long a = 2 * m + 2;
      const long be = 2 * (m ^ x) + 2;
      const long bo = 2 * (m ^ x) + 1;
      if (a < be) part.even[x - 1].emplace_back(a, be);
      if (a < bo) part.odd[x - 1].emplace_back(a, bo);
    }
  }
  return part;
}

// Permutation matrix of a product of disjoint transpositions.
inline Mat transposition_product(const std::vector<Transposition>& ts, long dim) {
  Mat m = Mat::Identity(dim, dim);
  for (const auto& [a, b] : ts) {
    m.row(a - 1).swap(m.row(b - 1));
  }
  return m;
}

}  // namespace srbb
