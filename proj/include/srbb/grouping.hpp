#pragma once

#include <array>
#include <set>
#include <vector>

#include "srbb/basis.hpp"
#include "srbb/partition.hpp"

namespace srbb {

// Angles for one zeta*Psi*Phi layer, held as a flat vector keyed by basis
// index: theta[j-1] parametrizes U_j, j = 1..2^{2n}-1. The identity slot
// theta[2^{2n}-1] is ignored by the layer assembly.
struct LayerParams {
  int n = 0;
  std::vector<double> theta;

  explicit LayerParams(int n_) : n(n_), theta(static_cast<size_t>(1) << (2 * n_), 0.0) {}
  LayerParams() = default;

  double at(long j) const { return theta.at(j - 1); }
  double& at(long j) { return theta.at(j - 1); }
};

// The four basis indices of one even/odd quadruple.
inline std::array<long, 4> even_quadruple(const Transposition& t) {
  const auto [a, b] = t;
  return {h_index(b, a - 1), f_index(b, a - 1), h_index(b - 1, a), f_index(b - 1, a)};
}

inline std::array<long, 4> odd_quadruple(const Transposition& t) {
  const auto [a, b] = t;
  return {h_index(b, a - 1), f_index(b, a - 1), h_index(b + 1, a), f_index(b + 1, a)};
}

inline std::vector<long> zeta_indices(int n) {
  std::vector<long> v;
  for (long m = 2; m <= (1L << n); ++m) v.push_back(m * m - 1);
  return v;
}

inline std::vector<long> psi_leading_indices(int n) {
  std::vector<long> v;
  for (long j = 1; j <= (1L << (n - 1)); ++j) {
    v.push_back((2 * j - 1) * (2 * j - 1));
    v.push_back(4 * j * j - 2 * j);
  }
  return v;
}

namespace detail {

template <typename F>
void for_each_layer_factor(const TranspositionPartition* part, int n, F&& visit) {
  for (long j : zeta_indices(n)) visit(j);
  for (long j : psi_leading_indices(n)) visit(j);
  if (part) {
    const long half = 1L << (n - 1);
    for (long x = 1; x < half; ++x)
      for (const auto& t : part->even_set(x))
        for (long j : even_quadruple(t)) visit(j);
    for (long x = 1; x < half; ++x)
      for (const auto& t : part->odd_set(x))
        for (long j : odd_quadruple(t)) visit(j);
  }
}

// Product of exponential factors given in matrix order (leftmost first).
inline Mat fold_product(const std::vector<std::pair<long, double>>& factors,
                        const std::vector<SrbbElement>& basis, long d) {
  Mat acc = Mat::Identity(d, d);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    apply_exp_element_left(basis[it->first - 1], it->second, acc);
  return acc;
}

}  // namespace detail

// zeta: product of exponentials of all diagonal SRBB elements, as phases.
inline Vec assemble_zeta_phases(const LayerParams& params, int n,
                                const std::vector<SrbbElement>& basis) {
  const long d = 1L << n;
  RVec phase = RVec::Zero(d);
  for (long j : zeta_indices(n)) {
    const SrbbElement& e = basis[j - 1];
    for (long r = 0; r < d; ++r) phase[r] += params.at(j) * e.diag_signs[r];
  }
  Vec out(d);
  for (long r = 0; r < d; ++r) out[r] = std::polar(1.0, phase[r]);
  return out;
}

inline Mat assemble_zeta(const LayerParams& params, int n) {
  return Mat(assemble_zeta_phases(params, n, build_srbb(n)).asDiagonal());
}

// Raw exponential product of one even group (before permutation conjugation).
inline Mat even_group_product(const LayerParams& params, int n, long x,
                              const TranspositionPartition& part,
                              const std::vector<SrbbElement>& basis) {
  std::vector<std::pair<long, double>> factors;
  for (const auto& t : part.even_set(x))
    for (long j : even_quadruple(t)) factors.emplace_back(j, params.at(j));
  return detail::fold_product(factors, basis, 1L << n);
}

inline Mat odd_group_product(const LayerParams& params, int n, long x,
                             const TranspositionPartition& part,
                             const std::vector<SrbbElement>& basis) {
  std::vector<std::pair<long, double>> factors;
  for (const auto& t : part.odd_set(x))
    for (long j : odd_quadruple(t)) factors.emplace_back(j, params.at(j));
  return detail::fold_product(factors, basis, 1L << n);
}

// M^e_x: permutation-conjugated even group, an MnZYZ-form matrix.
inline Mat group_even(const LayerParams& params, int n, long x,
                      const TranspositionPartition& part,
                      const std::vector<SrbbElement>& basis) {
  Mat pi = transposition_product(part.even_set(x), 1L << n);
  return pi * even_group_product(params, n, x, part, basis) * pi;
}

// M^o_x: permutation-conjugated odd group, block diagonal in SU(2^n).
inline Mat group_odd(const LayerParams& params, int n, long x,
                     const TranspositionPartition& part,
                     const std::vector<SrbbElement>& basis) {
  Mat pi = transposition_product(part.odd_set(x), 1L << n);
  return pi * odd_group_product(params, n, x, part, basis) * pi;
}

// Leading MnZYZ factor of Psi: prod_j exp(i th_{(2j-1)^2} U) exp(i th_{4j^2-2j} U).
inline Mat psi_leading_product(const LayerParams& params, int n,
                               const std::vector<SrbbElement>& basis) {
  std::vector<std::pair<long, double>> factors;
  for (long j : psi_leading_indices(n)) factors.emplace_back(j, params.at(j));
  return detail::fold_product(factors, basis, 1L << n);
}

inline Mat assemble_psi(const LayerParams& params, int n) {
  const auto basis = build_srbb(n);
  const long d = 1L << n;
  Mat acc = Mat::Identity(d, d);
  if (n >= 2) {
    const auto part = build_partition(n);
    const long half = 1L << (n - 1);
    for (long x = half - 1; x >= 1; --x)
      acc = even_group_product(params, n, x, part, basis) * acc;
  }
  return psi_leading_product(params, n, basis) * acc;
}

inline Mat assemble_phi(const LayerParams& params, int n) {
  const auto basis = build_srbb(n);
  const long d = 1L << n;
  Mat acc = Mat::Identity(d, d);
  if (n >= 2) {
    const auto part = build_partition(n);
    const long half = 1L << (n - 1);
    for (long x = half - 1; x >= 1; --x)
      acc = odd_group_product(params, n, x, part, basis) * acc;
  }
  return acc;
}

// One layer, assembled in a single O(4^n) pass per factor.
inline Mat assemble_layer(const LayerParams& params, int n,
                          const std::vector<SrbbElement>& basis) {
  const long d = 1L << n;
  std::vector<std::pair<long, double>> factors;
  const TranspositionPartition part = n >= 2 ? build_partition(n) : TranspositionPartition{};
  detail::for_each_layer_factor(n >= 2 ? &part : nullptr, n,
                                [&](long j) { factors.emplace_back(j, params.at(j)); });
  return detail::fold_product(factors, basis, d);
}

inline Mat assemble_layers(const std::vector<LayerParams>& layers, int n) {
  const auto basis = build_srbb(n);
  const long d = 1L << n;
  Mat acc = Mat::Identity(d, d);
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    if (it->n != n) throw srbb_error("assemble_layers: layer qubit count mismatch");
    acc = assemble_layer(*it, n, basis) * acc;
  }
  return acc;
}

// Every non-identity SRBB index appears in exactly one layer slot.
inline bool layer_indices_tile(int n) {
  std::set<long> seen;
  const TranspositionPartition part = n >= 2 ? build_partition(n) : TranspositionPartition{};
  bool dup = false;
  detail::for_each_layer_factor(n >= 2 ? &part : nullptr, n, [&](long j) {
    if (!seen.insert(j).second) dup = true;
  });
  const long want = (1L << (2 * n)) - 1;
  return !dup && static_cast<long>(seen.size()) == want && *seen.rbegin() == want &&
         *seen.begin() == 1;
}

}  // namespace srbb
