#pragma once

#include <atomic>
#include <chrono>
#include <random>
#include <string>
#include <thread>

#include "srbb/circuit.hpp"
#include "srbb/nelder_mead.hpp"
#include "srbb/objective.hpp"

namespace srbb {

struct ApproxReport {
  std::string target_id;
  long dim = 0;
  OrderingMode mode = OrderingMode::ZPF;
  long layers = 0;
  std::vector<double> layer_errors;     // best error after each accepted layer
  double error_frobenius = 0.0;         // vs the (normalized) optimization target
  double error_phase_invariant = 0.0;   // vs the original input
  double global_phase = 0.0;            // det-normalization phase per factor
  std::vector<std::vector<double>> layer_theta;  // raw parameter vectors
  std::vector<long> subset;             // factor indices (plus d^2 if phase param)
  long restarts = 0;
  uint64_t seed = 0;
  long nm_iterations = 0;
  double wall_seconds = 0.0;
  GateCounts gate_counts;               // ZPF mode, summed over emitted layers
};

namespace detail {

inline std::vector<double> random_start(size_t dim, const OptimizerConfig& cfg, int restart) {
  std::vector<double> x(dim, 0.0);
  if (restart == 0) return x;  // the all-zeros start nails near-identity targets
  std::mt19937_64 g(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * restart);
  if (cfg.init_distribution == OptimizerConfig::Init::Uniform) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (double& v : x) v = u(g);
  } else {
    std::normal_distribution<double> nd(0.0, cfg.normal_sigma);
    for (double& v : x) v = nd(g);
  }
  return x;
}

// Best-of-restarts Nelder-Mead, restarts running concurrently; ties resolved
// by restart index so the schedule cannot change the outcome.
inline NelderMeadResult multistart(const CompiledObjective& obj, const OptimizerConfig& cfg,
                                   long* total_iterations) {
  cfg.validate();
  const size_t dim = obj.parameter_count();
  auto fn = [&obj](const std::vector<double>& x) { return obj.value(x); };

  std::vector<NelderMeadResult> results(cfg.restarts);
  std::atomic<int> next{0};
  // Every restart runs to completion so the winner cannot depend on thread
  // scheduling; each restart's trajectory is fixed by (seed, index) alone.
  auto worker = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= cfg.restarts) return;
      results[r] = nelder_mead(fn, random_start(dim, cfg, r), cfg);
    }
  };
  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, cfg.restarts));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int best = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    if (results[r].nan_abort || results[r].x.empty() || !std::isfinite(results[r].f)) continue;
    if (best < 0 || results[r].f < results[best].f) best = r;
  }
  if (best < 0) return NelderMeadResult{};
  NelderMeadResult winner = results[best];
  if (total_iterations)
    for (const auto& r : results)
      if (r.f < std::numeric_limits<double>::infinity()) *total_iterations += r.iterations;

  // Polish the incumbent with progressively tighter simplexes.
  OptimizerConfig polish = cfg;
  for (int round = 0; round < cfg.polish_rounds && !winner.x.empty(); ++round) {
    if (winner.f <= cfg.stop_threshold) break;
    polish.simplex_size = cfg.simplex_size / std::pow(8.0, round + 1);
    NelderMeadResult refined = nelder_mead(fn, winner.x, polish);
    if (total_iterations) *total_iterations += refined.iterations;
    if (refined.f < winner.f) winner = refined;
  }
  return winner;
}

inline ApproxReport approximate_impl(const Mat& input, OrderingMode mode,
                                     const OptimizerConfig& cfg, long max_layers, double eps,
                                     const std::optional<std::vector<long>>& subset) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!is_unitary(input, 1e-8)) throw srbb_error("approximate: input is not unitary");
  const long d = input.rows();

  ApproxReport report;
  report.dim = d;
  report.mode = mode;
  report.restarts = cfg.restarts;
  report.seed = cfg.seed;

  // Inputs from U(d) are reduced to SU(d) by a det phase, reported separately;
  // a subset containing the identity element re-absorbs phase as a parameter.
  Mat target = input;
  const bool phase_param = subset && std::count(subset->begin(), subset->end(), d * d) > 0;
  if (!phase_param) {
    const double phase = std::arg(target.determinant()) / static_cast<double>(d);
    report.global_phase = phase;
    target *= std::polar(1.0, -phase);
  }

  ObjectiveSpec spec;
  spec.mode = mode;
  spec.basis_subset = subset;
  // The generic ordering reaches some targets only up to a global phase (its
  // factors carry no standalone phase element), so Algorithm 1 optimizes the
  // phase-invariant distance and reports the recovered phase.
  const bool phase_invariant = mode == OrderingMode::Generic;
  spec.phase_invariant = phase_invariant;

  Mat residual = target;
  Mat accumulated = Mat::Identity(d, d);
  double best_error = frobenius_distance(target, accumulated);
  for (long layer = 1; layer <= max_layers; ++layer) {
    spec.target = residual;
    CompiledObjective obj(spec);
    if (layer == 1) {
      report.subset = obj.factor_indices();
      if (obj.has_phase_param()) report.subset.push_back(d * d);
    }
    NelderMeadResult nm = detail::multistart(obj, cfg, &report.nm_iterations);
    if (nm.x.empty()) throw srbb_error("approximate: optimizer aborted (NaN objective)");
    // Layer 1 is always admissible; later layers must strictly improve.
    if (layer > 1 && nm.f >= best_error - 1e-15) break;
    Mat a = obj.assemble(nm.x);
    if (phase_invariant) {
      const double phase = std::arg((a.adjoint() * residual).trace());
      report.global_phase += phase;
      a *= std::polar(1.0, phase);
    }
    accumulated = a * accumulated;
    residual = target * accumulated.adjoint();
    best_error = nm.f;
    report.layer_errors.push_back(nm.f);
    report.layer_theta.push_back(nm.x);
    ++report.layers;
    if (best_error <= eps) break;
  }

  report.error_frobenius = best_error;
  report.error_phase_invariant = phase_invariant_distance(input, accumulated);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace detail

inline ApproxReport approximate_algo1(const Mat& input, const OptimizerConfig& cfg,
                                      long max_layers = 1, double eps = 5e-12) {
  return detail::approximate_impl(input, OrderingMode::Generic, cfg, max_layers, eps,
                                  std::nullopt);
}

inline ApproxReport approximate_algo2(const Mat& input, const OptimizerConfig& cfg,
                                      long max_layers = 1, double eps = 5e-12,
                                      const std::optional<std::vector<long>>& subset = {}) {
  return detail::approximate_impl(input, OrderingMode::ZPF, cfg, max_layers, eps, subset);
}

// Sparsity-guided element selection: diagonals always, off-diagonal elements
// where the target touches their (p,q) support, the identity phase element
// when det(U) != 1.
inline std::vector<long> select_sparse_subset(const Mat& u, int n, double tol = 1e-12) {
  const long d = 1L << n;
  if (u.rows() != d || u.cols() != d) throw srbb_error("select_sparse_subset: dimension mismatch");
  std::vector<long> subset;
  for (long m = 2; m <= d; ++m) subset.push_back(m * m - 1);
  for (long j = 1; j < d * d; ++j) {
    if (detail::is_diagonal_index(j, d)) continue;
    SrbbElement e = element_pair_and_signs(j, d);
    if (std::abs(u(e.p - 1, e.q - 1)) + std::abs(u(e.q - 1, e.p - 1)) > tol) subset.push_back(j);
  }
  if (std::abs(u.determinant() - cplx(1.0)) > 1e-9) subset.push_back(d * d);
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace srbb
