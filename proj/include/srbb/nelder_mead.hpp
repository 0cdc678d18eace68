#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "srbb/types.hpp"

namespace srbb {

struct OptimizerConfig {
  enum class Init { Uniform, Normal };

  int restarts = 32;
  Init init_distribution = Init::Uniform;
  double normal_sigma = 1.0;
  uint64_t seed = 0;
  long max_iterations = 20000;
  double simplex_size = 0.5;
  double f_tolerance = 1e-14;
  double x_tolerance = 1e-12;
  double stop_threshold = 5e-12;  // declare success below this objective value
  int polish_rounds = 2;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (restarts < 1 || max_iterations < 1 || simplex_size <= 0 || f_tolerance <= 0 ||
        x_tolerance <= 0 || stop_threshold < 0 || polish_rounds < 0 || threads < 0)
      throw srbb_error("OptimizerConfig: all knobs must be positive");
  }
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  long iterations = 0;
  bool nan_abort = false;
};

// Standard reflection/expansion/contraction/shrink simplex search with the
// dimension-adaptive coefficients. Fully deterministic in its inputs.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0, const OptimizerConfig& cfg) {
  const size_t dim = x0.size();
  if (dim == 0) throw srbb_error("nelder_mead: empty start point");
  const double nd = static_cast<double>(dim);
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / nd;
  const double gamma = 0.75 - 0.5 / nd;
  const double sigma = 1.0 - 1.0 / nd;

  NelderMeadResult res;
  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fs(dim + 1);
  for (size_t i = 1; i <= dim; ++i) pts[i][i - 1] += cfg.simplex_size;
  for (size_t i = 0; i <= dim; ++i) {
    fs[i] = f(pts[i]);
    if (std::isnan(fs[i])) {
      res.nan_abort = true;
      return res;
    }
  }
  std::vector<size_t> order(dim + 1);

  auto spread = [&]() {
    auto [lo, hi] = std::minmax_element(fs.begin(), fs.end());
    return *hi - *lo;
  };
  auto xspread = [&](size_t best) {
    double m = 0.0;
    for (size_t i = 0; i <= dim; ++i)
      for (size_t k = 0; k < dim; ++k) m = std::max(m, std::abs(pts[i][k] - pts[best][k]));
    return m;
  };

  long it = 0;
  for (; it < cfg.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fs[a] < fs[b]; });
    const size_t best = order[0], worst = order[dim], second = order[dim - 1];
    if (fs[best] <= cfg.stop_threshold) break;
    if (spread() <= cfg.f_tolerance * (1.0 + std::abs(fs[best]))) break;
    if (xspread(best) <= cfg.x_tolerance) break;

    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k];
    }
    for (double& v : centroid) v /= nd;

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (size_t k = 0; k < dim; ++k) x[k] = centroid[k] + coef * (pts[worst][k] - centroid[k]);
      return x;
    };

    std::vector<double> xr = blend(-rho);
    const double fr = f(xr);
    if (std::isnan(fr)) {
      res.nan_abort = true;
      break;
    }
    if (fr < fs[best]) {
      std::vector<double> xe = blend(-rho * chi);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      pts[worst] = std::move(xr);
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      std::vector<double> xc = blend(outside ? -rho * gamma : gamma);
      const double fc = f(xc);
      if (fc < std::min(fr, fs[worst])) {
        pts[worst] = std::move(xc);
        fs[worst] = fc;
      } else {
        for (size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (size_t k = 0; k < dim; ++k)
            pts[i][k] = pts[best][k] + sigma * (pts[i][k] - pts[best][k]);
          fs[i] = f(pts[i]);
          if (std::isnan(fs[i])) {
            res.nan_abort = true;
            break;
          }
        }
        if (res.nan_abort) break;
      }
    }
  }

  size_t best = 0;
  for (size_t i = 1; i <= dim; ++i)
    if (fs[i] < fs[best]) best = i;
  res.x = pts[best];
  res.f = fs[best];
  res.iterations = it;
  return res;
}

}  // namespace srbb
