#pragma once

#include <optional>
#include <vector>

#include "srbb/grouping.hpp"

namespace srbb {

enum class OrderingMode {
  Generic,  // Algorithm 1: ascending basis order, any d >= 2
  ZPF,      // Algorithm 2: zeta * Psi * Phi ordering, d = 2^n
};

struct ObjectiveSpec {
  Mat target;
  OrderingMode mode = OrderingMode::ZPF;
  std::optional<std::vector<long>> basis_subset;  // basis indices; may include d^2 (phase)
  bool phase_invariant = false;

  void validate() const {
    if (target.rows() != target.cols() || target.rows() < 2)
      throw srbb_error("ObjectiveSpec: target must be square, d >= 2");
    if (!is_unitary(target, 1e-8)) throw srbb_error("ObjectiveSpec: target is not unitary");
    if (mode == OrderingMode::ZPF && !is_power_of_two(target.rows()))
      throw srbb_error("ObjectiveSpec: ZPF ordering needs d = 2^n");
  }
};

// Pre-resolved factor list so the optimizer hot path only folds exponentials.
class CompiledObjective {
 public:
  explicit CompiledObjective(const ObjectiveSpec& spec) : spec_(spec) {
    spec_.validate();
    const long d = spec_.target.rows();
    basis_ = spec_.mode == OrderingMode::ZPF ? build_srbb(log2_exact(d)) : build_generic_basis(d);

    std::vector<long> order;
    if (spec_.mode == OrderingMode::Generic) {
      for (long j = 1; j <= d * d - 1; ++j) order.push_back(j);
    } else {
      const int n = log2_exact(d);
      const TranspositionPartition part = n >= 2 ? build_partition(n) : TranspositionPartition{};
      detail::for_each_layer_factor(n >= 2 ? &part : nullptr, n,
                                    [&](long j) { order.push_back(j); });
    }

    if (spec_.basis_subset) {
      std::vector<bool> keep(d * d + 1, false);
      for (long j : *spec_.basis_subset) {
        if (j < 1 || j > d * d) throw srbb_error("ObjectiveSpec: subset index out of range");
        if (j == d * d) has_phase_param_ = true;
        keep[j] = true;
      }
      for (long j : order)
        if (keep[j]) factors_.push_back(j);
    } else {
      factors_ = order;
    }
  }

  size_t parameter_count() const { return factors_.size() + (has_phase_param_ ? 1 : 0); }
  const std::vector<long>& factor_indices() const { return factors_; }
  bool has_phase_param() const { return has_phase_param_; }
  const Mat& target() const { return spec_.target; }
  const ObjectiveSpec& spec() const { return spec_; }

  // Product of exponentials at the given parameter vector (phase slot last).
  Mat assemble(const std::vector<double>& theta) const {
    if (theta.size() != parameter_count())
      throw srbb_error("objective: parameter count mismatch");
    const long d = spec_.target.rows();
    Mat acc = Mat::Identity(d, d);
    for (size_t k = factors_.size(); k-- > 0;)
      apply_exp_element_left(basis_[factors_[k] - 1], theta[k], acc);
    if (has_phase_param_) acc *= std::polar(1.0, theta.back());
    return acc;
  }

  double value(const std::vector<double>& theta) const {
    Mat a = assemble(theta);
    return spec_.phase_invariant ? phase_invariant_distance(spec_.target, a)
                                 : frobenius_distance(spec_.target, a);
  }

  // Expand a parameter vector into per-basis-index layer angles.
  LayerParams to_layer_params(const std::vector<double>& theta) const {
    if (spec_.mode != OrderingMode::ZPF)
      throw srbb_error("to_layer_params: ZPF ordering only");
    LayerParams p(log2_exact(spec_.target.rows()));
    for (size_t k = 0; k < factors_.size(); ++k) p.at(factors_[k]) = theta[k];
    if (has_phase_param_) p.theta.back() = theta.back();
    return p;
  }

 private:
  ObjectiveSpec spec_;
  std::vector<SrbbElement> basis_;
  std::vector<long> factors_;
  bool has_phase_param_ = false;
};

inline double objective_value(const std::vector<double>& theta, const ObjectiveSpec& spec) {
  return CompiledObjective(spec).value(theta);
}

}  // namespace srbb
