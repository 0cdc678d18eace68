// Approximate a CNOT with the sparse element subset, lower the solved
// parameters to the 14-CNOT two-qubit layer, and print the OpenQASM.
#include <iostream>

#include "srbb/srbb.hpp"

using namespace srbb;

int main() {
  Mat cnot = Mat::Identity(4, 4);
  cnot.row(2).swap(cnot.row(3));

  OptimizerConfig cfg;
  cfg.restarts = 16;
  cfg.seed = 1;
  cfg.max_iterations = 20000;

  std::vector<long> subset = select_sparse_subset(cnot, 2);
  ApproxReport report = approximate_algo2(cnot, cfg, 1, 5e-12, subset);
  std::cout << "subset:";
  for (long j : subset) std::cout << " " << j;
  std::cout << "\nfrobenius error " << report.error_frobenius << " after " << report.layers
            << " layer(s), " << report.wall_seconds << "s\n\n";

  ObjectiveSpec spec;
  spec.target = cnot;
  spec.mode = OrderingMode::ZPF;
  spec.basis_subset = subset;
  CompiledObjective obj(spec);
  Circuit circuit = two_qubit_circuit(obj.to_layer_params(report.layer_theta.front()));
  GateCounts gc = count_gates(circuit);
  std::cout << "circuit: " << gc.cnot << " CNOT, " << gc.one_qubit() << " rotations\n";
  std::cout << export_qasm(circuit);

  Mat sim = circuit_to_unitary(circuit);
  std::cout << "\n|circuit - CNOT| up to phase: " << phase_invariant_distance(cnot, sim) << "\n";
  return 0;
}
