// Emit the one-layer CNOT-count series over qubit counts, plus the increment
// added by each n -> n+1 step, as a plottable table.
#include <cstdio>
#include <random>

#include "srbb/srbb.hpp"

using namespace srbb;

int main(int argc, char** argv) {
  const int n_max = argc > 1 ? std::atoi(argv[1]) : 6;
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-kPi, kPi);

  std::printf("# n  cnot  delta  bound_halfpow  bound_fullpow\n");
  long prev = 0;
  for (int n = 1; n <= n_max; ++n) {
    LayerParams p(n);
    for (double& t : p.theta) t = u(g);
    const long cnot = count_gates(layer_circuit(p, n)).cnot;
    const long bound_half = 2 * (1L << (2 * n)) + (n - 5) * (1L << (n - 1));
    const long bound_full = 2 * (1L << (2 * n)) + (n - 5) * (1L << n);
    std::printf("%3d %6ld %6ld %14ld %14ld\n", n, cnot, n == 1 ? 0 : cnot - prev, bound_half,
                bound_full);
    prev = cnot;
  }
  return 0;
}
