#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "srbb/srbb.hpp"

namespace {

using namespace srbb;

int env_threads() {
  if (const char* v = std::getenv("SRBB_THREADS")) {
    const int t = std::atoi(v);
    if (t > 0) return t;
  }
  return 0;
}

std::string kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Sigma1: return "sigma1";
    case ElementKind::Sigma2: return "sigma2";
    case ElementKind::DiagonalIZ: return "diagonal-iz";
    case ElementKind::DiagonalRecursive: return "diagonal-recursive";
    case ElementKind::Identity: return "identity";
  }
  return "?";
}

std::string word_string(const IZWord& w) {
  std::string s;
  for (int i = 1; i <= w.m; ++i) s += (w.z_bits & (1u << (i - 1))) ? 'Z' : 'I';
  return s;
}

nlohmann::json element_json(const SrbbElement& e, bool dense) {
  nlohmann::json j;
  j["index"] = e.index;
  j["kind"] = kind_name(e.kind);
  if (!e.is_diagonal()) j["pair"] = {e.p, e.q};
  if (e.iz_word) j["word"] = word_string(*e.iz_word);
  j["diag_signs"] = e.diag_signs;
  j["trace"] = e.trace_int();
  if (dense) {
    Mat m = e.dense();
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (long c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    j["dense"] = std::move(rows);
  }
  return j;
}

int cmd_basis(int n, long d, const std::string& format) {
  std::vector<SrbbElement> basis;
  if (n > 0)
    basis = build_srbb(n);
  else if (d >= 2)
    basis = build_generic_basis(d);
  else
    throw srbb_error("basis: pass --n or --d");
  const bool dense = format == "dense";
  if (format == "json" || dense) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : basis) out.push_back(element_json(e, dense));
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& e : basis) {
      std::cout << e.index << "\t" << kind_name(e.kind);
      if (!e.is_diagonal()) std::cout << "\tpair=(" << e.p << "," << e.q << ")";
      if (e.iz_word) std::cout << "\tword=" << word_string(*e.iz_word);
      std::cout << "\ttrace=" << e.trace_int() << "\n";
    }
  }
  return 0;
}

struct ApproxArgs {
  std::string target_path;
  int n = 0;  // optional expected qubit count
  long layers = 1;
  int restarts = 32;
  uint64_t seed = 0;
  std::string subset = "auto";
  double eps = 5e-12;
  long max_iterations = 20000;
  std::string mode = "auto";
  std::string report_path = "report.json";
  std::string params_path = "params.json";
};

int cmd_approx(const ApproxArgs& args) {
  Mat target = read_cmat_file(args.target_path);
  if (args.n > 0 && target.rows() != (1L << args.n)) {
    std::cerr << "approx: dimension mismatch, file is " << target.rows() << "x" << target.rows()
              << " but --n " << args.n << " expects " << (1L << args.n) << "\n";
    return 2;
  }
  if (!is_unitary(target, 1e-8)) {
    std::cerr << "approx: target is not unitary (tolerance 1e-8)\n";
    return 2;
  }
  OptimizerConfig cfg;
  cfg.restarts = args.restarts;
  cfg.seed = args.seed;
  cfg.max_iterations = args.max_iterations;
  cfg.threads = env_threads();

  const bool power_of_two = is_power_of_two(target.rows());
  const bool zpf = args.mode == "zpf" || (args.mode == "auto" && power_of_two);
  if (zpf && !power_of_two) throw srbb_error("approx: zpf mode needs a 2^n target");

  ApproxReport report;
  if (!zpf) {
    report = approximate_algo1(target, cfg, args.layers, args.eps);
    report.target_id = args.target_path;
  } else {
    const int n = log2_exact(target.rows());
    std::optional<std::vector<long>> subset;
    if (args.subset == "auto")
      subset = select_sparse_subset(target, n);
    else if (args.subset != "all") {
      std::vector<long> list;
      std::stringstream ss(args.subset);
      std::string tok;
      while (std::getline(ss, tok, ',')) list.push_back(std::stol(tok));
      subset = list;
    } else {
      std::vector<long> all;
      for (long j = 1; j <= target.rows() * target.rows(); ++j) all.push_back(j);
      subset = all;  // every element plus the identity phase
    }
    report = approximate_algo2(target, cfg, args.layers, args.eps, subset);
    report.target_id = args.target_path;
    if (target.rows() <= (1L << kSimulatorQubitCap)) {
      ObjectiveSpec spec;
      spec.target = target;
      spec.mode = OrderingMode::ZPF;
      spec.basis_subset = subset;
      CompiledObjective obj(spec);
      for (const auto& theta : report.layer_theta) {
        GateCounts gc = count_gates(layer_circuit(obj.to_layer_params(theta), n));
        report.gate_counts.cnot += gc.cnot;
        report.gate_counts.rz += gc.rz;
        report.gate_counts.ry += gc.ry;
      }
    }
  }

  atomic_write_file(args.params_path, params_to_json(report).dump(2) + "\n");
  atomic_write_file(args.report_path,
                    report_to_json(report, args.target_path, args.params_path).dump(2) + "\n");
  std::cout << "error_frobenius " << detail::fmt17(report.error_frobenius) << "\n";
  std::cout << "error_phase_invariant " << detail::fmt17(report.error_phase_invariant) << "\n";
  std::cout << "layers " << report.layers << "  wall_seconds " << report.wall_seconds << "\n";
  return report.error_frobenius <= args.eps ? 0 : 1;
}

int cmd_circuit(const std::string& params_path, const std::string& qasm_path,
                const std::string& json_path, bool counts) {
  std::ifstream in(params_path);
  if (!in) throw srbb_error("cannot open " + params_path);
  ParamsFile params = params_from_json(nlohmann::json::parse(in));
  if (params.mode != OrderingMode::ZPF)
    throw srbb_error("circuit: only zpf-mode parameter files lower to circuits");
  const int n = log2_exact(params.dim);

  Circuit total(n);
  std::vector<LayerParams> layers = params.layer_params();
  double phase = params.global_phase;  // det normalization plus identity-element phases
  for (const LayerParams& layer : layers) {
    total.add(layer_circuit(layer, n));
    phase += layer.theta.back();
  }

  // Refuse to emit unverified artifacts. The circuit realizes the layer
  // product with layer 1 applied first (the optimizer's accumulation order);
  // identity-element and det phases live in global_phase.
  const auto basis = build_srbb(n);
  Mat want = Mat::Identity(params.dim, params.dim);
  for (const LayerParams& layer : layers) want = assemble_layer(layer, n, basis) * want;
  const double mismatch = (circuit_to_unitary(total) - want).norm();
  if (mismatch > 1e-8) {
    std::cerr << "circuit: emission mismatch " << mismatch << " exceeds 1e-8; refusing\n";
    return 3;
  }

  nlohmann::json dump = circuit_to_json(total);
  dump["layer_params"] = nlohmann::json::array();
  for (const LayerParams& layer : layers) dump["layer_params"].push_back(layer.theta);
  dump["global_phase"] = phase;
  if (!qasm_path.empty()) atomic_write_file(qasm_path, export_qasm(total));
  if (!json_path.empty()) atomic_write_file(json_path, dump.dump(2) + "\n");
  GateCounts gc = count_gates(total);
  if (counts)
    std::cout << "cnot " << gc.cnot << "\nrz " << gc.rz << "\nry " << gc.ry << "\ntotal "
              << gc.total() << "\n";
  std::cout << "verified emission, |circuit - matrix|_F = " << mismatch << "\n";
  return 0;
}

int cmd_lift(const std::string& circuit_path, int to, const std::string& mode,
             const std::string& out_path) {
  std::ifstream in(circuit_path);
  if (!in) throw srbb_error("cannot open " + circuit_path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (!j.contains("layer_params"))
    throw srbb_error("lift: circuit dump carries no layer_params (emit with `circuit --json`)");
  Circuit base = circuit_from_json(j);
  if (to != base.n + 1) throw srbb_error("lift: --to must be n+1 = " + std::to_string(base.n + 1));

  const LiftMode lift_mode = mode == "re-solve" ? LiftMode::ReSolve : LiftMode::ZeroPad;
  OptimizerConfig cfg;
  cfg.threads = env_threads();
  Circuit total(to);
  nlohmann::json lifted_params = nlohmann::json::array();
  for (const auto& theta : j.at("layer_params")) {
    LayerParams p(base.n);
    std::vector<double> v = theta.get<std::vector<double>>();
    if (v.size() != p.theta.size()) throw srbb_error("lift: malformed layer_params");
    p.theta = v;
    LiftedLayer lifted = lift_layer(p, lift_mode, cfg);
    total.add(lifted.circuit);
    lifted_params.push_back(lifted.params.theta);
  }
  nlohmann::json dump = circuit_to_json(total);
  dump["layer_params"] = lifted_params;
  dump["global_phase"] = j.value("global_phase", 0.0);
  atomic_write_file(out_path, dump.dump(2) + "\n");
  GateCounts before = count_gates(base), after = count_gates(total);
  std::cout << "lifted " << base.n << " -> " << to << " qubits; cnot " << before.cnot << " -> "
            << after.cnot << "\n";
  return 0;
}

int cmd_verify(const std::string& circuit_path, const std::string& matrix_path) {
  std::ifstream in(circuit_path);
  if (!in) throw srbb_error("cannot open " + circuit_path);
  nlohmann::json j = nlohmann::json::parse(in);
  Circuit c = circuit_from_json(j);
  Mat target = read_cmat_file(matrix_path);
  Mat sim = circuit_to_unitary(c);
  if (sim.rows() != target.rows()) throw srbb_error("verify: dimension mismatch");
  const double phase = j.value("global_phase", 0.0);
  nlohmann::json out;
  out["frobenius"] = (std::polar(1.0, phase) * sim - target).norm();
  out["phase_invariant"] = phase_invariant_distance(target, sim);
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive-block-basis unitary synthesis and circuit emission"};
  app.require_subcommand(1);

  int basis_n = 0;
  long basis_d = 0;
  std::string basis_format = "text";
  auto* basis = app.add_subcommand("basis", "list basis elements");
  basis->add_option("--n", basis_n, "qubit count (SRBB)");
  basis->add_option("--d", basis_d, "dimension (generic basis)");
  basis->add_option("--format", basis_format, "text|json|dense");

  ApproxArgs aargs;
  auto* approx = app.add_subcommand("approx", "approximate a unitary from a CMAT file");
  approx->add_option("target", aargs.target_path, "CMAT v1 file")->required();
  approx->add_option("--n", aargs.n, "expected qubit count (validates the file dimension)");
  approx->add_option("--layers", aargs.layers);
  approx->add_option("--restarts", aargs.restarts);
  approx->add_option("--seed", aargs.seed);
  approx->add_option("--subset", aargs.subset, "auto|all|comma list of basis indices");
  approx->add_option("--eps", aargs.eps);
  approx->add_option("--max-iter", aargs.max_iterations);
  approx->add_option("--mode", aargs.mode, "auto|generic|zpf");
  approx->add_option("--out", aargs.report_path);
  approx->add_option("--params", aargs.params_path);

  std::string circ_params = "params.json", circ_qasm, circ_json;
  bool circ_counts = false;
  auto* circuit = app.add_subcommand("circuit", "lower solved parameters to gates");
  circuit->add_option("params", circ_params, "params JSON from approx")->required();
  circuit->add_option("--qasm", circ_qasm, "write OpenQASM 2.0");
  circuit->add_option("--json", circ_json, "write circuit JSON");
  circuit->add_flag("--counts", circ_counts, "print gate counts");

  std::string lift_in, lift_mode = "zero-pad", lift_out = "lifted.json";
  int lift_to = 0;
  auto* lift = app.add_subcommand("lift", "lift an n-qubit circuit to n+1 qubits");
  lift->add_option("circuit", lift_in, "circuit JSON with layer_params")->required();
  lift->add_option("--to", lift_to, "target qubit count (must be n+1)")->required();
  lift->add_option("--mode", lift_mode, "zero-pad|re-solve");
  lift->add_option("--out", lift_out);

  std::string verify_circuit, verify_matrix;
  auto* verify = app.add_subcommand("verify", "distance between a circuit and a CMAT matrix");
  verify->add_option("circuit", verify_circuit)->required();
  verify->add_option("matrix", verify_matrix)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (basis->parsed()) return cmd_basis(basis_n, basis_d, basis_format);
    if (approx->parsed()) return cmd_approx(aargs);
    if (circuit->parsed()) return cmd_circuit(circ_params, circ_qasm, circ_json, circ_counts);
    if (lift->parsed()) return cmd_lift(lift_in, lift_to, lift_mode, lift_out);
    if (verify->parsed()) return cmd_verify(verify_circuit, verify_matrix);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
