#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "srbb/approximate.hpp"
#include "srbb/qasm.hpp"

namespace srbb {

// CMAT v1: line one holds the integer dimension d, then d rows of d
// whitespace-separated complex entries written as re,im. '#' starts a comment.
inline std::string write_cmat(const Mat& m) {
  std::ostringstream out;
  out << m.rows() << "\n";
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c) out << " ";
      out << detail::fmt17(m(r, c).real()) << "," << detail::fmt17(m(r, c).imag());
    }
    out << "\n";
  }
  return out.str();
}

inline Mat read_cmat(std::istream& in) {
  std::string line;
  long d = -1;
  Mat m;
  long row = 0;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    if (d < 0) {
      if (ls >> d) {
        if (d < 1) throw srbb_error("CMAT: dimension must be positive");
        m = Mat::Zero(d, d);
      }
      continue;
    }
    std::string tok;
    long col = 0;
    bool any = false;
    while (ls >> tok) {
      any = true;
      const size_t comma = tok.find(',');
      if (comma == std::string::npos) throw srbb_error("CMAT: entry missing comma: " + tok);
      if (row >= d || col >= d) throw srbb_error("CMAT: too many entries");
      m(row, col) = cplx(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
      ++col;
    }
    if (!any) continue;
    if (col != d) throw srbb_error("CMAT: row with wrong entry count");
    ++row;
  }
  if (d < 0 || row != d) throw srbb_error("CMAT: truncated matrix");
  return m;
}

inline Mat read_cmat_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw srbb_error("cannot open " + path);
  return read_cmat(in);
}

// Write-temp-then-rename so partially written artifacts never appear.
inline void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw srbb_error("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

inline nlohmann::json params_to_json(const ApproxReport& r) {
  nlohmann::json j;
  j["dim"] = r.dim;
  j["mode"] = r.mode == OrderingMode::ZPF ? "zpf" : "generic";
  j["subset"] = r.subset;
  j["global_phase"] = r.global_phase;
  j["seed"] = r.seed;
  j["layers"] = r.layer_theta;
  return j;
}

struct ParamsFile {
  long dim = 0;
  OrderingMode mode = OrderingMode::ZPF;
  std::vector<long> subset;
  double global_phase = 0.0;
  uint64_t seed = 0;
  std::vector<std::vector<double>> layers;

  // Per-layer angle vectors keyed by basis index.
  std::vector<LayerParams> layer_params() const {
    if (mode != OrderingMode::ZPF) throw srbb_error("params: generic mode has no layer circuit");
    ObjectiveSpec spec;
    spec.target = Mat::Identity(dim, dim);
    spec.mode = mode;
    if (!subset.empty()) spec.basis_subset = subset;
    CompiledObjective obj(spec);
    std::vector<LayerParams> out;
    for (const auto& theta : layers) out.push_back(obj.to_layer_params(theta));
    return out;
  }

  Mat assemble() const {
    ObjectiveSpec spec;
    spec.target = Mat::Identity(dim, dim);
    spec.mode = mode;
    if (!subset.empty()) spec.basis_subset = subset;
    CompiledObjective obj(spec);
    Mat acc = Mat::Identity(dim, dim);
    for (const auto& theta : layers) acc = obj.assemble(theta) * acc;
    return acc * std::polar(1.0, global_phase);
  }
};

inline ParamsFile params_from_json(const nlohmann::json& j) {
  ParamsFile p;
  p.dim = j.at("dim").get<long>();
  p.mode = j.at("mode").get<std::string>() == "zpf" ? OrderingMode::ZPF : OrderingMode::Generic;
  p.subset = j.at("subset").get<std::vector<long>>();
  p.global_phase = j.at("global_phase").get<double>();
  p.seed = j.at("seed").get<uint64_t>();
  p.layers = j.at("layers").get<std::vector<std::vector<double>>>();
  return p;
}

inline nlohmann::json report_to_json(const ApproxReport& r, const std::string& target_id,
                                     const std::string& params_path) {
  nlohmann::json j;
  j["target"] = target_id;
  j["n_or_d"] = r.dim;
  j["mode"] = r.mode == OrderingMode::ZPF ? "zpf" : "generic";
  j["layers"] = r.layers;
  j["layer_errors"] = r.layer_errors;
  j["restarts"] = r.restarts;
  j["seed"] = r.seed;
  j["error_frobenius"] = r.error_frobenius;
  j["error_phase_invariant"] = r.error_phase_invariant;
  j["global_phase"] = r.global_phase;
  j["nm_iterations"] = r.nm_iterations;
  j["wall_seconds"] = r.wall_seconds;
  j["gate_counts"] = {{"cnot", r.gate_counts.cnot},
                      {"rz", r.gate_counts.rz},
                      {"ry", r.gate_counts.ry}};
  j["params_path"] = params_path;
  return j;
}

}  // namespace srbb
