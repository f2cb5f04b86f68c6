// Copyright 2026 The qcg-qet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcg/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "qcg/error.hpp"
#include "qcg/serialize.hpp"

namespace qcg {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const MaxIterExceeded*>(&e) || dynamic_cast<const NotConverged*>(&e)) return kExitNotConverged;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const ParityMismatch*>(&e) || dynamic_cast<const ConditionViolation*>(&e) ||
      dynamic_cast<const ResourceError*>(&e) || dynamic_cast<const NormError*>(&e) ||
      dynamic_cast<const ZeroVector*>(&e) || dynamic_cast<const InsufficientData*>(&e)) {
    return kExitInvalidConfig;
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitInvalidConfig;
  return kExitNumerical;
}

void ExperimentConfig::validate() const {
  if (problem != "poisson") throw DomainError("config: unknown problem '" + problem + "'");
  if (n_qubits < 1 || n_qubits > 6) throw DomainError("config: n_qubits must lie in [1, 6]");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("config: eps must lie in (0, 1)");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("config: alpha must be positive");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("config: confidence must lie in (0, 1)");
  if (output_dir.empty()) throw DomainError("config: output_dir is empty");
}

namespace {

void write_maxabs_csv(const QcgTrace& t, std::ostream& os) {
  os << "k,X_plain,R_plain,P_plain,Pp_plain,R_max,P_max,Pp_max\n" << std::setprecision(17);
  for (const QcgIteration& it : t.iterations) {
    os << it.k << ',' << it.x_plain << ',' << it.r_plain << ',' << it.p_plain << ',' << it.pp_plain << ','
       << it.r_max << ',' << it.p_max << ',' << it.pp_max << '\n';
  }
}

void write_solution_csv(const Vector& estimate, const Vector& exact, std::ostream& os) {
  os << "i,re,im,exact\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < estimate.size(); ++i) {
    os << i << ',' << estimate(i).real() << ',' << estimate(i).imag() << ',' << exact(i).real() << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const LinearSystem sys = poisson_system(cfg.n_qubits, cfg.rhs_case);
  const BlockEncoding be = a_prime_dilation(sys, cfg.alpha);

  QcgConfig qc;
  qc.eps = cfg.eps;
  qc.alpha = cfg.alpha;
  qc.shot_model = cfg.shot_model;
  qc.confidence = cfg.confidence;

  ExperimentResult res;
  res.trace = qcg_solve(sys, be, qc);
  const QcgTrace& t = res.trace;
  res.cost = query_cost(t, t.delta);

  const Vector exact = sys.solve();
  const double norm_b = sys.rhs.norm();
  res.final_error = (exact - t.solution).norm();
  const Vector xm = krylov_vector(sys, cfg.alpha, t.x_coeffs);
  res.iterate_residual = (sys.normalized_rhs() - (sys.matrix / cfg.alpha) * xm).norm();
  res.iterate_error = (exact - (norm_b / cfg.alpha) * xm).norm();

  const bool within_bound = static_cast<int>(t.iterations.size()) <= t.bound;
  if (!t.converged || !within_bound) {
    res.exit_code = kExitNotConverged;
    res.message = "stopped after " + std::to_string(t.iterations.size()) + " iterations, bound " +
                  std::to_string(t.bound);
  } else if (!(res.final_error <= cfg.eps)) {
    res.exit_code = kExitNumerical;
    res.message = "final error exceeds eps";
  }

  std::filesystem::create_directories(cfg.output_dir);
  {
    auto os = open_out(cfg.output_dir / "residuals.csv");
    write_trace_csv(t, os);
  }
  {
    auto os = open_out(cfg.output_dir / "maxabs.csv");
    write_maxabs_csv(t, os);
  }
  {
    auto os = open_out(cfg.output_dir / "solution.csv");
    write_solution_csv(t.solution, exact, os);
  }
  {
    auto os = open_out(cfg.output_dir / "swap_tests.jsonl");
    for (const SwapRecord& s : t.swaps) {
      json j = to_json(s.result);
      j["k"] = s.k;
      j["quantity"] = s.quantity;
      j["precision"] = s.precision;
      os << j.dump() << '\n';
    }
  }
  json summary = summary_json(t);
  summary["config"] = {{"problem", cfg.problem},
                       {"n_qubits", cfg.n_qubits},
                       {"rhs_case", to_string(cfg.rhs_case)},
                       {"eps", cfg.eps},
                       {"alpha", cfg.alpha},
                       {"mode", cfg.shot_model.mode == ShotModel::Mode::exact ? "exact" : "sampled"},
                       {"shots", cfg.shot_model.shots},
                       {"seed", cfg.shot_model.seed}};
  summary["final_error"] = res.final_error;
  summary["iterate_residual"] = res.iterate_residual;
  summary["iterate_error"] = res.iterate_error;
  summary["query_cost"] = to_json(res.cost);
  summary["exit_code"] = res.exit_code;
  write_json_file(cfg.output_dir / "summary.json", summary);
  return res;
}

std::vector<Table2Row> table2(double eps, double alpha, const std::vector<int>& sizes) {
  std::vector<Table2Row> rows;
  for (int n : sizes) {
    int q = 0;
    switch (n) {
      case 4: q = 2; break;
      case 8: q = 3; break;
      case 16: q = 4; break;
      case 32: q = 5; break;
      default: throw DomainError("table2: size " + std::to_string(n) + " not in {4, 8, 16, 32}");
    }
    const LinearSystem sys = poisson_system(q, RhsCase::case1);
    const double norm_b = sys.rhs.norm();
    const double stop = sys.norm_A * eps / (sys.kappa * norm_b);
    const int bound = iteration_bound(sys.kappa, sys.norm_A, norm_b, eps);
    const CgTracked cg = cg_tracked(sys, alpha, 4 * bound, stop);
    if (cg.steps.back().residual > stop) throw NotConverged("table2: CG did not reach the stopping threshold", cg.steps.back().residual);
    Table2Row row;
    row.n = n;
    row.kappa = sys.kappa;
    row.qcg_degree = static_cast<int>(cg.steps.size()) - 1;
    row.qcg_m = row.qcg_degree - 1;
    const DirectDegree d = direct_qsvt_degree(sys.kappa, alpha, eps);
    row.direct = d.total;
    row.rect = d.rect_part;
    row.inverse = d.inverse_part;
    rows.push_back(row);
  }
  return rows;
}

void write_table2_csv(const std::vector<Table2Row>& rows, std::ostream& os) {
  os << "N,kappa,qcg_m,qcg_degree,direct_qsvt_degree,rect_degree,inverse_degree\n" << std::setprecision(17);
  for (const Table2Row& r : rows) {
    os << r.n << ',' << r.kappa << ',' << r.qcg_m << ',' << r.qcg_degree << ',' << r.direct << ',' << r.rect << ','
       << r.inverse << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment outside quotes.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace

ConfigMap parse_toml(std::istream& is) {
  ConfigMap out;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    const std::string where = "toml line " + std::to_string(lineno) + ": ";
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3 || s[1] == '[') throw DomainError(where + "unsupported table header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw DomainError(where + "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) throw DomainError(where + "empty key or value");
    if (value.front() == '[' || value.front() == '{') throw DomainError(where + "arrays and inline tables are not supported");
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') throw DomainError(where + "unterminated string");
      value = value.substr(1, value.size() - 2);
    }
    out[section.empty() ? key : section + "." + key] = value;
  }
  return out;
}

ConfigMap load_toml(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot read config " + path.string());
  return parse_toml(is);
}

}  // namespace qcg
