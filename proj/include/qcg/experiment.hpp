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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qcg/solvers.hpp"

namespace qcg {

/// Process exit codes shared by the CLI.
enum ExitCode : int { kExitOk = 0, kExitNotConverged = 2, kExitInvalidConfig = 3, kExitNumerical = 4 };

/// Maps an exception thrown by the library to an exit code.
int exit_code_for(const std::exception& e);

struct ExperimentConfig {
  std::string problem = "poisson";
  int n_qubits = 4;
  RhsCase rhs_case = RhsCase::case1;
  double eps = 0.1;
  double alpha = 4.0;
  ShotModel shot_model;
  double confidence = 0.95;
  std::filesystem::path output_dir = "out";

  /// InvalidConfig-style DomainError when a field is out of range.
  void validate() const;
};

struct ExperimentResult {
  int exit_code = kExitOk;
  QcgTrace trace;
  QueryCost cost;
  double final_error = 0.0;      // ||x - solution||
  double iterate_residual = 0.0; // ||b/||b|| - (A/alpha) x_m|| of the returned iterate
  double iterate_error = 0.0;    // ||x - (||b||/alpha) x_m||
  std::string message;
};

/**
 * Runs QCG on the configured system and writes residuals.csv, maxabs.csv,
 * summary.json, solution.csv and swap_tests.jsonl into output_dir.
 * exit_code is 0 iff the run converged within iteration_bound and the final
 * error is at most eps. Library exceptions propagate.
 */
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct Table2Row {
  int n = 0;
  double kappa = 0.0;
  int qcg_m = 0;
  int qcg_degree = 0;  // m + 1
  long long direct = 0;
  long long rect = 0;
  long long inverse = 0;
};

/// DomainError unless every size is one of 4, 8, 16, 32.
std::vector<Table2Row> table2(double eps, double alpha, const std::vector<int>& sizes);
void write_table2_csv(const std::vector<Table2Row>& rows, std::ostream& os);

/// Flat view of a TOML file: keys are "section.key". Supports tables,
/// strings, numbers, booleans and comments; arrays and inline tables are rejected.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_toml(std::istream& is);
ConfigMap load_toml(const std::filesystem::path& path);

}  // namespace qcg
