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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcg/encodings.hpp"
#include "qcg/estimation.hpp"
#include "qcg/qsp.hpp"

namespace qcg {

struct CgResult {
  Vector x;
  std::vector<double> residuals;  // ||r_k||, k = 0..iterations
  std::vector<double> alphas;
  std::vector<double> betas;
  int iterations = 0;
  bool converged = false;
};

/// Plain CG from x_0 = 0, stopping once ||r_{k+1}|| <= eps ||b||.
CgResult cg_classical(const Matrix& a, const Vector& b, double eps, int max_iter = 0);
CgResult cg_classical(const LinearSystem& system, double eps);

/// Monomial coefficients of x_k, r_k, p_k as polynomials in A/alpha acting on b/||b||.
struct CgCoefficients {
  int k = 0;
  std::vector<double> x;  // length k
  std::vector<double> r;  // length k + 1
  std::vector<double> p;  // length k + 1; empty on the stopping iterate
  double residual = 0.0;  // ||r_k||
};

struct CgTracked {
  std::vector<CgCoefficients> steps;  // steps[k] holds iterate k
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> rr;   // <r_k|r_k>
  std::vector<double> ppA;  // <p_k|(A/alpha)|p_k>
};

/**
 * CG on (A/alpha, b/||b||) carried out on polynomial coefficients with exact
 * inner products. Stops after max_iter iterations or once ||r_k|| <= stop.
 */
CgTracked cg_tracked(const LinearSystem& system, double alpha, int max_iter, double stop = 0.0);

/// sum_l c_l (A/alpha)^l b/||b||.
Vector krylov_vector(const LinearSystem& system, double alpha, const std::vector<double>& coeffs);

/// ceil(sqrt(kappa) ln(2 kappa ||b|| / (||A|| eps)) / 2), at least 1.
int iteration_bound(double kappa, double norm_a, double norm_b, double eps);

struct DirectDegree {
  long long total = 0;
  long long inverse_part = 0;
  long long rect_part = 0;
  double eps_prime = 0.0;
};

/// Degree of the direct QSVT inversion polynomial (1/x approximation times rectangle).
DirectDegree direct_qsvt_degree(double kappa, double alpha, double eps);

struct QcgConfig {
  double eps = 0.1;
  double delta = 0.0;  // 0: half of the admissible bound
  double alpha = 4.0;
  ShotModel shot_model;
  int max_iter = 0;  // 0: four times iteration_bound
  bool enforce_delta_bound = true;
  double confidence = 0.95;
  SolveOptions solve;
};

struct QcgIteration {
  int k = 0;
  double alpha_k = 0.0;
  double beta_k = 0.0;  // NaN on the stopping iteration
  double rr_est = 0.0;  // <r_{k+1}|r_{k+1}>
  double ppA_est = 0.0; // <p_k|p'_k>
  double residual = 0.0;
  double r_max = 0.0;   // QET normalizer of r_{k+1}
  double p_max = 0.0;   // QET normalizer of p_{k+1}; NaN on the stopping iteration
  double pp_max = 0.0;  // QET normalizer of x p_{k+1}; NaN on the stopping iteration
  // Plain maxima of the polynomials over [0, 1].
  double x_plain = 0.0;
  double r_plain = 0.0;
  double p_plain = 0.0;
  double pp_plain = 0.0;
  std::uint64_t shots = 0;
};

struct SwapRecord {
  int k = 0;
  std::string quantity;
  SwapTestResult result;
  double precision = 0.0;
};

struct QcgTrace {
  std::vector<QcgIteration> iterations;
  std::vector<SwapRecord> swaps;
  double pp0_est = 0.0;
  double p_max0 = 1.0;
  double pp_max0 = 1.0;
  int m = 0;
  bool converged = false;
  double x_max = 0.0;
  Vector solution_state;   // normalized
  Vector solution;         // estimate of A^{-1} b
  double success_probability = 0.0;
  double delta = 0.0;
  double stop_threshold = 0.0;
  double kappa = 0.0;
  int bound = 0;
  std::vector<double> x_coeffs;
};

/**
 * Hybrid CG: polynomial coefficients updated classically, inner products
 * estimated by swap tests on positive-side QET encodings built from
 * `be_a_prime`. MaxIterExceeded, PrecisionFailure or NotConverged on failure.
 */
QcgTrace qcg_solve(const LinearSystem& system, const BlockEncoding& be_a_prime, const QcgConfig& cfg);

struct QueryCost {
  std::vector<double> per_iteration;
  double iterations_total = 0.0;
  double final_state = 0.0;
  double total = 0.0;
  int max_depth = 0;
};

QueryCost query_cost(const QcgTrace& trace, double delta);

enum class Regressor { iteration_k, kappa };

struct ScalingFit {
  std::string quantity;
  double exponent = 0.0;
  double r_squared = 0.0;
  Regressor regressor = Regressor::iteration_k;
  int points = 0;
};

/// Least-squares slope of log y against log x. InsufficientData below four points.
ScalingFit fit_power_law(const std::string& quantity, const std::vector<double>& x, const std::vector<double>& y,
                         Regressor regressor);

/**
 * Exponents of X, R, P, P' (plain maxima on [0, 1]). iteration_k pools
 * (k, value) over all traces with k in [k_min, k_max]; kappa uses each
 * trace's last recorded values against its condition number.
 */
std::vector<ScalingFit> fit_scalings(const std::vector<QcgTrace>& traces, Regressor regressor, int k_min = 2,
                                     int k_max = 8);

/// Trace CSV (k, alpha_k, beta_k, rr_est, ppA_est, residual, R_max, P_max, Pp_max).
void write_trace_csv(const QcgTrace& trace, std::ostream& os);

}  // namespace qcg
