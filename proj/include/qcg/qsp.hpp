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

/**
 * @file
 * Scalar quantum signal processing.
 *
 * Two conventions share the phase product e^{i phi_0 Z} S e^{i phi_1 Z} ... S e^{i phi_d Z}:
 *  - reflection: S = R(x) = [[x, s], [s, -x]], the 2x2 invariant-subspace action of
 *    an exactly dilated block encoding with the reflection 2|0><0|_a - I;
 *  - wx: S = W(x) = [[x, i s], [i s, x]].
 * with s = sqrt(1 - x^2). In both, Re <0|U|0> is the target polynomial.
 */

#pragma once

#include <complex>
#include <vector>

#include "qcg/linalg.hpp"
#include "qcg/polynomial.hpp"

namespace qcg {

enum class Convention { reflection, wx };

std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

struct PhaseFactors {
  std::vector<double> angles;
  Convention convention = Convention::reflection;

  int degree() const { return static_cast<int>(angles.size()) - 1; }
  Parity target_parity() const { return degree() % 2 == 0 ? Parity::even : Parity::odd; }
};

struct QspResidual {
  double max_abs_error = 0.0;
  int grid_size = 0;
};

/// Default degree cap for phase solving; verification is uncapped.
inline constexpr int kDefaultSolveCap = 512;

/// Full 2x2 product at signal value x.
Eigen::Matrix2cd qsp_unitary(const PhaseFactors& phi, double x);

/// <0| U(x) |0>. DomainError if |x| > 1.
std::complex<double> qsp_eval(const PhaseFactors& phi, double x);

/// Same (0,0) entry under the other convention; angles map exactly.
PhaseFactors to_convention(const PhaseFactors& phi, Convention target);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 200;
  int degree_cap = kDefaultSolveCap;
  Convention convention = Convention::reflection;
};

/**
 * Phase factors with Re <0|U(x)|0> = P(x). P needs definite parity and
 * |P| <= 1 on [-1, 1]. Newton iteration on symmetric phases at the positive
 * Chebyshev nodes, deterministic for identical input.
 *
 * Throws ParityMismatch, ConditionViolation, ResourceError (degree above cap)
 * or NotConverged (with the best residual reached).
 */
std::pair<PhaseFactors, QspResidual> solve_phases(const Polynomial& p, const SolveOptions& opts = {});

/// Max |Re qsp_eval - P| over `grid` Chebyshev nodes of [-1, 1].
QspResidual verify_phases(const PhaseFactors& phi, const Polynomial& p, int grid);

}  // namespace qcg
