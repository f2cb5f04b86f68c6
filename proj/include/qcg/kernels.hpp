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
 * Data-parallel inner loops shared by the polynomial, phase-factor and QET
 * modules. Every kernel in `qcg::kernels` is OpenMP-parallel; the matching
 * function in `qcg::kernels::serial` is the single-threaded reference that
 * tests and benchmarks compare against.
 */

#pragma once

#include <span>

#include "qcg/linalg.hpp"

namespace qcg::kernels {

/// out[i] = sum_j c[j] T_j(xs[i]) by Clenshaw recurrence.
void chebyshev_eval(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> out);

/// out[i] = sum_j c[j] xs[i]^j by Horner.
void monomial_eval(std::span<const double> coeffs, std::span<const double> xs,
                   std::span<double> out);

/**
 * Discrete Chebyshev transform. `values[j]` holds f(cos((j + 1/2) pi / M)) on the
 * M first-kind nodes; writes the first out.size() series coefficients so that
 * f ~ sum_m out[m] T_m. Parallel over output coefficients.
 */
void chebyshev_transform(std::span<const double> values, std::span<double> out);

/**
 * Alternating phase-modulated sequence on a block encoding.
 *
 * Builds e^{i phi_0 Pi} S_1 e^{i phi_1 Pi} ... S_d e^{i phi_d Pi} where the
 * rightmost signal operator S_d is `u` and the signal operators alternate
 * between `u` and `u^H` going left. Pi = 2|0><0|_a - I acts as +1 on the first
 * `block_dim` basis states and -1 elsewhere. Columns are processed in
 * parallel.
 */
Matrix phase_sequence(const Matrix& u, std::span<const double> phases, Eigen::Index block_dim);

/**
 * Value and phase gradient of Re <0|U(x, Phi)|0> for the W_x signal model
 * U = e^{i phi_0 Z} W(x) e^{i phi_1 Z} ... W(x) e^{i phi_d Z}.
 *
 * `values` gets one entry per node; `jac` is nodes x (d + 1). Parallel over
 * nodes.
 */
void qsp_wx_jacobian(std::span<const double> phases, std::span<const double> nodes,
                     RealVector& values, RealMatrix& jac);

namespace serial {

void chebyshev_eval(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> out);

void monomial_eval(std::span<const double> coeffs, std::span<const double> xs,
                   std::span<double> out);

void chebyshev_transform(std::span<const double> values, std::span<double> out);

/// Reference route: explicit chain of dense matrix products.
Matrix phase_sequence(const Matrix& u, std::span<const double> phases, Eigen::Index block_dim);

void qsp_wx_jacobian(std::span<const double> phases, std::span<const double> nodes,
                     RealVector& values, RealMatrix& jac);

}  // namespace serial

}  // namespace qcg::kernels
