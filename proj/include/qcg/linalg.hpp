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

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qcg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest singular value. Full SVD up to dimension 256, power iteration on
/// M^H M above that (converged to 1e-13 relative).
double spectral_norm(const Matrix& m);

/// Power-iteration route of spectral_norm, exposed for testing.
double spectral_norm_power(const Matrix& m, double tol = 1e-13, int max_iter = 100000);

/// max |(U^H U - I)_{ij}| style deviation measured in spectral norm.
double unitarity_error(const Matrix& u);

bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// f(H) = V f(Lambda) V^H for Hermitian H.
Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f);

/// Single-qubit Hadamard tensored with identity of size `rest`, new qubit most significant.
Matrix hadamard_on_top(Eigen::Index rest);

/// |0><0| (x) a + |1><1| (x) b, new control qubit most significant.
Matrix select2(const Matrix& on_zero, const Matrix& on_one);

/// Natural-number power of two with overflow-free int result.
constexpr Eigen::Index pow2(int n) { return Eigen::Index{1} << n; }

}  // namespace qcg
