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

#include <optional>
#include <utility>

#include "qcg/approx.hpp"
#include "qcg/linalg.hpp"
#include "qcg/polynomial.hpp"

namespace qcg {

/**
 * Unitary U on n_a ancilla qubits (most significant) and n_s system qubits
 * whose top-left 2^n_s block approximates A / alpha within eps / alpha.
 */
struct BlockEncoding {
  Matrix unitary;
  double alpha = 1.0;
  int n_a = 0;
  int n_s = 0;
  double eps = 0.0;

  Eigen::Index system_dim() const { return pow2(n_s); }
  /// Top-left block, without the alpha factor.
  Matrix block() const { return unitary.topLeftCorner(system_dim(), system_dim()); }
};

/// Hermitian system A x = b with cached spectrum.
struct LinearSystem {
  Matrix matrix;
  Vector rhs;
  double norm_A = 0.0;
  double kappa = 0.0;
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;

  static LinearSystem make(Matrix a, Vector b);
  int n_qubits() const;
  Vector normalized_rhs() const { return rhs / rhs.norm(); }
  /// Dense solution A^{-1} b.
  Vector solve() const;
};

struct AmplificationConfig {
  double gamma = 3.0;
  std::optional<double> gap;
  double eps = 0.1;
};

/// ||target - alpha * block||. DimensionMismatch on size disagreement.
double verify_block_encoding(const BlockEncoding& be, const Matrix& target);

/// [[a, sqrt(I - a^2)], [sqrt(I - a^2), -a]]; a (1, 1, 0) encoding of Hermitian a.
BlockEncoding exact_dilation(const Matrix& a);

enum class RhsCase { case1, case2 };
RhsCase parse_rhs_case(const std::string& s);
std::string to_string(RhsCase c);

/// Tridiagonal (-1, 2, -1) Dirichlet Poisson matrix of size 2^n_qubits.
LinearSystem poisson_system(int n_qubits, RhsCase rhs_case);

enum class ShiftDirection { plus, minus };

/// |j> -> |j +- 1 mod 2^n>.
Matrix cyclic_shift(int n_qubits, ShiftDirection dir);

/// A' = 2A/alpha - I for the encoded A, i.e. 2 * block - I.
Matrix a_prime_target(const BlockEncoding& be_a);

/// Exact one-ancilla encoding of A' = 2A/alpha - I for a Hermitian system.
BlockEncoding a_prime_dilation(const LinearSystem& sys, double alpha);

/// (3, n_a + 1, 0) encoding of A' built as an LCU of U_A and -I.
BlockEncoding lcu_a_prime(const BlockEncoding& be_a);

/// Odd polynomial approximating gamma x where |x| <= (1 - 2 gap/alpha) / gamma.
std::pair<Polynomial, DegreeReport> lamp_poly_with_gap(const AmplificationConfig& cfg, double alpha,
                                                       long long cap = kDefaultDegreeCap);

/// Odd polynomial approximating gamma x where |x| <= 1 / gamma, no gap needed.
std::pair<Polynomial, DegreeReport> lamp_poly_no_gap(double gamma, double eps,
                                                     long long cap = kDefaultDegreeCap);

struct AmplifyOptions {
  long long materialize_cap = kDefaultDegreeCap;
  int solve_cap = 512;
};

/// (1, n_a + 2, eps) encoding of A' from the LCU encoding and linear amplification (gamma = 3).
BlockEncoding amplified_a_prime(const BlockEncoding& be_a, const AmplificationConfig& cfg,
                                const AmplifyOptions& opts = {});

}  // namespace qcg
