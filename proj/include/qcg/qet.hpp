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
 * Quantum eigenvalue transformation on dense block encodings.
 *
 * A parity-definite polynomial is realized as (U_Phi + U_{-Phi}) / 2 through
 * one Hadamard-controlled ancilla, which keeps only the real part of the
 * phase-sequence block. A general polynomial adds a second ancilla and averages
 * the even and odd branches, giving P / (2C).
 */

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qcg/encodings.hpp"
#include "qcg/qsp.hpp"

namespace qcg {

enum class QetMode { definite_parity, general, positive_side };
std::string to_string(QetMode m);

struct Shift {
  enum class Kind { none, positive_side, window };
  Kind kind = Kind::none;
  double delta1 = -1.0;
  double delta2 = 1.0;

  static Shift none() { return {}; }
  static Shift positive_side() { return {Kind::positive_side, 0.0, 1.0}; }
  static Shift window(double d1, double d2) { return {Kind::window, d1, d2}; }
};

struct QetAssembly {
  std::optional<PhaseFactors> phases_even;
  std::optional<PhaseFactors> phases_odd;
  double normalization = 1.0;
  QetMode mode = QetMode::definite_parity;
  Shift shift;
  double solve_residual = 0.0;
};

/// Normalized parity parts of the reparameterized polynomial.
struct ParitySplit {
  Polynomial shifted;
  Polynomial even;  // shifted.even_part() / C
  Polynomial odd;   // shifted.odd_part() / C
  double c_even = 0.0;
  double c_odd = 0.0;
  double c_max = 0.0;
};

/// Applies the shift, splits by parity and normalizes by C = max of the two part maxima on [-1, 1].
/// NormalizationError when both parts vanish.
ParitySplit split_for_qet(const Polynomial& p, const Shift& shift);

/// Phases whose real-part polynomial is identically zero, with the given parity.
PhaseFactors zero_phases(Parity parity);

/// (1, n_a + 1, 0) encoding of P(block) for the solved phases (any convention).
BlockEncoding qet_definite(const BlockEncoding& base, const PhaseFactors& phi);

/// Solves the phases of a parity-definite P first; ParityMismatch otherwise.
BlockEncoding qet_definite(const BlockEncoding& base, const Polynomial& p, const SolveOptions& opts = {});

/// (2C, n_a + 2, tol) encoding of the shifted P applied to the base block.
std::pair<BlockEncoding, QetAssembly> qet_general(const BlockEncoding& base, const Polynomial& p,
                                                  const Shift& shift, const SolveOptions& opts = {});

/// Same assembly from a precomputed split (avoids repeating the max-abs work).
std::pair<BlockEncoding, QetAssembly> qet_general(const BlockEncoding& base, const ParitySplit& split,
                                                  const Shift& shift, const SolveOptions& opts = {});

/// sum_j P(lambda_j / alpha) |v_j><v_j| by direct spectral synthesis.
Matrix qet_oracle(const LinearSystem& system, const Polynomial& p, double alpha);
Matrix qet_oracle(const Matrix& hermitian, const Polynomial& p, double alpha);

}  // namespace qcg
