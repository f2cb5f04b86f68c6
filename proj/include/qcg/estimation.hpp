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
#include <optional>

#include "qcg/encodings.hpp"

namespace qcg {

struct ShotModel {
  enum class Mode { exact, sampled };
  Mode mode = Mode::exact;
  std::uint64_t shots = 0;  // 0 in sampled mode: derive from the requested precision
  std::uint64_t seed = 0;

  static ShotModel exact() { return {}; }
  static ShotModel sampled(std::uint64_t shots, std::uint64_t seed) { return {Mode::sampled, shots, seed}; }
};

struct SwapTestResult {
  double p0 = 0.0;
  double p1 = 0.0;
  double re_inner = 0.0;
  std::optional<std::uint64_t> shots;
  std::optional<double> stderr_;
};

/// Unitary whose first column is b / ||b||. ZeroVector for b = 0.
Matrix prepare_b(const Vector& b);
Matrix prepare_b(const LinearSystem& system);

/// Ancilla-zero part of U (|0>_a (x) prep|0>_s): the block applied to prep's first column.
Vector apply_block(const BlockEncoding& be, const Matrix& prep);

/**
 * Swap test between two block encodings sharing the system register. An extra
 * qubit in |+> controls U (on 0) and V (on 1) applied to |0>_a (x) prep|0>_s,
 * followed by a Hadamard; outcomes count only when the ancillas read zero.
 * Exact mode returns the outcome probabilities; sampled mode draws `shots`
 * three-outcome samples from a generator seeded with `seed`.
 */
SwapTestResult swap_test(const BlockEncoding& u, const BlockEncoding& v, const Matrix& prep, const ShotModel& model);

/// ceil(2 ln(2 / (1 - confidence)) / precision^2).
std::uint64_t required_shots(double precision, double confidence);

}  // namespace qcg
