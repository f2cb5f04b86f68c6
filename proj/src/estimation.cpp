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

#include "qcg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcg/error.hpp"

namespace qcg {

Matrix prepare_b(const Vector& b) {
  const double nrm = b.norm();
  if (nrm == 0.0) throw ZeroVector("prepare_b: right-hand side is zero");
  const Eigen::Index n = b.size();
  const Vector bhat = b / nrm;
  const double theta = std::arg(bhat(0));
  const cplx phase = std::polar(1.0, theta);
  // Householder reflection taking e^{i theta} e_0 to bhat, then the phase on e_0.
  Vector w = -bhat;
  w(0) += phase;
  Matrix u = Matrix::Identity(n, n);
  const double wn2 = w.squaredNorm();
  if (wn2 > 1e-30) u -= (2.0 / wn2) * (w * w.adjoint());
  u.col(0) *= phase;
  return u;
}

Matrix prepare_b(const LinearSystem& system) { return prepare_b(system.rhs); }

Vector apply_block(const BlockEncoding& be, const Matrix& prep) {
  if (prep.rows() != be.system_dim() || prep.cols() != be.system_dim()) {
    throw DimensionMismatch("apply_block: preparation unitary size disagrees with system register");
  }
  return be.block() * prep.col(0);
}

SwapTestResult swap_test(const BlockEncoding& u, const BlockEncoding& v, const Matrix& prep, const ShotModel& model) {
  if (u.n_a != v.n_a || u.n_s != v.n_s || u.unitary.rows() != v.unitary.rows()) {
    throw DimensionMismatch("swap_test: encodings act on different registers");
  }
  const Eigen::Index ds = u.system_dim();
  if (prep.rows() != ds || prep.cols() != ds) throw DimensionMismatch("swap_test: preparation size mismatch");
  const Eigen::Index dim = u.unitary.rows();

  // |0>_a (x) prep|0>_s, then the controlled pair on the two halves of the extra qubit.
  Vector in = Vector::Zero(dim);
  in.head(ds) = prep.col(0);
  const double h = 1.0 / std::sqrt(2.0);
  const Vector zero_branch = u.unitary * (h * in);
  const Vector one_branch = v.unitary * (h * in);
  const Vector out0 = h * (zero_branch + one_branch);
  const Vector out1 = h * (zero_branch - one_branch);

  SwapTestResult r;
  r.p0 = out0.head(ds).squaredNorm();
  r.p1 = out1.head(ds).squaredNorm();
  if (model.mode == ShotModel::Mode::exact) {
    r.re_inner = r.p0 - r.p1;
    return r;
  }
  if (model.shots == 0) throw DomainError("swap_test: sampled mode needs at least one shot");
  std::mt19937_64 gen(model.seed);
  const double q0 = std::clamp(r.p0, 0.0, 1.0);
  const double q1 = std::clamp(r.p1 / std::max(1e-300, 1.0 - q0), 0.0, 1.0);
  std::binomial_distribution<std::uint64_t> first(model.shots, q0);
  const std::uint64_t n0 = first(gen);
  std::uint64_t n1 = 0;
  if (n0 < model.shots && q0 < 1.0) {
    std::binomial_distribution<std::uint64_t> second(model.shots - n0, q1);
    n1 = second(gen);
  }
  const double shots = static_cast<double>(model.shots);
  r.p0 = static_cast<double>(n0) / shots;
  r.p1 = static_cast<double>(n1) / shots;
  r.re_inner = r.p0 - r.p1;
  r.shots = model.shots;
  const double var = std::max(0.0, r.p0 + r.p1 - r.re_inner * r.re_inner);
  r.stderr_ = std::sqrt(var / shots);
  return r;
}

std::uint64_t required_shots(double precision, double confidence) {
  if (!(precision > 0.0)) throw DomainError("required_shots: precision must be positive");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("required_shots: confidence outside (0, 1)");
  const double n = std::ceil(2.0 * std::log(2.0 / (1.0 - confidence)) / (precision * precision));
  if (n > 1e18) throw ResourceError("required_shots: shot count overflows");
  return static_cast<std::uint64_t>(std::max(1.0, n));
}

}  // namespace qcg
