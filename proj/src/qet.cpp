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

#include "qcg/qet.hpp"

#include <algorithm>
#include <cmath>

#include "qcg/error.hpp"
#include "qcg/kernels.hpp"

namespace qcg {
namespace {

std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double a) { return -a; });
  return out;
}

// (U_Phi, U_{-Phi}) on the base encoding, reflection convention.
std::pair<Matrix, Matrix> signed_sequences(const BlockEncoding& base, const PhaseFactors& phi) {
  const PhaseFactors refl = to_convention(phi, Convention::reflection);
  const Eigen::Index block_dim = base.system_dim();
  return {kernels::phase_sequence(base.unitary, refl.angles, block_dim),
          kernels::phase_sequence(base.unitary, negated(refl.angles), block_dim)};
}

Polynomial apply_shift(const Polynomial& p, const Shift& shift) {
  switch (shift.kind) {
    case Shift::Kind::none:
      return p;
    case Shift::Kind::positive_side:
      return positive_shift(p);
    case Shift::Kind::window:
      return window_shift(p, shift.delta1, shift.delta2);
  }
  return p;
}

}  // namespace

std::string to_string(QetMode m) {
  switch (m) {
    case QetMode::definite_parity:
      return "definite_parity";
    case QetMode::general:
      return "general";
    case QetMode::positive_side:
      return "positive_side";
  }
  return "general";
}

PhaseFactors zero_phases(Parity parity) {
  if (parity == Parity::odd) return PhaseFactors{{M_PI / 2.0, 0.0}, Convention::reflection};
  return PhaseFactors{{M_PI / 2.0}, Convention::reflection};
}

ParitySplit split_for_qet(const Polynomial& p, const Shift& shift) {
  ParitySplit s;
  s.shifted = apply_shift(p, shift);
  const Polynomial e = s.shifted.even_part();
  const Polynomial o = s.shifted.odd_part();
  s.c_even = e.is_zero() ? 0.0 : max_abs(e, Domain::unit());
  s.c_odd = o.is_zero() ? 0.0 : max_abs(o, Domain::unit());
  s.c_max = std::max(s.c_even, s.c_odd);
  if (!(s.c_max > 0.0)) throw NormalizationError("qet_general: both parity parts vanish");
  s.even = e * (1.0 / s.c_max);
  s.odd = o * (1.0 / s.c_max);
  return s;
}

BlockEncoding qet_definite(const BlockEncoding& base, const PhaseFactors& phi) {
  if (base.eps != 0.0) throw DomainError("qet_definite: base encoding must be exact");
  const auto [plus, minus] = signed_sequences(base, phi);
  const Eigen::Index dim = base.unitary.rows();
  const Matrix h = hadamard_on_top(dim);
  BlockEncoding out;
  out.unitary = h * select2(plus, minus) * h;
  out.alpha = 1.0;
  out.n_a = base.n_a + 1;
  out.n_s = base.n_s;
  out.eps = 0.0;
  return out;
}

BlockEncoding qet_definite(const BlockEncoding& base, const Polynomial& p, const SolveOptions& opts) {
  const Parity par = p.parity() != Parity::none ? p.parity() : p.detected_parity();
  if (par == Parity::none) throw ParityMismatch("qet_definite: polynomial has no definite parity");
  SolveOptions so = opts;
  so.convention = Convention::reflection;
  const PhaseFactors phi = p.is_zero() ? zero_phases(par) : solve_phases(p, so).first;
  return qet_definite(base, phi);
}

std::pair<BlockEncoding, QetAssembly> qet_general(const BlockEncoding& base, const Polynomial& p, const Shift& shift,
                                                  const SolveOptions& opts) {
  return qet_general(base, split_for_qet(p, shift), shift, opts);
}

std::pair<BlockEncoding, QetAssembly> qet_general(const BlockEncoding& base, const ParitySplit& split,
                                                  const Shift& shift, const SolveOptions& opts) {
  if (base.eps != 0.0) throw DomainError("qet_general: base encoding must be exact");
  SolveOptions so = opts;
  so.convention = Convention::reflection;
  QetAssembly asm_;
  asm_.mode = shift.kind == Shift::Kind::positive_side ? QetMode::positive_side : QetMode::general;
  asm_.shift = shift;
  asm_.normalization = 2.0 * split.c_max;
  // A vanished part keeps its branch with zero-real-part phases, so the LCU weight stays 1/2.
  if (split.even.is_zero()) {
    asm_.phases_even = zero_phases(Parity::even);
  } else {
    auto [phi, res] = solve_phases(split.even, so);
    asm_.phases_even = phi;
    asm_.solve_residual = std::max(asm_.solve_residual, res.max_abs_error);
  }
  if (split.odd.is_zero()) {
    asm_.phases_odd = zero_phases(Parity::odd);
  } else {
    auto [phi, res] = solve_phases(split.odd, so);
    asm_.phases_odd = phi;
    asm_.solve_residual = std::max(asm_.solve_residual, res.max_abs_error);
  }
  const auto [ep, em] = signed_sequences(base, *asm_.phases_even);
  const auto [op, om] = signed_sequences(base, *asm_.phases_odd);
  const Eigen::Index dim = base.unitary.rows();
  // Ancillas (parity, sign) sit above the base register, parity most significant.
  const Matrix h_inner = hadamard_on_top(dim);
  const Matrix h_sign = select2(h_inner, h_inner);
  const Matrix h_parity = hadamard_on_top(2 * dim);
  const Matrix h_both = h_parity * h_sign;
  const Matrix select = select2(select2(ep, em), select2(op, om));
  BlockEncoding out;
  out.unitary = h_both * select * h_both;
  out.alpha = asm_.normalization;
  out.n_a = base.n_a + 2;
  out.n_s = base.n_s;
  out.eps = asm_.normalization * asm_.solve_residual;
  return {out, asm_};
}

Matrix qet_oracle(const LinearSystem& system, const Polynomial& p, double alpha) {
  const RealVector& w = system.eigenvalues;
  RealVector fw(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) fw(i) = p(w(i) / alpha);
  const Matrix& v = system.eigenvectors;
  return v * fw.cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix qet_oracle(const Matrix& hermitian, const Polynomial& p, double alpha) {
  return hermitian_function(hermitian, [&](double lambda) { return p(lambda / alpha); });
}

}  // namespace qcg
