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

#include "qcg/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcg/error.hpp"
#include "qcg/kernels.hpp"

namespace qcg {
namespace {

Eigen::Matrix2cd zphase(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

Eigen::Matrix2cd signal(Convention c, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Eigen::Matrix2cd m;
  if (c == Convention::reflection) {
    m << x, s, s, -x;
  } else {
    m << x, cplx(0, s), cplx(0, s), x;
  }
  return m;
}

std::vector<double> expand_symmetric(const std::vector<double>& reduced, int d) {
  std::vector<double> full(static_cast<std::size_t>(d) + 1, 0.0);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    full[i] = reduced[i];
    full[static_cast<std::size_t>(d) - i] = reduced[i];
  }
  return full;
}

Parity target_parity_of(const Polynomial& p) {
  const Parity par = p.parity() != Parity::none ? p.parity() : p.detected_parity();
  if (par == Parity::none) throw ParityMismatch("solve_phases: target has no definite parity");
  return par;
}

}  // namespace

std::string to_string(Convention c) { return c == Convention::reflection ? "reflection" : "wx"; }

Convention parse_convention(const std::string& s) {
  if (s == "reflection") return Convention::reflection;
  if (s == "wx") return Convention::wx;
  throw DomainError("unknown convention '" + s + "'");
}

Eigen::Matrix2cd qsp_unitary(const PhaseFactors& phi, double x) {
  if (phi.angles.empty()) throw DimensionMismatch("qsp: empty phase list");
  if (std::abs(x) > 1.0) throw DomainError("qsp: signal value outside [-1, 1]");
  const Eigen::Matrix2cd s = signal(phi.convention, x);
  Eigen::Matrix2cd u = zphase(phi.angles[0]);
  for (std::size_t j = 1; j < phi.angles.size(); ++j) u = u * s * zphase(phi.angles[j]);
  return u;
}

std::complex<double> qsp_eval(const PhaseFactors& phi, double x) { return qsp_unitary(phi, x)(0, 0); }

PhaseFactors to_convention(const PhaseFactors& phi, Convention target) {
  if (phi.convention == target) return phi;
  PhaseFactors out{phi.angles, target};
  const int d = phi.degree();
  if (d == 0) return out;
  // R(x) = -i e^{i pi/4 Z} W(x) e^{i pi/4 Z}; the (-i)^d global factor moves into phi_0.
  const double sgn = target == Convention::wx ? 1.0 : -1.0;
  out.angles.front() += sgn * (M_PI / 4.0 - d * M_PI / 2.0);
  for (int j = 1; j < d; ++j) out.angles[static_cast<std::size_t>(j)] += sgn * (M_PI / 2.0);
  out.angles.back() += sgn * (M_PI / 4.0);
  return out;
}

std::pair<PhaseFactors, QspResidual> solve_phases(const Polynomial& p, const SolveOptions& opts) {
  const Parity par = target_parity_of(p);
  int d = p.degree();
  if (p.is_zero() && par == Parity::odd) d = 1;
  if ((d % 2 == 0) != (par == Parity::even)) throw ParityMismatch("solve_phases: degree parity differs from target parity");
  if (d > opts.degree_cap) {
    throw ResourceError("solve_phases: degree " + std::to_string(d) + " exceeds cap " + std::to_string(opts.degree_cap));
  }
  if (max_abs(p, Domain::unit()) > 1.0 + 1e-9) throw ConditionViolation("solve_phases: |P| exceeds 1 on [-1, 1]");

  if (d == 0) {
    const double c = std::clamp(p(0.0), -1.0, 1.0);
    PhaseFactors phi{{std::acos(c)}, opts.convention};
    return {phi, QspResidual{std::abs(std::cos(phi.angles[0]) - p(0.0)), 1}};
  }

  const int dt = (d + 2) / 2;
  std::vector<double> nodes(static_cast<std::size_t>(dt));
  for (int j = 1; j <= dt; ++j) nodes[static_cast<std::size_t>(j - 1)] = std::cos((2.0 * j - 1.0) * M_PI / (4.0 * dt));
  const std::vector<double> target = p.eval(nodes);
  RealVector f(dt);
  for (int j = 0; j < dt; ++j) f(j) = target[static_cast<std::size_t>(j)];

  std::vector<double> reduced(static_cast<std::size_t>(dt), 0.0);
  reduced[0] = M_PI / 4.0;

  RealVector vals;
  RealMatrix jac;
  auto residual_at = [&](const std::vector<double>& red, bool with_jac) {
    const std::vector<double> full = expand_symmetric(red, d);
    if (with_jac) {
      kernels::qsp_wx_jacobian(full, nodes, vals, jac);
      return RealVector(vals - f);
    }
    RealVector v;
    RealMatrix unused;
    kernels::qsp_wx_jacobian(full, nodes, v, unused);
    return RealVector(v - f);
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_red = reduced;
  RealVector res = residual_at(reduced, true);
  for (int it = 0; it <= opts.max_iter; ++it) {
    const double err = res.cwiseAbs().maxCoeff();
    if (err < best) {
      best = err;
      best_red = reduced;
    }
    // Keep polishing past tol until Newton stops making progress.
    if (err <= 1e-15 || it == opts.max_iter) break;
    RealMatrix jr(dt, dt);
    for (int i = 0; i < dt; ++i) {
      jr.col(i) = jac.col(i);
      if (d - i != i) jr.col(i) += jac.col(d - i);
    }
    const RealVector step = jr.colPivHouseholderQr().solve(res);
    const double norm0 = res.norm();
    double lambda = 1.0;
    std::vector<double> trial(reduced.size());
    RealVector trial_res;
    for (int bt = 0; bt < 30; ++bt) {
      for (int i = 0; i < dt; ++i) trial[static_cast<std::size_t>(i)] = reduced[static_cast<std::size_t>(i)] - lambda * step(i);
      trial_res = residual_at(trial, false);
      if (trial_res.norm() < norm0) break;
      lambda *= 0.5;
    }
    if (!(trial_res.norm() < norm0)) break;
    reduced = trial;
    res = residual_at(reduced, true);
  }
  if (best > opts.tol) {
    throw NotConverged("solve_phases: residual " + std::to_string(best) + " above tolerance", best);
  }
  const PhaseFactors phi = to_convention(PhaseFactors{expand_symmetric(best_red, d), Convention::wx}, opts.convention);
  // Node residual is what Newton drives down; report the error on a denser grid.
  return {phi, verify_phases(phi, p, 2 * (d + 1))};
}

QspResidual verify_phases(const PhaseFactors& phi, const Polynomial& p, int grid) {
  if (grid <= 0) throw DomainError("verify_phases: grid must be positive");
  QspResidual r{0.0, grid};
  for (double x : chebyshev_nodes(grid)) {
    r.max_abs_error = std::max(r.max_abs_error, std::abs(qsp_eval(phi, x).real() - p(x)));
  }
  return r;
}

}  // namespace qcg
