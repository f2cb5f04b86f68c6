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

#include "qcg/encodings.hpp"

#include <cmath>
#include <limits>

#include "qcg/error.hpp"
#include "qcg/qet.hpp"

namespace qcg {
namespace {

int log2_exact(Eigen::Index n) {
  int q = 0;
  while (pow2(q) < n) ++q;
  if (pow2(q) != n) throw DimensionMismatch("dimension " + std::to_string(n) + " is not a power of two");
  return q;
}

}  // namespace

LinearSystem LinearSystem::make(Matrix a, Vector b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw DimensionMismatch("linear system: inconsistent sizes");
  if (!is_hermitian(a, 1e-12)) throw DomainError("linear system: matrix is not Hermitian");
  LinearSystem s;
  s.matrix = std::move(a);
  s.rhs = std::move(b);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix);
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  const double lo = s.eigenvalues(0);
  const double hi = s.eigenvalues(s.eigenvalues.size() - 1);
  s.norm_A = std::max(std::abs(lo), std::abs(hi));
  s.kappa = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return s;
}

int LinearSystem::n_qubits() const { return log2_exact(matrix.rows()); }

Vector LinearSystem::solve() const {
  const Vector proj = eigenvectors.adjoint() * rhs;
  Vector scaled(proj.size());
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    if (eigenvalues(i) == 0.0) throw NotPositiveDefinite("linear system: singular matrix");
    scaled(i) = proj(i) / eigenvalues(i);
  }
  return eigenvectors * scaled;
}

double verify_block_encoding(const BlockEncoding& be, const Matrix& target) {
  if (be.unitary.rows() != be.unitary.cols() || be.unitary.rows() != pow2(be.n_a + be.n_s)) {
    throw DimensionMismatch("block encoding: unitary size disagrees with qubit counts");
  }
  if (target.rows() != be.system_dim() || target.cols() != be.system_dim()) {
    throw DimensionMismatch("block encoding: target size disagrees with system register");
  }
  return spectral_norm(target - be.alpha * be.block());
}

BlockEncoding exact_dilation(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("exact_dilation: matrix is not square");
  if (!is_hermitian(a, 1e-12)) throw DomainError("exact_dilation: matrix is not Hermitian");
  const Eigen::Index n = a.rows();
  const int n_s = log2_exact(n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const RealVector& w = es.eigenvalues();
  if (w.cwiseAbs().maxCoeff() > 1.0 + 1e-9) throw NormError("exact_dilation: norm exceeds 1");
  RealVector s(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double c = std::clamp(w(i), -1.0, 1.0);
    s(i) = std::sqrt(std::max(0.0, 1.0 - c * c));
  }
  const Matrix& v = es.eigenvectors();
  const Matrix root = v * s.cast<cplx>().asDiagonal() * v.adjoint();
  BlockEncoding be;
  be.unitary.resize(2 * n, 2 * n);
  be.unitary.topLeftCorner(n, n) = a;
  be.unitary.topRightCorner(n, n) = root;
  be.unitary.bottomLeftCorner(n, n) = root;
  be.unitary.bottomRightCorner(n, n) = -a;
  be.alpha = 1.0;
  be.n_a = 1;
  be.n_s = n_s;
  be.eps = 0.0;
  return be;
}

RhsCase parse_rhs_case(const std::string& s) {
  if (s == "case1" || s == "1") return RhsCase::case1;
  if (s == "case2" || s == "2") return RhsCase::case2;
  throw DomainError("unknown rhs case '" + s + "'");
}

std::string to_string(RhsCase c) { return c == RhsCase::case1 ? "case1" : "case2"; }

LinearSystem poisson_system(int n_qubits, RhsCase rhs_case) {
  if (n_qubits < 1) throw DomainError("poisson_system: need at least one qubit");
  const Eigen::Index n = pow2(n_qubits);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < n) {
      a(i, i + 1) = -1.0;
      a(i + 1, i) = -1.0;
    }
  }
  Vector b = Vector::Zero(n);
  if (rhs_case == RhsCase::case1) {
    b(n / 2 - 1) = 1.0 / std::sqrt(2.0);
    b(n / 2) = 1.0 / std::sqrt(2.0);
  } else {
    b.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  }
  LinearSystem sys = LinearSystem::make(std::move(a), std::move(b));
  for (Eigen::Index j = 1; j <= n; ++j) {
    const double closed = 2.0 - 2.0 * std::cos(static_cast<double>(j) * M_PI / static_cast<double>(n + 1));
    if (std::abs(closed - sys.eigenvalues(j - 1)) > 1e-10) {
      throw VerificationError("poisson_system: eigenvalue disagrees with closed form");
    }
  }
  return sys;
}

Matrix cyclic_shift(int n_qubits, ShiftDirection dir) {
  if (n_qubits < 1) throw DomainError("cyclic_shift: need at least one qubit");
  const Eigen::Index n = pow2(n_qubits);
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index to = dir == ShiftDirection::plus ? (j + 1) % n : (j + n - 1) % n;
    p(to, j) = 1.0;
  }
  return p;
}

Matrix a_prime_target(const BlockEncoding& be_a) {
  const Eigen::Index n = be_a.system_dim();
  return 2.0 * be_a.block() - Matrix::Identity(n, n);
}

BlockEncoding a_prime_dilation(const LinearSystem& sys, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("a_prime_dilation: alpha must be positive");
  const Eigen::Index n = sys.matrix.rows();
  if (sys.eigenvalues(0) < -1e-12 || sys.norm_A > alpha * (1.0 + 1e-12)) {
    throw NormError("a_prime_dilation: spectrum of A / alpha leaves [0, 1]");
  }
  Matrix ap = 2.0 * sys.matrix / alpha - Matrix::Identity(n, n);
  ap = 0.5 * (ap + ap.adjoint()).eval();
  return exact_dilation(ap);
}

BlockEncoding lcu_a_prime(const BlockEncoding& be_a) {
  if (be_a.eps != 0.0) throw DomainError("lcu_a_prime: base encoding must be exact");
  const Eigen::Index dim = be_a.unitary.rows();
  const double theta = 2.0 * std::atan(std::sqrt(0.5));
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  // R_y(theta) on the new most significant ancilla.
  Matrix ry = Matrix::Zero(2 * dim, 2 * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    ry(i, i) = c;
    ry(i, dim + i) = -s;
    ry(dim + i, i) = s;
    ry(dim + i, dim + i) = c;
  }
  const Matrix select = select2(be_a.unitary, -Matrix::Identity(dim, dim));
  BlockEncoding out;
  out.unitary = ry.adjoint() * select * ry;
  out.alpha = 3.0;
  out.n_a = be_a.n_a + 1;
  out.n_s = be_a.n_s;
  out.eps = 0.0;
  const double err = verify_block_encoding(out, a_prime_target(be_a));
  if (err > 1e-12) throw VerificationError("lcu_a_prime: block disagrees with (2A/alpha - I)/3");
  return out;
}

std::pair<Polynomial, DegreeReport> lamp_poly_with_gap(const AmplificationConfig& cfg, double alpha, long long cap) {
  if (!cfg.gap) throw DomainError("lamp_poly_with_gap: no gap given");
  const double gap = *cfg.gap;
  if (!(gap > 0.0 && gap < alpha / 2.0)) throw DomainError("lamp_poly_with_gap: gap outside (0, alpha/2)");
  if (!(cfg.gamma > 1.0)) throw DomainError("lamp_poly_with_gap: gamma must exceed 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw DomainError("lamp_poly_with_gap: eps outside (0, 1)");
  const double lp = gap / alpha;
  const double g = cfg.gamma;
  auto [rect, rr] = rect_poly((1.0 - lp) / g, 2.0 * lp / g, cfg.eps / g, RectKind::closed, cap - 1);
  Polynomial p = multiply(Polynomial::monomial({0.0, g}, Parity::odd), rect);
  DegreeReport r{"lamp_gap", rr.degree + 1, {{"gamma", g}, {"gap", gap}, {"alpha", alpha}, {"eps", cfg.eps}}};
  return {p, r};
}

std::pair<Polynomial, DegreeReport> lamp_poly_no_gap(double gamma, double eps, long long cap) {
  if (!(gamma > 1.0)) throw DomainError("lamp_poly_no_gap: gamma must exceed 1");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("lamp_poly_no_gap: eps outside (0, 1)");
  auto [rect, rr] =
      rect_poly((1.0 + eps / 4.0) / gamma, eps / (2.0 * gamma), eps / (2.0 * gamma), RectKind::closed, cap - 1);
  Polynomial p = multiply(Polynomial::monomial({0.0, gamma / (1.0 + eps / 2.0)}, Parity::odd), rect);
  DegreeReport r{"lamp_no_gap", rr.degree + 1, {{"gamma", gamma}, {"eps", eps}}};
  return {p, r};
}

BlockEncoding amplified_a_prime(const BlockEncoding& be_a, const AmplificationConfig& cfg, const AmplifyOptions& opts) {
  if (cfg.gamma != 3.0) throw DomainError("amplified_a_prime: gamma is fixed to 3");
  const BlockEncoding lcu = lcu_a_prime(be_a);
  const Polynomial lamp = cfg.gap ? lamp_poly_with_gap(cfg, be_a.alpha, opts.materialize_cap).first
                                  : lamp_poly_no_gap(cfg.gamma, cfg.eps, opts.materialize_cap).first;
  SolveOptions so;
  so.degree_cap = opts.solve_cap;
  BlockEncoding out = qet_definite(lcu, lamp, so);
  out.eps = cfg.eps;
  const double err = verify_block_encoding(out, a_prime_target(be_a));
  if (err > cfg.eps) {
    throw VerificationError("amplified_a_prime: error " + std::to_string(err) + " exceeds eps");
  }
  return out;
}

}  // namespace qcg
