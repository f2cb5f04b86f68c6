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

#include "qcg/linalg.hpp"

#include <cmath>

#include "qcg/error.hpp"

namespace qcg {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 256) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  return spectral_norm_power(m);
}

double spectral_norm_power(const Matrix& m, double tol, int max_iter) {
  if (m.size() == 0) return 0.0;
  // Deterministic start with all components populated.
  Vector v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = cplx(1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i)), 0.05 * std::cos(3.0 * i));
  }
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = m.adjoint() * (m * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - sigma2) <= tol * next) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
  }
  return std::sqrt(sigma2);
}

double unitarity_error(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unitarity_error: matrix is not square");
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return spectral_norm(d);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& w = es.eigenvalues();
  RealVector fw(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) fw(i) = f(w(i));
  const Matrix& v = es.eigenvectors();
  return v * fw.cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix hadamard_on_top(Eigen::Index rest) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2 * rest, 2 * rest);
  h.setZero();
  for (Eigen::Index i = 0; i < rest; ++i) {
    h(i, i) = s;
    h(i, rest + i) = s;
    h(rest + i, i) = s;
    h(rest + i, rest + i) = -s;
  }
  return h;
}

Matrix select2(const Matrix& on_zero, const Matrix& on_one) {
  if (on_zero.rows() != on_one.rows() || on_zero.cols() != on_one.cols()) {
    throw DimensionMismatch("select2: branch dimensions differ");
  }
  const Eigen::Index n = on_zero.rows();
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = on_zero;
  s.bottomRightCorner(n, n) = on_one;
  return s;
}

}  // namespace qcg
