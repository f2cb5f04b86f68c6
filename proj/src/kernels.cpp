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

#include "qcg/kernels.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "qcg/error.hpp"

namespace qcg::kernels {
namespace {

double clenshaw(std::span<const double> c, double x) {
  if (c.empty()) return 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size() - 1; j >= 1; --j) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

void check_sizes(std::span<const double> xs, std::span<double> out) {
  if (xs.size() != out.size()) throw DimensionMismatch("kernel: output size differs from input size");
}

// Row-major 2x2 complex matrix; small enough that Eigen's expression machinery
// only adds overhead in the per-node loops.
struct M2 {
  std::array<cplx, 4> a{};
  static M2 identity() { return M2{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
  M2 operator*(const M2& o) const {
    return M2{{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
               a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}};
  }
};

M2 zphase(double phi) { return M2{{std::polar(1.0, phi), cplx(0), cplx(0), std::polar(1.0, -phi)}}; }

M2 wx_signal(double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  return M2{{cplx(x), cplx(0, s), cplx(0, s), cplx(x)}};
}

void jacobian_at_node(std::span<const double> phases, double x, double& value, double* grad_row,
                      Eigen::Index row_stride) {
  const std::size_t d = phases.size() - 1;
  const M2 w = wx_signal(x);
  std::vector<M2> z(d + 1);
  for (std::size_t j = 0; j <= d; ++j) z[j] = zphase(phases[j]);
  // prefix[j] = M0 W M1 W ... M_{j-1} W
  std::vector<M2> prefix(d + 1);
  prefix[0] = M2::identity();
  for (std::size_t j = 1; j <= d; ++j) prefix[j] = prefix[j - 1] * z[j - 1] * w;
  // suffix[j] = W M_{j+1} ... W M_d
  std::vector<M2> suffix(d + 1);
  suffix[d] = M2::identity();
  for (std::size_t j = d; j-- > 0;) suffix[j] = w * z[j + 1] * suffix[j + 1];
  const M2 full = prefix[0] * z[0] * suffix[0];
  value = full.a[0].real();
  for (std::size_t j = 0; j <= d; ++j) {
    // d/dphi e^{i phi Z} = iZ e^{i phi Z}
    M2 dz = z[j];
    dz.a[0] *= cplx(0, 1);
    dz.a[3] *= cplx(0, -1);
    // Only the (0,0) entry is needed: row 0 of prefix times dz times column 0 of suffix.
    const cplx left0 = prefix[j].a[0] * dz.a[0];
    const cplx left1 = prefix[j].a[1] * dz.a[3];
    const cplx entry = left0 * suffix[j].a[0] + left1 * suffix[j].a[2];
    grad_row[static_cast<Eigen::Index>(j) * row_stride] = entry.real();
  }
}

void apply_phase(Vector& v, double phi, Eigen::Index block_dim) {
  const cplx plus = std::polar(1.0, phi);
  const cplx minus = std::conj(plus);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= (i < block_dim ? plus : minus);
}

void scale_columns_by_phase(Matrix& m, double phi, Eigen::Index block_dim) {
  const cplx plus = std::polar(1.0, phi);
  const cplx minus = std::conj(plus);
  for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) *= (c < block_dim ? plus : minus);
}

void validate_sequence_args(const Matrix& u, std::span<const double> phases, Eigen::Index block_dim) {
  if (u.rows() != u.cols()) throw DimensionMismatch("phase_sequence: unitary is not square");
  if (phases.empty()) throw DimensionMismatch("phase_sequence: empty phase list");
  if (block_dim <= 0 || block_dim > u.rows()) throw DimensionMismatch("phase_sequence: bad block dimension");
}

// cos(pi * t / (2M)) for t in [0, 4M), indexed by m (2j + 1) mod 4M.
std::vector<double> dct_table(std::size_t m) {
  std::vector<double> table(4 * m);
  for (std::size_t t = 0; t < table.size(); ++t) {
    table[t] = std::cos(M_PI * static_cast<double>(t) / (2.0 * static_cast<double>(m)));
  }
  return table;
}

double dct_coefficient(std::span<const double> values, const std::vector<double>& table, std::size_t m) {
  const std::size_t n = values.size();
  const std::size_t period = 4 * n;
  long double acc = 0.0L;
  std::size_t idx = m % period;
  const std::size_t step = (2 * m) % period;
  for (std::size_t j = 0; j < n; ++j) {
    acc += static_cast<long double>(values[j]) * table[idx];
    idx += step;
    if (idx >= period) idx -= period;
  }
  const double scale = (m == 0 ? 1.0 : 2.0) / static_cast<double>(n);
  return scale * static_cast<double>(acc);
}

}  // namespace

void chebyshev_transform(std::span<const double> values, std::span<double> out) {
  if (values.empty()) throw DimensionMismatch("chebyshev_transform: no samples");
  const auto table = dct_table(values.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n; ++m) out[m] = dct_coefficient(values, table, static_cast<std::size_t>(m));
}

void chebyshev_eval(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = clenshaw(coeffs, xs[i]);
}

void monomial_eval(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = horner(coeffs, xs[i]);
}

Matrix phase_sequence(const Matrix& u, std::span<const double> phases, Eigen::Index block_dim) {
  validate_sequence_args(u, phases, block_dim);
  const Eigen::Index dim = u.rows();
  const std::size_t d = phases.size() - 1;
  const Matrix uh = u.adjoint();
  Matrix out(dim, dim);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vector v = Vector::Zero(dim);
    v(c) = 1.0;
    apply_phase(v, phases[d], block_dim);
    for (std::size_t j = d; j >= 1; --j) {
      // Signal operator at position j is u when d - j is even.
      v = ((d - j) % 2 == 0) ? Vector(u * v) : Vector(uh * v);
      apply_phase(v, phases[j - 1], block_dim);
    }
    out.col(c) = v;
  }
  return out;
}

void qsp_wx_jacobian(std::span<const double> phases, std::span<const double> nodes, RealVector& values,
                     RealMatrix& jac) {
  if (phases.empty()) throw DimensionMismatch("qsp_wx_jacobian: empty phase list");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  values.resize(n);
  jac.resize(n, static_cast<Eigen::Index>(phases.size()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    // Column-major storage: consecutive phase derivatives of node i are n apart.
    jacobian_at_node(phases, nodes[static_cast<std::size_t>(i)], values(i), &jac(i, 0), n);
  }
}

namespace serial {

void chebyshev_transform(std::span<const double> values, std::span<double> out) {
  if (values.empty()) throw DimensionMismatch("chebyshev_transform: no samples");
  const double n = static_cast<double>(values.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      acc += values[j] * std::cos(static_cast<double>(m) * (static_cast<double>(j) + 0.5) * M_PI / n);
    }
    out[m] = (m == 0 ? 1.0 : 2.0) / n * acc;
  }
}

void chebyshev_eval(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = clenshaw(coeffs, xs[i]);
}

void monomial_eval(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = horner(coeffs, xs[i]);
}

Matrix phase_sequence(const Matrix& u, std::span<const double> phases, Eigen::Index block_dim) {
  validate_sequence_args(u, phases, block_dim);
  const Eigen::Index dim = u.rows();
  const std::size_t d = phases.size() - 1;
  const Matrix uh = u.adjoint();
  Matrix acc = Matrix::Identity(dim, dim);
  scale_columns_by_phase(acc, phases[0], block_dim);
  for (std::size_t j = 1; j <= d; ++j) {
    acc = ((d - j) % 2 == 0) ? Matrix(acc * u) : Matrix(acc * uh);
    scale_columns_by_phase(acc, phases[j], block_dim);
  }
  return acc;
}

void qsp_wx_jacobian(std::span<const double> phases, std::span<const double> nodes, RealVector& values,
                     RealMatrix& jac) {
  if (phases.empty()) throw DimensionMismatch("qsp_wx_jacobian: empty phase list");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  values.resize(n);
  jac.resize(n, static_cast<Eigen::Index>(phases.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    jacobian_at_node(phases, nodes[static_cast<std::size_t>(i)], values(i), &jac(i, 0), n);
  }
}

}  // namespace serial
}  // namespace qcg::kernels
