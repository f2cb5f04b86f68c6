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

#include "qcg/approx.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qcg/error.hpp"
#include "qcg/kernels.hpp"

namespace qcg {
namespace {

void check_cap(const DegreeReport& r, long long cap) {
  if (r.degree > cap) {
    throw ResourceError(r.name + " degree " + std::to_string(r.degree) + " exceeds cap " + std::to_string(cap));
  }
}

// Chebyshev coefficients 0..d of erf(k (x - shift)) from a 4d-node transform.
std::vector<double> erf_series(double shift, double k, long long d) {
  const std::size_t m = static_cast<std::size_t>(4 * std::max(d, 1LL));
  std::vector<double> vals(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = std::cos((static_cast<double>(j) + 0.5) * M_PI / static_cast<double>(m));
    vals[j] = std::erf(k * (x - shift));
  }
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  kernels::chebyshev_transform(vals, c);
  return c;
}

}  // namespace

double lambert_w(double z) {
  const double branch = -1.0 / M_E;
  if (std::isnan(z) || z < branch) throw DomainError("lambert_w: argument below -1/e");
  if (z == branch) return -1.0;
  if (z == 0.0) return 0.0;
  double w;
  if (z < -0.3) {
    // Series about the branch point.
    const double p = std::sqrt(2.0 * (M_E * z + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    w = std::log1p(z);
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (std::abs(f) <= 1e-12 * std::max(1.0, std::abs(z))) break;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double sign_steepness(double Delta, double eps) {
  return std::sqrt(2.0 * std::log(8.0 / (M_PI * eps * eps))) / Delta;
}

DegreeReport sign_degree(double delta, double Delta, double eps) {
  if (!(delta > -1.0 && delta < 1.0)) throw DomainError("sign: delta outside (-1, 1)");
  if (!(Delta > 0.0)) throw DomainError("sign: Delta must be positive");
  if (!(eps > 0.0 && eps <= std::sqrt(8.0 / (M_E * M_PI)))) throw DomainError("sign: eps outside (0, sqrt(8/(e pi))]");
  if (!(delta - Delta / 2.0 > -1.0 && delta + Delta / 2.0 < 1.0)) throw DomainError("sign: transition band leaves (-1, 1)");
  const double k = sign_steepness(Delta, eps);
  const double w = lambert_w(512.0 / (M_PI * eps * eps * M_E * M_E));
  const double inner = 16.0 * (1.0 + std::abs(delta)) * k / (std::sqrt(M_PI) * eps) * std::exp(-0.5 * w);
  DegreeReport r;
  r.name = "sign";
  r.degree = 2 * static_cast<long long>(std::ceil(inner)) + 1;
  r.parameters = {{"delta", delta}, {"Delta", Delta}, {"eps", eps}, {"k", k}};
  return r;
}

DegreeReport rect_degree(double delta, double Delta, double eps) {
  if (!(delta - Delta / 2.0 > 0.0 && delta + Delta / 2.0 < 1.0)) throw DomainError("rect: transition band leaves (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("rect: eps outside (0, 1)");
  DegreeReport s = sign_degree(delta, Delta, eps / 2.0);
  DegreeReport r;
  r.name = "rect";
  r.degree = s.degree - 1;
  r.parameters = {{"delta", delta}, {"Delta", Delta}, {"eps", eps}, {"k", s.parameters.at("k")}};
  return r;
}

DegreeReport inverse_degree(double kappa, double alpha, double eps) {
  if (!(kappa >= 1.0)) throw DomainError("inverse: kappa must be >= 1");
  if (!(alpha >= 1.0)) throw DomainError("inverse: alpha must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("inverse: eps outside (0, 1/2)");
  const double ka = kappa * alpha;
  const double b = std::ceil(ka * ka * std::log(2.0 * ka / eps));
  const double half = 0.5 * std::sqrt(b * std::log(8.0 * b / eps));
  DegreeReport r;
  r.name = "inverse";
  r.degree = 2 * static_cast<long long>(std::ceil(half)) + 1;
  r.parameters = {{"kappa", kappa}, {"alpha", alpha}, {"eps", eps}, {"b", b}};
  return r;
}

std::pair<Polynomial, DegreeReport> sign_poly(double delta, double Delta, double eps, long long cap) {
  DegreeReport r = sign_degree(delta, Delta, eps);
  check_cap(r, cap);
  std::vector<double> c = erf_series(delta, r.parameters.at("k"), r.degree);
  const Parity par = delta == 0.0 ? Parity::odd : Parity::none;
  if (par == Parity::odd) {
    for (std::size_t j = 0; j < c.size(); j += 2) c[j] = 0.0;
  }
  return {clip_to_unit(Polynomial::chebyshev(std::move(c), par)), r};
}

std::pair<Polynomial, DegreeReport> rect_poly(double delta, double Delta, double eps, RectKind kind,
                                              long long cap) {
  DegreeReport r = rect_degree(delta, Delta, eps);
  check_cap(r, cap);
  const double shift = kind == RectKind::open ? delta : -delta;
  std::vector<double> c = erf_series(shift, r.parameters.at("k"), r.degree + 1);
  c.pop_back();  // top order is odd
  for (std::size_t j = 1; j < c.size(); j += 2) c[j] = 0.0;
  if (kind == RectKind::open) c[0] += 1.0;
  r.parameters["kind"] = kind == RectKind::open ? 0.0 : 1.0;
  return {clip_to_unit(Polynomial::chebyshev(std::move(c), Parity::even)), r};
}

std::pair<Polynomial, DegreeReport> inverse_poly(double kappa, double alpha, double eps, long long cap) {
  DegreeReport r = inverse_degree(kappa, alpha, eps);
  check_cap(r, cap);
  const auto b = static_cast<long long>(r.parameters.at("b"));
  const long long terms = (r.degree - 1) / 2;
  // tail[j] = 2^{-2b} sum_{i=j+1}^{b} C(2b, b+i), accumulated from the small end.
  const long double log_norm = std::lgamma(2.0L * b + 1.0L) - 2.0L * b * std::log(2.0L);
  std::vector<long double> tail(static_cast<std::size_t>(terms) + 1, 0.0L);
  long double acc = 0.0L;
  for (long long i = b; i >= 1; --i) {
    const long double lt = log_norm - std::lgamma(static_cast<long double>(b + i) + 1.0L) -
                           std::lgamma(static_cast<long double>(b - i) + 1.0L);
    acc += std::exp(lt);
    if (i - 1 <= terms) tail[static_cast<std::size_t>(i - 1)] = acc;
  }
  std::vector<double> c(static_cast<std::size_t>(r.degree) + 1, 0.0);
  for (long long j = 0; j <= terms; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(2 * j + 1)] = 4.0 * sign * static_cast<double>(tail[static_cast<std::size_t>(j)]);
  }
  return {Polynomial::chebyshev(std::move(c), Parity::odd), r};
}

}  // namespace qcg
