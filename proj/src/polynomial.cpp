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

#include "qcg/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "qcg/error.hpp"
#include "qcg/kernels.hpp"

namespace qcg {
namespace {

using ld = long double;

constexpr double kClampTol = 1e-12;
// Off-parity coefficients below this (relative) are treated as round-off.
constexpr double kParityTol = 1e-10;

std::vector<double> to_double(const std::vector<ld>& v) {
  return std::vector<double>(v.begin(), v.end());
}

std::vector<double> mono_to_cheb(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<ld> acc(n, 0.0L);
  std::vector<ld> next(n, 0.0L);
  acc[0] = c[n - 1];
  std::size_t len = 1;
  for (std::size_t j = n - 1; j-- > 0;) {
    // next = x * acc with x T_0 = T_1, x T_i = (T_{i+1} + T_{i-1}) / 2.
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(len + 1), 0.0L);
    for (std::size_t i = 0; i < len; ++i) {
      if (i == 0) {
        next[1] += acc[0];
      } else {
        next[i + 1] += 0.5L * acc[i];
        next[i - 1] += 0.5L * acc[i];
      }
    }
    ++len;
    next[0] += c[j];
    std::swap(acc, next);
  }
  return to_double(acc);
}

std::vector<double> cheb_to_mono(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<ld> out(n, 0.0L);
  std::vector<ld> tm1(n, 0.0L);  // T_{k-1}
  std::vector<ld> tk(n, 0.0L);   // T_k
  tm1[0] = 1.0L;
  out[0] += c[0];
  if (n == 1) return to_double(out);
  tk[1] = 1.0L;
  out[1] += c[1];
  std::vector<ld> tp1(n, 0.0L);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::fill(tp1.begin(), tp1.end(), 0.0L);
    for (std::size_t i = 0; i <= k; ++i) tp1[i + 1] += 2.0L * tk[i];
    for (std::size_t i = 0; i < k; ++i) tp1[i] -= tm1[i];
    for (std::size_t i = 0; i <= k + 1; ++i) out[i] += static_cast<ld>(c[k + 1]) * tp1[i];
    std::swap(tm1, tk);
    std::swap(tk, tp1);
  }
  return to_double(out);
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size() - 1; j >= 1; --j) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

Parity product_parity(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

}  // namespace

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::none:
      return "none";
  }
  return "none";
}

std::string to_string(Basis b) { return b == Basis::monomial ? "monomial" : "chebyshev"; }

Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  if (s == "none") return Parity::none;
  throw DomainError("unknown parity '" + s + "'");
}

Basis parse_basis(const std::string& s) {
  if (s == "monomial") return Basis::monomial;
  if (s == "chebyshev") return Basis::chebyshev;
  throw DomainError("unknown basis '" + s + "'");
}

Polynomial::Polynomial() : Polynomial(Basis::monomial, {0.0}, Parity::even) {}

Polynomial::Polynomial(Basis basis, std::vector<double> coeffs, Parity parity)
    : basis_(basis), coeffs_(std::move(coeffs)), parity_(parity) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
  }
  if (parity_ != Parity::none) {
    double scale = 1.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    const std::size_t start = parity_ == Parity::even ? 1 : 0;
    for (std::size_t j = start; j < coeffs_.size(); j += 2) {
      if (std::abs(coeffs_[j]) > kParityTol * scale) {
        throw ParityMismatch("coefficient of order " + std::to_string(j) + " contradicts declared " +
                             to_string(parity_) + " parity");
      }
      coeffs_[j] = 0.0;
    }
  }
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(std::vector<double> coeffs, Parity parity) {
  return Polynomial(Basis::monomial, std::move(coeffs), parity);
}

Polynomial Polynomial::chebyshev(std::vector<double> coeffs, Parity parity) {
  return Polynomial(Basis::chebyshev, std::move(coeffs), parity);
}

Polynomial Polynomial::constant(double c) { return monomial({c}, Parity::even); }

Polynomial Polynomial::chebyshev_t(int d) {
  if (d < 0) throw DomainError("chebyshev_t: negative order");
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.back() = 1.0;
  return chebyshev(std::move(c), d % 2 == 0 ? Parity::even : Parity::odd);
}

bool Polynomial::is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

std::vector<double> Polynomial::monomial_coeffs() const {
  return basis_ == Basis::monomial ? coeffs_ : cheb_to_mono(coeffs_);
}

std::vector<double> Polynomial::chebyshev_coeffs() const {
  return basis_ == Basis::chebyshev ? coeffs_ : mono_to_cheb(coeffs_);
}

Polynomial Polynomial::in_basis(Basis b) const {
  if (b == basis_) return *this;
  return Polynomial(b, b == Basis::monomial ? monomial_coeffs() : chebyshev_coeffs(), parity_);
}

double Polynomial::operator()(double x) const {
  if (x > 1.0 && x <= 1.0 + kClampTol) x = 1.0;
  if (x < -1.0 && x >= -1.0 - kClampTol) x = -1.0;
  return basis_ == Basis::chebyshev ? clenshaw(coeffs_, x) : horner(coeffs_, x);
}

std::vector<double> Polynomial::eval(std::span<const double> xs) const {
  std::vector<double> clamped(xs.begin(), xs.end());
  for (double& x : clamped) {
    if (x > 1.0 && x <= 1.0 + kClampTol) x = 1.0;
    if (x < -1.0 && x >= -1.0 - kClampTol) x = -1.0;
  }
  std::vector<double> out(xs.size());
  if (basis_ == Basis::chebyshev) {
    kernels::chebyshev_eval(coeffs_, clamped, out);
  } else {
    kernels::monomial_eval(coeffs_, clamped, out);
  }
  return out;
}

Polynomial Polynomial::even_part() const {
  std::vector<double> c = coeffs_;
  for (std::size_t j = 1; j < c.size(); j += 2) c[j] = 0.0;
  return Polynomial(basis_, std::move(c), Parity::even);
}

Polynomial Polynomial::odd_part() const {
  std::vector<double> c = coeffs_;
  for (std::size_t j = 0; j < c.size(); j += 2) c[j] = 0.0;
  return Polynomial(basis_, std::move(c), Parity::odd);
}

Polynomial Polynomial::derivative() const {
  const std::size_t n = coeffs_.size();
  if (n == 1) return Polynomial(basis_, {0.0}, Parity::even);
  std::vector<double> d(n - 1, 0.0);
  if (basis_ == Basis::monomial) {
    for (std::size_t j = 1; j < n; ++j) d[j - 1] = static_cast<double>(j) * coeffs_[j];
  } else {
    std::vector<ld> e(n + 1, 0.0L);
    for (std::size_t k = n - 1; k >= 1; --k) e[k - 1] = e[k + 1] + 2.0L * static_cast<ld>(k) * coeffs_[k];
    e[0] *= 0.5L;
    for (std::size_t j = 0; j + 1 < n; ++j) d[j] = static_cast<double>(e[j]);
  }
  Parity par = Parity::none;
  if (parity_ == Parity::even) par = Parity::odd;
  if (parity_ == Parity::odd) par = Parity::even;
  return Polynomial(basis_, std::move(d), par);
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(basis_, std::move(c), parity_);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  const Basis b = basis_ == o.basis_ ? basis_ : Basis::chebyshev;
  std::vector<double> a = b == Basis::monomial ? coeffs_ : chebyshev_coeffs();
  const std::vector<double> c = b == Basis::monomial ? o.coeffs_ : o.chebyshev_coeffs();
  if (a.size() < c.size()) a.resize(c.size(), 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) a[j] += c[j];
  return Polynomial(b, std::move(a), parity_ == o.parity_ ? parity_ : Parity::none);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Parity Polynomial::detected_parity() const {
  bool has_even = false;
  bool has_odd = false;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0.0) continue;
    (j % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) return Parity::none;
  return has_odd ? Parity::odd : Parity::even;
}

double eval(const Polynomial& p, double x) { return p(x); }

Domain::Domain(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw DomainError("domain has no intervals");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto [lo, hi] = intervals_[i];
    if (!(lo <= hi) || lo < -1.0 - kClampTol || hi > 1.0 + kClampTol) {
      throw DomainError("domain interval outside [-1, 1] or reversed");
    }
    if (i > 0 && !(intervals_[i - 1].second < lo)) throw DomainError("domain intervals overlap or unsorted");
  }
}

Domain Domain::away_from_zero(double eta) {
  if (!(eta >= 1.0)) throw DomainError("away_from_zero: eta must be >= 1");
  return Domain({{-1.0, -1.0 / eta}, {1.0 / eta, 1.0}});
}

bool Domain::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.first <= x && x <= iv.second; });
}

double max_abs(const Polynomial& p, const Domain& domain) {
  const int d = p.degree();
  const Polynomial dp = p.derivative();
  const Polynomial ddp = dp.derivative();
  double best = 0.0;
  for (const auto& [lo, hi] : domain.intervals()) {
    if (hi == lo) {
      best = std::max(best, std::abs(p(lo)));
      continue;
    }
    const int n = std::max(8 * (d + 1), 64);
    std::vector<double> ys;
    ys.reserve(static_cast<std::size_t>(n) + 2);
    ys.push_back(lo);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (double t : chebyshev_nodes(n)) ys.push_back(mid + half * t);
    ys.push_back(hi);
    std::sort(ys.begin(), ys.end());
    const std::vector<double> vs = p.eval(ys);
    double sampled = 0.0;
    for (double v : vs) sampled = std::max(sampled, std::abs(v));
    best = std::max(best, sampled);
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
      const double a = std::abs(vs[i]);
      if (a < std::abs(vs[i - 1]) || a < std::abs(vs[i + 1]) || a < 0.5 * sampled) continue;
      double left = ys[i - 1];
      double right = ys[i + 1];
      double gl = dp(left);
      const bool bracketed = gl * dp(right) <= 0.0;
      double x = ys[i];
      for (int it = 0; it < 20; ++it) {
        const double g = dp(x);
        if (g == 0.0) break;
        if (bracketed) {
          if (gl * g < 0.0) {
            right = x;
          } else {
            left = x;
            gl = g;
          }
        }
        const double h = ddp(x);
        double next = h != 0.0 ? x - g / h : 0.5 * (left + right);
        if (!(next > left && next < right)) {
          if (!bracketed) break;
          next = 0.5 * (left + right);
        }
        const bool done = std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x));
        x = next;
        if (done) break;
      }
      best = std::max(best, std::abs(p(x)));
    }
  }
  return best;
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  const Parity par = product_parity(p.parity(), q.parity());
  if (p.basis() == Basis::monomial && q.basis() == Basis::monomial) {
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<ld> c(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += static_cast<ld>(a[i]) * b[j];
    }
    return Polynomial::monomial(to_double(c), par);
  }
  const std::vector<double> a = p.chebyshev_coeffs();
  const std::vector<double> b = q.chebyshev_coeffs();
  std::vector<ld> c(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const ld t = 0.5L * static_cast<ld>(a[i]) * b[j];
      c[i + j] += t;
      c[i > j ? i - j : j - i] += t;
    }
  }
  return Polynomial::chebyshev(to_double(c), par);
}

Polynomial affine_compose(const Polynomial& p, double a, double b) {
  Parity par = Parity::none;
  if (b == 0.0) par = p.parity();
  if (p.degree() == 0) par = Parity::even;
  if (p.basis() == Basis::monomial) {
    const auto& c = p.coeffs();
    std::vector<ld> acc{static_cast<ld>(c.back())};
    for (std::size_t j = c.size() - 1; j-- > 0;) {
      std::vector<ld> next(acc.size() + 1, 0.0L);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] += static_cast<ld>(a) * acc[i];
        next[i] += static_cast<ld>(b) * acc[i];
      }
      next[0] += c[j];
      acc = std::move(next);
    }
    return Polynomial::monomial(to_double(acc), par);
  }
  // Chebyshev-native: exact re-interpolation on enough first-kind nodes.
  const int d = p.degree();
  const int m = 2 * (d + 1);
  std::vector<double> xs = chebyshev_nodes(m);
  // chebyshev_nodes lists cos((2j - 1) pi / (2m)), j = 1..m, the transform's ordering.
  for (double& x : xs) x = a * x + b;
  const std::vector<double> vals = p.eval(xs);
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  kernels::chebyshev_transform(vals, c);
  if (par == Parity::even) {
    for (std::size_t j = 1; j < c.size(); j += 2) c[j] = 0.0;
  } else if (par == Parity::odd) {
    for (std::size_t j = 0; j < c.size(); j += 2) c[j] = 0.0;
  }
  return Polynomial::chebyshev(std::move(c), par);
}

Polynomial positive_shift(const Polynomial& p) { return affine_compose(p, 0.5, 0.5); }

Polynomial window_shift(const Polynomial& p, double delta1, double delta2) {
  if (!(delta1 < delta2) || delta1 < -1.0 || delta2 > 1.0) {
    throw DomainError("window_shift: need -1 <= delta1 < delta2 <= 1");
  }
  if (delta1 == -1.0 && delta2 == 1.0) return p;
  return affine_compose(p, 0.5 * (delta2 - delta1), 0.5 * (delta1 + delta2));
}

Polynomial clip_to_unit(const Polynomial& p) {
  const double m = max_abs(p, Domain::unit());
  return m > 1.0 ? p * (1.0 / m) : p;
}

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) xs[static_cast<std::size_t>(j - 1)] = std::cos((2.0 * j - 1.0) * M_PI / (2.0 * n));
  return xs;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  xs.back() = hi;
  return xs;
}

}  // namespace qcg
