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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qcg {

enum class Parity { even, odd, none };
enum class Basis { monomial, chebyshev };

std::string to_string(Parity p);
std::string to_string(Basis b);
Parity parse_parity(const std::string& s);
Basis parse_basis(const std::string& s);

/**
 * Real polynomial held in one native basis (monomial or Chebyshev).
 *
 * The other basis is derived on request in extended precision. Evaluation
 * always uses the native basis: Horner for monomial, Clenshaw for Chebyshev.
 * Trailing zero coefficients are trimmed, so degree() is exact. A declared
 * parity forces the off-parity coefficients to exactly zero.
 */
class Polynomial {
 public:
  /// The zero polynomial.
  Polynomial();

  static Polynomial monomial(std::vector<double> coeffs, Parity parity = Parity::none);
  static Polynomial chebyshev(std::vector<double> coeffs, Parity parity = Parity::none);
  static Polynomial constant(double c);
  /// The single Chebyshev polynomial T_d.
  static Polynomial chebyshev_t(int d);

  Basis basis() const { return basis_; }
  Parity parity() const { return parity_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;

  /// Coefficients in the native basis.
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double> monomial_coeffs() const;
  std::vector<double> chebyshev_coeffs() const;

  /// Same polynomial re-expressed in the other basis.
  Polynomial in_basis(Basis b) const;

  /// P(x); |x| within 1e-12 of the unit interval is clamped onto it.
  double operator()(double x) const;
  /// Parallel evaluation on many points.
  std::vector<double> eval(std::span<const double> xs) const;

  Polynomial even_part() const;
  Polynomial odd_part() const;
  Polynomial derivative() const;

  Polynomial operator*(double s) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;

  /// Parity detected from the coefficients (exact zeros only).
  Parity detected_parity() const;

 private:
  Polynomial(Basis basis, std::vector<double> coeffs, Parity parity);

  Basis basis_ = Basis::monomial;
  std::vector<double> coeffs_;
  Parity parity_ = Parity::even;
};

double eval(const Polynomial& p, double x);

/// Closed sub-intervals of [-1, 1], disjoint and sorted.
class Domain {
 public:
  using Interval = std::pair<double, double>;

  explicit Domain(std::vector<Interval> intervals);
  static Domain interval(double lo, double hi) { return Domain({{lo, hi}}); }
  static Domain unit() { return interval(-1.0, 1.0); }
  /// [-1, -1/eta] U [1/eta, 1].
  static Domain away_from_zero(double eta);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double x) const;

 private:
  std::vector<Interval> intervals_;
};

struct DegreeReport {
  std::string name;
  long long degree = 0;
  std::map<std::string, double> parameters;

  bool operator==(const DegreeReport&) const = default;
};

/**
 * max |P(x)| over the domain. Samples at least 8(d+1) Chebyshev-distributed
 * nodes per interval, then refines every near-maximal sample by safeguarded
 * Newton iteration on P'. Never returns less than the sampled maximum.
 */
double max_abs(const Polynomial& p, const Domain& domain);

/// Product; monomial convolution when both factors are monomial, otherwise
/// the Chebyshev product rule.
Polynomial multiply(const Polynomial& p, const Polynomial& q);

/// P((x + 1) / 2).
Polynomial positive_shift(const Polynomial& p);

/// P(((d2 - d1) / 2) x + (d1 + d2) / 2). DomainError unless -1 <= d1 < d2 <= 1.
Polynomial window_shift(const Polynomial& p, double delta1, double delta2);

/// P(a x + b) for arbitrary real a, b.
Polynomial affine_compose(const Polynomial& p, double a, double b);

/// Divide by max|P| on [-1, 1] when that maximum exceeds one.
Polynomial clip_to_unit(const Polynomial& p);

/// Chebyshev first-kind nodes cos((2j - 1) pi / (2n)), j = 1..n, in [-1, 1].
std::vector<double> chebyshev_nodes(int n);

/// n uniformly spaced points on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace qcg
