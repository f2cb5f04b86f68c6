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

/**
 * @file
 * Approximation polynomials for sign, rectangle and 1/x, with their closed-form
 * degree formulas. Degree functions never materialize coefficients, so they
 * work at any size; constructors refuse degrees above `cap` with ResourceError.
 */

#pragma once

#include <utility>

#include "qcg/polynomial.hpp"

namespace qcg {

/// Materialization cap shared by every polynomial constructor.
inline constexpr long long kDefaultDegreeCap = 4096;

/// Principal branch of the Lambert W function, z >= -1/e.
double lambert_w(double z);

/// k = sqrt(2 ln(8 / (pi eps^2))) / Delta.
double sign_steepness(double Delta, double eps);

DegreeReport sign_degree(double delta, double Delta, double eps);
/// Degree of the even rectangle built from two sign polynomials at eps / 2.
DegreeReport rect_degree(double delta, double Delta, double eps);
/// Degree (with the binomial parameter b) of the 1/x approximation on
/// [-1, -1/(kappa alpha)] U [1/(kappa alpha), 1].
DegreeReport inverse_degree(double kappa, double alpha, double eps);

/**
 * Polynomial approximating sgn(x - delta) to within eps outside the band of
 * width Delta around delta, from the Chebyshev series of erf(k (x - delta)).
 */
std::pair<Polynomial, DegreeReport> sign_poly(double delta, double Delta, double eps,
                                              long long cap = kDefaultDegreeCap);

enum class RectKind { open, closed };

/**
 * Even rectangle. open: ~0 on |x| <= delta - Delta/2, ~1 for |x| >= delta + Delta/2.
 * closed: ~1 inside, ~0 outside.
 */
std::pair<Polynomial, DegreeReport> rect_poly(double delta, double Delta, double eps, RectKind kind,
                                              long long cap = kDefaultDegreeCap);

/// Odd polynomial within eps of 1/x on [-1, -1/(kappa alpha)] U [1/(kappa alpha), 1].
std::pair<Polynomial, DegreeReport> inverse_poly(double kappa, double alpha, double eps,
                                                 long long cap = kDefaultDegreeCap);

}  // namespace qcg
