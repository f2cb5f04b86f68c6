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

#include <cmath>

#include "doctest.h"
#include "qcg/error.hpp"
#include "qcg/estimation.hpp"
#include "qcg/qet.hpp"
#include "qcg/solvers.hpp"
#include "test_util.hpp"

using namespace qcg;

TEST_CASE("prepare_b first column") {
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  CHECK((prepare_b(e0) - Matrix::Identity(4, 4)).norm() < 1e-15);
  const Matrix u2 = prepare_b(poisson_system(4, RhsCase::case2));
  for (int i = 0; i < 16; ++i) CHECK(std::abs(u2(i, 0) - 0.25) < 1e-15);
  const Matrix u1 = prepare_b(poisson_system(4, RhsCase::case1));
  CHECK(std::abs(u1(7, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(u1(8, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  std::mt19937_64 gen(71);
  const Vector b = testing::random_vector(8, gen);
  const Matrix u = prepare_b(b);
  CHECK(unitarity_error(u) < 1e-13);
  CHECK((u.col(0) - b / b.norm()).norm() < 1e-14);
  CHECK_THROWS_AS(prepare_b(Vector::Zero(3)), ZeroVector);
}

TEST_CASE("swap test trivial cases") {
  // Encodings of I and of a state orthogonal to it after preparation.
  const BlockEncoding id{Matrix::Identity(4, 4), 1.0, 1, 1, 0.0};
  const Matrix prep = Matrix::Identity(2, 2);
  const SwapTestResult same = swap_test(id, id, prep, ShotModel::exact());
  CHECK(same.re_inner == doctest::Approx(1.0));
  CHECK(same.p0 == doctest::Approx(1.0));
  CHECK(same.p1 == doctest::Approx(0.0).scale(1.0));

  Matrix flip = Matrix::Zero(4, 4);
  flip(0, 1) = flip(1, 0) = flip(2, 2) = flip(3, 3) = 1.0;
  const BlockEncoding x{flip, 1.0, 1, 1, 0.0};
  const SwapTestResult orth = swap_test(id, x, prep, ShotModel::exact());
  CHECK(orth.re_inner == doctest::Approx(0.0).scale(1.0));
  CHECK(orth.p0 == doctest::Approx(0.5));
  CHECK(orth.p1 == doctest::Approx(0.5));

  const BlockEncoding small{Matrix::Identity(8, 8), 1.0, 1, 2, 0.0};
  CHECK_THROWS_AS(swap_test(id, small, prep, ShotModel::exact()), DimensionMismatch);
}

TEST_CASE("exact swap test equals direct inner products") {
  std::mt19937_64 gen(72);
  for (int trial = 0; trial < 50; ++trial) {
    const int ns = 1 + trial % 4;
    const Eigen::Index ds = pow2(ns);
    const BlockEncoding u{testing::random_unitary(2 * ds, gen), 1.0, 1, ns, 0.0};
    const BlockEncoding v{testing::random_unitary(2 * ds, gen), 1.0, 1, ns, 0.0};
    const Matrix prep = prepare_b(testing::random_vector(ds, gen));
    const SwapTestResult r = swap_test(u, v, prep, ShotModel::exact());
    const Vector psi = apply_block(u, prep);
    const Vector phi = apply_block(v, prep);
    CHECK(std::abs(r.re_inner - psi.dot(phi).real()) < 1e-12);
    CHECK(std::abs(r.p0 - (psi.squaredNorm() + phi.squaredNorm() + 2 * psi.dot(phi).real()) / 4) < 1e-12);
    CHECK(r.p0 + r.p1 <= 1.0 + 1e-12);
    CHECK(r.re_inner == r.p0 - r.p1);
  }
}

TEST_CASE("sampled swap test") {
  std::mt19937_64 gen(73);
  const BlockEncoding u{testing::random_unitary(8, gen), 1.0, 1, 2, 0.0};
  const BlockEncoding v{testing::random_unitary(8, gen), 1.0, 1, 2, 0.0};
  const Matrix prep = prepare_b(testing::random_vector(4, gen));
  const double exact = swap_test(u, v, prep, ShotModel::exact()).re_inner;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SwapTestResult r = swap_test(u, v, prep, ShotModel::sampled(1000000, seed));
    REQUIRE(r.shots.has_value());
    REQUIRE(r.stderr_.has_value());
    CHECK(r.re_inner == r.p0 - r.p1);
    if (std::abs(r.re_inner - exact) <= 5.0 * *r.stderr_) ++inside;
  }
  CHECK(inside >= 99);
  const SwapTestResult a = swap_test(u, v, prep, ShotModel::sampled(1000, 5));
  const SwapTestResult b = swap_test(u, v, prep, ShotModel::sampled(1000, 5));
  CHECK(a.re_inner == b.re_inner);
  CHECK_THROWS_AS(swap_test(u, v, prep, ShotModel::sampled(0, 1)), DomainError);
}

TEST_CASE("swap test on positive-side encodings of CG polynomials") {
  const LinearSystem sys = poisson_system(4, RhsCase::case1);
  const CgTracked cg = cg_tracked(sys, 4.0, 4);
  const BlockEncoding base = a_prime_dilation(sys, 4.0);
  const std::vector<double>& p = cg.steps[3].p;
  std::vector<double> xp(p.size() + 1, 0.0);
  std::copy(p.begin(), p.end(), xp.begin() + 1);
  const auto [bp, ap] = qet_general(base, Polynomial::monomial(p), Shift::positive_side());
  const auto [bxp, axp] = qet_general(base, Polynomial::monomial(xp), Shift::positive_side());
  const SwapTestResult r = swap_test(bp, bxp, prepare_b(sys), ShotModel::exact());
  const Vector b = sys.normalized_rhs();
  const Matrix pa = qet_oracle(sys, Polynomial::monomial(p), 4.0);
  const Vector pv = pa * b;
  const double oracle = pv.dot((sys.matrix / 4.0) * pv).real();
  CHECK(std::abs(r.re_inner - oracle / (ap.normalization * axp.normalization)) < 1e-10);
}

TEST_CASE("required shots") {
  CHECK(required_shots(0.1, 0.95) == 738);
  CHECK(required_shots(1.0, 0.63) == static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0 / 0.37))));
  // Halving the precision quadruples the count up to the ceiling.
  const double ratio = static_cast<double>(required_shots(0.0005, 0.9)) / static_cast<double>(required_shots(0.001, 0.9));
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-6));
  CHECK_THROWS_AS(required_shots(0.0, 0.9), DomainError);
  CHECK_THROWS_AS(required_shots(0.1, 1.0), DomainError);
  CHECK_THROWS_AS(required_shots(1e-12, 0.99), ResourceError);
}
