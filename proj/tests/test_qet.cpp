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
#include "qcg/qet.hpp"
#include "qcg/solvers.hpp"
#include "test_util.hpp"

using namespace qcg;

namespace {

Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

// Direct spectral oracle written independently of qet_oracle.
Matrix spectral(const Matrix& h, const Polynomial& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector f(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = p(es.eigenvalues()(i));
  return es.eigenvectors() * f.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("qet_definite examples") {
  const Matrix a = diag({0.3, 0.7});
  const BlockEncoding base = exact_dilation(a);
  const BlockEncoding t2 = qet_definite(base, Polynomial::chebyshev_t(2));
  CHECK(t2.n_a == base.n_a + 1);
  CHECK((t2.block() - diag({-0.82, -0.02})).norm() < 1e-12);
  CHECK(unitarity_error(t2.unitary) < 1e-12);

  const BlockEncoding lin = qet_definite(base, Polynomial::monomial({0.0, 1.0}));
  CHECK((lin.block() - a).norm() < 1e-12);

  const BlockEncoding one = qet_definite(base, Polynomial::constant(1.0));
  CHECK((one.block() - Matrix::Identity(2, 2)).norm() < 1e-12);

  CHECK_THROWS_AS(qet_definite(base, Polynomial::monomial({0.1, 0.5})), ParityMismatch);
}

TEST_CASE("qet_definite on random contractions") {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 3 + 4 * trial;
    std::vector<double> c = testing::random_reals(d + 1, -1.0, 1.0, gen);
    for (int j = 0; j <= d; ++j) if ((d - j) % 2 != 0) c[j] = 0.0;
    Polynomial p = Polynomial::chebyshev(c);
    p = p * (0.9 / max_abs(p, Domain::unit()));
    const Matrix h = testing::random_hermitian(4, -1.0, 1.0, gen);
    const BlockEncoding be = qet_definite(exact_dilation(h), p);
    CHECK((be.block() - spectral(h, p)).norm() < 1e-9);
    CHECK((qet_oracle(h, p, 1.0) - spectral(h, p)).norm() < 1e-12);
  }
}

TEST_CASE("qet_general positive side") {
  const Matrix a = diag({0.25, 0.75});
  const Matrix ap = 2.0 * a - Matrix::Identity(2, 2);
  const BlockEncoding base = exact_dilation(ap);
  const Polynomial x = Polynomial::monomial({0.0, 1.0});
  const auto [be, asmb] = qet_general(base, x, Shift::positive_side());
  // (x + 1) / 2 splits into 1/2 and x/2; both parts peak at 1/2.
  CHECK(asmb.normalization == doctest::Approx(1.0));
  CHECK(be.alpha == doctest::Approx(1.0));
  CHECK(be.n_a == base.n_a + 2);
  CHECK(asmb.mode == QetMode::positive_side);
  CHECK((be.block() * be.alpha - a).norm() < 1e-10);
  CHECK(unitarity_error(be.unitary) < 1e-12);
}

TEST_CASE("qet_general random positive semidefinite inputs") {
  std::mt19937_64 gen(62);
  for (int trial = 0; trial < 5; ++trial) {
    const Polynomial p = Polynomial::monomial(testing::random_reals(6 + trial, -1.0, 1.0, gen));
    const Matrix a = testing::random_hermitian(4, 0.0, 1.0, gen);
    const BlockEncoding base = exact_dilation(2.0 * a - Matrix::Identity(4, 4));
    const auto [be, asmb] = qet_general(base, p, Shift::positive_side());
    CHECK((be.block() * be.alpha - qet_oracle(a, p, 1.0)).norm() < 1e-8);
    CHECK((be.block() * be.alpha - spectral(a, p)).norm() < 1e-8);
  }
}

TEST_CASE("qet_general window shift and no shift") {
  std::mt19937_64 gen(63);
  const Polynomial p = Polynomial::monomial({0.2, -0.4, 0.3, 0.5});
  const Matrix a = testing::random_hermitian(4, 0.25, 0.75, gen);
  // window (0.25, 0.75): encode the matrix mapped onto [-1, 1].
  const Matrix mapped = (a - 0.5 * Matrix::Identity(4, 4)) / 0.25;
  const auto [bw, aw] = qet_general(exact_dilation(mapped), p, Shift::window(0.25, 0.75));
  CHECK((bw.block() * bw.alpha - spectral(a, p)).norm() < 1e-8);
  const Matrix h = testing::random_hermitian(4, -1.0, 1.0, gen);
  const auto [bn, an] = qet_general(exact_dilation(h), p, Shift::none());
  CHECK((bn.block() * bn.alpha - spectral(h, p)).norm() < 1e-8);
}

TEST_CASE("degenerate parity parts") {
  const Matrix h = diag({-0.4, 0.9});
  const auto [be, asmb] = qet_general(exact_dilation(h), Polynomial::constant(1.0), Shift::none());
  CHECK(be.alpha == doctest::Approx(2.0));
  CHECK((be.block() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(asmb.phases_even.has_value());
  CHECK(asmb.phases_odd.has_value());
  CHECK_THROWS_AS(split_for_qet(Polynomial(), Shift::none()), NormalizationError);
  for (Parity par : {Parity::even, Parity::odd}) {
    const PhaseFactors z = zero_phases(par);
    for (double x : {-0.5, 0.3}) CHECK(std::abs(qsp_eval(z, x).real()) < 1e-15);
  }
}

TEST_CASE("definite input through qet_general matches qet_definite") {
  const Matrix h = diag({-0.6, 0.1, 0.8, 0.2});
  const Polynomial t3 = Polynomial::chebyshev_t(3);
  const BlockEncoding base = exact_dilation(h);
  const auto [g, asmb] = qet_general(base, t3, Shift::none());
  const BlockEncoding d = qet_definite(base, t3);
  CHECK((g.block() * asmb.normalization - d.block()).norm() < 1e-10);
}

TEST_CASE("positive-side normalizers are much smaller for CG residual polynomials") {
  const LinearSystem sys = poisson_system(4, RhsCase::case1);
  const CgTracked cg = cg_tracked(sys, 4.0, 8);
  for (int k = 5; k <= 7; ++k) {
    const Polynomial r = Polynomial::monomial(cg.steps[k].r);
    const ParitySplit pos = split_for_qet(r, Shift::positive_side());
    const ParitySplit raw = split_for_qet(r, Shift::none());
    CHECK(raw.c_max / pos.c_max >= 10.0);
    CHECK(max_abs(positive_shift(r), Domain::unit()) ==
          doctest::Approx(max_abs(r, Domain::interval(0.0, 1.0))).epsilon(1e-10));
  }
  // r_8 through the positive-side circuit reproduces P(A / 4).
  const Polynomial r8 = Polynomial::monomial(cg.steps[8].r);
  const auto [be, asmb] = qet_general(a_prime_dilation(sys, 4.0), r8, Shift::positive_side());
  CHECK((be.block() * be.alpha - qet_oracle(sys, r8, 4.0)).norm() < 1e-8);
  CHECK(max_abs(r8, Domain::unit()) / max_abs(r8, Domain::interval(0.0, 1.0)) > 10.0);
}

TEST_CASE("qet_oracle examples") {
  const LinearSystem sys = LinearSystem::make(diag({1.0, 2.0}), Vector::Ones(2));
  CHECK((qet_oracle(sys, Polynomial::monomial({0.0, 1.0}), 2.0) - diag({0.5, 1.0})).norm() < 1e-14);
  CHECK((qet_oracle(sys, Polynomial::constant(1.0), 2.0) - Matrix::Identity(2, 2)).norm() < 1e-14);
}
