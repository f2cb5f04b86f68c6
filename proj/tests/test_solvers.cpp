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
#include <sstream>

#include "doctest.h"
#include "qcg/error.hpp"
#include "qcg/solvers.hpp"
#include "test_util.hpp"

using namespace qcg;

namespace {

QcgTrace run_exact(const LinearSystem& sys, double alpha = 4.0, double eps = 0.1) {
  QcgConfig cfg;
  cfg.alpha = alpha;
  cfg.eps = eps;
  return qcg_solve(sys, a_prime_dilation(sys, alpha), cfg);
}

Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST_CASE("classical CG small cases") {
  const CgResult r = cg_classical(2.0 * Matrix::Identity(3, 3), Vector::Ones(3), 1e-10);
  CHECK(r.iterations == 1);
  CHECK(r.alphas[0] == doctest::Approx(0.5));
  CHECK(r.converged);
  Vector b(2);
  b << 1.0, 1.0;
  const CgResult d = cg_classical(diag({1.0, 2.0}), b, 1e-12);
  CHECK(d.iterations <= 2);
  CHECK(std::abs(d.x(0) - 1.0) < 1e-12);
  CHECK(std::abs(d.x(1) - 0.5) < 1e-12);
  CHECK_THROWS_AS(cg_classical(diag({1.0, -1.0}), b, 1e-12), NotPositiveDefinite);
}

TEST_CASE("classical CG on Poisson N = 16 stops by iteration 8") {
  const LinearSystem sys = poisson_system(4, RhsCase::case1);
  const CgResult r = cg_classical(sys, 3.40e-3 / sys.rhs.norm());
  CHECK(r.converged);
  CHECK(r.iterations <= 8);
  CHECK((r.x - sys.solve()).norm() < 1e-8);
}

TEST_CASE("tracked CG reproduces classical CG on (A / alpha, b / |b|)") {
  const double alpha = 4.0;
  for (int q : {2, 3, 4}) {
    for (RhsCase rc : {RhsCase::case1, RhsCase::case2}) {
      const LinearSystem sys = poisson_system(q, rc);
      const CgTracked t = cg_tracked(sys, alpha, 40, 1e-9);
      const CgResult c = cg_classical(sys.matrix / alpha, sys.normalized_rhs(), 1e-9);
      REQUIRE(t.alphas.size() == c.alphas.size());
      for (std::size_t k = 0; k < t.alphas.size(); ++k) CHECK(t.alphas[k] == doctest::Approx(c.alphas[k]).epsilon(1e-9));
      for (std::size_t k = 0; k < t.betas.size(); ++k) CHECK(t.betas[k] == doctest::Approx(c.betas[k]).epsilon(1e-9));
      for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const CgCoefficients& s = t.steps[k];
        CHECK(s.k == static_cast<int>(k));
        CHECK(s.x.size() == k);
        CHECK(s.r.size() == k + 1);
        CHECK(static_cast<int>(Polynomial::monomial(s.r).degree()) == static_cast<int>(k));
        const Vector xk = krylov_vector(sys, alpha, s.x);
        const Vector rk = krylov_vector(sys, alpha, s.r);
        // Residual identity.
        CHECK((rk - (sys.normalized_rhs() - (sys.matrix / alpha) * xk)).norm() < 1e-10);
        CHECK(std::abs(rk.norm() - c.residuals[k]) < 1e-10);
      }
      CHECK((krylov_vector(sys, alpha, t.steps.back().x) - c.x).norm() < 1e-9);
    }
  }
}

TEST_CASE("tracked CG first step") {
  const LinearSystem sys = poisson_system(3, RhsCase::case2);
  const CgTracked t = cg_tracked(sys, 4.0, 1);
  REQUIRE(t.steps.size() == 2);
  const double a0 = t.alphas[0];
  CHECK(t.steps[1].x == std::vector<double>{a0});
  CHECK(t.steps[1].r == std::vector<double>{1.0, -a0});
  const Vector b = sys.normalized_rhs();
  CHECK(a0 == doctest::Approx(1.0 / b.dot((sys.matrix / 4.0) * b).real()));
}

TEST_CASE("iteration bound") {
  CHECK(iteration_bound(1.0, 2.0, std::exp(2.0) * 0.5, 2.0) == 1);
  CHECK(iteration_bound(116.0, 3.97, 1.0, 0.1) == 35);
  int prev = 0;
  for (double k = 1.0; k < 1000.0; k *= 1.3) {
    const int b = iteration_bound(k, 3.97, 1.0, 0.1);
    CHECK(b >= prev);
    prev = b;
  }
  CHECK_THROWS_AS(iteration_bound(0.5, 1.0, 1.0, 0.1), DomainError);
}

TEST_CASE("direct QSVT degree") {
  const LinearSystem s8 = poisson_system(3, RhsCase::case1);
  const DirectDegree d = direct_qsvt_degree(s8.kappa, 4.0, 0.1);
  CHECK(d.total == d.inverse_part + d.rect_part);
  CHECK(d.eps_prime == doctest::Approx(std::min(2.0 * 0.1 / (5.0 * 4.0 * s8.kappa),
                                                  4.0 * s8.kappa / (2.0 * d.inverse_part))));
  CHECK(std::round(d.total / 1e2) * 1e2 == doctest::Approx(2.88e4));
  const DirectDegree d16 = direct_qsvt_degree(poisson_system(4, RhsCase::case1).kappa, 4.0, 0.1);
  CHECK(std::round(d16.rect_part / 1e3) * 1e3 == doctest::Approx(1.05e5));
}

TEST_CASE("exact QCG equals tracked CG") {
  for (int q : {1, 2, 3, 4}) {
    for (RhsCase rc : {RhsCase::case1, RhsCase::case2}) {
      const LinearSystem sys = poisson_system(q, rc);
      const QcgTrace tr = run_exact(sys);
      const CgTracked cg = cg_tracked(sys, 4.0, 100, tr.stop_threshold);
      CHECK(tr.converged);
      REQUIRE(tr.iterations.size() == cg.alphas.size());
      for (std::size_t k = 0; k < tr.iterations.size(); ++k) {
        const QcgIteration& it = tr.iterations[k];
        CHECK(std::abs(it.alpha_k - cg.alphas[k]) <= 1e-8 * std::max(1.0, std::abs(cg.alphas[k])));
        CHECK(std::abs(it.ppA_est - cg.ppA[k]) < 1e-8);
        CHECK(std::abs(it.residual - cg.steps[k + 1].residual) < 1e-8);
        if (k + 1 < tr.iterations.size()) CHECK(std::abs(it.beta_k - cg.betas[k]) < 1e-8);
      }
      REQUIRE(tr.x_coeffs.size() == cg.steps.back().x.size());
      for (std::size_t l = 0; l < tr.x_coeffs.size(); ++l) {
        CHECK(std::abs(tr.x_coeffs[l] - cg.steps.back().x[l]) <= 1e-8 * std::max(1.0, std::abs(cg.steps.back().x[l])));
      }
      CHECK(static_cast<int>(tr.iterations.size()) <= tr.bound);
      // Final error implication.
      const Vector exact = sys.solve();
      const Vector xm = krylov_vector(sys, 4.0, tr.x_coeffs);
      CHECK((exact - sys.rhs.norm() / 4.0 * xm).norm() <= 0.1);
      CHECK((exact - tr.solution).norm() <= 0.1);
      CHECK(tr.success_probability > 0.0);
      CHECK(tr.success_probability <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("stopping within the bound up to N = 32") {
  const QcgTrace tr = run_exact(poisson_system(5, RhsCase::case1));
  CHECK(tr.converged);
  CHECK(static_cast<int>(tr.iterations.size()) <= tr.bound);
  CHECK(tr.m + 1 == 16);
}

TEST_CASE("A-norm error bound along the iteration") {
  const LinearSystem sys = poisson_system(4, RhsCase::case2);
  const double alpha = 4.0;
  const CgTracked cg = cg_tracked(sys, alpha, 20, 1e-13);
  const Vector exact = sys.solve();
  const Matrix m = sys.matrix / alpha;
  const double sk = std::sqrt(sys.kappa);
  for (std::size_t k = 0; k < cg.steps.size(); ++k) {
    const Vector e = exact - sys.rhs.norm() / alpha * krylov_vector(sys, alpha, cg.steps[k].x);
    const double anorm = std::sqrt(e.dot(m * e).real());
    const double bound = 2.0 * std::pow((sk - 1.0) / (sk + 1.0), static_cast<double>(k)) * sys.kappa * sys.rhs.norm() / sys.norm_A;
    CHECK(anorm <= bound);
  }
}

TEST_CASE("kappa one converges in a single iteration") {
  const LinearSystem sys = LinearSystem::make(2.0 * Matrix::Identity(4, 4), Vector::Ones(4));
  const QcgTrace tr = run_exact(sys);
  CHECK(tr.iterations.size() == 1);
  CHECK(tr.m + 1 <= 2);
}

TEST_CASE("qcg_solve failure modes") {
  const LinearSystem sys = poisson_system(4, RhsCase::case1);
  QcgConfig cfg;
  cfg.max_iter = 2;
  CHECK_THROWS_AS(qcg_solve(sys, a_prime_dilation(sys, 4.0), cfg), MaxIterExceeded);
  cfg = QcgConfig{};
  cfg.delta = 1.0;
  CHECK_THROWS_AS(qcg_solve(sys, a_prime_dilation(sys, 4.0), cfg), DomainError);
  cfg = QcgConfig{};
  CHECK_THROWS_AS(qcg_solve(sys, a_prime_dilation(sys, 5.0), cfg), VerificationError);
  const LinearSystem indef = LinearSystem::make(diag({1.0, -1.0}), Vector::Ones(2));
  CHECK_THROWS_AS(qcg_solve(indef, exact_dilation(indef.matrix / 4.0), cfg), NotPositiveDefinite);
}

TEST_CASE("sampled QCG is reproducible and logs every swap test") {
  const LinearSystem sys = poisson_system(2, RhsCase::case1);
  QcgConfig cfg;
  cfg.shot_model = ShotModel::sampled(200000, 17);
  const QcgTrace a = qcg_solve(sys, a_prime_dilation(sys, 4.0), cfg);
  const QcgTrace b = qcg_solve(sys, a_prime_dilation(sys, 4.0), cfg);
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t k = 0; k < a.iterations.size(); ++k) CHECK(a.iterations[k].alpha_k == b.iterations[k].alpha_k);
  CHECK(a.swaps.size() == 2 * a.iterations.size());
  for (const SwapRecord& s : a.swaps) CHECK(s.result.shots.value() == 200000);
}

TEST_CASE("query cost bookkeeping") {
  const QcgTrace tr = run_exact(poisson_system(3, RhsCase::case1));
  const QueryCost q = query_cost(tr, tr.delta);
  REQUIRE(q.per_iteration.size() == tr.iterations.size());
  const double d2 = tr.delta * tr.delta;
  const QcgIteration& first = tr.iterations.front();
  CHECK(q.per_iteration[0] == doctest::Approx(32.0 * std::pow(first.r_max, 4) / d2 +
                                              48.0 * std::pow(first.p_max * first.pp_max, 2) / d2));
  const QcgIteration& last = tr.iterations.back();
  CHECK(q.per_iteration.back() == doctest::Approx(32.0 * (last.k + 1) * std::pow(last.r_max, 4) / d2));
  CHECK(q.final_state == doctest::Approx(tr.m / tr.success_probability));
  CHECK(q.max_depth == 2 * (tr.m + 1));
  CHECK_THROWS_AS(query_cost(tr, 0.0), DomainError);
}

TEST_CASE("power-law fits") {
  std::vector<double> k, y;
  for (int i = 1; i <= 6; ++i) {
    k.push_back(i);
    y.push_back(std::pow(i, 3.0));
  }
  const ScalingFit f = fit_power_law("y", k, y, Regressor::iteration_k);
  CHECK(f.exponent == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_power_law("y", {1, 2, 3}, {1, 8, 27}, Regressor::iteration_k), InsufficientData);

  const QcgTrace c1 = run_exact(poisson_system(4, RhsCase::case1));
  const auto fits = fit_scalings({c1}, Regressor::iteration_k, 2, 8);
  REQUIRE(fits.size() == 4);
  CHECK(fits[0].exponent == doctest::Approx(2.0).epsilon(0.15));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(fits[i].exponent - 1.0) <= 0.3);

  const QcgTrace c2 = run_exact(poisson_system(4, RhsCase::case2));
  const auto fits2 = fit_scalings({c2}, Regressor::iteration_k, 1, 8);
  for (const ScalingFit& s : fits2) CHECK(std::isfinite(s.r_squared));
}

TEST_CASE("trace CSV layout") {
  const QcgTrace tr = run_exact(poisson_system(2, RhsCase::case1));
  std::ostringstream os;
  write_trace_csv(tr, os);
  const std::string s = os.str();
  CHECK(s.rfind("k,alpha_k,beta_k,rr_est,ppA_est,residual,R_max,P_max,Pp_max\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(tr.iterations.size() + 1));
}
