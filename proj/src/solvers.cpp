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

#include "qcg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "qcg/approx.hpp"
#include "qcg/error.hpp"
#include "qcg/qet.hpp"

namespace qcg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// x_{k+1} = x_k + a p_k, r_{k+1} = r_k - a x p_k.
void advance(std::vector<double>& x, std::vector<double>& r, const std::vector<double>& p, double a) {
  x.resize(p.size(), 0.0);
  for (std::size_t l = 0; l < p.size(); ++l) x[l] += a * p[l];
  r.resize(p.size() + 1, 0.0);
  for (std::size_t l = 0; l < p.size(); ++l) r[l + 1] -= a * p[l];
}

std::vector<double> next_direction(const std::vector<double>& r, const std::vector<double>& p, double beta) {
  std::vector<double> out = r;
  for (std::size_t l = 0; l < p.size(); ++l) out[l] += beta * p[l];
  return out;
}

std::vector<double> times_x(const std::vector<double>& p) {
  std::vector<double> out(p.size() + 1, 0.0);
  std::copy(p.begin(), p.end(), out.begin() + 1);
  return out;
}

double plain_max(const std::vector<double>& coeffs) {
  return max_abs(Polynomial::monomial(coeffs), Domain::interval(0.0, 1.0));
}

class KrylovBasis {
 public:
  KrylovBasis(const LinearSystem& sys, double alpha) : m_(sys.matrix / alpha) { powers_.push_back(sys.normalized_rhs()); }

  Vector apply(const std::vector<double>& c) {
    while (powers_.size() < c.size()) powers_.push_back(m_ * powers_.back());
    Vector v = Vector::Zero(powers_.front().size());
    for (std::size_t l = 0; l < c.size(); ++l) v += c[l] * powers_[l];
    return v;
  }

 private:
  Matrix m_;
  std::vector<Vector> powers_;
};

}  // namespace

CgResult cg_classical(const Matrix& a, const Vector& b, double eps, int max_iter) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw DimensionMismatch("cg_classical: inconsistent sizes");
  if (max_iter <= 0) max_iter = 10 * static_cast<int>(b.size()) + 10;
  CgResult res;
  const double bnorm = b.norm();
  res.x = Vector::Zero(b.size());
  Vector r = b;
  Vector p = r;
  double rr = r.squaredNorm();
  res.residuals.push_back(std::sqrt(rr));
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  for (int k = 0; k < max_iter; ++k) {
    const Vector ap = a * p;
    const double pap = p.dot(ap).real();
    if (!(pap > 0.0)) throw NotPositiveDefinite("cg_classical: <p|Ap> is not positive");
    const double alpha = rr / pap;
    res.x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    res.alphas.push_back(alpha);
    res.residuals.push_back(std::sqrt(rr_next));
    res.iterations = k + 1;
    if (std::sqrt(rr_next) <= eps * bnorm) {
      res.converged = true;
      break;
    }
    const double beta = rr_next / rr;
    res.betas.push_back(beta);
    p = r + beta * p;
    rr = rr_next;
  }
  return res;
}

CgResult cg_classical(const LinearSystem& system, double eps) { return cg_classical(system.matrix, system.rhs, eps); }

Vector krylov_vector(const LinearSystem& system, double alpha, const std::vector<double>& coeffs) {
  KrylovBasis basis(system, alpha);
  return basis.apply(coeffs);
}

CgTracked cg_tracked(const LinearSystem& system, double alpha, int max_iter, double stop) {
  if (!(alpha > 0.0)) throw DomainError("cg_tracked: alpha must be positive");
  KrylovBasis basis(system, alpha);
  const Matrix m = system.matrix / alpha;
  CgTracked out;
  std::vector<double> x;
  std::vector<double> r{1.0};
  std::vector<double> p{1.0};
  Vector rv = basis.apply(r);
  double rr = rv.squaredNorm();
  out.steps.push_back({0, x, r, p, std::sqrt(rr)});
  out.rr.push_back(rr);
  for (int k = 0; k < max_iter; ++k) {
    const Vector pv = basis.apply(p);
    const double ppa = pv.dot(m * pv).real();
    if (!(ppa > 0.0)) throw NotPositiveDefinite("cg_tracked: <p|(A/alpha)|p> is not positive");
    const double a = rr / ppa;
    out.ppA.push_back(ppa);
    out.alphas.push_back(a);
    advance(x, r, p, a);
    rv = basis.apply(r);
    const double rr_next = rv.squaredNorm();
    out.rr.push_back(rr_next);
    out.steps.push_back({k + 1, x, r, {}, std::sqrt(rr_next)});
    if (std::sqrt(rr_next) <= stop || rr_next == 0.0) break;
    const double beta = rr_next / rr;
    out.betas.push_back(beta);
    p = next_direction(r, p, beta);
    out.steps.back().p = p;
    rr = rr_next;
  }
  return out;
}

int iteration_bound(double kappa, double norm_a, double norm_b, double eps) {
  if (!(kappa >= 1.0)) throw DomainError("iteration_bound: kappa must be >= 1");
  const double k = 0.5 * std::sqrt(kappa) * std::log(2.0 * kappa * norm_b / (norm_a * eps));
  return std::max(1, static_cast<int>(std::ceil(k)));
}

DirectDegree direct_qsvt_degree(double kappa, double alpha, double eps) {
  DirectDegree d;
  d.inverse_part = inverse_degree(2.0 * kappa, alpha, eps / 2.0).degree;
  const double ka = kappa * alpha;
  d.eps_prime = std::min(2.0 * eps / (5.0 * ka), ka / (2.0 * static_cast<double>(d.inverse_part)));
  d.rect_part = rect_degree(3.0 / (4.0 * ka), 1.0 / (2.0 * ka), d.eps_prime).degree;
  d.total = d.inverse_part + d.rect_part;
  return d;
}

QcgTrace qcg_solve(const LinearSystem& system, const BlockEncoding& be_a_prime, const QcgConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw DomainError("qcg_solve: eps outside (0, 1)");
  if (!(system.eigenvalues(0) > 0.0)) throw NotPositiveDefinite("qcg_solve: matrix is not positive definite");
  const Eigen::Index n = system.matrix.rows();
  const Matrix a_prime = 2.0 * system.matrix / cfg.alpha - Matrix::Identity(n, n);
  if (verify_block_encoding(be_a_prime, a_prime) > std::max(1e-10, be_a_prime.eps)) {
    throw VerificationError("qcg_solve: encoding does not represent 2A/alpha - I");
  }

  QcgTrace trace;
  const double norm_b = system.rhs.norm();
  trace.kappa = system.kappa;
  trace.stop_threshold = system.norm_A * cfg.eps / (system.kappa * norm_b);
  const double delta_bound = trace.stop_threshold * trace.stop_threshold;
  trace.delta = cfg.delta > 0.0 ? cfg.delta : 0.5 * delta_bound;
  if (cfg.enforce_delta_bound && !(trace.delta < delta_bound)) {
    throw DomainError("qcg_solve: delta must be below (||A|| eps / (kappa ||b||))^2");
  }
  trace.bound = iteration_bound(system.kappa, system.norm_A, norm_b, cfg.eps);
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 4 * trace.bound;

  const Matrix prep = prepare_b(system);
  const Shift shift = Shift::positive_side();
  std::uint64_t swap_counter = 0;

  struct Encoded {
    BlockEncoding be;
    double c = 0.0;
  };
  auto encode = [&](const std::vector<double>& coeffs) {
    const ParitySplit split = split_for_qet(Polynomial::monomial(coeffs), shift);
    auto [be, assembly] = qet_general(be_a_prime, split, shift, cfg.solve);
    be.eps = 0.0;
    return Encoded{std::move(be), split.c_max};
  };
  auto estimate = [&](const Encoded& u, const Encoded& v, double precision, int k, const std::string& what) {
    ShotModel model = cfg.shot_model;
    if (model.mode == ShotModel::Mode::sampled) {
      if (model.shots == 0) model.shots = required_shots(precision, cfg.confidence);
      model.seed = cfg.shot_model.seed + 0x9E3779B97F4A7C15ULL * (++swap_counter);
    }
    const SwapTestResult res = swap_test(u.be, v.be, prep, model);
    trace.swaps.push_back({k, what, res, precision});
    return std::make_pair(res.re_inner * 4.0 * u.c * v.c, model.shots);
  };

  std::vector<double> x;
  std::vector<double> r{1.0};
  std::vector<double> p{1.0};
  double rr = 1.0;

  Encoded enc_p = encode(p);
  Encoded enc_pp = encode(times_x(p));
  trace.p_max0 = enc_p.c;
  trace.pp_max0 = enc_pp.c;
  double ppa = estimate(enc_p, enc_pp, trace.delta, 0, "pp").first;
  trace.pp0_est = ppa;

  for (int k = 0;; ++k) {
    if (k >= max_iter) throw MaxIterExceeded("qcg_solve: no convergence within " + std::to_string(max_iter) + " iterations");
    if (!(ppa > 0.0)) throw PrecisionFailure("qcg_solve: estimated <p|p'> is not positive");
    QcgIteration row;
    row.k = k;
    row.ppA_est = ppa;
    row.alpha_k = rr / ppa;
    advance(x, r, p, row.alpha_k);

    const Encoded enc_r = encode(r);
    row.r_max = enc_r.c;
    const double prec_r = trace.delta / (4.0 * enc_r.c * enc_r.c);
    const auto [rr_next, shots_r] = estimate(enc_r, enc_r, prec_r, k, "rr");
    if (rr_next < 0.0) throw PrecisionFailure("qcg_solve: estimated <r|r> is negative");
    row.rr_est = rr_next;
    row.residual = std::sqrt(rr_next);
    row.shots = shots_r;
    row.x_plain = plain_max(x);
    row.r_plain = plain_max(r);

    if (row.residual <= trace.stop_threshold) {
      row.beta_k = kNaN;
      row.p_max = row.pp_max = row.p_plain = row.pp_plain = kNaN;
      trace.iterations.push_back(row);
      trace.m = k;
      trace.converged = true;
      break;
    }
    row.beta_k = rr_next / rr;
    p = next_direction(r, p, row.beta_k);
    enc_p = encode(p);
    enc_pp = encode(times_x(p));
    row.p_max = enc_p.c;
    row.pp_max = enc_pp.c;
    row.p_plain = plain_max(p);
    row.pp_plain = plain_max(times_x(p));
    const double prec_p = trace.delta / (4.0 * enc_p.c * enc_pp.c);
    ppa = estimate(enc_p, enc_pp, prec_p, k, "pp").first;
    rr = rr_next;
    trace.iterations.push_back(row);
  }

  const Encoded enc_x = encode(x);
  trace.x_max = enc_x.c;
  trace.x_coeffs = x;
  const Vector state = apply_block(enc_x.be, prep);
  trace.success_probability = state.squaredNorm();
  if (!(trace.success_probability > 0.0)) throw PrecisionFailure("qcg_solve: final state vanished");
  trace.solution_state = state / state.norm();
  trace.solution = (norm_b / cfg.alpha) * (2.0 * enc_x.c) * state;
  return trace;
}

QueryCost query_cost(const QcgTrace& trace, double delta) {
  if (!(delta > 0.0)) throw DomainError("query_cost: delta must be positive");
  QueryCost q;
  const double d2 = delta * delta;
  for (const QcgIteration& it : trace.iterations) {
    const double k = it.k;
    double qk = 32.0 * (k + 1.0) * std::pow(it.r_max, 4) / d2;
    if (std::isfinite(it.p_max) && std::isfinite(it.pp_max)) {
      qk += 16.0 * (2.0 * k + 3.0) * it.p_max * it.p_max * it.pp_max * it.pp_max / d2;
    }
    q.per_iteration.push_back(qk);
    q.iterations_total += qk;
  }
  if (trace.m > 0 && trace.success_probability > 0.0) q.final_state = trace.m / trace.success_probability;
  q.total = q.iterations_total + q.final_state;
  q.max_depth = 2 * (trace.m + 1);
  return q;
}

ScalingFit fit_power_law(const std::string& quantity, const std::vector<double>& x, const std::vector<double>& y,
                         Regressor regressor) {
  if (x.size() != y.size()) throw DimensionMismatch("fit_power_law: x and y differ in length");
  if (x.size() < 4) throw InsufficientData("fit_power_law: need at least four points for " + quantity);
  const std::size_t n = x.size();
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("fit_power_law: data must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit_power_law: regressor is constant");
  ScalingFit f;
  f.quantity = quantity;
  f.regressor = regressor;
  f.points = static_cast<int>(n);
  f.exponent = sxy / sxx;
  const double ss_res = syy - f.exponent * sxy;
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

std::vector<ScalingFit> fit_scalings(const std::vector<QcgTrace>& traces, Regressor regressor, int k_min, int k_max) {
  const std::vector<std::string> names{"X", "R", "P", "P'"};
  std::vector<std::vector<double>> xs(4);
  std::vector<std::vector<double>> ys(4);
  auto values = [](const QcgIteration& it) {
    return std::vector<double>{it.x_plain, it.r_plain, it.p_plain, it.pp_plain};
  };
  for (const QcgTrace& t : traces) {
    if (regressor == Regressor::iteration_k) {
      for (const QcgIteration& it : t.iterations) {
        const int big_k = it.k + 1;
        if (big_k < k_min || big_k > k_max) continue;
        const auto v = values(it);
        for (std::size_t q = 0; q < 4; ++q) {
          if (!std::isfinite(v[q])) continue;
          xs[q].push_back(big_k);
          ys[q].push_back(v[q]);
        }
      }
    } else {
      for (std::size_t q = 0; q < 4; ++q) {
        for (auto it = t.iterations.rbegin(); it != t.iterations.rend(); ++it) {
          const double v = values(*it)[q];
          if (std::isfinite(v)) {
            xs[q].push_back(t.kappa);
            ys[q].push_back(v);
            break;
          }
        }
      }
    }
  }
  std::vector<ScalingFit> fits;
  for (std::size_t q = 0; q < 4; ++q) fits.push_back(fit_power_law(names[q], xs[q], ys[q], regressor));
  return fits;
}

void write_trace_csv(const QcgTrace& trace, std::ostream& os) {
  os << "k,alpha_k,beta_k,rr_est,ppA_est,residual,R_max,P_max,Pp_max\n";
  os << std::setprecision(17);
  for (const QcgIteration& it : trace.iterations) {
    os << it.k << ',' << it.alpha_k << ',' << it.beta_k << ',' << it.rr_est << ',' << it.ppA_est << ','
       << it.residual << ',' << it.r_max << ',' << it.p_max << ',' << it.pp_max << '\n';
  }
}

}  // namespace qcg
