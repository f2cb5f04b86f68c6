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

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcg/approx.hpp"
#include "qcg/error.hpp"
#include "qcg/experiment.hpp"
#include "qcg/qet.hpp"
#include "qcg/serialize.hpp"

namespace {

using namespace qcg;

struct RunOptions {
  std::string config;
  int n_qubits = 4;
  std::string rhs_case = "case1";
  double eps = 0.1;
  double alpha = 4.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  std::string out = "out";
  std::vector<CLI::Option*> opts;  // n_qubits, case, eps, alpha, shots, seed, confidence, out
};

void add_run_options(CLI::App* app, RunOptions& o) {
  app->add_option("--config", o.config, "TOML config file; flags override it");
  o.opts = {
      app->add_option("-n,--n-qubits", o.n_qubits, "system qubits (N = 2^n)"),
      app->add_option("--case", o.rhs_case, "right-hand side: case1 or case2"),
      app->add_option("--eps", o.eps, "error tolerance"),
      app->add_option("--alpha", o.alpha, "subnormalization of A"),
      app->add_option("--shots", o.shots, "sampled mode with this many shots per swap test"),
      app->add_option("--seed", o.seed, "sampling seed (QCG_SEED overrides)"),
      app->add_option("--confidence", o.confidence, "confidence for derived shot counts"),
      app->add_option("-o,--out", o.out, "output directory"),
  };
}

std::optional<std::string> lookup(const ConfigMap& m, const std::string& key) {
  for (const std::string& k : {key, "experiment." + key}) {
    auto it = m.find(k);
    if (it != m.end()) return it->second;
  }
  return std::nullopt;
}

// Parses a TOML scalar; malformed values are configuration errors.
template <class T, class F>
T parse_value(const std::string& key, const std::string& v, F conv) {
  std::size_t used = 0;
  try {
    const T out = conv(v, &used);
    if (used == v.size()) return out;
  } catch (const std::logic_error&) {
  }
  throw DomainError("config: bad value for " + key + ": '" + v + "'");
}

int to_int(const std::string& k, const std::string& v) {
  return parse_value<int>(k, v, [](const std::string& s, std::size_t* n) { return std::stoi(s, n); });
}
double to_double(const std::string& k, const std::string& v) {
  return parse_value<double>(k, v, [](const std::string& s, std::size_t* n) { return std::stod(s, n); });
}
std::uint64_t to_u64(const std::string& k, const std::string& v) {
  if (!v.empty() && v.front() == '-') throw DomainError("config: " + k + " must be non-negative");
  return parse_value<std::uint64_t>(k, v, [](const std::string& s, std::size_t* n) { return std::stoull(s, n); });
}

ExperimentConfig build_config(const RunOptions& o) {
  ExperimentConfig cfg;
  bool sampled = false;
  if (!o.config.empty()) {
    const ConfigMap m = load_toml(o.config);
    if (auto v = lookup(m, "problem")) cfg.problem = *v;
    if (auto v = lookup(m, "n_qubits")) cfg.n_qubits = to_int("n_qubits", *v);
    if (auto v = lookup(m, "rhs_case")) cfg.rhs_case = parse_rhs_case(*v);
    if (auto v = lookup(m, "eps")) cfg.eps = to_double("eps", *v);
    if (auto v = lookup(m, "alpha")) cfg.alpha = to_double("alpha", *v);
    if (auto v = lookup(m, "confidence")) cfg.confidence = to_double("confidence", *v);
    if (auto v = lookup(m, "output_dir")) cfg.output_dir = *v;
    if (auto v = lookup(m, "seed")) cfg.shot_model.seed = to_u64("seed", *v);
    if (auto v = lookup(m, "shots")) {
      cfg.shot_model.shots = to_u64("shots", *v);
      sampled = cfg.shot_model.shots > 0;
    }
    if (auto v = lookup(m, "mode")) {
      if (*v == "sampled") sampled = true;
      else if (*v == "exact") sampled = false;
      else throw DomainError("config: mode must be exact or sampled");
    }
  }
  if (o.opts[0]->count()) cfg.n_qubits = o.n_qubits;
  if (o.opts[1]->count()) cfg.rhs_case = parse_rhs_case(o.rhs_case);
  if (o.opts[2]->count()) cfg.eps = o.eps;
  if (o.opts[3]->count()) cfg.alpha = o.alpha;
  if (o.opts[4]->count()) {
    cfg.shot_model.shots = o.shots;
    sampled = true;
  }
  if (o.opts[5]->count()) cfg.shot_model.seed = o.seed;
  if (o.opts[6]->count()) cfg.confidence = o.confidence;
  if (o.opts[7]->count() || o.config.empty()) cfg.output_dir = o.out;
  if (const char* env = std::getenv("QCG_SEED")) {
    try {
      cfg.shot_model.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("QCG_SEED is not an unsigned integer");
    }
  }
  cfg.shot_model.mode = sampled ? ShotModel::Mode::sampled : ShotModel::Mode::exact;
  return cfg;
}

int do_run(const RunOptions& o) {
  const ExperimentConfig cfg = build_config(o);
  const ExperimentResult r = run_experiment(cfg);
  std::cout << "iterations " << r.trace.iterations.size() << " (bound " << r.trace.bound << ")\n"
            << "final residual estimate " << r.trace.iterations.back().residual << "\n"
            << "final error " << r.final_error << "\n"
            << "artifacts in " << cfg.output_dir.string() << "\n";
  if (r.exit_code != kExitOk) std::cerr << "qcg: " << r.message << "\n";
  return r.exit_code;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(out, j);
  }
}

json poly_output(const std::pair<Polynomial, DegreeReport>& pr) {
  json j = to_json(pr.first);
  j["degree_report"] = to_json(pr.second);
  return j;
}

std::vector<QcgTrace> scaling_traces(const std::vector<int>& qubits, RhsCase rc, double eps, double alpha) {
  std::vector<QcgTrace> traces;
  for (int q : qubits) {
    const LinearSystem sys = poisson_system(q, rc);
    QcgConfig qc;
    qc.eps = eps;
    qc.alpha = alpha;
    traces.push_back(qcg_solve(sys, a_prime_dilation(sys, alpha), qc));
  }
  return traces;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid conjugate gradient via eigenvalue transformation"};
  app.require_subcommand(1);
  std::function<int()> action;

  // poisson run / run
  RunOptions run_opts;
  CLI::App* poisson = app.add_subcommand("poisson", "Poisson experiments");
  poisson->require_subcommand(1);
  CLI::App* poisson_run = poisson->add_subcommand("run", "run QCG on the Poisson system");
  add_run_options(poisson_run, run_opts);
  poisson_run->callback([&] { action = [&] { return do_run(run_opts); }; });
  RunOptions run_alias_opts;
  CLI::App* run = app.add_subcommand("run", "alias of `poisson run`");
  add_run_options(run, run_alias_opts);
  run->callback([&] { action = [&] { return do_run(run_alias_opts); }; });

  // table2
  double t2_eps = 0.1;
  double t2_alpha = 4.0;
  std::vector<int> t2_sizes{4, 8, 16, 32};
  std::string t2_out;
  CLI::App* t2 = app.add_subcommand("table2", "degree comparison table (CSV)");
  t2->add_option("--eps", t2_eps);
  t2->add_option("--alpha", t2_alpha);
  t2->add_option("--sizes", t2_sizes)->delimiter(',');
  t2->add_option("-o,--out", t2_out, "CSV path (stdout if omitted)");
  t2->callback([&] {
    action = [&] {
      const auto rows = table2(t2_eps, t2_alpha, t2_sizes);
      if (t2_out.empty()) {
        write_table2_csv(rows, std::cout);
      } else {
        std::ofstream os(t2_out);
        if (!os) throw Error("cannot write " + t2_out);
        write_table2_csv(rows, os);
      }
      return 0;
    };
  });

  // poly sign|rect|inverse|lamp
  CLI::App* poly = app.add_subcommand("poly", "approximation polynomials (JSON)");
  poly->require_subcommand(1);
  double pd_delta = 0.0, pd_width = 0.2, pd_eps = 0.01, pd_kappa = 2.0, pd_alpha = 4.0, pd_gamma = 3.0;
  double pd_gap = 0.0;
  long long pd_cap = kDefaultDegreeCap;
  std::string pd_kind = "open", pd_out;
  auto common_poly = [&](CLI::App* sc) {
    sc->add_option("--eps", pd_eps, "approximation error");
    sc->add_option("--cap", pd_cap, "maximum materialized degree");
    sc->add_option("-o,--out", pd_out, "JSON path (stdout if omitted)");
  };
  CLI::App* psign = poly->add_subcommand("sign", "approximate sgn(x - delta)");
  psign->add_option("--delta", pd_delta);
  psign->add_option("--width", pd_width, "transition band width");
  common_poly(psign);
  psign->callback([&] { action = [&] { emit(poly_output(sign_poly(pd_delta, pd_width, pd_eps, pd_cap)), pd_out); return 0; }; });
  CLI::App* prect = poly->add_subcommand("rect", "even rectangle");
  prect->add_option("--delta", pd_delta);
  prect->add_option("--width", pd_width, "transition band width");
  prect->add_option("--kind", pd_kind, "open or closed")->check(CLI::IsMember({"open", "closed"}));
  common_poly(prect);
  prect->callback([&] {
    action = [&] {
      const RectKind kind = pd_kind == "open" ? RectKind::open : RectKind::closed;
      emit(poly_output(rect_poly(pd_delta, pd_width, pd_eps, kind, pd_cap)), pd_out);
      return 0;
    };
  });
  CLI::App* pinv = poly->add_subcommand("inverse", "odd approximation of 1/x");
  pinv->add_option("--kappa", pd_kappa);
  pinv->add_option("--alpha", pd_alpha);
  common_poly(pinv);
  pinv->callback([&] { action = [&] { emit(poly_output(inverse_poly(pd_kappa, pd_alpha, pd_eps, pd_cap)), pd_out); return 0; }; });
  CLI::App* plamp = poly->add_subcommand("lamp", "linear amplification polynomial");
  plamp->add_option("--gamma", pd_gamma);
  plamp->add_option("--alpha", pd_alpha);
  CLI::Option* gap_opt = plamp->add_option("--gap", pd_gap, "certified spectral gap (omit for the gapless variant)");
  common_poly(plamp);
  plamp->callback([&] {
    action = [&] {
      if (gap_opt->count()) {
        AmplificationConfig ac{pd_gamma, pd_gap, pd_eps};
        emit(poly_output(lamp_poly_with_gap(ac, pd_alpha, pd_cap)), pd_out);
      } else {
        emit(poly_output(lamp_poly_no_gap(pd_gamma, pd_eps, pd_cap)), pd_out);
      }
      return 0;
    };
  });

  // phases solve|verify
  CLI::App* phases = app.add_subcommand("phases", "phase factors");
  phases->require_subcommand(1);
  std::string ph_poly, ph_phases, ph_out, ph_conv = "reflection";
  double ph_tol = 1e-10;
  int ph_cap = kDefaultSolveCap, ph_grid = 0;
  CLI::App* psolve = phases->add_subcommand("solve", "solve phases for a polynomial JSON");
  psolve->add_option("--poly", ph_poly)->required();
  psolve->add_option("--tol", ph_tol);
  psolve->add_option("--cap", ph_cap, "maximum degree");
  psolve->add_option("--convention", ph_conv)->check(CLI::IsMember({"reflection", "wx"}));
  psolve->add_option("-o,--out", ph_out);
  psolve->callback([&] {
    action = [&] {
      const Polynomial p = polynomial_from_json(read_json_file(ph_poly));
      SolveOptions so;
      so.tol = ph_tol;
      so.degree_cap = ph_cap;
      so.convention = parse_convention(ph_conv);
      const auto [phi, res] = solve_phases(p, so);
      json j = to_json(phi);
      j["residual"] = to_json(res);
      emit(j, ph_out);
      return 0;
    };
  });
  CLI::App* pverify = phases->add_subcommand("verify", "check phases against a polynomial");
  pverify->add_option("--poly", ph_poly)->required();
  pverify->add_option("--phases", ph_phases)->required();
  pverify->add_option("--tol", ph_tol);
  pverify->add_option("--grid", ph_grid, "Chebyshev nodes (default 4(d+1))");
  pverify->callback([&] {
    action = [&] {
      const Polynomial p = polynomial_from_json(read_json_file(ph_poly));
      const PhaseFactors phi = phases_from_json(read_json_file(ph_phases));
      const int grid = ph_grid > 0 ? ph_grid : 4 * (phi.degree() + 1);
      const QspResidual res = verify_phases(phi, p, grid);
      std::cout << to_json(res).dump() << "\n";
      return res.max_abs_error <= ph_tol ? 0 : static_cast<int>(kExitNumerical);
    };
  });

  // encode verify
  CLI::App* encode = app.add_subcommand("encode", "block encodings");
  encode->require_subcommand(1);
  int en_qubits = 2;
  double en_alpha = 4.0, en_eps = 0.05, en_gap = 0.0, en_tol = 1e-12;
  std::string en_kind = "dilation", en_case = "case1", en_out;
  CLI::App* everify = encode->add_subcommand("verify", "build an encoding of 2A/alpha - I and verify it");
  everify->add_option("-n,--n-qubits", en_qubits);
  everify->add_option("--case", en_case);
  everify->add_option("--alpha", en_alpha);
  everify->add_option("--kind", en_kind)->check(CLI::IsMember({"dilation", "lcu", "amplified"}));
  everify->add_option("--eps", en_eps, "amplification error");
  CLI::Option* en_gap_opt = everify->add_option("--gap", en_gap, "certified gap (default lambda_min)");
  everify->add_option("--tol", en_tol, "verification bound for dilation and lcu");
  everify->add_option("-o,--out", en_out, "write <stem>.bin and <stem>.json");
  everify->callback([&] {
    action = [&] {
      const LinearSystem sys = poisson_system(en_qubits, parse_rhs_case(en_case));
      const Matrix target = 2.0 * sys.matrix / en_alpha - Matrix::Identity(sys.matrix.rows(), sys.matrix.cols());
      BlockEncoding be;
      double bound = en_tol;
      if (en_kind == "dilation") {
        be = a_prime_dilation(sys, en_alpha);
      } else {
        const BlockEncoding base = exact_dilation(sys.matrix / en_alpha);
        be = lcu_a_prime(BlockEncoding{base.unitary, en_alpha, base.n_a, base.n_s, 0.0});
        if (en_kind == "amplified") {
          AmplificationConfig ac;
          ac.eps = en_eps;
          ac.gap = en_gap_opt->count() ? en_gap : sys.eigenvalues(0);
          AmplifyOptions ao;
          ao.solve_cap = 4096;
          be = amplified_a_prime(BlockEncoding{base.unitary, en_alpha, base.n_a, base.n_s, 0.0}, ac, ao);
          bound = en_eps;
        }
      }
      const double err = verify_block_encoding(be, target);
      json j{{"kind", en_kind}, {"error", err}, {"bound", bound}, {"alpha", be.alpha}, {"n_a", be.n_a}, {"n_s", be.n_s}};
      std::cout << j.dump() << "\n";
      if (!en_out.empty()) write_encoding(en_out, be);
      return err <= bound ? 0 : static_cast<int>(kExitNumerical);
    };
  });

  // scalings fit / scalings
  std::vector<int> sc_qubits{4};
  std::string sc_case = "case1", sc_reg = "k", sc_out;
  double sc_eps = 0.1, sc_alpha = 4.0;
  int sc_kmin = 2, sc_kmax = 8;
  auto scaling_action = [&] {
    const Regressor reg = sc_reg == "k" ? Regressor::iteration_k : Regressor::kappa;
    const auto traces = scaling_traces(sc_qubits, parse_rhs_case(sc_case), sc_eps, sc_alpha);
    json arr = json::array();
    for (const ScalingFit& f : fit_scalings(traces, reg, sc_kmin, sc_kmax)) arr.push_back(to_json(f));
    emit(arr, sc_out);
    return 0;
  };
  auto add_scaling_options = [&](CLI::App* sc) {
    sc->add_option("-n,--n-qubits", sc_qubits, "system sizes (comma separated)")->delimiter(',');
    sc->add_option("--case", sc_case);
    sc->add_option("--regressor", sc_reg)->check(CLI::IsMember({"k", "kappa"}));
    sc->add_option("--eps", sc_eps);
    sc->add_option("--alpha", sc_alpha);
    sc->add_option("--k-min", sc_kmin);
    sc->add_option("--k-max", sc_kmax);
    sc->add_option("-o,--out", sc_out);
  };
  CLI::App* scalings = app.add_subcommand("scalings", "power-law fits of polynomial maxima");
  scalings->require_subcommand(0, 1);
  CLI::App* sfit = scalings->add_subcommand("fit", "fit exponents from exact QCG runs");
  add_scaling_options(sfit);
  add_scaling_options(scalings);
  scalings->callback([&] { action = scaling_action; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }
  if (!action) return kExitInvalidConfig;
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "qcg: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
