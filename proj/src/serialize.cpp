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

#include "qcg/serialize.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qcg/error.hpp"

namespace qcg {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_f64(std::ostream& os, double v) {
  unsigned char buf[8];
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu);
  os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw DimensionMismatch("binary matrix: unexpected end of data");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

// JSON has no NaN; absent values become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const Polynomial& p) {
  return {{"basis", to_string(p.basis())}, {"coeffs", p.coeffs()}, {"parity", to_string(p.parity())}};
}

Polynomial polynomial_from_json(const json& j) {
  const Basis b = parse_basis(j.at("basis").get<std::string>());
  const Parity par = j.contains("parity") ? parse_parity(j.at("parity").get<std::string>()) : Parity::none;
  auto c = j.at("coeffs").get<std::vector<double>>();
  return b == Basis::monomial ? Polynomial::monomial(std::move(c), par) : Polynomial::chebyshev(std::move(c), par);
}

json to_json(const PhaseFactors& phi) { return {{"convention", to_string(phi.convention)}, {"angles", phi.angles}}; }

PhaseFactors phases_from_json(const json& j) {
  return PhaseFactors{j.at("angles").get<std::vector<double>>(), parse_convention(j.at("convention").get<std::string>())};
}

json to_json(const DegreeReport& r) {
  return {{"name", r.name}, {"degree", r.degree}, {"parameters", r.parameters}};
}

json to_json(const QspResidual& r) { return {{"max_abs_error", r.max_abs_error}, {"grid_size", r.grid_size}}; }

json to_json(const QetAssembly& a) {
  json j{{"mode", to_string(a.mode)}, {"normalization", a.normalization}, {"solve_residual", a.solve_residual}};
  if (a.phases_even) j["phases_even"] = to_json(*a.phases_even);
  if (a.phases_odd) j["phases_odd"] = to_json(*a.phases_odd);
  if (a.shift.kind == Shift::Kind::window) j["window"] = {a.shift.delta1, a.shift.delta2};
  return j;
}

json to_json(const SwapTestResult& r) {
  json j{{"p0", r.p0}, {"p1", r.p1}, {"re_inner", r.re_inner}};
  if (r.shots) j["shots"] = *r.shots;
  if (r.stderr_) j["stderr"] = *r.stderr_;
  return j;
}

json to_json(const ScalingFit& f) {
  return {{"quantity", f.quantity},
          {"exponent", f.exponent},
          {"r_squared", f.r_squared},
          {"regressor", f.regressor == Regressor::iteration_k ? "iteration_k" : "kappa"},
          {"points", f.points}};
}

json to_json(const QueryCost& q) {
  return {{"per_iteration", q.per_iteration},
          {"iterations_total", q.iterations_total},
          {"final_state", q.final_state},
          {"total", q.total},
          {"max_depth", q.max_depth}};
}

json summary_json(const QcgTrace& t) {
  json j;
  j["converged"] = t.converged;
  j["m"] = t.m;
  j["max_poly_degree"] = t.m + 1;
  j["iterations"] = t.iterations.size();
  j["iteration_bound"] = t.bound;
  j["kappa"] = t.kappa;
  j["delta"] = t.delta;
  j["stop_threshold"] = t.stop_threshold;
  j["final_residual"] = t.iterations.empty() ? json(nullptr) : number_or_null(t.iterations.back().residual);
  j["X_max"] = t.x_max;
  j["success_probability"] = t.success_probability;
  j["pp0_est"] = t.pp0_est;
  j["x_coeffs"] = t.x_coeffs;
  return j;
}

void write_matrix_binary(std::ostream& os, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put_f64(os, m(i, j).real());
      put_f64(os, m(i, j).imag());
    }
  }
}

Matrix read_matrix_binary(std::istream& is, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

void write_encoding(const std::filesystem::path& stem, const BlockEncoding& be) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path hdr = stem;
  hdr += ".json";
  std::ofstream os(bin, std::ios::binary);
  if (!os) throw Error("cannot write " + bin.string());
  write_matrix_binary(os, be.unitary);
  write_json_file(hdr, {{"alpha", be.alpha}, {"n_a", be.n_a}, {"n_s", be.n_s}, {"eps", be.eps}});
}

BlockEncoding read_encoding(const std::filesystem::path& stem) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path hdr = stem;
  hdr += ".json";
  const json h = read_json_file(hdr);
  BlockEncoding be;
  be.alpha = h.at("alpha").get<double>();
  be.n_a = h.at("n_a").get<int>();
  be.n_s = h.at("n_s").get<int>();
  be.eps = h.at("eps").get<double>();
  std::ifstream is(bin, std::ios::binary);
  if (!is) throw Error("cannot read " + bin.string());
  const Eigen::Index dim = pow2(be.n_a + be.n_s);
  be.unitary = read_matrix_binary(is, dim, dim);
  return be;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path.string());
  return json::parse(is);
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      if (cell == "nan" || cell == "-nan") {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        row.push_back(std::stod(cell));
      }
    }
    if (row.size() != t.header.size()) throw DimensionMismatch("csv: row width differs from header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qcg
