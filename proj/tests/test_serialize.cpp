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

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qcg/serialize.hpp"
#include "test_util.hpp"

using namespace qcg;

TEST_CASE("polynomial JSON round trip") {
  const Polynomial p = Polynomial::chebyshev({0.0, 0.5, 0.0, -0.25}, Parity::odd);
  const json j = to_json(p);
  CHECK(j.at("basis") == "chebyshev");
  CHECK(j.at("parity") == "odd");
  const Polynomial q = polynomial_from_json(json::parse(j.dump()));
  CHECK(q.coeffs() == p.coeffs());
  CHECK(q.parity() == Parity::odd);
  const Polynomial m = polynomial_from_json(json::parse(R"({"basis":"monomial","coeffs":[1,0,2]})"));
  CHECK(m.parity() == Parity::none);
  CHECK(m(0.5) == doctest::Approx(1.5));
  CHECK_THROWS(polynomial_from_json(json::parse(R"({"basis":"legendre","coeffs":[1]})")));
}

TEST_CASE("phase factor JSON round trip") {
  const PhaseFactors phi{{0.1, -0.2, 0.3}, Convention::wx};
  const PhaseFactors back = phases_from_json(json::parse(to_json(phi).dump()));
  CHECK(back.angles == phi.angles);
  CHECK(back.convention == Convention::wx);
}

TEST_CASE("assembly and report JSON") {
  QetAssembly a;
  a.phases_even = PhaseFactors{{0.5}, Convention::reflection};
  a.normalization = 2.5;
  a.mode = QetMode::positive_side;
  const json j = to_json(a);
  CHECK(j.at("normalization") == 2.5);
  CHECK(j.contains("phases_even"));
  CHECK_FALSE(j.contains("phases_odd"));
  const DegreeReport r{"sign", 7, {{"eps", 0.1}}};
  CHECK(to_json(r).at("degree") == 7);
  SwapTestResult s;
  s.p0 = 0.75;
  s.p1 = 0.25;
  s.re_inner = 0.5;
  s.shots = 10;
  CHECK(to_json(s).at("shots") == 10);
}

TEST_CASE("binary matrices are little-endian row-major re/im pairs") {
  Matrix m(1, 2);
  m(0, 0) = cplx(1.0, -2.0);
  m(0, 1) = cplx(0.5, 0.0);
  std::ostringstream os;
  write_matrix_binary(os, m);
  const std::string bytes = os.str();
  REQUIRE(bytes.size() == 32);
  // 1.0 = 0x3FF0000000000000: little-endian puts 0xF0 0x3F last.
  CHECK(static_cast<unsigned char>(bytes[6]) == 0xF0);
  CHECK(static_cast<unsigned char>(bytes[7]) == 0x3F);
  // -2.0 = 0xC000000000000000.
  CHECK(static_cast<unsigned char>(bytes[15]) == 0xC0);
  std::istringstream is(bytes);
  CHECK(read_matrix_binary(is, 1, 2) == m);
  std::istringstream short_is(bytes.substr(0, 20));
  CHECK_THROWS(read_matrix_binary(short_is, 1, 2));
}

TEST_CASE("encoding files round trip") {
  std::mt19937_64 gen(81);
  const BlockEncoding be{testing::random_unitary(8, gen), 4.0, 1, 2, 0.0};
  const auto stem = std::filesystem::temp_directory_path() / "qcg_serialize_test_enc";
  write_encoding(stem, be);
  const BlockEncoding back = read_encoding(stem);
  CHECK(back.unitary == be.unitary);
  CHECK(back.alpha == 4.0);
  CHECK(back.n_a == 1);
  CHECK(back.n_s == 2);
  std::filesystem::remove(stem.string() + ".bin");
  std::filesystem::remove(stem.string() + ".json");
}

TEST_CASE("trace CSV parses back") {
  const LinearSystem sys = poisson_system(3, RhsCase::case1);
  QcgConfig cfg;
  const QcgTrace tr = qcg_solve(sys, a_prime_dilation(sys, 4.0), cfg);
  std::stringstream ss;
  write_trace_csv(tr, ss);
  const CsvTable t = read_csv(ss);
  REQUIRE(t.header.size() == 9);
  REQUIRE(t.rows.size() == tr.iterations.size());
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    CHECK(t.rows[k][1] == tr.iterations[k].alpha_k);
    CHECK(t.rows[k][5] == tr.iterations[k].residual);
  }
  CHECK(std::isnan(t.rows.back()[2]));
  const json s = summary_json(tr);
  CHECK(s.at("m") == tr.m);
  CHECK(s.at("max_poly_degree") == tr.m + 1);
  std::istringstream bad("a,b\n1,2,3\n");
  CHECK_THROWS(read_csv(bad));
}
