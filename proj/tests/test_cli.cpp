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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qcg/serialize.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(QCG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("qcg_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("poisson run and aliases") {
  const auto d = scratch("run");
  CHECK(run("poisson run -n 3 -o " + (d / "a").string()) == 0);
  CHECK(run("run -n 3 -o " + (d / "b").string()) == 0);
  CHECK(slurp(d / "a" / "residuals.csv") == slurp(d / "b" / "residuals.csv"));
  CHECK(run("run -n 9 -o " + (d / "c").string()) == 3);
  CHECK(run("run --eps 2 -o " + (d / "c").string()) == 3);
  CHECK(run("run --bogus") == 3);
  CHECK(run("") == 3);
}

TEST_CASE("seed override from the environment") {
  const auto d = scratch("seed");
  CHECK(run("run -n 2 --shots 1000000 --seed 1 -o " + (d / "a").string(), "QCG_SEED=5") == 0);
  CHECK(run("run -n 2 --shots 1000000 --seed 5 -o " + (d / "b").string()) == 0);
  CHECK(run("run -n 2 --shots 1000000 --seed 1 -o " + (d / "c").string()) == 0);
  CHECK(slurp(d / "a" / "swap_tests.jsonl") == slurp(d / "b" / "swap_tests.jsonl"));
  CHECK(slurp(d / "a" / "swap_tests.jsonl") != slurp(d / "c" / "swap_tests.jsonl"));
  CHECK(run("run -n 2 -o " + (d / "e").string(), "QCG_SEED=abc") == 3);
}

TEST_CASE("config file with flag override") {
  const auto d = scratch("toml");
  std::ofstream(d / "cfg.toml") << "[experiment]\nn_qubits = 2\nrhs_case = \"case2\"\noutput_dir = \"" << (d / "from_file").string() << "\"\n";
  CHECK(run("run --config " + (d / "cfg.toml").string()) == 0);
  const auto s = qcg::read_json_file(d / "from_file" / "summary.json");
  CHECK(s.at("config").at("n_qubits") == 2);
  CHECK(s.at("config").at("rhs_case") == "case2");
  CHECK(run("run --config " + (d / "cfg.toml").string() + " -n 3 -o " + (d / "flag").string()) == 0);
  CHECK(qcg::read_json_file(d / "flag" / "summary.json").at("config").at("n_qubits") == 3);
  std::ofstream(d / "bad.toml") << "n_qubits = [1]\n";
  CHECK(run("run --config " + (d / "bad.toml").string()) == 3);
  std::ofstream(d / "bad_number.toml") << "eps = 0.1x\n";
  CHECK(run("run --config " + (d / "bad_number.toml").string()) == 3);
}

TEST_CASE("not converged exit code") {
  const auto d = scratch("nc");
  // Too few shots for the requested precision: the run aborts or fails to converge.
  const int code = run("run -n 4 --shots 10 --seed 3 -o " + (d / "a").string());
  CHECK((code == 2 || code == 4));
}

TEST_CASE("table2, poly, phases, encode, scalings") {
  const auto d = scratch("misc");
  CHECK(run("table2 -o " + (d / "t2.csv").string()) == 0);
  CHECK(slurp(d / "t2.csv").find("16,116.") != std::string::npos);
  CHECK(run("table2 --sizes 5") == 3);
  CHECK(run("poly sign --delta 0 --width 0.2 --eps 0.01 -o " + (d / "sign.json").string()) == 0);
  CHECK(qcg::read_json_file(d / "sign.json").at("degree_report").at("name") == "sign");
  CHECK(run("poly rect --delta 0.5 --width 0.2 --eps 0.05 --kind closed -o " + (d / "rect.json").string()) == 0);
  CHECK(run("poly inverse --kappa 8 --alpha 1 --eps 0.01 -o " + (d / "inv.json").string()) == 0);
  CHECK(run("poly lamp --gap 1 --alpha 4 --eps 0.1 -o " + (d / "lamp.json").string()) == 0);
  CHECK(run("poly sign --eps 5") == 3);
  std::ofstream(d / "p.json") << R"({"basis":"monomial","coeffs":[0,0.5,0,-0.3],"parity":"odd"})";
  CHECK(run("phases solve --poly " + (d / "p.json").string() + " --tol 1e-10 -o " + (d / "ph.json").string()) == 0);
  CHECK(run("phases verify --poly " + (d / "p.json").string() + " --phases " + (d / "ph.json").string() + " --tol 1e-10") == 0);
  std::ofstream(d / "q.json") << R"({"basis":"monomial","coeffs":[0,0.9,0,-0.1],"parity":"odd"})";
  CHECK(run("phases verify --poly " + (d / "q.json").string() + " --phases " + (d / "ph.json").string() + " --tol 1e-10") == 4);
  std::ofstream(d / "big.json") << R"({"basis":"monomial","coeffs":[0,2],"parity":"odd"})";
  CHECK(run("phases solve --poly " + (d / "big.json").string()) == 3);
  CHECK(run("encode verify -n 3 --kind dilation -o " + (d / "enc").string()) == 0);
  CHECK(fs::file_size(d / "enc.bin") == 16u * 16u * 16u);
  CHECK(run("encode verify -n 3 --kind lcu") == 0);
  CHECK(run("scalings fit -n 4 -o " + (d / "fit.json").string()) == 0);
  CHECK(qcg::read_json_file(d / "fit.json").size() == 4);
  CHECK(run("scalings -n 2,3,4,5 --regressor kappa") == 0);
}
