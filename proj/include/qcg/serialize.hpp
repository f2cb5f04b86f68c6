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
 * JSON, CSV and binary formats.
 *
 * Dense complex matrices are stored row-major as little-endian f64 pairs
 * (re, im). An encoding is `<stem>.bin` plus `<stem>.json` holding
 * {alpha, n_a, n_s, eps}.
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcg/encodings.hpp"
#include "qcg/qet.hpp"
#include "qcg/solvers.hpp"

namespace qcg {

using json = nlohmann::json;

json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

json to_json(const PhaseFactors& phi);
PhaseFactors phases_from_json(const json& j);

json to_json(const DegreeReport& r);
json to_json(const QspResidual& r);
json to_json(const QetAssembly& a);
json to_json(const SwapTestResult& r);
json to_json(const ScalingFit& f);
json to_json(const QueryCost& q);

/// Run summary without per-iteration rows.
json summary_json(const QcgTrace& trace);

void write_matrix_binary(std::ostream& os, const Matrix& m);
Matrix read_matrix_binary(std::istream& is, Eigen::Index rows, Eigen::Index cols);

void write_encoding(const std::filesystem::path& stem, const BlockEncoding& be);
BlockEncoding read_encoding(const std::filesystem::path& stem);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Parses a header line plus numeric rows ("nan" allowed).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& is);

}  // namespace qcg
