/*
 * Copyright 2026 The BayLIME Toolkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BAYLIME_CLI_DATASET_HPP_
#define BAYLIME_CLI_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "baylime/perturb.hpp"
#include "baylime/types.hpp"

namespace baylime::cli {

struct CsvSchema {
  std::vector<std::string> categorical;
  std::vector<std::string> binary;
  std::vector<std::string> drop;
};

// A CSV table with per-column scaling statistics. Numerical columns carry
// their mean and population standard deviation; categorical columns are
// encoded as indices in order of first appearance and carry frequencies.
struct Dataset {
  std::vector<std::string> names;
  std::vector<FeatureKind> kinds;
  std::vector<std::vector<double>> rows;
  std::map<std::size_t, NumericScale> numeric_scale;
  std::map<std::size_t, std::vector<double>> categorical_frequencies;
  std::map<std::size_t, std::vector<std::string>> categories;

  std::size_t size() const { return rows.size(); }
  Instance instance(std::size_t row) const;
  PerturbConfig perturb_config(std::size_t n, std::uint64_t seed) const;
};

// RFC 4180 records (quoted fields, doubled quotes, CRLF or LF).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

// Throws ConfigError for empty input, ragged rows, unknown schema columns
// and non-numeric cells in numerical columns (with row/column coordinates).
Dataset ingest_csv_text(std::string_view text, const CsvSchema& schema);
Dataset ingest_csv(const std::string& path, const CsvSchema& schema);

}  // namespace baylime::cli

#endif  // BAYLIME_CLI_DATASET_HPP_
