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

#include "baylime/cli/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "baylime/errors.hpp"

namespace baylime::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ConfigError("CSV ends inside a quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Dataset ingest_csv_text(std::string_view text, const CsvSchema& schema) {
  const auto records = parse_csv(text);
  if (records.empty()) throw ConfigError("CSV input is empty");
  const auto& header = records.front();
  if (records.size() < 2) throw ConfigError("CSV has a header but no data rows");

  for (const auto* list : {&schema.categorical, &schema.binary, &schema.drop}) {
    for (const auto& name : *list) {
      if (!contains(header, name)) throw ConfigError("unknown CSV column '" + name + "'");
    }
  }

  std::vector<std::size_t> keep;
  Dataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (contains(schema.drop, header[c])) continue;
    keep.push_back(c);
    ds.names.push_back(name);
    if (contains(schema.categorical, header[c])) {
      ds.kinds.push_back(FeatureKind::kCategorical);
    } else if (contains(schema.binary, header[c])) {
      ds.kinds.push_back(FeatureKind::kBinaryMask);
    } else {
      ds.kinds.push_back(FeatureKind::kNumerical);
    }
  }
  if (keep.empty()) throw ConfigError("CSV has no feature columns left");

  std::vector<std::map<std::string, std::size_t>> codes(keep.size());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw ConfigError("CSV row " + std::to_string(r) + " has " +
                        std::to_string(rec.size()) + " fields, header has " +
                        std::to_string(header.size()));
    }
    std::vector<double> row;
    row.reserve(keep.size());
    for (std::size_t f = 0; f < keep.size(); ++f) {
      const std::string& cell = rec[keep[f]];
      if (ds.kinds[f] == FeatureKind::kCategorical) {
        const std::string key = trim(cell);
        auto [it, inserted] = codes[f].try_emplace(key, codes[f].size());
        if (inserted) ds.categories[f].push_back(key);
        row.push_back(static_cast<double>(it->second));
        continue;
      }
      double v = 0.0;
      if (!parse_number(cell, v)) {
        throw ConfigError("non-numeric value '" + cell + "' at row " +
                          std::to_string(r) + ", column " + std::to_string(keep[f] + 1) +
                          " (" + ds.names[f] + ")");
      }
      row.push_back(v);
    }
    ds.rows.push_back(std::move(row));
  }

  const double count = static_cast<double>(ds.rows.size());
  for (std::size_t f = 0; f < keep.size(); ++f) {
    if (ds.kinds[f] == FeatureKind::kNumerical) {
      double mean = 0.0;
      for (const auto& row : ds.rows) mean += row[f];
      mean /= count;
      double var = 0.0;
      for (const auto& row : ds.rows) var += (row[f] - mean) * (row[f] - mean);
      ds.numeric_scale[f] = {mean, std::sqrt(var / count)};
    } else if (ds.kinds[f] == FeatureKind::kCategorical) {
      std::vector<double> freq(ds.categories[f].size(), 0.0);
      for (const auto& row : ds.rows) freq[static_cast<std::size_t>(row[f])] += 1.0;
      for (double& p : freq) p /= count;
      ds.categorical_frequencies[f] = std::move(freq);
    }
  }
  return ds;
}

Dataset ingest_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_csv_text(buf.str(), schema);
}

Instance Dataset::instance(std::size_t row) const {
  if (row >= rows.size()) {
    throw ConfigError("instance row " + std::to_string(row) + " out of range (" +
                      std::to_string(rows.size()) + " rows)");
  }
  return Instance(rows[row], kinds, names);
}

PerturbConfig Dataset::perturb_config(std::size_t n, std::uint64_t seed) const {
  PerturbConfig config;
  config.n = n;
  config.seed = seed;
  config.numeric_scale = numeric_scale;
  config.categorical_frequencies = categorical_frequencies;
  return config;
}

}  // namespace baylime::cli
