// Copyright 2026 The lambdadet Authors
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


#include "lambdadet/table.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lambdadet {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

ResultTable::ResultTable(std::vector<std::string> columns, Provenance provenance)
    : columns_(std::move(columns)), provenance_(provenance) {
  if (columns_.empty()) throw std::invalid_argument("ResultTable: no columns");
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].empty()) throw std::invalid_argument("ResultTable: empty column name");
    for (std::size_t j = 0; j < i; ++j) {
      if (columns_[i] == columns_[j]) {
        throw std::invalid_argument("ResultTable: duplicate column '" + columns_[i] + "'");
      }
    }
  }
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("ResultTable: row has " + std::to_string(row.size()) +
                                " values, expected " + std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!std::isfinite(row[i])) {
      throw std::invalid_argument("ResultTable: non-finite value in column '" + columns_[i] + "'");
    }
  }
  rows_.push_back(std::move(row));
}

std::optional<std::size_t> ResultTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<double> ResultTable::column(std::string_view name) const {
  const auto idx = find(name);
  if (!idx) throw std::invalid_argument("ResultTable: no column '" + std::string(name) + "'");
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[*idx]);
  return out;
}

std::string ResultTable::format() const {
  std::string out = "# ";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ", ";
    out += columns_[i];
  }
  out += '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ", ";
      out += format_number(r[i]);
    }
    out += '\n';
  }
  char footer[128];
  std::snprintf(footer, sizeof footer, "# config_hash=%016" PRIx64 ", dt_ns=%s, n_max=%d\n",
                provenance_.config_hash, format_number(provenance_.dt).c_str(), provenance_.n_max);
  out += footer;
  return out;
}

void emit_table(const ResultTable& table, const std::filesystem::path& path) {
  const std::string text = table.format();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::optional<std::uint64_t> parse_footer_hash(std::string_view text) {
  constexpr std::string_view key = "# config_hash=";
  const auto pos = text.rfind(key);
  if (pos == std::string_view::npos) return std::nullopt;
  const std::string_view hex = text.substr(pos + key.size());
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (ec != std::errc() || ptr - hex.data() != 16) return std::nullopt;
  return v;
}

}  // namespace lambdadet
