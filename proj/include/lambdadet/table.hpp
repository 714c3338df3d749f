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


// Plain-text result tables. One header line "# col, col, ...", rows of
// finite numbers printed with 9 significant digits and joined by ", ", and
// a provenance footer "# config_hash=<hex>, dt_ns=<dt>, n_max=<n>".
//
// Units live in the column name as a suffix (t_ns, drive_MHz, signal_GHz);
// columns without a suffix are dimensionless.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lambdadet {

struct Provenance {
  std::uint64_t config_hash = 0;
  double dt = 0.0;  // ns
  int n_max = 0;
};

class ResultTable {
 public:
  /// Throws std::invalid_argument for no columns, an empty or duplicate name.
  explicit ResultTable(std::vector<std::string> columns, Provenance provenance = {});

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  void set_provenance(const Provenance& p) { provenance_ = p; }
  bool empty() const noexcept { return rows_.empty(); }

  /// Throws std::invalid_argument on a width mismatch or a non-finite value.
  void add_row(std::vector<double> row);

  /// Column position; nullopt when absent.
  std::optional<std::size_t> find(std::string_view name) const;
  /// Copy of one column. Throws std::invalid_argument when absent.
  std::vector<double> column(std::string_view name) const;

  std::string format() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  Provenance provenance_;
};

/// Writes table.format() to `path`. Throws std::runtime_error when the file
/// cannot be written.
void emit_table(const ResultTable& table, const std::filesystem::path& path);

/// Reads the config hash back from a footer line; nullopt if absent.
std::optional<std::uint64_t> parse_footer_hash(std::string_view text);

/// "%.9g"
std::string format_number(double v);

}  // namespace lambdadet
