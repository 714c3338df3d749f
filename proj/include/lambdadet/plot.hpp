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


// Static SVG rendering of result tables: line plots and heatmaps.

#pragma once

#include "lambdadet/table.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lambdadet {

enum class PlotKind { kLine, kHeatmap };

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotRequest {
  PlotKind kind = PlotKind::kLine;
  std::string title;
  /// Horizontal axis column.
  std::string x;
  /// Heatmap only: vertical axis column.
  std::string y;
  /// Line: one curve per column. Heatmap: exactly one colour column.
  std::vector<std::string> values;
  /// Line only: split rows into one curve per distinct value of this column.
  std::string group;
  /// Dashed guide curves in data coordinates, drawn on top.
  std::vector<Curve> overlays;
};

/// "drive_MHz" -> "drive [MHz]"; names without a unit suffix are unchanged.
std::string axis_label(const std::string& column);

/// Throws std::invalid_argument for an empty table, a missing column, or a
/// heatmap whose rows do not fill a rectangular grid.
std::string render_svg(const ResultTable& table, const PlotRequest& request);

/// Renders first, so nothing is written when rendering fails. Throws
/// std::runtime_error when the file cannot be written.
void emit_plot(const ResultTable& table, const PlotRequest& request,
               const std::filesystem::path& path);

}  // namespace lambdadet
