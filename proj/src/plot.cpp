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


#include "lambdadet/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lambdadet {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen_if_flat() {
    if (hi > lo) return;
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
};

Range range_of(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  Range r{*lo, *hi};
  r.widen_if_flat();
  return r;
}

// Ticks at 1, 2 or 5 times a power of ten, about five per axis.
std::vector<double> ticks(const Range& r) {
  const double raw = (r.hi - r.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return out;
}

struct Frame {
  Range x, y;
  double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * kPlotW; }
  double py(double v) const { return kTop + kPlotH - (v - y.lo) / (y.hi - y.lo) * kPlotH; }
};

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
     << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<defs><clipPath id=\"plot\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop)
     << "\" width=\"" << num(kPlotW) << "\" height=\"" << num(kPlotH)
     << "\"/></clipPath></defs>\n";
  if (!title.empty()) {
    os << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-size=\"14\">" << escape(title) << "</text>\n";
  }
}

void draw_axes(std::ostringstream& os, const Frame& f, const std::string& xlabel,
               const std::string& ylabel) {
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlotW)
     << "\" height=\"" << num(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(f.x)) {
    const double x = f.px(t);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + kPlotH) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(kTop + kPlotH + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + kPlotH + 18)
       << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ticks(f.y)) {
    const double y = f.py(t);
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
       << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
       << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"" << num(kHeight - 15)
     << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n"
     << "<text transform=\"translate(20," << num(kTop + kPlotH / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
}

void draw_curve(std::ostringstream& os, const Frame& f, const Curve& c, const char* colour,
                bool dashed) {
  os << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << colour
     << "\" stroke-width=\"1.5\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    if (i) os << ' ';
    os << num(f.px(c.x[i])) << ',' << num(f.py(c.y[i]));
  }
  os << "\"/>\n";
}

void draw_legend(std::ostringstream& os, const std::vector<std::pair<std::string, const char*>>& items,
                 bool dashed) {
  double y = kTop + 10;
  for (const auto& [label, colour] : items) {
    const double x = kLeft + kPlotW + 15;
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 25)
       << "\" y2=\"" << num(y) << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
       << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n"
       << "<text x=\"" << num(x + 30) << "\" y=\"" << num(y + 4) << "\">" << escape(label)
       << "</text>\n";
    y += 18;
  }
}

// Piecewise-linear approximation of a perceptually uniform dark-to-yellow map.
std::string colour_at(double u) {
  static constexpr std::array<std::array<double, 3>, 5> kStops = {{{68, 1, 84},
                                                                   {59, 82, 139},
                                                                   {33, 145, 140},
                                                                   {94, 201, 98},
                                                                   {253, 231, 37}}};
  u = std::clamp(u, 0.0, 1.0) * (kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), kStops.size() - 2);
  const double s = u - static_cast<double>(i);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(kStops[i][0] + s * (kStops[i + 1][0] - kStops[i][0]))),
                static_cast<int>(std::lround(kStops[i][1] + s * (kStops[i + 1][1] - kStops[i][1]))),
                static_cast<int>(std::lround(kStops[i][2] + s * (kStops[i + 1][2] - kStops[i][2]))));
  return buf;
}

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Cell boundaries halfway between neighbouring grid values.
std::vector<double> edges(const std::vector<double>& v) {
  std::vector<double> e(v.size() + 1);
  if (v.size() == 1) {
    e[0] = v[0] - 0.5;
    e[1] = v[0] + 0.5;
    return e;
  }
  for (std::size_t i = 1; i < v.size(); ++i) e[i] = 0.5 * (v[i - 1] + v[i]);
  e.front() = v.front() - (e[1] - v.front());
  e.back() = v.back() + (v.back() - e[v.size() - 1]);
  return e;
}

std::string render_line(const ResultTable& table, const PlotRequest& req) {
  if (req.values.empty()) throw std::invalid_argument("line plot: no value columns");
  const std::vector<double> xs = table.column(req.x);
  std::vector<Curve> curves;
  std::vector<double> groups;
  if (!req.group.empty()) groups = table.column(req.group);

  for (const std::string& name : req.values) {
    const std::vector<double> ys = table.column(name);
    if (groups.empty()) {
      curves.push_back({name, xs, ys});
      continue;
    }
    std::map<double, Curve> split;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Curve& c = split[groups[i]];
      c.x.push_back(xs[i]);
      c.y.push_back(ys[i]);
    }
    for (auto& [g, c] : split) {
      c.label = (req.values.size() > 1 ? name + ", " : std::string()) + req.group + "=" + num(g);
      curves.push_back(std::move(c));
    }
  }

  std::vector<double> all_y;
  for (const Curve& c : curves) all_y.insert(all_y.end(), c.y.begin(), c.y.end());
  Frame f{range_of(xs), range_of(all_y)};
  const double pad = 0.04 * (f.y.hi - f.y.lo);
  f.y.lo -= pad;
  f.y.hi += pad;

  std::ostringstream os;
  open_svg(os, req.title);
  std::string ylabel;
  for (std::size_t i = 0; i < req.values.size(); ++i) ylabel += (i ? ", " : "") + axis_label(req.values[i]);
  draw_axes(os, f, axis_label(req.x), ylabel);
  std::vector<std::pair<std::string, const char*>> legend;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* colour = kPalette[i % kPalette.size()];
    draw_curve(os, f, curves[i], colour, false);
    legend.emplace_back(curves[i].label, colour);
  }
  for (std::size_t i = 0; i < req.overlays.size(); ++i) {
    draw_curve(os, f, req.overlays[i], "#555555", true);
  }
  draw_legend(os, legend, false);
  os << "</svg>\n";
  return os.str();
}

std::string render_heatmap(const ResultTable& table, const PlotRequest& req) {
  if (req.values.size() != 1) throw std::invalid_argument("heatmap: need exactly one value column");
  const std::vector<double> xs = table.column(req.x);
  const std::vector<double> ys = table.column(req.y);
  const std::vector<double> zs = table.column(req.values.front());
  const std::vector<double> gx = distinct(xs);
  const std::vector<double> gy = distinct(ys);
  if (gx.size() * gy.size() != xs.size()) {
    throw std::invalid_argument("heatmap: rows do not form a rectangular grid");
  }
  std::map<std::pair<double, double>, double> cells;
  for (std::size_t i = 0; i < xs.size(); ++i) cells[{xs[i], ys[i]}] = zs[i];
  if (cells.size() != xs.size()) throw std::invalid_argument("heatmap: repeated grid point");

  const std::vector<double> ex = edges(gx);
  const std::vector<double> ey = edges(gy);
  const Frame f{{ex.front(), ex.back()}, {ey.front(), ey.back()}};
  Range zr = range_of(zs);

  std::ostringstream os;
  open_svg(os, req.title);
  for (std::size_t i = 0; i < gx.size(); ++i) {
    for (std::size_t j = 0; j < gy.size(); ++j) {
      const double z = cells.at({gx[i], gy[j]});
      const double x0 = f.px(ex[i]);
      const double y0 = f.py(ey[j + 1]);
      os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
         << num(f.px(ex[i + 1]) - x0 + 0.3) << "\" height=\"" << num(f.py(ey[j]) - y0 + 0.3)
         << "\" fill=\"" << colour_at((z - zr.lo) / (zr.hi - zr.lo)) << "\"/>\n";
    }
  }
  std::vector<std::pair<std::string, const char*>> legend;
  for (const Curve& c : req.overlays) {
    draw_curve(os, f, c, "#dddddd", true);
    legend.emplace_back(c.label, "#aaaaaa");
  }
  draw_axes(os, f, axis_label(req.x), axis_label(req.y));

  // colour bar
  const double bx = kLeft + kPlotW + 20;
  constexpr int kSteps = 50;
  for (int k = 0; k < kSteps; ++k) {
    const double u0 = static_cast<double>(k) / kSteps;
    os << "<rect x=\"" << num(bx) << "\" y=\"" << num(kTop + kPlotH * (1.0 - u0 - 1.0 / kSteps))
       << "\" width=\"16\" height=\"" << num(kPlotH / kSteps + 0.3) << "\" fill=\""
       << colour_at(u0 + 0.5 / kSteps) << "\"/>\n";
  }
  os << "<text x=\"" << num(bx + 22) << "\" y=\"" << num(kTop + 4) << "\">" << num(zr.hi)
     << "</text>\n<text x=\"" << num(bx + 22) << "\" y=\"" << num(kTop + kPlotH + 4) << "\">"
     << num(zr.lo) << "</text>\n<text x=\"" << num(bx) << "\" y=\"" << num(kTop - 8) << "\">"
     << escape(axis_label(req.values.front())) << "</text>\n";
  if (!legend.empty()) {
    double y = kTop + kPlotH + 24;
    for (const auto& [label, colour] : legend) {
      os << "<line x1=\"" << num(bx) << "\" y1=\"" << num(y) << "\" x2=\"" << num(bx + 25)
         << "\" y2=\"" << num(y) << "\" stroke=\"" << colour
         << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n<text x=\"" << num(bx + 30)
         << "\" y=\"" << num(y + 4) << "\">" << escape(label) << "</text>\n";
      y += 16;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string axis_label(const std::string& column) {
  const auto us = column.rfind('_');
  if (us == std::string::npos) return column;
  const std::string unit = column.substr(us + 1);
  for (const char* known : {"ns", "GHz", "MHz", "kHz", "rad"}) {
    if (unit == known) return column.substr(0, us) + " [" + unit + "]";
  }
  return column;
}

std::string render_svg(const ResultTable& table, const PlotRequest& request) {
  if (table.empty()) throw std::invalid_argument("plot: table has no rows");
  return request.kind == PlotKind::kLine ? render_line(table, request)
                                         : render_heatmap(table, request);
}

void emit_plot(const ResultTable& table, const PlotRequest& request,
               const std::filesystem::path& path) {
  const std::string svg = render_svg(table, request);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << svg;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace lambdadet
