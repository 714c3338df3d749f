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


#include "lambdadet/commands.hpp"

#include "lambdadet/errors.hpp"
#include "lambdadet/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lambdadet {

namespace {

using units::to_GHz;
using units::to_MHz;

Provenance provenance(const RunConfig& cfg, const SystemParams& p) {
  return {cfg.hash(), p.dt, p.n_max};
}

Curve transition_curve(const SystemParams& p, const std::vector<double>& drives, int i, int j) {
  Curve c{"w" + std::to_string(i) + std::to_string(j), {}, {}};
  for (double d : drives) {
    c.x.push_back(to_MHz(d));
    c.y.push_back(to_GHz(dressed_spectrum(p, d).transition(i, j)));
  }
  return c;
}

std::vector<CommandOutput> cmd_rates(const RunConfig& cfg) {
  SystemParams p = cfg.params;
  p.n_max = 1;
  const std::vector<double> drives = cfg.drive_grid.values();
  ResultTable t({"drive_MHz", "k31_MHz", "k32_MHz", "k41_MHz", "k42_MHz", "w31_GHz", "w32_GHz",
                 "w41_GHz", "w42_GHz"},
                provenance(cfg, p));
  for (const RateRow& r : rate_sweep(p, drives)) {
    t.add_row({to_MHz(r.drive), to_MHz(r.k31), to_MHz(r.k32), to_MHz(r.k41), to_MHz(r.k42),
               to_GHz(r.w31), to_GHz(r.w32), to_GHz(r.w41), to_GHz(r.w42)});
  }
  PlotRequest plot;
  plot.title = "Radiative decay rates of the dressed states";
  plot.x = "drive_MHz";
  plot.values = {"k31_MHz", "k32_MHz", "k41_MHz", "k42_MHz"};
  return {{"rates", std::move(t), {{"rates", plot}}}};
}

std::vector<CommandOutput> cmd_match(const RunConfig& cfg) {
  SystemParams p = cfg.params;
  p.n_max = 1;
  const double drive = find_impedance_match(p);
  const double det = p.drive_detuning();
  const double dtheta =
      std::abs(mixing_angle(drive, det - 2.0 * p.chi) - mixing_angle(drive, det));
  const DressedSpectrum s = dressed_spectrum(p, drive);
  ResultTable t({"drive_MHz", "theta_diff_rad", "k31_MHz", "k32_MHz", "w31_GHz", "w41_GHz"},
                provenance(cfg, p));
  t.add_row({to_MHz(drive), dtheta, to_MHz(s.rate(3, 1)), to_MHz(s.rate(3, 2)),
             to_GHz(s.transition(3, 1)), to_GHz(s.transition(4, 1))});
  return {{"match", std::move(t), {}}};
}

std::vector<CommandOutput> cmd_reflection(const RunConfig& cfg, int jobs) {
  const SystemParams p = cfg.capture_params(1);
  const std::vector<double> drives = cfg.drive_grid.values();
  ResultTable t({"drive_MHz", "signal_GHz", "r_re", "r_im", "r_abs"}, provenance(cfg, p));
  for (const ReflectionPoint& pt : reflection_map(p, drives, cfg.signal_grid.values(), jobs)) {
    t.add_row({to_MHz(pt.drive), to_GHz(pt.omega_s), pt.r.real(), pt.r.imag(), std::abs(pt.r)});
  }
  PlotRequest plot;
  plot.kind = PlotKind::kHeatmap;
  plot.title = "Reflection magnitude |r|";
  plot.x = "drive_MHz";
  plot.y = "signal_GHz";
  plot.values = {"r_abs"};
  plot.overlays = {transition_curve(p, drives, 3, 1), transition_curve(p, drives, 4, 1)};
  return {{"reflection", std::move(t), {{"reflection", plot}}}};
}

std::vector<CommandOutput> cmd_capture(const RunConfig& cfg) {
  const CaptureConfig c = cfg.capture_config();
  const StageResult r = run_capture(c);
  std::vector<std::string> cols{"t_ns"};
  for (const StageCurve& curve : r.curves) cols.push_back("p" + std::to_string(curve.photons));
  cols.push_back("pbar0");
  ResultTable t(cols, provenance(cfg, c.params));
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<double> row{r.times[i]};
    for (const StageCurve& curve : r.curves) row.push_back(curve.values[i]);
    row.push_back(r.reference[i]);
    t.add_row(std::move(row));
  }
  PlotRequest plot;
  plot.title = "Qubit excitation during capture";
  plot.x = "t_ns";
  plot.values.assign(cols.begin() + 1, cols.end());
  return {{"capture", std::move(t), {{"capture", plot}}}};
}

std::vector<CommandOutput> cmd_sweep_length(const RunConfig& cfg, int jobs) {
  std::vector<CommandOutput> out;
  for (PulseShape shape : cfg.shapes) {
    RunConfig shaped = cfg;
    shaped.shape = shape;
    shaped.photons = {1};
    const CaptureConfig templ = shaped.capture_config();
    const PulseLengthSweep sweep = sweep_pulse_length(templ, cfg.lengths, cfg.gammas, jobs);
    const std::string stem = "sweep_length_" + std::string(to_string(shape));

    ResultTable points({"gamma_MHz", "length_ns", "p1"}, provenance(cfg, templ.params));
    for (const PulseLengthPoint& pt : sweep.points) {
      points.add_row({to_MHz(pt.gamma), pt.length, pt.p1});
    }
    ResultTable optima({"gamma_MHz", "l_opt_ns", "p1"}, provenance(cfg, templ.params));
    for (const PulseLengthOptimum& o : sweep.optima) optima.add_row({to_MHz(o.gamma), o.length, o.p1});

    PlotRequest plot;
    plot.title = "Detection probability against pulse length (" + std::string(to_string(shape)) + ")";
    plot.x = "length_ns";
    plot.values = {"p1"};
    plot.group = "gamma_MHz";
    out.push_back({stem, std::move(points), {{stem, plot}}});
    out.push_back({stem + "_optima", std::move(optima), {}});
  }
  return out;
}

std::vector<CommandOutput> cmd_sweep_map(const RunConfig& cfg, int jobs) {
  const bool two_photon = std::find(cfg.photons.begin(), cfg.photons.end(), 2) != cfg.photons.end();
  if (two_photon && !(cfg.drive_grid.start > 0.0)) {
    throw ConfigError(
        "key 'drive_min_MHz': must be > 0 when photons include 2, since P2/P1 is undefined at "
        "zero drive");
  }
  RunConfig run = cfg;
  run.photons = two_photon ? std::vector<int>{1, 2} : std::vector<int>{1};
  const CaptureConfig templ = run.capture_config();
  const std::vector<double> drives = cfg.drive_grid.values();
  const auto points =
      sweep_drive_map(templ, drives, cfg.signal_grid.values(), two_photon, jobs);

  std::vector<std::string> cols{"drive_MHz", "signal_GHz", "p1"};
  if (two_photon) {
    cols.push_back("p2");
    cols.push_back("ratio");
  }
  ResultTable t(cols, provenance(cfg, templ.params));
  for (const DriveMapPoint& pt : points) {
    std::vector<double> row{to_MHz(pt.drive), to_GHz(pt.omega_s), pt.p1};
    if (two_photon) {
      row.push_back(*pt.p2);
      row.push_back(*pt.ratio);
    }
    t.add_row(std::move(row));
  }

  const std::vector<Curve> guides{transition_curve(templ.params, drives, 3, 1),
                                  transition_curve(templ.params, drives, 4, 1)};
  PlotRequest p1;
  p1.kind = PlotKind::kHeatmap;
  p1.title = "Single-photon detection probability";
  p1.x = "drive_MHz";
  p1.y = "signal_GHz";
  p1.values = {"p1"};
  p1.overlays = guides;
  std::vector<NamedPlot> plots{{"sweep_map_p1", p1}};
  if (two_photon) {
    PlotRequest ratio = p1;
    ratio.title = "Two-photon to one-photon detection ratio";
    ratio.values = {"ratio"};
    plots.push_back({"sweep_map_ratio", ratio});
  }
  return {{"sweep_map", std::move(t), std::move(plots)}};
}

std::vector<CommandOutput> cmd_reset(const RunConfig& cfg) {
  const ResetConfig c = cfg.reset_config();
  const StageResult r = run_reset(c);
  ResultTable t({"t_ns", "pe", "pe_undriven"}, provenance(cfg, c.params));
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    t.add_row({r.times[i], r.curves.front().values[i], r.reference[i]});
  }
  PlotRequest plot;
  plot.title = "Qubit excitation during reset";
  plot.x = "t_ns";
  plot.values = {"pe", "pe_undriven"};
  return {{"reset", std::move(t), {{"reset", plot}}}};
}

std::vector<CommandOutput> cmd_sweep_reset(const RunConfig& cfg, int jobs) {
  const ResetConfig templ = cfg.reset_config();
  const std::vector<double> drives = cfg.reset_drive_grid.values();
  ResultTable t({"drive_MHz", "reset_GHz", "pe"}, provenance(cfg, templ.params));
  for (const ResetMapPoint& pt : sweep_reset_map(templ, drives, cfg.reset_grid.values(), jobs)) {
    t.add_row({to_MHz(pt.drive), to_GHz(pt.omega_reset), pt.p_excited});
  }
  PlotRequest plot;
  plot.kind = PlotKind::kHeatmap;
  plot.title = "Qubit excitation after reset";
  plot.x = "drive_MHz";
  plot.y = "reset_GHz";
  plot.values = {"pe"};
  plot.overlays = {transition_curve(templ.params, drives, 3, 2)};
  return {{"sweep_reset", std::move(t), {{"sweep_reset", plot}}}};
}

std::vector<CommandOutput> cmd_audit(const RunConfig& cfg, int jobs) {
  const AuditReport report = convergence_audit(cfg, jobs);
  ResultTable t({"photons", "base", "dt_half", "n_max_plus", "delta_dt", "delta_n_max", "flag_dt",
                 "flag_n_max"},
                {cfg.hash(), report.dt, report.n_max});
  for (const AuditEntry& e : report.entries) {
    t.add_row({static_cast<double>(e.photons), e.base, e.dt_half, e.n_max_plus, e.delta_dt,
               e.delta_n_max, e.flag_dt ? 1.0 : 0.0, e.flag_n_max ? 1.0 : 0.0});
  }
  return {{"audit", std::move(t), {}}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"rates",        "match",     "reflection",
                                                 "capture",      "sweep-length", "sweep-map",
                                                 "reset",        "sweep-reset",  "audit"};
  return names;
}

std::vector<CommandOutput> run_command(std::string_view name, const RunConfig& config, int jobs) {
  if (name == "rates") return cmd_rates(config);
  if (name == "match") return cmd_match(config);
  if (name == "reflection") return cmd_reflection(config, jobs);
  if (name == "capture") return cmd_capture(config);
  if (name == "sweep-length") return cmd_sweep_length(config, jobs);
  if (name == "sweep-map") return cmd_sweep_map(config, jobs);
  if (name == "reset") return cmd_reset(config);
  if (name == "sweep-reset") return cmd_sweep_reset(config, jobs);
  if (name == "audit") return cmd_audit(config, jobs);
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::vector<std::filesystem::path> write_outputs(const std::vector<CommandOutput>& outputs,
                                                 const std::filesystem::path& dir, bool plots) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const CommandOutput& o : outputs) {
    const auto path = dir / (o.stem + ".csv");
    emit_table(o.table, path);
    written.push_back(path);
    if (!plots) continue;
    for (const NamedPlot& p : o.plots) {
      const auto svg = dir / (p.stem + ".svg");
      emit_plot(o.table, p.request, svg);
      written.push_back(svg);
    }
  }
  return written;
}

bool AuditReport::flagged() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const AuditEntry& e) { return e.flag_dt || e.flag_n_max; });
}

AuditReport convergence_audit(const RunConfig& config, int jobs) {
  AuditReport report;
  report.stage = config.audit_stage;
  constexpr int kNoTrajectory = std::numeric_limits<int>::max();

  // Three runs: baseline, halved step, one more Fock level.
  std::vector<StageResult> runs(3);
  double threshold = 0.0;
  if (config.audit_stage == AuditStage::kCapture) {
    CaptureConfig base = config.capture_config();
    base.record_stride = kNoTrajectory;
    if (!base.drive) base.drive = find_impedance_match(base.params);
    report.dt = base.params.dt;
    report.n_max = base.params.n_max;
    threshold = kAuditCaptureNmaxThreshold;
    std::vector<CaptureConfig> variants(3, base);
    variants[1].params.dt *= 0.5;
    variants[2].params.n_max += 1;
    parallel_for(3, jobs, [&](std::size_t i) { runs[i] = run_capture(variants[i]); });
  } else {
    ResetConfig base = config.reset_config();
    base.record_stride = kNoTrajectory;
    report.dt = base.params.dt;
    report.n_max = base.params.n_max;
    threshold = kAuditResetNmaxThreshold;
    std::vector<ResetConfig> variants(3, base);
    variants[1].params.dt *= 0.5;
    variants[2].params.n_max += 1;
    parallel_for(3, jobs, [&](std::size_t i) { runs[i] = run_reset(variants[i]); });
  }

  for (const StageCurve& c : runs[0].curves) {
    AuditEntry e;
    e.photons = c.photons;
    e.base = c.final_value;
    e.dt_half = runs[1].probability(c.photons);
    e.n_max_plus = runs[2].probability(c.photons);
    e.delta_dt = std::abs(e.dt_half - e.base);
    e.delta_n_max = std::abs(e.n_max_plus - e.base);
    e.flag_dt = e.delta_dt > kAuditDtThreshold;
    e.flag_n_max = e.delta_n_max > threshold;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace lambdadet
