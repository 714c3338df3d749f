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

#include "lambdadet/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace lambdadet {

double default_beta(PulseShape shape) {
  switch (shape) {
    case PulseShape::kSquare:
      return 1.0;
    case PulseShape::kExponential:
      return 3.0;
    default:
      return 2.0;
  }
}

void CaptureConfig::validate() const {
  params.validate();
  if (!(length > 0.0)) throw std::invalid_argument("capture: pulse length must be positive");
  if (!(resolved_beta() > 0.0)) throw std::invalid_argument("capture: beta must be positive");
  if (!(smoothing_width > 0.0)) {
    throw std::invalid_argument("capture: smoothing width must be positive");
  }
  if (photon_numbers.empty()) throw std::invalid_argument("capture: no photon numbers requested");
  for (int k : photon_numbers) {
    if (k < 0 || k > 2) {
      throw std::invalid_argument("capture: photon numbers must lie in {0,1,2}, got " +
                                  std::to_string(k));
    }
  }
  if (record_stride < 1) throw std::invalid_argument("capture: record stride must be >= 1");
}

void ResetConfig::validate() const {
  params.validate();
  if (n_mean < 0.0) throw std::invalid_argument("reset: mean photon number must be >= 0");
  if (!(length > 0.0) || !(beta > 0.0) || !(smoothing_width > 0.0)) {
    throw std::invalid_argument("reset: length, beta and smoothing width must be positive");
  }
  if (record_stride < 1) throw std::invalid_argument("reset: record stride must be >= 1");
}

double StageResult::probability(int photons) const { return curve(photons).final_value; }

const StageCurve& StageResult::curve(int photons) const {
  for (const StageCurve& c : curves) {
    if (c.photons == photons) return c;
  }
  throw std::out_of_range("StageResult: no curve for photon number " + std::to_string(photons));
}

std::vector<double> adiabatic_reference(const PulseEnvelope& drive, const SystemParams& params,
                                        std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  const double sqrt_gp = std::sqrt(params.gamma_prime);
  for (double t : times) {
    const double s = std::sin(mixing_angle(sqrt_gp * drive.magnitude(t), params.drive_detuning()));
    out.push_back(s * s);
  }
  return out;
}

StageResult run_capture(const CaptureConfig& config) {
  config.validate();
  const SystemParams& p = config.params;
  const double beta = config.resolved_beta();
  const double drive = config.drive ? *config.drive : find_impedance_match(p);
  const int order = *std::max_element(config.photon_numbers.begin(), config.photon_numbers.end());

  EvolveSpec spec;
  spec.resonator_frame = config.omega_s;
  spec.order = order;
  spec.t_initial = config.t_initial();
  spec.t_final = config.t_final();
  spec.record_stride = config.record_stride;
  spec.drive = drive_envelope(drive, config.length, beta, config.smoothing_width, 0.0,
                              p.gamma_prime);
  if (order > 0) spec.signal = signal_envelope(config.shape, config.length, beta, 0.0);

  const Trajectory traj = evolve_hierarchy(p, spec);

  StageResult result;
  result.times = traj.times;
  std::vector<int> photons = config.photon_numbers;
  std::sort(photons.begin(), photons.end());
  photons.erase(std::unique(photons.begin(), photons.end()), photons.end());
  for (int k : photons) {
    StageCurve c;
    c.photons = k;
    c.values.reserve(traj.records.size());
    for (const TrajectoryRecord& r : traj.records) c.values.push_back(r.excitation[k]);
    c.final_value = c.values.back();
    result.curves.push_back(std::move(c));
  }
  result.reference = adiabatic_reference(*spec.drive, p, result.times);
  return result;
}

StageResult run_reset(const ResetConfig& config) {
  config.validate();
  const SystemParams& p = config.params;

  EvolveSpec spec;
  spec.resonator_frame = config.omega_reset;
  spec.order = 0;
  spec.t_initial = config.t_initial();
  spec.t_final = config.t_final();
  spec.initial = {config.initial, 0};
  spec.record_stride = config.record_stride;
  spec.drive = drive_envelope(config.drive, config.length, config.beta, config.smoothing_width,
                              0.0, p.gamma_prime);
  spec.classical = reset_envelope(config.n_mean, config.length, 0.0);

  const Trajectory traj = evolve_hierarchy(p, spec);

  StageResult result;
  result.times = traj.times;
  StageCurve c;
  c.photons = 0;
  for (const TrajectoryRecord& r : traj.records) c.values.push_back(r.excitation[0]);
  c.final_value = c.values.back();
  result.curves.push_back(std::move(c));
  for (double t : result.times) {
    result.reference.push_back(config.initial == Qubit::kExcited
                                   ? std::exp(-p.gamma * (t - spec.t_initial))
                                   : 0.0);
  }
  return result;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;

  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("linear_grid: need step > 0 and stop >= start");
  }
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (long i = 0; i <= n; ++i) out.push_back(start + i * step);
  return out;
}

PulseLengthSweep sweep_pulse_length(const CaptureConfig& templ, std::span<const double> lengths,
                                    std::span<const double> gammas, int jobs) {
  if (lengths.empty() || gammas.empty()) {
    throw std::invalid_argument("sweep_pulse_length: empty grid");
  }
  std::vector<double> ls(lengths.begin(), lengths.end());
  std::vector<double> gs(gammas.begin(), gammas.end());
  std::sort(ls.begin(), ls.end());
  for (double& g : gs) g = std::max(g, templ.params.gamma_prime);
  std::sort(gs.begin(), gs.end());
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());

  // The matched drive depends only on the Hamiltonian, not on gamma.
  CaptureConfig base = templ;
  if (!base.drive) base.drive = find_impedance_match(base.params);
  base.photon_numbers = {1};

  PulseLengthSweep out;
  out.points.resize(ls.size() * gs.size());
  parallel_for(out.points.size(), jobs, [&](std::size_t i) {
    CaptureConfig c = base;
    c.params.gamma = gs[i / ls.size()];
    c.length = ls[i % ls.size()];
    c.record_stride = std::numeric_limits<int>::max();
    const double p1 = run_capture(c).probability(1);
    out.points[i] = {c.params.gamma, c.length, p1};
  });

  for (std::size_t g = 0; g < gs.size(); ++g) {
    const auto first = out.points.begin() + static_cast<long>(g * ls.size());
    const auto best = std::max_element(first, first + static_cast<long>(ls.size()),
                                       [](const auto& x, const auto& y) { return x.p1 < y.p1; });
    out.optima.push_back({gs[g], best->length, best->p1});
  }
  return out;
}

std::vector<DriveMapPoint> sweep_drive_map(const CaptureConfig& templ, std::span<const double> drives,
                                           std::span<const double> signal_freqs, bool two_photon,
                                           int jobs) {
  std::vector<double> ds(drives.begin(), drives.end());
  std::vector<double> ws(signal_freqs.begin(), signal_freqs.end());
  std::sort(ds.begin(), ds.end());
  std::sort(ws.begin(), ws.end());

  std::vector<DriveMapPoint> out(ds.size() * ws.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    CaptureConfig c = templ;
    c.drive = ds[i / ws.size()];
    c.omega_s = ws[i % ws.size()];
    c.photon_numbers = two_photon ? std::vector<int>{1, 2} : std::vector<int>{1};
    c.record_stride = std::numeric_limits<int>::max();
    const StageResult r = run_capture(c);
    DriveMapPoint pt{*c.drive, c.omega_s, r.probability(1), std::nullopt, std::nullopt};
    if (two_photon) {
      pt.p2 = r.probability(2);
      pt.ratio = *pt.p2 / pt.p1;
    }
    out[i] = pt;
  });
  return out;
}

std::vector<ResetMapPoint> sweep_reset_map(const ResetConfig& templ, std::span<const double> drives,
                                           std::span<const double> reset_freqs, int jobs) {
  std::vector<double> ds(drives.begin(), drives.end());
  std::vector<double> ws(reset_freqs.begin(), reset_freqs.end());
  std::sort(ds.begin(), ds.end());
  std::sort(ws.begin(), ws.end());

  std::vector<ResetMapPoint> out(ds.size() * ws.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    ResetConfig c = templ;
    c.drive = ds[i / ws.size()];
    c.omega_reset = ws[i % ws.size()];
    c.initial = Qubit::kExcited;
    c.record_stride = std::numeric_limits<int>::max();
    out[i] = {c.drive, c.omega_reset, run_reset(c).probability(0)};
  });
  return out;
}

std::vector<RateRow> rate_sweep(const SystemParams& params, std::span<const double> drives) {
  std::vector<RateRow> rows;
  rows.reserve(drives.size());
  for (double d : drives) {
    const DressedSpectrum s = dressed_spectrum(params, d);
    rows.push_back({d, s.rate(3, 1), s.rate(3, 2), s.rate(4, 1), s.rate(4, 2), s.transition(3, 1),
                    s.transition(3, 2), s.transition(4, 1), s.transition(4, 2)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const RateRow& x, const RateRow& y) { return x.drive < y.drive; });
  return rows;
}

std::vector<ReflectionPoint> reflection_map(const SystemParams& params,
                                            std::span<const double> drives,
                                            std::span<const double> signal_freqs, int jobs) {
  std::vector<double> ds(drives.begin(), drives.end());
  std::vector<double> ws(signal_freqs.begin(), signal_freqs.end());
  std::sort(ds.begin(), ds.end());
  std::sort(ws.begin(), ws.end());

  std::vector<ReflectionPoint> out(ds.size() * ws.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    const double d = ds[i / ws.size()];
    const double w = ws[i % ws.size()];
    out[i] = {d, w, steady_reflection(params, d, w)};
  });
  return out;
}

}  // namespace lambdadet
