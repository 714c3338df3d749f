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

#include "lambdadet/config.hpp"

#include "lambdadet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace lambdadet {

namespace {

struct Entry {
  std::string value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  std::ostringstream msg;
  if (line > 0) msg << "line " << line << ": ";
  msg << "key '" << key << "': " << what;
  throw ConfigError(msg.str());
}

double parse_number(const std::string& key, const Entry& e) {
  const std::string_view v = trim(e.value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(key, e.line, "expected a finite number, got '" + e.value + "'");
  }
  return out;
}

int parse_integer(const std::string& key, const Entry& e) {
  const std::string_view v = trim(e.value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(key, e.line, "expected an integer, got '" + e.value + "'");
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& key, const Entry& e) {
  std::vector<double> out;
  for (const std::string& item : split_list(e.value)) out.push_back(parse_number(key, {item, e.line}));
  if (out.empty()) fail(key, e.line, "empty list");
  return out;
}

void append(std::ostringstream& os, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << key << " = " << buf << '\n';
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "omega_q_GHz", "omega_r_GHz", "chi_MHz", "kappa_MHz", "kappa_prime_MHz", "gamma_MHz",
      "gamma_prime_kHz", "omega_d_GHz", "dt_ns", "n_max",
      "shape", "pulse_length_ns", "beta", "smoothing_width_ns", "drive_MHz", "signal_GHz",
      "photons",
      "reset_GHz", "reset_photons", "initial", "reset_drive_MHz",
      "drive_min_MHz", "drive_max_MHz", "drive_step_MHz",
      "signal_min_GHz", "signal_max_GHz", "signal_step_MHz",
      "reset_drive_min_MHz", "reset_drive_max_MHz", "reset_drive_step_MHz",
      "reset_min_GHz", "reset_max_GHz", "reset_step_MHz",
      "lengths_ns", "gammas_MHz", "shapes",
      "record_every_ns", "audit_stage", "jobs"};
  return keys;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  const auto& known = config_keys();

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                        std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(key, line_no, "unknown key");
    }
    if (value.empty()) fail(key, line_no, "missing value");
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      fail(key, line_no, "duplicate key (first set on line " +
                             std::to_string(entries.at(key).line) + ")");
    }
  }

  RunConfig cfg;
  SystemParams& p = cfg.params;
  const auto has = [&](const char* k) { return entries.count(k) > 0; };
  const auto num = [&](const char* k) { return parse_number(k, entries.at(k)); };

  if (has("omega_q_GHz")) p.omega_q = units::from_GHz(num("omega_q_GHz"));
  if (has("omega_r_GHz")) p.omega_r = units::from_GHz(num("omega_r_GHz"));
  if (has("chi_MHz")) p.chi = units::from_MHz(num("chi_MHz"));
  if (has("kappa_MHz")) p.kappa = units::from_MHz(num("kappa_MHz"));
  if (has("kappa_prime_MHz")) p.kappa_prime = units::from_MHz(num("kappa_prime_MHz"));
  if (has("gamma_MHz")) p.gamma = units::from_MHz(num("gamma_MHz"));
  if (has("gamma_prime_kHz")) p.gamma_prime = units::from_kHz(num("gamma_prime_kHz"));
  p.omega_d = has("omega_d_GHz") ? units::from_GHz(num("omega_d_GHz"))
                                 : p.omega_q - units::from_MHz(70.0);
  if (has("dt_ns")) p.dt = num("dt_ns");
  if (has("n_max")) cfg.n_max = parse_integer("n_max", entries.at("n_max"));

  const auto line_of = [&](const char* k) { return has(k) ? entries.at(k).line : 0; };
  for (const char* k : {"kappa_MHz", "kappa_prime_MHz", "gamma_MHz", "gamma_prime_kHz"}) {
    if (has(k) && num(k) < 0.0) fail(k, line_of(k), "rates must be non-negative");
  }
  if (p.kappa_prime > p.kappa) {
    fail("kappa_prime_MHz", line_of("kappa_prime_MHz"),
         "radiative rate exceeds total rate kappa_MHz");
  }
  if (p.gamma_prime > p.gamma) {
    fail("gamma_prime_kHz", line_of("gamma_prime_kHz"),
         "radiative rate exceeds total rate gamma_MHz");
  }
  if (!p.nested()) {
    std::ostringstream msg;
    msg << "drive frequency must satisfy omega_q - 2 chi < omega_d < omega_q, window is ("
        << units::to_GHz(p.omega_q - 2.0 * p.chi) << ", " << units::to_GHz(p.omega_q) << ") GHz";
    fail("omega_d_GHz", line_of("omega_d_GHz"), msg.str());
  }
  if (!(p.dt > 0.0)) fail("dt_ns", line_of("dt_ns"), "must be positive");
  if (cfg.n_max && *cfg.n_max < 1) fail("n_max", line_of("n_max"), "must be >= 1");

  try {
    if (has("shape")) cfg.shape = parse_signal_shape(entries.at("shape").value);
  } catch (const std::invalid_argument& e) {
    fail("shape", line_of("shape"), e.what());
  }
  if (has("pulse_length_ns")) cfg.pulse_length = num("pulse_length_ns");
  if (!(cfg.pulse_length > 0.0)) fail("pulse_length_ns", line_of("pulse_length_ns"), "must be positive");
  if (has("beta")) {
    cfg.beta = num("beta");
    if (!(*cfg.beta > 0.0)) fail("beta", line_of("beta"), "must be positive");
  }
  if (has("smoothing_width_ns")) cfg.smoothing_width = num("smoothing_width_ns");
  if (!(cfg.smoothing_width > 0.0)) {
    fail("smoothing_width_ns", line_of("smoothing_width_ns"), "must be positive");
  }
  if (has("drive_MHz") && entries.at("drive_MHz").value != "match") {
    cfg.drive = units::from_MHz(num("drive_MHz"));
    if (*cfg.drive < 0.0) fail("drive_MHz", line_of("drive_MHz"), "must be >= 0");
  }
  if (has("signal_GHz")) cfg.omega_s = units::from_GHz(num("signal_GHz"));
  if (has("photons")) {
    cfg.photons.clear();
    for (double v : parse_number_list("photons", entries.at("photons"))) {
      if (v != 0.0 && v != 1.0 && v != 2.0) {
        fail("photons", line_of("photons"), "photon numbers must be 0, 1 or 2");
      }
      cfg.photons.push_back(static_cast<int>(v));
    }
    std::sort(cfg.photons.begin(), cfg.photons.end());
    cfg.photons.erase(std::unique(cfg.photons.begin(), cfg.photons.end()), cfg.photons.end());
  }

  if (has("reset_GHz")) cfg.omega_reset = units::from_GHz(num("reset_GHz"));
  if (has("reset_photons")) {
    cfg.reset_photons = num("reset_photons");
    if (cfg.reset_photons < 0.0) fail("reset_photons", line_of("reset_photons"), "must be >= 0");
  }
  if (has("initial")) {
    const std::string& v = entries.at("initial").value;
    if (v == "g") {
      cfg.initial = Qubit::kGround;
    } else if (v == "e") {
      cfg.initial = Qubit::kExcited;
    } else {
      fail("initial", line_of("initial"), "expected 'g' or 'e'");
    }
  }
  if (has("reset_drive_MHz")) {
    cfg.reset_drive = units::from_MHz(num("reset_drive_MHz"));
    if (*cfg.reset_drive < 0.0) fail("reset_drive_MHz", line_of("reset_drive_MHz"), "must be >= 0");
  }

  const auto grid = [&](FrequencyGrid& g, const char* lo, const char* hi, const char* step,
                        double (*lo_unit)(double)) {
    if (has(lo)) g.start = lo_unit(num(lo));
    if (has(hi)) g.stop = lo_unit(num(hi));
    if (has(step)) g.step = units::from_MHz(num(step));
    if (!(g.step > 0.0)) fail(step, line_of(step), "must be positive");
    if (g.stop < g.start) fail(hi, line_of(hi), "grid end lies below grid start");
  };
  grid(cfg.drive_grid, "drive_min_MHz", "drive_max_MHz", "drive_step_MHz", units::from_MHz);
  grid(cfg.signal_grid, "signal_min_GHz", "signal_max_GHz", "signal_step_MHz", units::from_GHz);
  grid(cfg.reset_drive_grid, "reset_drive_min_MHz", "reset_drive_max_MHz", "reset_drive_step_MHz",
       units::from_MHz);
  grid(cfg.reset_grid, "reset_min_GHz", "reset_max_GHz", "reset_step_MHz", units::from_GHz);

  if (has("lengths_ns")) {
    cfg.lengths = parse_number_list("lengths_ns", entries.at("lengths_ns"));
    for (double l : cfg.lengths) {
      if (!(l > 0.0)) fail("lengths_ns", line_of("lengths_ns"), "lengths must be positive");
    }
  }
  if (has("gammas_MHz")) {
    cfg.gammas.clear();
    for (double g : parse_number_list("gammas_MHz", entries.at("gammas_MHz"))) {
      if (g < 0.0) fail("gammas_MHz", line_of("gammas_MHz"), "rates must be non-negative");
      cfg.gammas.push_back(units::from_MHz(g));
    }
  }
  if (has("shapes")) {
    cfg.shapes.clear();
    for (const std::string& s : split_list(entries.at("shapes").value)) {
      try {
        cfg.shapes.push_back(parse_signal_shape(s));
      } catch (const std::invalid_argument& e) {
        fail("shapes", line_of("shapes"), e.what());
      }
    }
    if (cfg.shapes.empty()) fail("shapes", line_of("shapes"), "empty list");
  }
  if (has("record_every_ns")) {
    cfg.record_every = num("record_every_ns");
    if (!(cfg.record_every > 0.0)) fail("record_every_ns", line_of("record_every_ns"), "must be positive");
  }
  if (has("audit_stage")) {
    const std::string& v = entries.at("audit_stage").value;
    if (v == "capture") {
      cfg.audit_stage = AuditStage::kCapture;
    } else if (v == "reset") {
      cfg.audit_stage = AuditStage::kReset;
    } else {
      fail("audit_stage", line_of("audit_stage"), "expected 'capture' or 'reset'");
    }
  }
  if (has("jobs")) {
    cfg.jobs = parse_integer("jobs", entries.at("jobs"));
    if (*cfg.jobs < 1) fail("jobs", line_of("jobs"), "must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  append(os, "omega_q", params.omega_q);
  append(os, "omega_r", params.omega_r);
  append(os, "chi", params.chi);
  append(os, "kappa", params.kappa);
  append(os, "kappa_prime", params.kappa_prime);
  append(os, "gamma", params.gamma);
  append(os, "gamma_prime", params.gamma_prime);
  append(os, "omega_d", params.omega_d);
  append(os, "dt", params.dt);
  os << "n_max = " << (n_max ? std::to_string(*n_max) : "auto") << '\n';
  os << "shape = " << to_string(shape) << '\n';
  append(os, "pulse_length", pulse_length);
  if (beta) append(os, "beta", *beta); else os << "beta = auto\n";
  append(os, "smoothing_width", smoothing_width);
  if (drive) append(os, "drive", *drive); else os << "drive = match\n";
  append(os, "omega_s", omega_s);
  os << "photons =";
  for (int k : photons) os << ' ' << k;
  os << '\n';
  append(os, "omega_reset", omega_reset);
  append(os, "reset_photons", reset_photons);
  os << "initial = " << (initial == Qubit::kGround ? "g" : "e") << '\n';
  if (reset_drive) append(os, "reset_drive", *reset_drive); else os << "reset_drive = auto\n";
  for (const auto& [name, g] : {std::pair{"drive_grid", drive_grid}, {"signal_grid", signal_grid},
                                {"reset_drive_grid", reset_drive_grid}, {"reset_grid", reset_grid}}) {
    os << name << " =";
    char buf[96];
    std::snprintf(buf, sizeof buf, " %.17g %.17g %.17g", g.start, g.stop, g.step);
    os << buf << '\n';
  }
  os << "lengths =";
  for (double l : lengths) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.17g", l);
    os << buf;
  }
  os << "\ngammas =";
  for (double g : gammas) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.17g", g);
    os << buf;
  }
  os << "\nshapes =";
  for (PulseShape s : shapes) os << ' ' << to_string(s);
  os << '\n';
  append(os, "record_every", record_every);
  os << "audit_stage = " << (audit_stage == AuditStage::kCapture ? "capture" : "reset") << '\n';
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SystemParams RunConfig::capture_params(int order) const {
  SystemParams p = params;
  p.n_max = n_max.value_or(std::max(2, order + 1));
  return p;
}

SystemParams RunConfig::reset_params() const {
  SystemParams p = params;
  p.n_max = n_max.value_or(4);
  return p;
}

namespace {

int stride_for(double record_every, double dt) {
  return std::max(1, static_cast<int>(std::lround(record_every / dt)));
}

}  // namespace

CaptureConfig RunConfig::capture_config() const {
  CaptureConfig c;
  const int order = photons.empty() ? 0 : *std::max_element(photons.begin(), photons.end());
  c.params = capture_params(order);
  c.shape = shape;
  c.length = pulse_length;
  c.beta = beta;
  c.smoothing_width = smoothing_width;
  c.drive = drive;
  c.omega_s = omega_s;
  c.photon_numbers = photons;
  c.record_stride = stride_for(record_every, params.dt);
  return c;
}

ResetConfig RunConfig::reset_config() const {
  ResetConfig c;
  c.params = reset_params();
  c.drive = reset_drive.value_or(units::from_MHz(44.0));
  c.omega_reset = omega_reset;
  c.n_mean = reset_photons;
  c.initial = initial;
  c.record_stride = stride_for(record_every, params.dt);
  return c;
}

}  // namespace lambdadet
