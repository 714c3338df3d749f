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


// lambdadet <command> --config <path> [--out <dir>] [--plots] [--jobs N]
//
// Exit status: 0 success, 2 configuration error, 3 numerical divergence,
// 1 anything else. LAMBDADET_JOBS overrides the default worker count.

#include "lambdadet/commands.hpp"
#include "lambdadet/config.hpp"
#include "lambdadet/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

int default_jobs() {
  if (const char* env = std::getenv("LAMBDADET_JOBS"); env != nullptr && *env != '\0') {
    int n = 0;
    const std::string_view v(env);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec == std::errc() && ptr == v.data() + v.size() && n >= 1) return n;
    std::cerr << "warning: ignoring LAMBDADET_JOBS='" << env << "'\n";
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for an impedance-matched Lambda-system microwave photon detector"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  bool plots = false;
  int jobs = 0;

  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(lambdadet::command_names()));
  app.add_option("--config", config_path, "Configuration file (key = value)")->required();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_flag("--plots", plots, "Also write SVG plots");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const lambdadet::RunConfig config = lambdadet::load_config(config_path);
    if (jobs == 0) jobs = config.jobs.value_or(default_jobs());
    const auto outputs = lambdadet::run_command(command, config, jobs);
    for (const auto& path : lambdadet::write_outputs(outputs, out_dir, plots)) {
      std::cout << path.string() << '\n';
    }
    if (command == "match" || command == "audit") std::cout << outputs.front().table.format();
    return 0;
  } catch (const lambdadet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const lambdadet::DivergenceError& e) {
    std::cerr << command << ": numerical divergence at t = " << e.time_ns() << " ns: " << e.what()
              << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}
