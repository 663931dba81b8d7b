// Copyright 2026 The qmaxent Authors
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

// qmaxent: maximum-entropy estimation of quantum channels from incomplete data.
//
// Log verbosity comes from QMAXENT_LOG (trace, debug, info, warn, error, off);
// the default is warn. Logs go to stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qmaxent/cli/commands.hpp"

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("qmaxent");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("QMAXENT_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qmaxent::cli;
  configure_logging();

  CLI::App app{"Maximum-entropy quantum process estimation"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string output_path;
  std::string prior_path;
  auto* estimate = app.add_subcommand("estimate", "Estimate a channel from a problem file");
  estimate->add_option("problem", problem_path, "Problem file")->required();
  estimate->add_option("-o,--output", output_path, "Result file")->required();
  estimate->add_option("--biased", prior_path, "Prior channel file; minimizes relative entropy");

  std::string channel_path;
  std::string design_path;
  long long shots = 0;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Fill a design's means from a known channel");
  simulate->add_option("channel", channel_path, "Channel file")->required();
  simulate->add_option("design", design_path, "Design (problem file without means)")->required();
  simulate->add_option("-o,--output", output_path, "Problem file to write")->required();
  auto* shots_opt = simulate->add_option("--shots", shots, "Two-outcome samples per constraint");
  auto* seed_opt = simulate->add_option("--seed", seed, "Sampler seed");

  auto* entropy = app.add_subcommand("entropy", "Process entropy and CPTP report of a channel");
  entropy->add_option("channel", channel_path, "Channel file")->required();

  auto* check = app.add_subcommand("check", "Validate a problem file without solving");
  check->add_option("problem", problem_path, "Problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*estimate) {
    std::optional<std::string> prior;
    if (!prior_path.empty()) prior = prior_path;
    return cmd_estimate(problem_path, output_path, prior, std::cout, std::cerr);
  }
  if (*simulate) {
    std::optional<long long> n;
    std::optional<std::uint64_t> s;
    if (*shots_opt) n = shots;
    if (*seed_opt) s = seed;
    return cmd_simulate(channel_path, design_path, output_path, n, s, std::cout, std::cerr);
  }
  if (*entropy) return cmd_entropy(channel_path, std::cout, std::cerr);
  return cmd_check(problem_path, std::cout, std::cerr);
}
