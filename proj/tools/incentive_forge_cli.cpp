// Copyright 2026 The incentive_forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// incentive-forge: command-line front end to the incentive_forge C library.
//
//   incentive-forge simulate    --config cfg.json [--out dir] [--seed N] [--require-converged]
//   incentive-forge fixed-point --config cfg.json [--out dir]
//   incentive-forge certify     --config cfg.json [--out dir] [--seed N]
//   incentive-forge sweep       --config cfg.json [--out dir] [--param name] [--values a,b,c]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numeric failure,
// 3 non-convergence under --require-converged.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "incentive_forge/incentive_forge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitNotConverged = 3;

int ExitCodeFor(ifg_status status) {
  switch (status) {
    case IFG_OK:
      return kExitOk;
    case IFG_ERR_NUMERIC:
    case IFG_ERR_INTERNAL:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

int Report(ifg_status status) {
  std::cerr << "incentive-forge: " << ifg_status_string(status) << ": " << ifg_last_error()
            << "\n";
  return ExitCodeFor(status);
}

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool require_converged = false;
  std::optional<std::string> param;
  std::optional<std::vector<double>> values;
  unsigned threads = 0;
};

int Run(const std::string& command, const Options& opt) {
  ifg_experiment* exp = nullptr;
  ifg_status status = ifg_experiment_load_file(opt.config.c_str(), &exp);
  if (status != IFG_OK) return Report(status);
  if (opt.seed) ifg_experiment_set_seed(exp, *opt.seed);

  ifg_result* result = nullptr;
  if (command == "simulate") {
    status = ifg_simulate(exp, &result);
  } else if (command == "fixed-point") {
    status = ifg_fixed_point(exp, &result);
  } else if (command == "certify") {
    status = ifg_certify(exp, &result);
  } else {
    static const double kEmpty = 0.0;
    const double* values = nullptr;
    std::size_t count = 0;
    if (opt.values) {
      count = opt.values->size();
      values = count ? opt.values->data() : &kEmpty;
    }
    status = ifg_sweep(exp, opt.param ? opt.param->c_str() : nullptr, values, count,
                       opt.threads, &result);
  }
  ifg_experiment_free(exp);
  if (status != IFG_OK) return Report(status);

  if (!opt.out.empty()) {
    status = ifg_result_write(result, opt.out.c_str());
    if (status != IFG_OK) {
      ifg_result_free(result);
      return Report(status);
    }
  }
  std::cout << ifg_result_summary(result);
  const bool converged = ifg_result_converged(result) != 0;
  ifg_result_free(result);
  if (command == "simulate" && opt.require_converged && !converged) {
    std::cerr << "incentive-forge: run did not converge within the trailing window\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planner incentives for players that learn while prices adjust"};
  app.set_version_flag("--version", std::string(ifg_version()));
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  std::string values_text;
  std::string param;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Experiment JSON document")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Directory for output files");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Run the coupled learning dynamics");
  add_common(simulate);
  CLI::Option* seed_sim = simulate->add_option("--seed", seed, "Seed for randomized sampling");
  simulate->add_flag("--require-converged", opt.require_converged,
                     "Exit with status 3 unless the run converged");

  CLI::App* fixed_point =
      app.add_subcommand("fixed-point", "Solve for the socially optimal incentive");
  add_common(fixed_point);
  CLI::Option* seed_fp = fixed_point->add_option("--seed", seed, "Seed for randomized sampling");

  CLI::App* certify = app.add_subcommand("certify", "Check stability and uniqueness conditions");
  add_common(certify);
  CLI::Option* seed_cert = certify->add_option("--seed", seed, "Seed for randomized sampling");

  CLI::App* sweep = app.add_subcommand("sweep", "One simulation per value of a config field");
  add_common(sweep);
  CLI::Option* seed_sweep = sweep->add_option("--seed", seed, "Seed for randomized sampling");
  CLI::Option* param_opt =
      sweep->add_option("--param", param, "Numeric field, e.g. game.lambda or rule.eta");
  CLI::Option* values_opt =
      sweep->add_option("--values", values_text, "Comma-separated values (may be empty)")
          ->expected(0, 1);
  sweep->add_option("--threads", opt.threads, "Worker threads (0: automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (CLI::Option* o : {seed_sim, seed_fp, seed_cert, seed_sweep})
    if (o->count() > 0) opt.seed = seed;
  if (param_opt->count() > 0) opt.param = param;
  if (values_opt->count() > 0) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start < values_text.size()) {
      std::size_t comma = values_text.find(',', start);
      if (comma == std::string::npos) comma = values_text.size();
      const std::string token = values_text.substr(start, comma - start);
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        std::cerr << "incentive-forge: --values: '" << token << "' is not a number\n";
        return kExitUsage;
      }
      start = comma + 1;
    }
    opt.values = std::move(values);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return Run(command, opt);
}
