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

#include "incentive_forge/incentive_forge.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "experiment/commands.hpp"
#include "experiment/config.hpp"

struct ifg_experiment {
  incentive_forge::ExperimentConfig config;
};

struct ifg_result {
  incentive_forge::CommandResult data;
};

namespace {

using incentive_forge::CommandResult;

thread_local std::string last_error;

ifg_status Fail(ifg_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
ifg_status Guard(Body&& body) {
  try {
    return body();
  } catch (const incentive_forge::ConfigError& e) {
    return Fail(IFG_ERR_CONFIG, e.what());
  } catch (const incentive_forge::NumericError& e) {
    return Fail(IFG_ERR_NUMERIC, e.what());
  } catch (const incentive_forge::InvalidArgument& e) {
    return Fail(IFG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(IFG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(IFG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(IFG_ERR_INTERNAL, "unknown error");
  }
}

template <typename Command>
ifg_status RunCommand(const ifg_experiment* experiment, ifg_result** out, Command command) {
  if (!experiment || !out) return Fail(IFG_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ifg_result{command(experiment->config)};
    return IFG_OK;
  });
}

ifg_status CopyVector(const std::vector<double>& v, double* out, size_t len) {
  if (!out && len != 0) return Fail(IFG_ERR_INVALID_ARGUMENT, "null output buffer");
  if (len != v.size())
    return Fail(IFG_ERR_INVALID_ARGUMENT,
                "buffer length " + std::to_string(len) + " != " + std::to_string(v.size()));
  if (len) std::memcpy(out, v.data(), len * sizeof(double));
  return IFG_OK;
}

}  // namespace

extern "C" {

const char* ifg_version(void) { return "0.1.0"; }

const char* ifg_status_string(ifg_status status) {
  switch (status) {
    case IFG_OK:
      return "ok";
    case IFG_ERR_CONFIG:
      return "configuration error";
    case IFG_ERR_NUMERIC:
      return "numeric failure";
    case IFG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case IFG_ERR_IO:
      return "i/o error";
    case IFG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* ifg_last_error(void) { return last_error.c_str(); }

ifg_status ifg_experiment_load_file(const char* path, ifg_experiment** out) {
  if (!path || !out) return Fail(IFG_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ifg_experiment{incentive_forge::LoadConfigFile(path)};
    return IFG_OK;
  });
}

ifg_status ifg_experiment_load_string(const char* json, ifg_experiment** out) {
  if (!json || !out) return Fail(IFG_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ifg_experiment{incentive_forge::LoadConfigString(json)};
    return IFG_OK;
  });
}

void ifg_experiment_free(ifg_experiment* experiment) { delete experiment; }

ifg_status ifg_experiment_set_seed(ifg_experiment* experiment, uint64_t seed) {
  if (!experiment) return Fail(IFG_ERR_INVALID_ARGUMENT, "null experiment");
  return Guard([&] {
    auto& cfg = experiment->config;
    cfg.seed = seed;
    cfg.certify.seed = seed;
    cfg.source["seed"] = seed;
    return IFG_OK;
  });
}

size_t ifg_experiment_strategy_dim(const ifg_experiment* experiment) {
  return experiment ? experiment->config.x0.size() : 0;
}

size_t ifg_experiment_incentive_dim(const ifg_experiment* experiment) {
  return experiment ? experiment->config.p0.size() : 0;
}

ifg_status ifg_simulate(const ifg_experiment* experiment, ifg_result** out) {
  return RunCommand(experiment, out, incentive_forge::CmdSimulate);
}

ifg_status ifg_fixed_point(const ifg_experiment* experiment, ifg_result** out) {
  return RunCommand(experiment, out, incentive_forge::CmdFixedPoint);
}

ifg_status ifg_certify(const ifg_experiment* experiment, ifg_result** out) {
  return RunCommand(experiment, out, incentive_forge::CmdCertify);
}

ifg_status ifg_sweep(const ifg_experiment* experiment, const char* parameter,
                     const double* values, size_t count, unsigned threads, ifg_result** out) {
  if (!experiment || !out) return Fail(IFG_ERR_INVALID_ARGUMENT, "null argument");
  if (!values && count != 0) return Fail(IFG_ERR_INVALID_ARGUMENT, "null values with count > 0");
  const auto& cfg = experiment->config;
  incentive_forge::SweepSpec spec;
  if (cfg.sweep) spec = *cfg.sweep;
  if (parameter) spec.parameter = parameter;
  if (values) spec.values.assign(values, values + count);
  if (spec.parameter.empty())
    return Fail(IFG_ERR_CONFIG, "schema error: sweep.parameter: no sweep parameter given");
  return RunCommand(experiment, out, [&](const incentive_forge::ExperimentConfig& c) {
    return incentive_forge::CmdSweep(c, spec, threads);
  });
}

const char* ifg_result_summary(const ifg_result* result) {
  return result ? result->data.summary.c_str() : "";
}

size_t ifg_result_artifact_count(const ifg_result* result) {
  return result ? result->data.artifacts.size() : 0;
}

const char* ifg_result_artifact_name(const ifg_result* result, size_t index) {
  if (!result || index >= result->data.artifacts.size()) return nullptr;
  return result->data.artifacts[index].name.c_str();
}

const char* ifg_result_artifact_content(const ifg_result* result, size_t index) {
  if (!result || index >= result->data.artifacts.size()) return nullptr;
  return result->data.artifacts[index].content.c_str();
}

int ifg_result_converged(const ifg_result* result) {
  return result && result->data.converged ? 1 : 0;
}

size_t ifg_result_strategy_dim(const ifg_result* result) {
  return result ? result->data.final_x.size() : 0;
}

size_t ifg_result_incentive_dim(const ifg_result* result) {
  return result ? result->data.final_p.size() : 0;
}

ifg_status ifg_result_final_x(const ifg_result* result, double* out, size_t len) {
  if (!result) return Fail(IFG_ERR_INVALID_ARGUMENT, "null result");
  return CopyVector(result->data.final_x, out, len);
}

ifg_status ifg_result_final_p(const ifg_result* result, double* out, size_t len) {
  if (!result) return Fail(IFG_ERR_INVALID_ARGUMENT, "null result");
  return CopyVector(result->data.final_p, out, len);
}

ifg_status ifg_result_write(const ifg_result* result, const char* out_dir) {
  if (!result || !out_dir) return Fail(IFG_ERR_INVALID_ARGUMENT, "null argument");
  try {
    incentive_forge::WriteArtifacts(result->data, out_dir);
    return IFG_OK;
  } catch (const std::exception& e) {
    return Fail(IFG_ERR_IO, e.what());
  }
}

void ifg_result_free(ifg_result* result) { delete result; }

}  // extern "C"
