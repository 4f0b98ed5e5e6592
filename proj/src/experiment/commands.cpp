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

#include "experiment/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "analysis/fixed_point.hpp"
#include "core/errors.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {
namespace {

using nlohmann::ordered_json;

constexpr double kExactAlignmentTol = 1e-8;
constexpr double kLogitAlignmentTol = 0.02;

ordered_json Num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json NumArray(std::span<const double> v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(Num(x));
  return out;
}

ordered_json MatrixJson(const linalg::Matrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(NumArray(m.row(r)));
  return out;
}

ordered_json SpectrumJson(const std::vector<std::complex<double>>& spectrum) {
  ordered_json out = ordered_json::array();
  for (const auto& z : spectrum) out.push_back({{"re", Num(z.real())}, {"im", Num(z.imag())}});
  return out;
}

std::string Dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void AppendCsvHeader(std::string& out, const char* lead, std::size_t nx, std::size_t np) {
  out += lead;
  for (std::size_t i = 0; i < nx; ++i) out += ",x_" + std::to_string(i);
  for (std::size_t i = 0; i < np; ++i) out += ",p_" + std::to_string(i);
}

void AppendCsvValues(std::string& out, std::span<const double> v) {
  for (double x : v) {
    out += ',';
    out += FormatNumber(x);
  }
}

ordered_json FixedPointJson(const FixedPointResult& fp, const AlignmentReport& alignment,
                            const char* solver) {
  ordered_json j;
  j["solver"] = solver;
  j["p_dagger"] = NumArray(fp.p_dagger);
  j["x_dagger"] = NumArray(fp.x_dagger);
  j["externality_residual"] = Num(fp.externality_residual);
  j["vi_residual"] = Num(fp.vi_residual);
  j["converged"] = fp.converged;
  j["iterations"] = fp.iterations;
  j["alignment"] = {{"externality_residual", Num(alignment.externality_residual)},
                    {"vi_residual", Num(alignment.vi_residual)},
                    {"tol", Num(alignment.tol)},
                    {"pass", alignment.pass}};
  return j;
}

struct SimulationOutcome {
  Trajectory trajectory;
  std::optional<FixedPointResult> reference;
  double dist_x = kInf;
  double dist_p = kInf;
};

SimulationOutcome Simulate(const ExperimentConfig& cfg) {
  SimulationOutcome out;
  out.trajectory = RunTwoTimescale(cfg.System(), cfg.MakeRunConfig());
  out.reference = ReferenceFixedPoint(cfg);
  if (out.reference) {
    out.dist_x = linalg::DistInf(out.trajectory.final_x, out.reference->x_dagger);
    out.dist_p = linalg::DistInf(out.trajectory.final_p, out.reference->p_dagger);
  }
  return out;
}

}  // namespace

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

unsigned DefaultSweepThreads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("INCENTIVE_FORGE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1)
      threads = std::min(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

std::optional<FixedPointResult> ReferenceFixedPoint(const ExperimentConfig& cfg) {
  try {
    if (const auto* q = std::get_if<QuadraticAggregativeGame>(&cfg.game))
      return SolveFixedPointQuadratic(*q);
    if (const auto* c = std::get_if<CournotGame>(&cfg.game)) return SolveFixedPointCournot(*c);
    const CoupledSystem sys = cfg.System();
    FixedPointResult fp =
        SolveFixedPointGeneric(sys, Vector(sys.incentive_dim(), 0.0), 0.5, 1e-12, 100000);
    if (!fp.converged) return std::nullopt;
    return fp;
  } catch (const NumericError&) {
    return std::nullopt;
  }
}

CommandResult CmdSimulate(const ExperimentConfig& cfg) {
  const SimulationOutcome sim = Simulate(cfg);
  const Trajectory& traj = sim.trajectory;
  const std::size_t nx = cfg.x0.size();
  const std::size_t np = cfg.p0.size();

  std::string csv;
  AppendCsvHeader(csv, "k", nx, np);
  csv += ",dist_x,dist_p\n";
  for (const TrajectoryRecord& rec : traj.records) {
    csv += std::to_string(rec.k);
    AppendCsvValues(csv, rec.x);
    AppendCsvValues(csv, rec.p);
    if (sim.reference) {
      csv += ',' + FormatNumber(linalg::DistInf(rec.x, sim.reference->x_dagger));
      csv += ',' + FormatNumber(linalg::DistInf(rec.p, sim.reference->p_dagger));
    } else {
      csv += ",,";
    }
    csv += '\n';
  }

  ordered_json s;
  s["command"] = "simulate";
  s["family"] = cfg.family;
  s["rule"] = cfg.rule.Name();
  if (cfg.rule.kind == RuleKind::kPerturbedBestResponse) s["eta"] = Num(cfg.rule.eta);
  s["seed"] = cfg.seed;
  s["steps"] = traj.steps;
  s["stride"] = traj.stride;
  s["records"] = traj.records.size();
  s["converged"] = traj.converged;
  s["tol"] = Num(cfg.tol);
  s["window_distance"] = Num(traj.window_distance);
  s["final_x"] = NumArray(traj.final_x);
  s["final_p"] = NumArray(traj.final_p);
  if (sim.reference) {
    s["fixed_point"] = {{"p_dagger", NumArray(sim.reference->p_dagger)},
                        {"x_dagger", NumArray(sim.reference->x_dagger)}};
    s["dist_x"] = Num(sim.dist_x);
    s["dist_p"] = Num(sim.dist_p);
  } else {
    s["fixed_point"] = nullptr;
    s["dist_x"] = nullptr;
    s["dist_p"] = nullptr;
  }
  s["warnings"] = traj.warnings;

  CommandResult result;
  result.summary = Dump(s);
  result.artifacts = {{"trajectory.csv", std::move(csv)}, {"summary.json", result.summary}};
  result.converged = traj.converged;
  result.final_x = traj.final_x;
  result.final_p = traj.final_p;
  return result;
}

CommandResult CmdFixedPoint(const ExperimentConfig& cfg) {
  const CoupledSystem sys = cfg.System();
  ordered_json j;
  j["command"] = "fixed-point";
  j["family"] = cfg.family;
  j["rule"] = cfg.rule.Name();
  FixedPointResult main;
  if (const auto* q = std::get_if<QuadraticAggregativeGame>(&cfg.game)) {
    main = SolveFixedPointQuadratic(*q);
    const CoupledSystem exact = CoupledSystem::Make(q->ToAtomicGame(), StrategyRule::Equilibrium());
    j.update(FixedPointJson(main, CheckAlignment(exact, main, kExactAlignmentTol), "gamma_system"));
  } else if (const auto* c = std::get_if<CournotGame>(&cfg.game)) {
    main = SolveFixedPointCournot(*c);
    const CoupledSystem exact = CoupledSystem::Make(c->ToAtomicGame(), StrategyRule::Equilibrium());
    j.update(FixedPointJson(main, CheckAlignment(exact, main, kExactAlignmentTol), "b_system"));
  } else {
    const RoutingGame& game = std::get<RoutingGame>(cfg.game);
    const Vector zero(game.routes(), 0.0);
    main = SolveFixedPointGeneric(sys, zero, 0.5, 1e-12, 100000);
    const bool logit = cfg.rule.kind == RuleKind::kPerturbedBestResponse;
    if (logit) j["eta"] = Num(cfg.rule.eta);
    j.update(FixedPointJson(
        main, CheckAlignment(sys, main, logit ? kLogitAlignmentTol : kExactAlignmentTol),
        "damped_iteration"));
    const CoupledSystem exact =
        CoupledSystem::Make(game.ToNonatomicGame(), StrategyRule::Equilibrium());
    const FixedPointResult wardrop = SolveFixedPointGeneric(exact, zero, 0.5, 1e-12, 100000);
    j["exact_equilibrium"] = FixedPointJson(
        wardrop, CheckAlignment(exact, wardrop, kExactAlignmentTol), "damped_iteration");
    j["social_optimum"] = NumArray(game.SocialOptimum());
  }
  CommandResult result;
  result.summary = Dump(j);
  result.artifacts = {{"fixed_point.json", result.summary}};
  result.converged = main.converged;
  result.final_x = main.x_dagger;
  result.final_p = main.p_dagger.values();
  return result;
}

CertificateReport CertifyConfig(const ExperimentConfig& cfg) {
  if (const auto* q = std::get_if<QuadraticAggregativeGame>(&cfg.game))
    return CertifyQuadratic(*q, cfg.certify);
  if (const auto* c = std::get_if<CournotGame>(&cfg.game)) return CertifyCournot(*c, cfg.certify);
  const RoutingGame& game = std::get<RoutingGame>(cfg.game);
  const double eta =
      cfg.rule.kind == RuleKind::kPerturbedBestResponse ? cfg.rule.eta : game.eta();
  return CertifyRouting(game, eta, cfg.certify);
}

ordered_json CertificateToJson(const CertificateReport& r) {
  ordered_json j;
  j["family"] = r.family;
  j["fixed_point"] = {{"p_dagger", NumArray(r.fixed_point.p_dagger)},
                      {"x_dagger", NumArray(r.fixed_point.x_dagger)},
                      {"externality_residual", Num(r.fixed_point.externality_residual)},
                      {"vi_residual", Num(r.fixed_point.vi_residual)}};
  if (!r.structural_spectrum.empty())
    j["structural_spectrum"] = SpectrumJson(r.structural_spectrum);
  if (r.hurwitz) {
    j["hurwitz"] = {{"matrix", r.hurwitz_matrix},
                    {"spectrum", SpectrumJson(r.hurwitz->spectrum)},
                    {"max_real_part", Num(r.hurwitz->max_real_part)},
                    {"tol", kSpectralTolerance},
                    {"verdict", VerdictName(r.hurwitz->verdict)},
                    {"pass", r.hurwitz->pass()}};
  }
  if (r.lyapunov) {
    j["lyapunov"] = {{"matrix", r.lyapunov_matrix},
                     {"M", MatrixJson(r.lyapunov->m)},
                     {"residual", Num(r.lyapunov->residual)},
                     {"min_eigenvalue", Num(r.lyapunov->min_eigenvalue)},
                     {"pass", r.lyapunov->pass}};
  }
  if (r.c2) {
    j["c2"] = {{"rate", Num(r.c2->rate)},
               {"max_value", Num(r.c2->max_value)},
               {"margin", Num(r.c2->margin)},
               {"radius", Num(r.c2->radius)},
               {"samples", r.c2->samples},
               {"pass", r.c2->pass}};
  }
  if (r.c1) {
    j["c1"] = {{"min_off_diagonal", Num(r.c1->min_off_diagonal)},
               {"sensitivity_pass", r.c1->sensitivity_pass},
               {"boundary_pass", r.c1->boundary_pass},
               {"proxy_radius", Num(r.c1->proxy_radius)},
               {"grid_radius", Num(r.c1->grid_radius)},
               {"grid_points", r.c1->grid_points},
               {"pass", r.c1->pass}};
  }
  if (r.monotonicity) {
    ordered_json m = {{"min_ratio", Num(r.monotonicity->min_ratio)},
                      {"pairs", r.monotonicity->pairs},
                      {"pass", r.monotonicity->pass}};
    if (r.monotonicity->cost_min_ratio) {
      m["cost_min_ratio"] = Num(*r.monotonicity->cost_min_ratio);
      m["cost_pass"] = *r.monotonicity->cost_pass;
    }
    j["monotonicity"] = std::move(m);
  }
  if (r.gershgorin) {
    j["gershgorin"] = {{"lhs", Num(r.gershgorin->lhs)},
                       {"rhs", Num(r.gershgorin->rhs)},
                       {"pass", r.gershgorin->pass},
                       {"strict_hypothesis_lambda_gt_delta", r.gershgorin->strict_hypothesis}};
  }
  j["convergence_certified"] = r.convergence_certified;
  j["certified_by"] = r.certified_by;
  j["notes"] = r.notes;
  return j;
}

CommandResult CmdCertify(const ExperimentConfig& cfg) {
  const CertificateReport report = CertifyConfig(cfg);
  ordered_json j;
  j["command"] = "certify";
  j["seed"] = cfg.seed;
  j.update(CertificateToJson(report));
  CommandResult result;
  result.summary = Dump(j);
  result.artifacts = {{"certificate.json", result.summary}};
  result.converged = report.convergence_certified;
  result.final_x = report.fixed_point.x_dagger;
  result.final_p = report.fixed_point.p_dagger.values();
  return result;
}

CommandResult CmdSweep(const ExperimentConfig& cfg, const SweepSpec& sweep, unsigned threads) {
  if (threads == 0) threads = DefaultSweepThreads();
  const std::size_t nx = cfg.x0.size();
  const std::size_t np = cfg.p0.size();
  const std::size_t count = sweep.values.size();

  // Validate every variant up front so configuration errors surface before
  // any work starts.
  std::vector<ExperimentConfig> variants;
  variants.reserve(count);
  for (double v : sweep.values) {
    variants.push_back(WithParameter(cfg, sweep.parameter, v));
    if (variants.back().x0.size() != nx || variants.back().p0.size() != np)
      throw InvalidArgument("sweep parameter '" + sweep.parameter +
                            "' changes the problem dimension");
  }

  std::vector<std::string> rows(count);
  std::vector<char> converged(count, 0);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const SimulationOutcome sim = Simulate(variants[i]);
        const CertificateReport cert = CertifyConfig(variants[i]);
        std::string row = FormatNumber(sweep.values[i]);
        row += sim.trajectory.converged ? ",1" : ",0";
        row += ',' + std::to_string(sim.trajectory.steps);
        row += ',' + (sim.reference ? FormatNumber(sim.dist_x) : std::string());
        row += ',' + (sim.reference ? FormatNumber(sim.dist_p) : std::string());
        row += cert.convergence_certified ? ",1" : ",0";
        AppendCsvValues(row, sim.trajectory.final_x);
        AppendCsvValues(row, sim.trajectory.final_p);
        rows[i] = std::move(row);
        converged[i] = sim.trajectory.converged;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::string csv;
  AppendCsvHeader(csv, "value,converged,steps,dist_x,dist_p,certified", nx, np);
  csv += '\n';
  bool all_converged = true;
  for (std::size_t i = 0; i < count; ++i) {
    csv += rows[i] + '\n';
    all_converged = all_converged && converged[i];
  }

  ordered_json s;
  s["command"] = "sweep";
  s["family"] = cfg.family;
  s["parameter"] = sweep.parameter;
  s["values"] = NumArray(sweep.values);
  s["rows"] = count;
  CommandResult result;
  result.summary = Dump(s);
  result.artifacts = {{"sweep.csv", std::move(csv)}};
  result.converged = all_converged;
  return result;
}

void WriteArtifacts(const CommandResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  for (const Artifact& a : result.artifacts) {
    const auto path = std::filesystem::path(dir) / a.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(a.content.data(), static_cast<std::streamsize>(a.content.size()));
    if (!out) throw Error("cannot write '" + path.string() + "'");
  }
}

}  // namespace incentive_forge
