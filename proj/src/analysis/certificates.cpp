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

#include "analysis/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "analysis/fixed_point.hpp"
#include "core/errors.hpp"
#include "core/finite_difference.hpp"

namespace incentive_forge {
namespace {

using linalg::Matrix;

constexpr double kLyapunovTolerance = 1e-8;
constexpr double kDecreaseSlack = 1e-9;
constexpr std::size_t kMaxGridPoints = 729;

double SquaredNorm(std::span<const double> v) { return linalg::Dot(v, v); }

Vector UniformBox(std::mt19937_64& rng, std::span<const double> center, double radius) {
  Vector out(center.begin(), center.end());
  for (double& v : out) v += radius * (2.0 * UnitUniform(rng()) - 1.0);
  return out;
}

Vector UniformSimplex(std::mt19937_64& rng, const NonatomicGame& game) {
  Vector out(game.dim());
  for (std::size_t i = 0; i < game.populations().size(); ++i) {
    const Population& pop = game.populations()[i];
    const std::size_t off = game.offset(i);
    double total = 0.0;
    for (std::size_t j = 0; j < pop.actions; ++j) {
      out[off + j] = -std::log1p(-UnitUniform(rng()));
      total += out[off + j];
    }
    for (std::size_t j = 0; j < pop.actions; ++j) out[off + j] *= pop.mass / total;
  }
  return out;
}

// Grid of points_per_axis^n points spanning the box, or a seeded uniform
// sample of the same box when the full grid would be too large.
std::vector<Vector> SampleGrid(std::span<const double> center, double radius,
                               int points_per_axis, std::uint64_t seed) {
  const std::size_t n = center.size();
  const std::size_t m = static_cast<std::size_t>(std::max(points_per_axis, 1));
  double count = std::pow(static_cast<double>(m), static_cast<double>(n));
  std::vector<Vector> points;
  if (count > static_cast<double>(kMaxGridPoints)) {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < kMaxGridPoints; ++s)
      points.push_back(UniformBox(rng, center, radius));
    return points;
  }
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Vector p(center.begin(), center.end());
    for (std::size_t d = 0; d < n; ++d) {
      const double t = m == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(idx[d]) / (m - 1.0);
      p[d] += radius * t;
    }
    points.push_back(std::move(p));
    std::size_t d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }
  return points;
}

Vector ExternalityAtEquilibrium(const CoupledSystem& sys, std::span<const double> p) {
  return sys.Externality(sys.Equilibrium(p));
}

void Conclude(CertificateReport& report) {
  if (report.c1 && report.c1->pass) report.certified_by.push_back("C1");
  if (report.c2 && report.c2->pass) report.certified_by.push_back("C2");
  report.convergence_certified = !report.certified_by.empty();
  if (report.c1 && !report.c1->pass && report.c2 && report.c2->pass)
    report.notes.push_back("C1 fails on the sampled grid; C2 alone suffices for convergence");
  report.notes.push_back(
      "C1, C2 and monotonicity are sampled certificates over the reported grids, not proofs");
}

}  // namespace

double UnitUniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

HurwitzReport CheckHurwitz(const Matrix& a, double tol) {
  if (!a.square()) throw InvalidArgument("Hurwitz check needs a square matrix");
  HurwitzReport report;
  report.spectrum = linalg::Eigenvalues(a);
  report.max_real_part = -kInf;
  for (const auto& z : report.spectrum)
    report.max_real_part = std::max(report.max_real_part, z.real());
  if (report.max_real_part < -tol) {
    report.verdict = Verdict::kPass;
  } else if (report.max_real_part <= tol) {
    report.verdict = Verdict::kInconclusive;
  } else {
    report.verdict = Verdict::kFail;
  }
  return report;
}

LyapunovReport LyapunovCertificate(const Matrix& a) {
  const HurwitzReport h = CheckHurwitz(a);
  if (!h.pass())
    throw InvalidArgument(std::string("Lyapunov certificate needs a Hurwitz matrix (verdict: ") +
                          VerdictName(h.verdict) + ")");
  LyapunovReport report;
  report.m = linalg::LyapunovSolve(a);
  const Matrix lhs =
      a.Transposed() * report.m + report.m * a + Matrix::Identity(a.rows());
  report.residual = lhs.MaxAbs();
  report.min_eigenvalue = linalg::SymmetricEigenvalues(report.m).front();
  report.pass = report.residual <= kLyapunovTolerance && report.min_eigenvalue > 0.0;
  return report;
}

double DecreaseRate(const Matrix& m, const Matrix& j) {
  const Matrix q = -1.0 * (m * j + j.Transposed() * m);
  return linalg::SymmetricEigenvalues(q).front();
}

C2Report CheckC2(const CoupledSystem& sys, std::span<const double> p_dagger, const Matrix& m,
                 double rate, double radius, int samples, std::uint64_t seed) {
  sys.CheckIncentive(p_dagger);
  if (samples < 1) throw InvalidArgument("C2 check needs at least one sample");
  if (!(radius > 0.0)) throw InvalidArgument("C2 sample radius must be positive");
  std::mt19937_64 rng(seed);
  C2Report report;
  report.rate = rate;
  report.radius = radius;
  report.samples = samples;
  report.max_value = -kInf;
  report.pass = true;
  const std::size_t n = p_dagger.size();
  for (int s = 0; s < samples; ++s) {
    const Vector p = s == 0 ? Vector(p_dagger.begin(), p_dagger.end())
                            : UniformBox(rng, p_dagger, radius);
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - p_dagger[i];
    const Vector rhs = SlowOdeRhs(sys, p);
    Vector grad = m * d;
    for (double& g : grad) g *= 2.0;
    const double dv = linalg::Dot(grad, rhs);
    const double dd = SquaredNorm(d);
    const double value = dv + rate * dd;
    report.max_value = std::max(report.max_value, value);
    if (value > kDecreaseSlack * dd) report.pass = false;
    if (dd > 0.0) report.margin = std::min(report.margin, -dv / dd);
  }
  return report;
}

C1Report CheckC1Samples(const CoupledSystem& sys, std::span<const double> center,
                        double radius, int points_per_axis, std::uint64_t seed) {
  sys.CheckIncentive(center);
  C1Report report;
  report.grid_radius = radius;
  const auto map = [&](std::span<const double> p) { return ExternalityAtEquilibrium(sys, p); };
  for (const Vector& p : SampleGrid(center, radius, points_per_axis, seed)) {
    const Matrix jac = CentralJacobian(map, p);
    for (std::size_t i = 0; i < jac.rows(); ++i)
      for (std::size_t j = 0; j < jac.cols(); ++j)
        if (i != j) report.min_off_diagonal = std::min(report.min_off_diagonal, jac(i, j));
    ++report.grid_points;
  }
  report.sensitivity_pass = report.min_off_diagonal > 0.0;

  const std::size_t n = center.size();
  report.proxy_radius = 10.0 * linalg::NormInf(center) + 10.0;
  const Vector e0 = map(Vector(n, 0.0));
  const Vector e_hi = map(Vector(n, report.proxy_radius));
  const Vector e_lo = map(Vector(n, -report.proxy_radius));
  report.boundary_pass = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (e0[i] >= 0.0 && !(e_hi[i] - report.proxy_radius < 0.0)) report.boundary_pass = false;
    if (e0[i] <= 0.0 && !(e_lo[i] + report.proxy_radius > 0.0)) report.boundary_pass = false;
  }
  report.pass = report.sensitivity_pass && report.boundary_pass;
  return report;
}

MonotonicityReport CheckMonotonicity(const CoupledSystem& sys, std::span<const double> center,
                                     double radius, int pairs, std::uint64_t seed) {
  if (pairs < 1) throw InvalidArgument("monotonicity check needs at least one pair");
  std::mt19937_64 rng(seed);
  MonotonicityReport report;
  report.pairs = pairs;
  const NonatomicGame* pop = sys.nonatomic_game();
  if (pop) report.cost_min_ratio = kInf;
  else sys.CheckStrategy(center);
  auto draw = [&]() {
    if (pop) return UniformSimplex(rng, *pop);
    Vector x = UniformBox(rng, center, radius);
    sys.Project(x);
    return x;
  };
  for (int s = 0; s < pairs; ++s) {
    const Vector x = draw();
    const Vector y = draw();
    Vector dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - y[i];
    const double dd = SquaredNorm(dx);
    if (dd == 0.0) continue;
    Vector de = sys.Externality(x);
    const Vector ey = sys.Externality(y);
    for (std::size_t i = 0; i < de.size(); ++i) de[i] -= ey[i];
    report.min_ratio = std::min(report.min_ratio, linalg::Dot(de, dx) / dd);
    if (pop) {
      Vector dc = pop->Costs(x);
      const Vector cy = pop->Costs(y);
      for (std::size_t i = 0; i < dc.size(); ++i) dc[i] -= cy[i];
      report.cost_min_ratio = std::min(*report.cost_min_ratio, linalg::Dot(dc, dx) / dd);
    }
  }
  report.pass = report.min_ratio > 0.0;
  if (pop) report.cost_pass = *report.cost_min_ratio >= 0.0;
  return report;
}

GershgorinReport GershgorinCournot(std::size_t n, double lambda, double delta) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(delta > 0.0) || !(lambda > 0.0)) throw InvalidArgument("lambda and delta must be > 0");
  const double nd = static_cast<double>(n);
  GershgorinReport report;
  report.lhs = std::abs((nd + 1.0) * (2.0 * lambda - delta) - (2.0 * lambda - 2.0 * delta));
  report.rhs = (nd - 1.0) * std::abs(2.0 * lambda - 2.0 * delta);
  report.pass = report.lhs > report.rhs;
  report.strict_hypothesis = lambda > delta;
  return report;
}

CertificateReport CertifyQuadratic(const QuadraticAggregativeGame& game,
                                   const CertifyOptions& opts) {
  CertificateReport report;
  report.family = "quadratic";
  const CoupledSystem sys =
      CoupledSystem::Make(game.ToAtomicGame(), StrategyRule::Equilibrium());
  const Matrix leontief_inv = game.IMinusKz();
  report.structural_spectrum = linalg::Eigenvalues(leontief_inv);
  report.hurwitz = CheckHurwitz(-1.0 * leontief_inv);
  report.hurwitz_matrix = "-(I - KZ)";
  if (!report.hurwitz->pass()) {
    report.notes.push_back("I - KZ has spectrum outside the open right half-plane");
    Conclude(report);
    return report;
  }
  report.fixed_point = SolveFixedPointQuadratic(game);
  const Matrix jac = -1.0 * linalg::Inverse(leontief_inv);
  report.lyapunov = LyapunovCertificate(jac);
  report.lyapunov_matrix = "-(I - KZ)^-1";
  const double rate = DecreaseRate(report.lyapunov->m, jac);
  report.c2 = CheckC2(sys, report.fixed_point.p_dagger, report.lyapunov->m, rate, opts.radius,
                      opts.samples, opts.seed);
  report.c1 = CheckC1Samples(sys, report.fixed_point.p_dagger, opts.radius,
                             opts.grid_points_per_axis, opts.seed + 1);
  report.monotonicity = CheckMonotonicity(sys, report.fixed_point.x_dagger, opts.radius,
                                          opts.samples, opts.seed + 2);
  if (!report.monotonicity->pass)
    report.notes.push_back(
        "externality is not monotone; uniqueness rests on interior equilibria, which hold "
        "because strategy sets are unbounded");
  Conclude(report);
  return report;
}

CertificateReport CertifyCournot(const CournotGame& game, const CertifyOptions& opts) {
  CertificateReport report;
  report.family = "cournot";
  const CoupledSystem sys =
      CoupledSystem::Make(game.ToAtomicGame(), StrategyRule::Equilibrium());
  report.gershgorin = GershgorinCournot(game.n(), game.lambda(), game.delta());
  if (!report.gershgorin->strict_hypothesis)
    report.notes.push_back("lambda <= delta: the strict hypothesis behind the Gershgorin route "
                           "does not hold");
  report.fixed_point = SolveFixedPointCournot(game);
  const Matrix go = game.Gamma() * game.Omega();
  const Matrix jac = go - Matrix::Identity(game.n());
  report.hurwitz = CheckHurwitz(go);
  report.hurwitz_matrix = "Gamma Omega";
  if (report.hurwitz->pass()) {
    report.lyapunov = LyapunovCertificate(go);
    report.lyapunov_matrix = "Gamma Omega";
  } else if (CheckHurwitz(jac).pass()) {
    report.lyapunov = LyapunovCertificate(jac);
    report.lyapunov_matrix = "Gamma Omega - I";
    report.notes.push_back(
        "Gamma Omega is not Hurwitz; the Lyapunov matrix is built from the slow-system "
        "Jacobian Gamma Omega - I instead");
  }
  if (report.lyapunov) {
    const double rate = DecreaseRate(report.lyapunov->m, jac);
    report.c2 = CheckC2(sys, report.fixed_point.p_dagger, report.lyapunov->m, rate,
                        opts.radius, opts.samples, opts.seed);
  }
  report.c1 = CheckC1Samples(sys, report.fixed_point.p_dagger, opts.radius,
                             opts.grid_points_per_axis, opts.seed + 1);
  report.monotonicity = CheckMonotonicity(sys, report.fixed_point.x_dagger, opts.radius,
                                          opts.samples, opts.seed + 2);
  if (auto w = CournotGame::PositivityWarning(report.fixed_point.x_dagger))
    report.notes.push_back("fixed point: " + *w);
  Conclude(report);
  return report;
}

CertificateReport CertifyRouting(const RoutingGame& game, double eta,
                                 const CertifyOptions& opts) {
  CertificateReport report;
  report.family = "routing";
  const CoupledSystem sys = CoupledSystem::Make(game.ToNonatomicGame(),
                                                StrategyRule::PerturbedBestResponse(eta));
  report.fixed_point =
      SolveFixedPointGeneric(sys, Vector(game.routes(), 0.0), 0.5, 1e-12, 100000);
  const Vector& p_dagger = report.fixed_point.p_dagger.values();
  const Matrix jac =
      CentralJacobian([&](std::span<const double> p) { return SlowOdeRhs(sys, p); }, p_dagger);
  report.hurwitz = CheckHurwitz(jac);
  report.hurwitz_matrix = "finite-difference slow-system Jacobian at p_dagger";
  if (report.hurwitz->pass()) {
    report.lyapunov = LyapunovCertificate(jac);
    report.lyapunov_matrix = report.hurwitz_matrix;
    const double rate = DecreaseRate(report.lyapunov->m, jac);
    report.c2 = CheckC2(sys, p_dagger, report.lyapunov->m, rate, opts.radius, opts.samples,
                        opts.seed);
    report.notes.push_back("C2 is local: V comes from the linearization at p_dagger");
  }
  report.c1 = CheckC1Samples(sys, p_dagger, opts.radius, opts.grid_points_per_axis,
                             opts.seed + 1);
  report.monotonicity = CheckMonotonicity(sys, {}, 0.0, opts.samples, opts.seed + 2);
  Conclude(report);
  return report;
}

}  // namespace incentive_forge
