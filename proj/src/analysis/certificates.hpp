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

#ifndef INCENTIVE_FORGE_ANALYSIS_CERTIFICATES_HPP_
#define INCENTIVE_FORGE_ANALYSIS_CERTIFICATES_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "dynamics/dynamics.hpp"
#include "games/cournot.hpp"
#include "games/quadratic.hpp"
#include "games/routing.hpp"
#include "linalg/matrix.hpp"

namespace incentive_forge {

inline constexpr double kSpectralTolerance = 1e-9;

enum class Verdict { kPass, kFail, kInconclusive };
const char* VerdictName(Verdict v);

struct HurwitzReport {
  std::vector<std::complex<double>> spectrum;
  double max_real_part = 0.0;
  Verdict verdict = Verdict::kFail;
  bool pass() const { return verdict == Verdict::kPass; }
};

// Pass iff every eigenvalue has real part < -tol; inconclusive when the
// rightmost eigenvalue lies within tol of the imaginary axis.
HurwitzReport CheckHurwitz(const linalg::Matrix& a, double tol = kSpectralTolerance);

struct LyapunovReport {
  linalg::Matrix m;
  double residual = kInf;  // ||A^T M + M A + I||_max
  double min_eigenvalue = 0.0;
  bool pass = false;  // residual <= 1e-8 and M positive definite
};

// Solves A^T M + M A = -I. Throws InvalidArgument unless A is Hurwitz.
LyapunovReport LyapunovCertificate(const linalg::Matrix& a);

// Smallest eigenvalue of Q = -(M J + J^T M): the rate c in
// dV/dt <= -c ||p - p_dagger||^2 for V = (p - p_dagger)^T M (p - p_dagger)
// along a linear flow with Jacobian J.
double DecreaseRate(const linalg::Matrix& m, const linalg::Matrix& j);

struct C2Report {
  double rate = 0.0;       // c in omega(r) = c r^2
  double max_value = 0.0;  // max over samples of grad V . rhs + c ||d||^2
  double margin = kInf;    // min over samples of -grad V . rhs / ||d||^2
  double radius = 0.0;
  int samples = 0;
  bool pass = false;
};

// Samples p uniformly in the sup-norm ball of the given radius around
// p_dagger (p_dagger itself is the first sample) and evaluates the decrease of
// V along the slow system. Pass iff every value is <= 1e-9 ||d||^2.
C2Report CheckC2(const CoupledSystem& sys, std::span<const double> p_dagger,
                 const linalg::Matrix& m, double rate, double radius, int samples,
                 std::uint64_t seed);

struct C1Report {
  double min_off_diagonal = kInf;  // min of d e_i(x*(p)) / d p_j, i != j
  bool sensitivity_pass = false;
  bool boundary_pass = false;
  double proxy_radius = 0.0;  // stands in for |p| -> infinity
  double grid_radius = 0.0;
  int grid_points = 0;
  bool pass = false;
};

// Finite-difference sensitivities of p -> e(x*(p)) on a grid around center,
// plus the sign conditions at the proxy radius 10 ||center||_inf + 10.
C1Report CheckC1Samples(const CoupledSystem& sys, std::span<const double> center,
                        double radius, int points_per_axis, std::uint64_t seed);

struct MonotonicityReport {
  double min_ratio = kInf;  // min <e(x) - e(x'), x - x'> / ||x - x'||^2
  int pairs = 0;
  bool pass = false;
  // Non-atomic games only: the same ratio for the cost map l~.
  std::optional<double> cost_min_ratio;
  std::optional<bool> cost_pass;
};

// Random strategy pairs: uniform in the box of the given radius around center
// (atomic, clamped to the strategy intervals) or uniform on the scaled
// simplex (non-atomic; center and radius unused).
MonotonicityReport CheckMonotonicity(const CoupledSystem& sys, std::span<const double> center,
                                     double radius, int pairs, std::uint64_t seed);

struct GershgorinReport {
  double lhs = 0.0;  // |(n+1)(2 lambda - delta) - (2 lambda - 2 delta)|
  double rhs = 0.0;  // (n-1) |2 lambda - 2 delta|
  bool pass = false;
  bool strict_hypothesis = false;  // lambda > delta
};

GershgorinReport GershgorinCournot(std::size_t n, double lambda, double delta);

struct CertifyOptions {
  int samples = 200;
  double radius = 1.0;
  int grid_points_per_axis = 5;
  std::uint64_t seed = 0;
};

struct CertificateReport {
  std::string family;
  FixedPointResult fixed_point;
  // Spectrum of the matrix whose right half-plane location is the structural
  // condition (I - KZ for the quadratic family); empty otherwise.
  std::vector<std::complex<double>> structural_spectrum;
  std::optional<HurwitzReport> hurwitz;
  std::string hurwitz_matrix;
  std::optional<LyapunovReport> lyapunov;
  std::string lyapunov_matrix;
  std::optional<C2Report> c2;
  std::optional<C1Report> c1;
  std::optional<MonotonicityReport> monotonicity;
  std::optional<GershgorinReport> gershgorin;
  bool convergence_certified = false;
  std::vector<std::string> certified_by;
  std::vector<std::string> notes;
};

CertificateReport CertifyQuadratic(const QuadraticAggregativeGame& game,
                                   const CertifyOptions& opts);
CertificateReport CertifyCournot(const CournotGame& game, const CertifyOptions& opts);
// Certificates for the logit dynamics at sensitivity eta.
CertificateReport CertifyRouting(const RoutingGame& game, double eta,
                                 const CertifyOptions& opts);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double UnitUniform(std::uint64_t bits);

}  // namespace incentive_forge

#endif  // INCENTIVE_FORGE_ANALYSIS_CERTIFICATES_HPP_
