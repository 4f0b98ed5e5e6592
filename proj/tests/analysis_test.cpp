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

#include <cmath>

#include "analysis/certificates.hpp"
#include "analysis/externality.hpp"
#include "analysis/fixed_point.hpp"
#include "core/errors.hpp"
#include "core/finite_difference.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace incentive_forge {
namespace {

using linalg::Matrix;
using testing::CournotExample;
using testing::MaxAbsDiff;
using testing::PigouExample;
using testing::QuadraticExample;
using testing::Rng;

CoupledSystem Exact(const AtomicGame& game) {
  return CoupledSystem::Make(game, StrategyRule::Equilibrium());
}

TEST_CASE("Externality oracle: examples") {
  const IncentiveVector q = ExternalityFdOracle(QuadraticExample().ToAtomicGame(), Vector{0.0, 0.0});
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-8));
  const IncentiveVector c = ExternalityFdOracle(CournotExample().ToAtomicGame(), Vector{3.0, 3.0});
  CHECK(c[0] == doctest::Approx(15.0).epsilon(1e-8));
  CHECK(c[1] == doctest::Approx(15.0).epsilon(1e-8));
  const IncentiveVector r =
      ExternalityFdOracle(PigouExample().ToNonatomicGame(), Vector{0.75, 0.25});
  CHECK(r[0] == doctest::Approx(0.75).epsilon(1e-8));
  CHECK(r[1] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("Externality oracle: analytic forms agree at random points") {
  Rng rng(101);
  const QuadraticAggregativeGame quad({0.3, 0.7, 1.2},
                                      Matrix{{0.0, 0.4, -0.2}, {0.1, 0.0, 0.3}, {0.5, 0.2, 0.0}},
                                      {1.0, -2.0, 0.5});
  const AtomicGame atomic[] = {QuadraticExample().ToAtomicGame(), quad.ToAtomicGame(),
                               CournotExample().ToAtomicGame(),
                               CournotGame(6, 12.0, 0.7, 2.0, 0.3).ToAtomicGame()};
  for (const AtomicGame& game : atomic) {
    for (int s = 0; s < 100; ++s) {
      const Vector x = rng.Box(game.n(), -5.0, 5.0);
      const IncentiveVector analytic = game.Externality(x);
      const IncentiveVector oracle = ExternalityFdOracle(game, x);
      const IncentiveVector grads = ExternalityFromGradients(game, x);
      for (std::size_t i = 0; i < game.n(); ++i) {
        CHECK(RelativeError(analytic[i], oracle[i]) <= 1e-5);
        CHECK(RelativeError(analytic[i], grads[i]) <= 1e-12);
      }
    }
  }
  const RoutingGame routing({{0.5, 1.0, 0.0, 2.0}, {1.0, 0.5}, {0.2, 0.0, 3.0, 0.0, 1.0}}, 5.0);
  const NonatomicGame pop = routing.ToNonatomicGame();
  for (int s = 0; s < 100; ++s) {
    const Vector x = rng.Simplex(3, 1e-3);
    const IncentiveVector analytic = pop.Externality(x);
    const IncentiveVector oracle = ExternalityFdOracle(pop, x);
    for (std::size_t j = 0; j < 3; ++j) CHECK(RelativeError(analytic[j], oracle[j]) <= 1e-5);
  }
}

TEST_CASE("Quadratic fixed point: examples") {
  const FixedPointResult fp = SolveFixedPointQuadratic(QuadraticExample());
  CHECK(std::abs(fp.p_dagger[0] - 0.75) <= 1e-10);
  CHECK(std::abs(fp.p_dagger[1] - 0.75) <= 1e-10);
  CHECK(std::abs(fp.x_dagger[0] + 1.0) <= 1e-10);
  CHECK(fp.externality_residual <= 1e-10);
  CHECK(fp.vi_residual <= 1e-10);

  const FixedPointResult zero =
      SolveFixedPointQuadratic(QuadraticAggregativeGame({0.5, 0.5}, Matrix{{0.0, 0.5}, {0.5, 0.0}},
                                                        {0.0, 0.0}));
  CHECK(linalg::NormInf(zero.p_dagger) == 0.0);
  CHECK(linalg::NormInf(zero.x_dagger) == 0.0);

  const Vector xi{0.3, -1.7, 2.0};
  const FixedPointResult decoupled =
      SolveFixedPointQuadratic(QuadraticAggregativeGame({1.0, 2.0, 3.0}, Matrix(3, 3), xi));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(decoupled.p_dagger[i] == doctest::Approx(xi[i]));
    CHECK(decoupled.x_dagger[i] == doctest::Approx(-xi[i]));
  }
}

TEST_CASE("Quadratic fixed point: closed form on random networks") {
  Rng rng(103);
  for (int s = 0; s < 30; ++s) {
    const std::size_t n = 2 + s % 6;
    Matrix z(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) z(r, c) = rng.Uniform(-0.3, 0.3) / static_cast<double>(n);
    const Vector k = rng.Box(n, 0.1, 1.0);
    const Vector xi = rng.Box(n, -2.0, 2.0);
    const QuadraticAggregativeGame game(k, z, xi);
    const FixedPointResult fp = SolveFixedPointQuadratic(game);
    const Vector want = game.IMinusKz() * xi;
    CHECK(linalg::DistInf(fp.p_dagger, want) <= 1e-10);
    for (std::size_t i = 0; i < n; ++i) CHECK(fp.x_dagger[i] == doctest::Approx(-xi[i]));
    CHECK(CheckAlignment(Exact(game.ToAtomicGame()), fp, 1e-10).pass);
  }
}

TEST_CASE("Quadratic fixed point: singular system") {
  CHECK_THROWS_AS(
      SolveFixedPointQuadratic(QuadraticAggregativeGame({1.0, 1.0}, Matrix{{0.0, 1.0}, {1.0, 0.0}},
                                                        {1.0, 1.0})),
      NumericError);
}

TEST_CASE("Cournot fixed point: examples") {
  const FixedPointResult fp = SolveFixedPointCournot(CournotExample());
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(fp.x_dagger[i] - 1.125) <= 1e-10);
    CHECK(std::abs(fp.p_dagger[i] - 5.625) <= 1e-10);
  }
  CHECK(fp.externality_residual <= 1e-10);
  CHECK(fp.vi_residual <= 1e-10);

  const FixedPointResult flat = SolveFixedPointCournot(CournotGame(3, 2.0, 1.0, 2.0, 1.5));
  CHECK(linalg::NormInf(flat.p_dagger) <= 1e-14);
  CHECK(linalg::NormInf(flat.x_dagger) <= 1e-14);
}

TEST_CASE("Cournot fixed point: linear in theta - nu") {
  const FixedPointResult base = SolveFixedPointCournot(CournotGame(4, 5.0, 1.3, 1.0, 0.8));
  const FixedPointResult scaled = SolveFixedPointCournot(CournotGame(4, 13.0, 1.3, 1.0, 0.8));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(scaled.p_dagger[i] == doctest::Approx(3.0 * base.p_dagger[i]).epsilon(1e-12));
    CHECK(scaled.x_dagger[i] == doctest::Approx(3.0 * base.x_dagger[i]).epsilon(1e-12));
  }
}

TEST_CASE("Cournot fixed point: symmetric closed form") {
  // Phi(t 1) is a parabola in t with minimum at (theta - nu) / (2 delta n + 2 lambda).
  for (std::size_t n : {1u, 2u, 3u, 7u}) {
    const CournotGame game(n, 9.0, 1.5, 2.0, 0.6);
    const FixedPointResult fp = SolveFixedPointCournot(game);
    const double nd = static_cast<double>(n);
    const double x = (9.0 - 2.0) / (2.0 * 1.5 * nd + 2.0 * 0.6);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(fp.x_dagger[i] == doctest::Approx(x).epsilon(1e-12));
      CHECK(fp.p_dagger[i] == doctest::Approx((2.0 * 0.6 + 1.5 * (nd - 1.0)) * x).epsilon(1e-12));
    }
  }
}

TEST_CASE("Generic fixed point: routing instances") {
  const CoupledSystem sym = CoupledSystem::Make(
      RoutingGame({{0.0, 1.0}, {0.0, 1.0}}, 50.0).ToNonatomicGame(),
      StrategyRule::PerturbedBestResponse(50.0));
  const FixedPointResult s = SolveFixedPointGeneric(sym, Vector{0.0, 0.0}, 0.5, 1e-12, 1000);
  CHECK(s.converged);
  CHECK(s.p_dagger[0] == doctest::Approx(0.5));
  CHECK(s.x_dagger[1] == doctest::Approx(0.5));

  const CoupledSystem pigou = CoupledSystem::Make(PigouExample().ToNonatomicGame(),
                                                  StrategyRule::PerturbedBestResponse(50.0));
  const FixedPointResult p = SolveFixedPointGeneric(pigou, Vector{0.0, 0.0}, 0.5, 1e-12, 1000);
  CHECK(p.converged);
  CHECK(std::abs(p.p_dagger[0] - 0.75) <= 0.02);
  CHECK(std::abs(p.p_dagger[1] - 0.25) <= 0.02);
  CHECK(CheckAlignment(pigou, p, 0.02).pass);

  const CoupledSystem exact = CoupledSystem::Make(PigouExample().ToNonatomicGame(),
                                                  StrategyRule::Equilibrium());
  const FixedPointResult w = SolveFixedPointGeneric(exact, Vector{0.0, 0.0}, 0.5, 1e-12, 1000);
  CHECK(std::abs(w.p_dagger[0] - 0.75) <= 1e-10);
  CHECK(std::abs(w.x_dagger[0] - 0.75) <= 1e-10);
  CHECK(CheckAlignment(exact, w, 1e-8).pass);
}

TEST_CASE("Generic fixed point: agrees with the direct solvers") {
  const QuadraticAggregativeGame quad = QuadraticExample();
  const FixedPointResult direct_q = SolveFixedPointQuadratic(quad);
  const FixedPointResult gen_q =
      SolveFixedPointGeneric(Exact(quad.ToAtomicGame()), Vector{0.0, 0.0}, 0.5, 1e-12, 10000);
  CHECK(gen_q.converged);
  CHECK(linalg::DistInf(gen_q.p_dagger, direct_q.p_dagger) <= 1e-10);

  const CournotGame cournot = CournotExample();
  const FixedPointResult direct_c = SolveFixedPointCournot(cournot);
  const FixedPointResult gen_c =
      SolveFixedPointGeneric(Exact(cournot.ToAtomicGame()), Vector{0.0, 0.0}, 0.25, 1e-12, 10000);
  CHECK(gen_c.converged);
  CHECK(linalg::DistInf(gen_c.p_dagger, direct_c.p_dagger) <= 1e-10);
}

TEST_CASE("Generic fixed point: iteration budget exhausted is not an exception") {
  const FixedPointResult fp = SolveFixedPointGeneric(Exact(CournotExample().ToAtomicGame()),
                                                     Vector{0.0, 0.0}, 0.25, 1e-12, 2);
  CHECK_FALSE(fp.converged);
  CHECK(fp.iterations == 2);
}

TEST_CASE("Social optimality residual: examples") {
  CHECK(CheckSocialOptimality(Exact(QuadraticExample().ToAtomicGame()), Vector{-1.0, -1.0}) <=
        1e-10);
  const FixedPointResult c = SolveFixedPointCournot(CournotExample());
  CHECK(CheckSocialOptimality(Exact(CournotExample().ToAtomicGame()), c.x_dagger) <= 1e-10);
  const CoupledSystem routing =
      CoupledSystem::Make(PigouExample().ToNonatomicGame(), StrategyRule::Equilibrium());
  CHECK(CheckSocialOptimality(routing, Vector{1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(CheckSocialOptimality(routing, Vector{0.75, 0.25}) <= 1e-12);
}

TEST_CASE("Alignment: holds at p_dagger and fails after a perturbation") {
  const CoupledSystem sys = Exact(QuadraticExample().ToAtomicGame());
  FixedPointResult fp = SolveFixedPointQuadratic(QuadraticExample());
  CHECK(CheckAlignment(sys, fp, 1e-10).pass);
  Vector bumped = fp.p_dagger.values();
  bumped[0] += 0.1;
  fp.p_dagger = IncentiveVector(bumped);
  CHECK_FALSE(CheckAlignment(sys, fp, 1e-10).pass);

  const CournotGame cournot = CournotExample();
  const CoupledSystem csys = Exact(cournot.ToAtomicGame());
  FixedPointResult cfp = SolveFixedPointCournot(cournot);
  CHECK(CheckAlignment(csys, cfp, 1e-10).pass);
  bumped = cfp.p_dagger.values();
  bumped[1] -= 0.1;
  cfp.p_dagger = IncentiveVector(bumped);
  CHECK_FALSE(CheckAlignment(csys, cfp, 1e-10).pass);
}

TEST_CASE("Hurwitz: examples") {
  const HurwitzReport neg = CheckHurwitz(-1.0 * Matrix::Identity(1));
  CHECK(neg.pass());
  CHECK(neg.spectrum[0].real() == -1.0);
  const HurwitzReport quad = CheckHurwitz(Matrix{{-1.0, 0.25}, {0.25, -1.0}});
  CHECK(quad.pass());
  CHECK(quad.max_real_part == doctest::Approx(-0.75));
  const HurwitzReport rot = CheckHurwitz(Matrix{{0.0, 1.0}, {-1.0, 0.0}});
  CHECK_FALSE(rot.pass());
  CHECK(rot.verdict == Verdict::kInconclusive);
  CHECK(CheckHurwitz(Matrix{{1.0, 0.0}, {0.0, -1.0}}).verdict == Verdict::kFail);
}

TEST_CASE("Lyapunov certificate: examples") {
  const LyapunovReport id = LyapunovCertificate(-1.0 * Matrix::Identity(2));
  CHECK(MaxAbsDiff(id.m, 0.5 * Matrix::Identity(2)) < 1e-14);
  const Matrix a = -1.0 * linalg::Inverse(QuadraticExample().IMinusKz());
  const LyapunovReport q = LyapunovCertificate(a);
  CHECK(q.pass);
  CHECK(MaxAbsDiff(q.m, Matrix{{0.5, -0.125}, {-0.125, 0.5}}) < 1e-12);
  CHECK(q.min_eigenvalue == doctest::Approx(0.375));
  const CournotGame cournot = CournotExample();
  const LyapunovReport c = LyapunovCertificate(cournot.Gamma() * cournot.Omega());
  CHECK(c.pass);
  CHECK(c.residual <= 1e-8);
  CHECK(c.min_eigenvalue > 0.0);
  CHECK_THROWS_AS(LyapunovCertificate(Matrix{{0.0, 1.0}, {-1.0, 0.0}}), InvalidArgument);
}

TEST_CASE("C2: quadratic example decreases at unit rate") {
  const QuadraticAggregativeGame game = QuadraticExample();
  const CoupledSystem sys = Exact(game.ToAtomicGame());
  const Matrix j = -1.0 * linalg::Inverse(game.IMinusKz());
  const LyapunovReport lyap = LyapunovCertificate(j);
  const double rate = DecreaseRate(lyap.m, j);
  CHECK(rate == doctest::Approx(1.0).epsilon(1e-12));
  const C2Report c2 = CheckC2(sys, Vector{0.75, 0.75}, lyap.m, rate, 2.0, 300, 5);
  CHECK(c2.pass);
  CHECK(c2.margin == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(c2.max_value) <= 1e-12);
}

TEST_CASE("C2: Cournot example decreases at rate min eig(2M + I)") {
  const CournotGame game = CournotExample();
  const CoupledSystem sys = Exact(game.ToAtomicGame());
  const Matrix go = game.Gamma() * game.Omega();
  const LyapunovReport lyap = LyapunovCertificate(go);
  const Matrix j = go - Matrix::Identity(2);
  const double rate = DecreaseRate(lyap.m, j);
  const double want = linalg::SymmetricEigenvalues(2.0 * lyap.m + Matrix::Identity(2)).front();
  CHECK(rate == doctest::Approx(want).epsilon(1e-12));
  const C2Report c2 = CheckC2(sys, Vector{5.625, 5.625}, lyap.m, rate, 3.0, 300, 6);
  CHECK(c2.pass);
  CHECK(c2.margin >= rate - 1e-9);
}

TEST_CASE("C2: a single sample at p_dagger has value zero") {
  const QuadraticAggregativeGame game = QuadraticExample();
  const C2Report c2 = CheckC2(Exact(game.ToAtomicGame()), Vector{0.75, 0.75},
                              Matrix{{0.5, -0.125}, {-0.125, 0.5}}, 1.0, 1.0, 1, 0);
  CHECK(c2.pass);
  CHECK(c2.max_value == 0.0);
}

TEST_CASE("C2: an overstated rate fails") {
  const QuadraticAggregativeGame game = QuadraticExample();
  const C2Report c2 = CheckC2(Exact(game.ToAtomicGame()), Vector{0.75, 0.75},
                              Matrix{{0.5, -0.125}, {-0.125, 0.5}}, 1.5, 1.0, 50, 0);
  CHECK_FALSE(c2.pass);
}

TEST_CASE("C1: quadratic sensitivities match the closed form and fail") {
  const QuadraticAggregativeGame game = QuadraticExample();
  const CoupledSystem sys = Exact(game.ToAtomicGame());
  const Matrix closed =
      -1.0 * (game.kz() * linalg::Inverse(game.IMinusKz()));
  const Matrix fd = CentralJacobian(
      [&](std::span<const double> p) { return sys.Externality(sys.Equilibrium(p)); },
      Vector{0.3, -0.2});
  CHECK(MaxAbsDiff(fd, closed) <= 1e-5);
  CHECK(closed(0, 1) == doctest::Approx(-0.25 / 0.9375));
  const C1Report c1 = CheckC1Samples(sys, Vector{0.75, 0.75}, 1.0, 5, 0);
  CHECK_FALSE(c1.pass);
  CHECK(c1.min_off_diagonal == doctest::Approx(-0.25 / 0.9375).epsilon(1e-5));
  CHECK(c1.grid_points == 25);
  CHECK(c1.proxy_radius == doctest::Approx(17.5));
}

TEST_CASE("C1: routing sensitivities are positive and the boundary signs hold") {
  const CoupledSystem sys = CoupledSystem::Make(PigouExample().ToNonatomicGame(),
                                                StrategyRule::PerturbedBestResponse(50.0));
  const Matrix fd = CentralJacobian(
      [&](std::span<const double> p) { return sys.Externality(sys.Equilibrium(p)); },
      Vector{0.5, 0.5});
  CHECK(fd(0, 1) > 0.0);
  const Vector e0 = sys.Externality(sys.Equilibrium(Vector{0.0, 0.0}));
  CHECK(e0[0] >= 0.0);
  CHECK(e0[1] >= 0.0);
  const Vector e10 = sys.Externality(sys.Equilibrium(Vector{10.0, 10.0}));
  CHECK(e10[0] - 10.0 < 0.0);
  CHECK(e10[1] - 10.0 < 0.0);
  const C1Report c1 = CheckC1Samples(sys, Vector{0.75, 0.25}, 0.25, 5, 0);
  CHECK(c1.pass);
}

TEST_CASE("Monotonicity: family signs") {
  const CoupledSystem routing = CoupledSystem::Make(PigouExample().ToNonatomicGame(),
                                                    StrategyRule::PerturbedBestResponse(50.0));
  const MonotonicityReport r = CheckMonotonicity(routing, {}, 0.0, 100, 1);
  CHECK(r.pass);
  CHECK(r.min_ratio > 0.0);
  REQUIRE(r.cost_pass.has_value());
  CHECK(*r.cost_pass);

  const MonotonicityReport q =
      CheckMonotonicity(Exact(QuadraticExample().ToAtomicGame()), Vector{-1.0, -1.0}, 1.0, 100, 2);
  CHECK_FALSE(q.pass);
  CHECK(q.min_ratio < 0.0);
  CHECK(q.min_ratio >= -0.25 - 1e-12);

  const MonotonicityReport c =
      CheckMonotonicity(Exact(CournotExample().ToAtomicGame()), Vector{1.0, 1.0}, 1.0, 100, 3);
  CHECK(c.pass);
  CHECK(c.min_ratio >= 3.0 - 1e-9);
}

TEST_CASE("Gershgorin: examples") {
  const GershgorinReport a = GershgorinCournot(2, 2.0, 1.0);
  CHECK(a.lhs == doctest::Approx(7.0));
  CHECK(a.rhs == doctest::Approx(2.0));
  CHECK(a.pass);
  CHECK(a.strict_hypothesis);
  const GershgorinReport b = GershgorinCournot(2, 1.0, 1.0);
  CHECK(b.lhs == doctest::Approx(3.0));
  CHECK(b.rhs == 0.0);
  CHECK(b.pass);
  CHECK_FALSE(b.strict_hypothesis);
  const GershgorinReport c = GershgorinCournot(10, 0.1, 1.0);
  CHECK(c.lhs == doctest::Approx(7.0));
  CHECK(c.rhs == doctest::Approx(16.2));
  CHECK_FALSE(c.pass);
}

TEST_CASE("Certify: family reports") {
  const CertifyOptions opts;
  const CertificateReport q = CertifyQuadratic(QuadraticExample(), opts);
  CHECK(q.hurwitz->pass());
  CHECK(q.c2->pass);
  CHECK_FALSE(q.c1->pass);
  CHECK(q.convergence_certified);
  REQUIRE(q.certified_by.size() == 1);
  CHECK(q.certified_by[0] == "C2");

  const CertificateReport c = CertifyCournot(CournotExample(), opts);
  CHECK(c.gershgorin->pass);
  CHECK(c.c2->pass);

  const CertificateReport low = CertifyCournot(CournotExample(0.1, 10), opts);
  CHECK_FALSE(low.gershgorin->pass);
  CHECK(low.lyapunov_matrix == "Gamma Omega - I");
  CHECK(low.c2->pass);

  const CertificateReport r = CertifyRouting(PigouExample(), 50.0, CertifyOptions{100, 0.25, 5, 0});
  CHECK(r.c1->pass);
  CHECK(r.monotonicity->pass);
  CHECK(r.convergence_certified);
}

TEST_CASE("Lyapunov certificates hold on random stable slow systems") {
  Rng rng(107);
  for (int s = 0; s < 20; ++s) {
    const std::size_t n = 2 + s % 5;
    Matrix z(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) z(r, c) = rng.Uniform(-0.5, 0.5) / static_cast<double>(n);
    const QuadraticAggregativeGame game(rng.Box(n, 0.1, 1.0), z, rng.Box(n, -1.0, 1.0));
    const CertificateReport report = CertifyQuadratic(game, CertifyOptions{50, 1.0, 2, 1});
    REQUIRE(report.lyapunov.has_value());
    CHECK(report.lyapunov->residual <= 1e-8);
    CHECK(report.lyapunov->min_eigenvalue > 0.0);
    CHECK(report.c2->pass);
  }
}

}  // namespace
}  // namespace incentive_forge
