// Copyright 2026 The Liouville Lab Authors
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

#include "liouville/synthesis.hpp"

#include <cmath>
#include <stdexcept>
#include <memory>

#include "doctest.h"
#include "liouville/util.hpp"

using namespace liouville;

namespace {

std::shared_ptr<const MuFunction> cubic_mu(double m = 1.0) {
  return std::make_shared<const MuFunction>(MonotoneFn::power(1.0, 3.0), m);
}

}  // namespace

TEST_CASE("mu' matches the closed form on both branches") {
  // h = 2x has h' = 2, so the min picks r^2 on (1, sqrt 2) and 2 beyond.
  MuFunction mu(MonotoneFn::power(2.0, 1.0), 0.7);
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    double r = rng.uniform(-8.0, 8.0);
    double cushion = 0.5 * 0.7 * std::exp(-std::fabs(r));
    double want = std::fabs(r) <= 1.0
                      ? cushion
                      : 0.5 * std::min(2.0, r * r) + cushion;
    CHECK(mu.prime(r) == doctest::Approx(want).epsilon(1e-14));
  }
  // One-sided limits at the |r| = 1 jump: the min-term switches on.
  double in = mu.prime(std::nextafter(1.0, 0.0));
  double out = mu.prime(std::nextafter(1.0, 2.0));
  CHECK(in == doctest::Approx(0.35 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(out == doctest::Approx(0.5 + 0.35 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(mu.prime(-1.5) == mu.prime(1.5));  // even in r
  CHECK(mu.prime(0.0) == 0.35);
}

TEST_CASE("cumulative mu matches the closed form for the cubic") {
  auto mu = cubic_mu();
  // For h = x^3, h' = 3r^2 > r^2, so mu' = r^2/2 + e^{-r}/2 past 1 and
  // mu(R) = (R^3 - 1)/6 + (1 - e^{-R})/2 for R >= 1.
  for (double R : {1.0, 2.0, 5.0, 10.0, 32.0, 64.0}) {
    double want = (R * R * R - 1.0) / 6.0 + 0.5 * (1.0 - std::exp(-R));
    CHECK(std::fabs((*mu)(R)-want) <= mu->cumulative_error() + 1e-12 * want);
  }
  for (double R : {0.0, 0.25, 0.5, 1.0}) {
    double want = 0.5 * (1.0 - std::exp(-R));
    CHECK(std::fabs((*mu)(R)-want) <= mu->cumulative_error() + 1e-12);
  }
  CHECK((*mu)(2.0) ==
        doctest::Approx(7.0 / 6.0 + 0.5 * (1.0 - std::exp(-2.0)))
            .epsilon(1e-7));
  CHECK_THROWS_AS((*mu)(-1.0), std::domain_error);
  CHECK_THROWS_AS(MuFunction(MonotoneFn::power(1.0, 3.0), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MuFunction(MonotoneFn::power(1.0, 3.0), 1.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("tail integral against direct quadrature of 1/mu'") {
  auto mu = cubic_mu();
  TailIntegral I(mu, -16.0, 1e-6);
  CHECK(I.x_min() == -16.0);
  CHECK(I.x_max() > 1.0);
  CHECK(I.error_bound() <= 1e-6);

  // Strictly decreasing and positive across the built range.
  double prev = I(-16.0);
  for (int k = 1; k <= 400; ++k) {
    double x = -16.0 + (I.x_max() + 16.0) * k / 400.0;
    double v = I(x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }

  // Differences equal the integral of 1/mu' between the points, including
  // across the derivative jump at |r| = 1.
  auto recip = [&mu](double r) { return 1.0 / mu->prime(r); };
  for (auto [x, y] : {std::pair{-5.0, -2.0}, {-2.0, 0.5}, {0.5, 1.5},
                      {-1.25, 1.25}, {2.0, 10.0}}) {
    auto q = integrate(recip, x, y, 1e-11);
    CHECK(std::fabs((I(x) - I(y)) - q.value) <=
          2.0 * I.error_bound() + q.error + 1e-9);
  }

  // Regression pins from the same construction.
  CHECK(I(-5.0) == doctest::Approx(10.187967).epsilon(2e-5));
  CHECK(I(1.0) == doctest::Approx(1.857414).epsilon(2e-5));
  CHECK(I(10.0) == doctest::Approx(0.2).epsilon(1e-4));

  // Node derivative is the exact reciprocal.
  CHECK(I.derivative(3.0) == -1.0 / mu->prime(3.0));
  CHECK_THROWS_AS(I(-16.5), std::domain_error);
}

TEST_CASE("transverse profile carries squared mass one half") {
  for (int dim : {1, 2, 3}) {
    auto H = TransverseProfile::gaussian(dim);
    CHECK(H.ambient_dim() == dim);
    CHECK(H.transverse_dim() == dim - 1);
    CHECK(H.squared_mass() == 0.5);
    CHECK(H.ball_mass(0.5) <= H.ball_mass(1.0));
    CHECK(H.ball_mass(20.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(TransverseProfile::gaussian(4), std::invalid_argument);

  auto H1 = TransverseProfile::gaussian(1);
  CHECK(H1(std::span<const double>{}) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(H1.ball_mass(0.0) == 0.5);

  // dim 2: one transverse coordinate; integrate H^2 directly.
  auto H2 = TransverseProfile::gaussian(2);
  auto q2 = integrate(
      [&H2](double t) {
        double v = H2(std::span<const double>(&t, 1));
        return v * v;
      },
      -12.0, 12.0, 1e-11);
  CHECK(q2.value == doctest::Approx(0.5).epsilon(1e-9));
  for (double rho : {0.3, 1.0, 2.5}) {
    auto qb = integrate(
        [&H2](double t) {
          double v = H2(std::span<const double>(&t, 1));
          return v * v;
        },
        -rho, rho, 1e-11);
    CHECK(H2.ball_mass(rho) == doctest::Approx(qb.value).epsilon(1e-9));
  }

  // dim 3: radial in the transverse pair, so the ball mass reduces to a
  // one-dimensional integral in the radius.
  auto H3 = TransverseProfile::gaussian(3);
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-3.0, 3.0);
    double pt[2] = {a, b};
    double rad[2] = {std::hypot(a, b), 0.0};
    CHECK(H3(pt) == doctest::Approx(H3(rad)).epsilon(1e-13));
  }
  for (double rho : {0.5, 1.0, 3.0}) {
    auto qb = integrate(
        [&H3](double s) {
          double pt[2] = {s, 0.0};
          double v = H3(pt);
          return 2.0 * std::numbers::pi * s * v * v;
        },
        0.0, rho, 1e-11);
    CHECK(H3.ball_mass(rho) == doctest::Approx(qb.value).epsilon(1e-9));
  }
  CHECK(H3.sup() == H3(std::array<double, 2>{0.0, 0.0}));
  double one = 1.0;
  CHECK_THROWS_AS(H3(std::span<const double>(&one, 1)),
                  std::invalid_argument);
}

TEST_CASE("fields satisfy the exact flux identity") {
  for (int dim : {1, 2, 3}) {
    SynthesisOptions opts;
    opts.dim = dim;
    auto fields = build_fields(MonotoneFn::power(1.0, 3.0), 1.0, opts);
    CHECK(fields.dimension() == dim);
    CHECK(fields.flux_constant() == 0.5);
    CHECK(fields.m() == 1.0);
    Rng rng(100 + dim);
    for (int i = 0; i < 10'000 / dim; ++i) {
      std::vector<double> x(dim);
      for (int k = 0; k + 1 < dim; ++k) x[k] = rng.uniform(-3.0, 3.0);
      x[dim - 1] = rng.uniform(-15.0, 15.0);
      double phi = fields.phi(x);
      double H = fields.profile()(
          std::span<const double>(x).subspan(0, dim - 1));
      CHECK(phi > 0.0);
      double lhs = phi * phi * fields.dsigma_dxn(x);
      CHECK(std::fabs(lhs - H * H) <= 1e-12 * (1.0 + H * H));
    }
    // sigma depends on the axial coordinate alone and increases with it.
    double prev = -kInfinity;
    for (int k = 0; k <= 200; ++k) {
      double u = -15.0 + 30.0 * k / 200.0;
      std::vector<double> x(dim, 0.5);
      x[dim - 1] = u;
      double s = fields.sigma(x);
      CHECK(s > prev);
      CHECK(s == fields.sigma_axial(u));
      prev = s;
    }
  }
}

TEST_CASE("sigma spread clears an independent linear floor") {
  auto fields = build_fields(MonotoneFn::power(1.0, 3.0), 1.0);
  // I(5) <= 2/5 since mu' >= r^2/2 past 1, so sigma(5) >= 2.5, while
  // sigma(-5) <= sigma(0) < 1/I(1) < 0.54: the spread is at least ~2.
  double spread = fields.sigma_axial(5.0) - fields.sigma_axial(-5.0);
  CHECK(spread > 2.3);
  CHECK(fields.sigma_axial(5.0) > 10.0 * fields.sigma_axial(-5.0));
  CHECK(fields.mu_error() < 1e-8);
  CHECK(fields.tail_error() <= 1e-6);
  CHECK(fields.mu(2.0) ==
        doctest::Approx(7.0 / 6.0 + 0.5 * (1.0 - std::exp(-2.0)))
            .epsilon(1e-7));
}

TEST_CASE("synthesize guards its preconditions") {
  auto psi = GrowthFunction::power(1.0, 3.0);
  auto rep = classify(psi);
  REQUIRE(rep.witness.has_value());
  auto fields = synthesize(psi, *rep.witness);
  CHECK(fields.m() == doctest::Approx(1.0));
  CHECK(fields.dimension() == 2);

  // Zero infimum: no cushion mass available.
  auto vanishing = GrowthFunction::powerlog(1.0, 0.0, -1.0);
  CHECK_THROWS_AS(synthesize(vanishing, *rep.witness), std::domain_error);

  // Witness without a finite certified roughness bound.
  MinorantWitness unbounded{MonotoneFn::power(1.0, 1.0), "line", kInfinity,
                           nlohmann::ordered_json::object()};
  CHECK_THROWS_AS(synthesize(psi, unbounded), std::domain_error);

  // Witness pokes above the growth bound.
  MinorantWitness above{MonotoneFn::power(2.0, 3.0), "2x^3", 1.0 / 12.0,
                        nlohmann::ordered_json::object()};
  CHECK_THROWS_AS(synthesize(psi, above), std::domain_error);

  SynthesisOptions bad;
  bad.extent = 2.0;
  CHECK_THROWS_AS(build_fields(MonotoneFn::power(1.0, 3.0), 1.0, bad),
                  std::invalid_argument);
}
