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

#include "liouville/growth.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "liouville/quadrature.hpp"
#include "liouville/util.hpp"

using namespace liouville;

TEST_CASE("power and powerlog evaluate their formulas") {
  auto p = GrowthFunction::power(2.0, 3.0);
  CHECK(p(2.0) == doctest::Approx(16.0));
  auto pl = GrowthFunction::powerlog(1.5, 2.0, 1.0);
  double x = std::exp(1.0);
  CHECK(pl(x) == doctest::Approx(1.5 * x * x * 2.0));  // u = 1 + ln x = 2
}

TEST_CASE("derivatives agree with central differences") {
  Rng rng(101);
  std::vector<GrowthFunction> fns;
  fns.push_back(GrowthFunction::power(1.3, 2.7));
  fns.push_back(GrowthFunction::powerlog(0.8, 2.0, 3.0));
  fns.push_back(GrowthFunction::powerlog(2.0, 3.0, -2.0));
  fns.push_back(GrowthFunction::ladder_spline());
  for (const auto& f : fns) {
    for (int i = 0; i < 300; ++i) {
      double x = rng.uniform(1.05, 30.0);
      double h = 1e-6 * x;
      double fd = (f(x + h) - f(x - h)) / (2.0 * h);
      double d = f.derivative(x);
      CHECK(d == doctest::Approx(fd).epsilon(2e-5));
    }
  }
}

TEST_CASE("infimum certificates") {
  CHECK(GrowthFunction::power(2.5, 3.0).infimum() == doctest::Approx(2.5));
  CHECK(GrowthFunction::powerlog(1.0, 0.0, -1.0).infimum() ==
        doctest::Approx(0.0));
  // p=2, q=-3: interior minimum at u* = 3/2.
  auto g = GrowthFunction::powerlog(1.0, 2.0, -3.0);
  double u = 1.5;
  double expected = std::exp(2.0 * (u - 1.0)) * std::pow(u, -3.0);
  CHECK(g.infimum() == doctest::Approx(expected).epsilon(1e-12));
  // The sampled minimum over a wide grid never undercuts the certificate.
  double lo = kInfinity;
  for (int i = 0; i <= 20000; ++i) {
    double x = 1.0 + 50.0 * i / 20000.0;
    lo = std::min(lo, g(x));
  }
  CHECK(lo >= g.infimum() - 1e-12);
  CHECK(lo <= g.infimum() * (1.0 + 1e-3));
}

TEST_CASE("liminf x^2 certificates") {
  CHECK(GrowthFunction::power(1.0, 1.5).liminf_x2()->value == 0.0);
  CHECK(GrowthFunction::power(3.0, 2.0).liminf_x2()->value ==
        doctest::Approx(3.0));
  CHECK_FALSE(GrowthFunction::power(1.0, 2.1).liminf_x2()->finite);
  CHECK(GrowthFunction::powerlog(1.0, 2.0, -1.0).liminf_x2()->value == 0.0);
  CHECK_FALSE(GrowthFunction::powerlog(1.0, 2.0, 2.0).liminf_x2()->finite);
  CHECK_FALSE(GrowthFunction::ladder_spline().liminf_x2()->finite);
}

TEST_CASE("monotone_start brackets the derivative sign change") {
  auto g = GrowthFunction::powerlog(1.0, 3.0, -4.0);  // p + q < 0
  double xs = g.monotone_start();
  CHECK(xs == doctest::Approx(std::exp(4.0 / 3.0 - 1.0)).epsilon(1e-12));
  CHECK(g.derivative(xs * 0.9) < 0.0);
  CHECK(g.derivative(xs * 1.1) > 0.0);
  CHECK(g.nondecreasing_from_start() == false);
  CHECK(GrowthFunction::power(1.0, 2.0).nondecreasing_from_start());
}

TEST_CASE("convexity threshold is certified by second differences") {
  Rng rng(99);
  CHECK(GrowthFunction::power(1.0, 3.0).convexity_threshold().value() == 1.0);
  CHECK_FALSE(GrowthFunction::power(1.0, 0.5).convexity_threshold());
  for (int trial = 0; trial < 30; ++trial) {
    double p = rng.uniform(1.0, 4.0), q = rng.uniform(-4.0, 4.0);
    auto g = GrowthFunction::powerlog(1.0, p, q);
    auto x0 = g.convexity_threshold();
    if (!x0) continue;
    for (int i = 0; i < 200; ++i) {
      double x = *x0 + rng.uniform(0.0, 20.0);
      double h = 1e-3 * (1.0 + x);
      double second = g(x + h) - 2.0 * g(x) + g(x - h);
      CHECK(second >= -1e-7 * (1.0 + std::fabs(g(x))));
    }
  }
}

TEST_CASE("divergence verdicts split at the boundary cases") {
  CHECK(GrowthFunction::power(1.0, 2.0).divergence_verdict() ==
        Divergence::Diverges);
  CHECK(GrowthFunction::power(1.0, 2.1).divergence_verdict() ==
        Divergence::Converges);
  CHECK(GrowthFunction::powerlog(1.0, 2.0, 1.0).divergence_verdict() ==
        Divergence::Diverges);
  CHECK(GrowthFunction::powerlog(1.0, 2.0, 1.5).divergence_verdict() ==
        Divergence::Converges);
  CHECK(GrowthFunction::ladder_spline().divergence_verdict() ==
        Divergence::Diverges);
  CHECK(GrowthFunction::tabulated({1.0, 2.0}, {1.0, 2.0})
            .divergence_verdict() == Divergence::Unknown);
}

TEST_CASE("certified reciprocal tail bounds dominate the quadrature") {
  // The bound must contain the whole improper integral from X on.  The
  // tightness floor is per family: the power bound is exact, the q < 0
  // branch trades slack for a closed form.
  std::vector<std::pair<GrowthFunction, double>> fns;
  fns.emplace_back(GrowthFunction::power(1.0, 3.0), 0.9);
  fns.emplace_back(GrowthFunction::power(0.5, 4.0), 0.9);
  fns.emplace_back(GrowthFunction::powerlog(1.0, 2.0, 3.0), 0.2);
  fns.emplace_back(GrowthFunction::powerlog(2.0, 3.0, 1.0), 0.05);
  fns.emplace_back(GrowthFunction::powerlog(1.0, 4.0, -1.5), 0.01);
  for (const auto& [f, floor] : fns) {
    for (double X : {1.0, 2.0, 10.0}) {
      auto bound = f.reciprocal_derivative_tail_bound(X);
      REQUIRE(bound.has_value());
      CHECK(*bound > 0.0);
      double upto = X;
      double total = 0.0;
      // March the truncated integral out by doublings; it must stay under
      // the certificate at every stage.
      for (int k = 0; k < 12; ++k) {
        auto q = integrate(
            [&f](double x) { return 1.0 / f.derivative(x); }, upto, upto * 2.0,
            1e-11);
        total += q.value;
        upto *= 2.0;
        CHECK(total <= *bound * (1.0 + 1e-8) + 1e-12);
      }
      // And by 4096x the range it should have exhausted a known fraction.
      CHECK(total >= *bound * floor);
    }
  }
}

TEST_CASE("power tail bound is exact") {
  auto f = GrowthFunction::power(2.0, 3.0);
  // int_X^inf dx/(6x^2) = 1/(6X).
  CHECK(*f.reciprocal_derivative_tail_bound(4.0) ==
        doctest::Approx(1.0 / 24.0).epsilon(1e-12));
}

TEST_CASE("ladder spline values and minorant") {
  auto f = GrowthFunction::ladder_spline();
  CHECK(f(1.0) == doctest::Approx(8.0));
  CHECK(f(2.0) == doctest::Approx(36.0));
  CHECK(f.infimum() == doctest::Approx(8.0));
  auto m = f.certified_power_minorant();
  REQUIRE(m.has_value());
  CHECK(m->c == doctest::Approx(1.0));
  CHECK(m->s == doctest::Approx(3.0));
  // x^3 <= Psi and Psi nondecreasing, sampled densely.
  double prev = f(1.0);
  for (int i = 1; i <= 20000; ++i) {
    double x = 1.0 + 99.0 * i / 20000.0;
    double v = f(x);
    CHECK(v >= x * x * x - 1e-9 * v);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("json descriptors round-trip") {
  auto f = GrowthFunction::powerlog(1.5, 2.0, -1.0);
  auto g = GrowthFunction::from_json(f.to_json());
  CHECK(g.family() == Family::PowerLog);
  CHECK(g(3.0) == doctest::Approx(f(3.0)));
  auto t = GrowthFunction::tabulated({1.0, 2.0, 4.0}, {1.0, 3.0, 9.0});
  auto t2 = GrowthFunction::from_json(t.to_json());
  CHECK(t2(3.0) == doctest::Approx(t(3.0)));
  CHECK(t2.domain_end() == 4.0);

  CHECK_THROWS_AS(GrowthFunction::from_json({{"family", "nope"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      GrowthFunction::from_json({{"family", "power"}, {"C", -1.0}, {"k", 2.0}}),
      std::invalid_argument);
}

TEST_CASE("as_monotone requires global monotonicity") {
  auto ok = GrowthFunction::power(1.0, 3.0).as_monotone();
  CHECK(ok(2.0) == doctest::Approx(8.0));
  CHECK(ok.reciprocal_tail_bound(1.0).has_value());
  CHECK_THROWS_AS(GrowthFunction::powerlog(1.0, 3.0, -4.0).as_monotone(),
                  std::logic_error);
}
