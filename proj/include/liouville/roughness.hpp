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

#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "liouville/growth.hpp"
#include "liouville/monotone.hpp"

namespace liouville {

enum class RoughnessMethod { ClosedForm, AdaptiveQuadrature, CellwiseExact };

const char* roughness_method_name(RoughnessMethod m);

// Value of the integral of 1/f' over [a, b].  +infinity is a legal value and
// means a flat stretch of positive width was met.
struct RoughnessResult {
  double value = 0.0;
  double error = 0.0;  // absolute bound; 0 for the exact paths
  double a = 0.0, b = 0.0;
  RoughnessMethod method = RoughnessMethod::AdaptiveQuadrature;
  std::size_t evals = 0;
  bool converged = true;

  bool is_infinite() const;
};

RoughnessResult roughness_integral(const MonotoneFn& f, double a, double b,
                                   double tol = 1e-10);
RoughnessResult roughness_integral(const GrowthFunction& psi, double a,
                                   double b, double tol = 1e-10);

// (b - a)^2 / (g(b) - g(a)); +infinity when g(b) == g(a) with b > a.  Lower
// bound for the roughness of any nondecreasing g.
double chord_lower_bound(const MonotoneFn& g, double a, double b);

// Partial integrals at a doubling ladder of right endpoints, plus the slope
// of value against log R over the last few rungs.  Evidence for divergence,
// never a proof.
struct PartialIntegralTrace {
  std::vector<double> radii;
  std::vector<RoughnessResult> partials;
  double log_slope = 0.0;  // fitted d(value)/d(log R) over the last rungs
  bool monotone = true;

  nlohmann::ordered_json to_json() const;
};

PartialIntegralTrace divergence_protocol(const MonotoneFn& f, double r_max,
                                         double tol = 1e-8);
PartialIntegralTrace divergence_protocol(const GrowthFunction& psi,
                                         double r_max, double tol = 1e-8);

// Certified upper bound for the integral of 1/mu' over [R, inf) where
//   mu'(r) = (1/2) min(h'(r), r^2) + (m/2) e^{-r},  r > 1.
// Uses 1/mu' <= 2/min(h', r^2) <= 2/h' + 2/r^2.  Requires a reciprocal tail
// bound on h.
double mu_reciprocal_tail_bound(const MonotoneFn& h, double R);

}  // namespace liouville
