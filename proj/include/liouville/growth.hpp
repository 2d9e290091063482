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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liouville/monotone.hpp"

namespace liouville {

enum class Family { Power, PowerLog, LadderSpline, Tabulated };

std::string family_name(Family f);

// Leading behavior scale * x^exponent * (1 + log x)^log_exponent of the
// derivative at infinity.
struct TailModel {
  double exponent = 0.0;
  double log_exponent = 0.0;
  double scale = 0.0;
};

// Verdict for the divergence of the integral of 1/derivative at infinity.
enum class Divergence { Diverges, Converges, Unknown };

struct LiminfCert {
  bool finite = false;
  double value = 0.0;  // meaningful only when finite
};

// Growth bound Psi used on the right-hand side of the energy condition.
// Closed-form families live on [1, inf); tabulated data keeps its finite
// range and most asymptotic certificates degrade to "unknown" there.
class GrowthFunction {
 public:
  struct PowerMinorant {
    double c = 0.0, s = 0.0;
    std::string note;
  };

  static GrowthFunction power(double C, double k);
  static GrowthFunction powerlog(double C, double p, double q);
  static GrowthFunction ladder_spline();
  static GrowthFunction tabulated(std::vector<double> xs,
                                  std::vector<double> ys);
  static GrowthFunction from_json(const nlohmann::json& descriptor);
  nlohmann::ordered_json to_json() const;

  double operator()(double x) const;
  double derivative(double x) const;

  Family family() const { return family_; }
  double domain_start() const;
  double domain_end() const;  // +inf except for tabulated data
  bool has_unbounded_domain() const;

  double infimum() const;
  // liminf of Psi(x)/x^2 at infinity; nullopt when not certified by family
  // algebra (tabulated).
  std::optional<LiminfCert> liminf_x2() const;
  bool nondecreasing_from_start() const;
  // Smallest x* with Psi nondecreasing on [x*, domain_end); +inf when Psi
  // keeps decreasing.
  double monotone_start() const;
  // Smallest x0 with Psi convex on [x0, inf); nullopt when no such point is
  // certified.
  std::optional<double> convexity_threshold() const;
  std::optional<TailModel> derivative_tail() const;
  Divergence divergence_verdict() const;
  // Certified upper bound for the integral of 1/Psi' over [X, inf); only for
  // families whose verdict is Converges.
  std::optional<double> reciprocal_derivative_tail_bound(double X) const;
  // A pair (c, s) with c*x^s <= Psi on the whole domain, certified by family
  // algebra, where s > 2 so the minorant has finite roughness.
  std::optional<PowerMinorant> certified_power_minorant() const;

  // Wraps Psi as a MonotoneFn; requires nondecreasing_from_start().
  MonotoneFn as_monotone() const;

  double param_C() const { return C_; }
  double param_p() const { return p_; }
  double param_q() const { return q_; }
  const PiecewiseLinear& table() const;

 private:
  GrowthFunction() = default;
  Family family_ = Family::Power;
  double C_ = 1.0, p_ = 0.0, q_ = 0.0;  // Power uses (C_, p_) as (C, k)
  std::shared_ptr<const PiecewiseLinear> table_;
};

}  // namespace liouville
