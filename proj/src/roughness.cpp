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

#include "liouville/roughness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

nlohmann::ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  return v;
}

// Quadrature of 1/deriv with a flatness guard: a nonpositive derivative at
// any node makes the result infinite instead of feeding the engine a pole.
RoughnessResult quad_reciprocal(const std::function<double(double)>& deriv,
                                double a, double b, double tol) {
  bool flat = false;
  auto integrand = [&](double x) {
    double d = deriv(x);
    if (d <= 0.0) {
      flat = true;
      return 0.0;
    }
    return 1.0 / d;
  };
  QuadResult q = integrate(integrand, a, b, tol, 1e-14);
  RoughnessResult r;
  r.a = a;
  r.b = b;
  r.method = RoughnessMethod::AdaptiveQuadrature;
  r.evals = q.evals;
  r.converged = q.converged && !flat;
  r.value = flat ? kInfinity : q.value;
  r.error = flat ? 0.0 : q.error;
  return r;
}

PartialIntegralTrace protocol_impl(
    const std::function<RoughnessResult(double, double)>& segment, double a,
    double r_max) {
  if (!(r_max > a))
    throw std::invalid_argument("divergence_protocol: r_max <= start");
  PartialIntegralTrace trace;
  std::vector<double> radii;
  for (double r = 2.0 * a; r < r_max; r *= 2.0) radii.push_back(r);
  radii.push_back(r_max);

  double acc = 0.0, accerr = 0.0;
  std::size_t evals = 0;
  double prev = a;
  for (double r : radii) {
    RoughnessResult seg = segment(prev, r);
    evals += seg.evals;
    if (seg.is_infinite()) {
      acc = kInfinity;
    } else if (!std::isinf(acc)) {
      acc += seg.value;
      accerr += seg.error;
    }
    RoughnessResult partial = seg;
    partial.a = a;
    partial.b = r;
    partial.value = acc;
    partial.error = accerr;
    partial.evals = evals;
    trace.radii.push_back(r);
    trace.partials.push_back(partial);
    if (std::isinf(acc)) break;
    prev = r;
  }

  const auto& ps = trace.partials;
  for (std::size_t i = 1; i < ps.size(); ++i)
    if (ps[i].value < ps[i - 1].value - 1e-12) trace.monotone = false;

  if (ps.back().is_infinite()) {
    trace.log_slope = kInfinity;
    return trace;
  }
  std::size_t n = std::min<std::size_t>(4, ps.size());
  if (n >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = ps.size() - n; i < ps.size(); ++i) {
      double x = std::log(trace.radii[i]);
      double y = ps[i].value;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    trace.log_slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
  }
  return trace;
}

}  // namespace

const char* roughness_method_name(RoughnessMethod m) {
  switch (m) {
    case RoughnessMethod::ClosedForm: return "closed_form";
    case RoughnessMethod::AdaptiveQuadrature: return "adaptive_quadrature";
    case RoughnessMethod::CellwiseExact: return "cellwise_exact";
  }
  return "unknown";
}

bool RoughnessResult::is_infinite() const { return std::isinf(value); }

RoughnessResult roughness_integral(const MonotoneFn& f, double a, double b,
                                   double tol) {
  if (!(a <= b)) throw std::invalid_argument("roughness_integral: a > b");
  if (f.has_piecewise()) {
    const PiecewiseLinear& p = f.piecewise();
    RoughnessResult r;
    r.a = a;
    r.b = b;
    r.value = p.roughness(a, b);
    r.error = 0.0;
    r.evals = 0;
    // one linear cell covering [a, b] is the closed-form case
    const auto& xs = p.xs();
    std::size_t k = 0;
    if (a > xs.front()) {
      k = static_cast<std::size_t>(
          std::upper_bound(xs.begin(), xs.end(), a) - xs.begin() - 1);
      k = std::min(k, xs.size() - 2);
    }
    r.method = (b <= xs[k + 1] + 1e-12) ? RoughnessMethod::ClosedForm
                                        : RoughnessMethod::CellwiseExact;
    return r;
  }
  return quad_reciprocal([&f](double x) { return f.derivative(x); }, a, b, tol);
}

RoughnessResult roughness_integral(const GrowthFunction& psi, double a,
                                   double b, double tol) {
  if (psi.family() == Family::Tabulated)
    return roughness_integral(
        MonotoneFn::from_piecewise("tabulated", psi.table()), a, b, tol);
  return quad_reciprocal([&psi](double x) { return psi.derivative(x); }, a, b,
                         tol);
}

double chord_lower_bound(const MonotoneFn& g, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("chord_lower_bound: need a < b");
  double rise = g(b) - g(a);
  if (rise <= 0.0) return kInfinity;
  return (b - a) * (b - a) / rise;
}

nlohmann::ordered_json PartialIntegralTrace::to_json() const {
  nlohmann::ordered_json out;
  out["kind"] = "partial_integral_trace";
  out["note"] = "numerical evidence only, not a divergence proof";
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    nlohmann::ordered_json row;
    row["R"] = radii[i];
    row["value"] = json_number(partials[i].value);
    row["error"] = partials[i].error;
    row["converged"] = partials[i].converged;
    rows.push_back(row);
  }
  out["partials"] = rows;
  out["log_slope"] = json_number(log_slope);
  out["monotone"] = monotone;
  return out;
}

PartialIntegralTrace divergence_protocol(const MonotoneFn& f, double r_max,
                                         double tol) {
  double a = f.lo();
  if (std::isfinite(f.hi())) r_max = std::min(r_max, f.hi());
  return protocol_impl(
      [&](double lo, double hi) { return roughness_integral(f, lo, hi, tol); },
      a, r_max);
}

PartialIntegralTrace divergence_protocol(const GrowthFunction& psi,
                                         double r_max, double tol) {
  double a = std::max(psi.domain_start(), psi.monotone_start());
  if (!std::isfinite(a))
    throw std::invalid_argument(
        "divergence_protocol: function never becomes nondecreasing");
  if (!psi.has_unbounded_domain())
    r_max = std::min(r_max, psi.domain_end());
  return protocol_impl(
      [&](double lo, double hi) {
        return roughness_integral(psi, lo, hi, tol);
      },
      a, r_max);
}

double mu_reciprocal_tail_bound(const MonotoneFn& h, double R) {
  if (!(R >= 1.0))
    throw std::invalid_argument("mu_reciprocal_tail_bound: need R >= 1");
  auto tail = h.reciprocal_tail_bound(R);
  if (!tail)
    throw std::invalid_argument(
        "mu_reciprocal_tail_bound: h carries no reciprocal tail bound");
  return 2.0 * *tail + 2.0 / R;
}

}  // namespace liouville
