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

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liouville/util.hpp"

namespace liouville {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double at(double x) const { return slope * x + intercept; }
};

// Continuous nondecreasing piecewise-linear function given by its breakpoints.
class PiecewiseLinear {
 public:
  static PiecewiseLinear from_points(std::vector<double> xs,
                                     std::vector<double> ys);
  static PiecewiseLinear constant(double a, double b, double value);
  static PiecewiseLinear from_line(const Line& line, double a, double b);

  double operator()(double x) const;
  // Slope of the cell immediately left of x (right of x at the left endpoint).
  double slope_left(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

  // Exact sum of (dx)^2/dy over cells intersecting [a, b]; +infinity as soon
  // as one intersected cell is flat with positive width.
  double roughness(double a, double b) const;

  // Pointwise max with a family of lines, again piecewise linear.  Exact:
  // breakpoints are the input knots plus all crossing abscissas.
  PiecewiseLinear max_with_lines(std::span<const Line> lines) const;

  // Pointwise max of two piecewise-linear functions over the intersection of
  // their domains.
  static PiecewiseLinear max(const PiecewiseLinear& f, const PiecewiseLinear& g);

 private:
  PiecewiseLinear() = default;
  std::vector<double> xs_, ys_;
};

// A nondecreasing scalar function on [lo, hi) together with how it is
// represented; hi may be +infinity.  Closed-form instances carry an exact
// derivative, piecewise instances carry their breakpoint table.
class MonotoneFn {
 public:
  enum class Rep { ClosedForm, Piecewise, Spliced };

  static MonotoneFn from_closed_form(
      std::string name, std::function<double(double)> value,
      std::function<double(double)> deriv, double lo, double hi,
      std::function<double(double)> reciprocal_tail = nullptr);
  static MonotoneFn from_piecewise(std::string name, PiecewiseLinear pwl);
  // c * x^s on [1, inf); for s > 2 the reciprocal-derivative tail from X is
  // the exact X^(2-s) / (c s (s-2)).
  static MonotoneFn power(double c, double s);
  // Linear ramp on [lo, x_star] continuing as tail(x) afterward; the caller
  // guarantees ramp_top <= tail(x_star) and tail nondecreasing on the right.
  static MonotoneFn spliced_ramp(std::string name, double lo, double x_star,
                                 double ramp_bottom, double ramp_top,
                                 std::function<double(double)> tail,
                                 std::function<double(double)> tail_deriv,
                                 std::function<double(double)> reciprocal_tail =
                                     nullptr);

  double operator()(double x) const;
  double derivative(double x) const;

  Rep rep() const { return rep_; }
  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool has_piecewise() const { return pwl_ != nullptr; }
  const PiecewiseLinear& piecewise() const;

  // Certified upper bound for the integral of 1/derivative over [X, hi) when
  // one is attached; nullopt otherwise.
  std::optional<double> reciprocal_tail_bound(double X) const;

 private:
  MonotoneFn() = default;
  Rep rep_ = Rep::ClosedForm;
  std::string name_;
  double lo_ = 0.0, hi_ = kInfinity;
  std::function<double(double)> value_, deriv_;
  std::function<double(double)> recip_tail_;
  std::shared_ptr<const PiecewiseLinear> pwl_;
};

// Samples f on a uniform grid and reports the first strict decrease beyond
// tol, if any.
std::optional<double> first_decrease(const std::function<double(double)>& f,
                                     double a, double b, int samples,
                                     double tol = 1e-12);

}  // namespace liouville
