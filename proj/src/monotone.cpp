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

#include "liouville/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

double tolerance_for(double lo) { return 1e-9 * (1.0 + std::fabs(lo)); }

}  // namespace

PiecewiseLinear PiecewiseLinear::from_points(std::vector<double> xs,
                                             std::vector<double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size())
    throw std::invalid_argument("PiecewiseLinear: need matching xs/ys, >= 2");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument("PiecewiseLinear: xs must strictly increase");
    if (ys[i] < ys[i - 1] - 1e-12 * (1.0 + std::fabs(ys[i - 1])))
      throw std::invalid_argument("PiecewiseLinear: ys must be nondecreasing");
  }
  PiecewiseLinear p;
  p.xs_ = std::move(xs);
  p.ys_ = std::move(ys);
  return p;
}

PiecewiseLinear PiecewiseLinear::constant(double a, double b, double value) {
  return from_points({a, b}, {value, value});
}

PiecewiseLinear PiecewiseLinear::from_line(const Line& line, double a,
                                           double b) {
  return from_points({a, b}, {line.at(a), line.at(b)});
}

double PiecewiseLinear::operator()(double x) const {
  if (x < xs_.front() - tolerance_for(xs_.front()) ||
      x > xs_.back() + tolerance_for(xs_.back()))
    throw std::domain_error("PiecewiseLinear: evaluation outside domain");
  x = std::clamp(x, xs_.front(), xs_.back());
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - xs_.begin());
  if (k == 0) return ys_.front();
  if (k >= xs_.size()) return ys_.back();
  double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
  return ys_[k - 1] + t * (ys_[k] - ys_[k - 1]);
}

double PiecewiseLinear::slope_left(double x) const {
  if (x < xs_.front() - tolerance_for(xs_.front()) ||
      x > xs_.back() + tolerance_for(xs_.back()))
    throw std::domain_error("PiecewiseLinear: slope query outside domain");
  x = std::clamp(x, xs_.front(), xs_.back());
  std::size_t k;
  if (x <= xs_.front()) {
    k = 0;
  } else {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    k = static_cast<std::size_t>(it - xs_.begin());
    if (k >= xs_.size() || xs_[k] >= x) --k;
    if (k >= xs_.size() - 1) k = xs_.size() - 2;
  }
  return (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
}

double PiecewiseLinear::roughness(double a, double b) const {
  if (!(a <= b)) throw std::invalid_argument("roughness: a > b");
  if (a < xs_.front() - tolerance_for(xs_.front()) ||
      b > xs_.back() + tolerance_for(xs_.back()))
    throw std::domain_error("roughness: interval outside domain");
  a = std::clamp(a, xs_.front(), xs_.back());
  b = std::clamp(b, xs_.front(), xs_.back());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    double lo = std::max(a, xs_[k]);
    double hi = std::min(b, xs_[k + 1]);
    if (hi <= lo) continue;
    double dy = ys_[k + 1] - ys_[k];
    if (dy <= 0.0) return kInfinity;
    double slope = dy / (xs_[k + 1] - xs_[k]);
    sum += (hi - lo) / slope;
  }
  return sum;
}

PiecewiseLinear PiecewiseLinear::max(const PiecewiseLinear& f,
                                     const PiecewiseLinear& g) {
  double a = std::max(f.x_min(), g.x_min());
  double b = std::min(f.x_max(), g.x_max());
  if (!(a < b))
    throw std::invalid_argument("PiecewiseLinear::max: domains do not overlap");

  std::vector<double> knots;
  auto add_in_range = [&](const std::vector<double>& xs) {
    for (double x : xs)
      if (x >= a && x <= b) knots.push_back(x);
  };
  add_in_range(f.xs());
  add_in_range(g.xs());
  knots.push_back(a);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  // Both inputs are linear between adjacent knots; insert the crossing point
  // wherever the difference changes sign inside a cell.
  std::vector<double> xs;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    double u = knots[k], v = knots[k + 1];
    xs.push_back(u);
    double du = f(u) - g(u);
    double dv = f(v) - g(v);
    if ((du > 0.0 && dv < 0.0) || (du < 0.0 && dv > 0.0)) {
      double t = du / (du - dv);
      double xc = u + t * (v - u);
      if (xc > u && xc < v) xs.push_back(xc);
    }
  }
  xs.push_back(knots.back());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(std::max(f(x), g(x)));
  return from_points(std::move(xs), std::move(ys));
}

PiecewiseLinear PiecewiseLinear::max_with_lines(
    std::span<const Line> lines) const {
  PiecewiseLinear out = *this;
  for (const Line& line : lines)
    out = max(out, from_line(line, out.x_min(), out.x_max()));
  return out;
}

MonotoneFn MonotoneFn::from_closed_form(
    std::string name, std::function<double(double)> value,
    std::function<double(double)> deriv, double lo, double hi,
    std::function<double(double)> reciprocal_tail) {
  if (!value || !deriv)
    throw std::invalid_argument("MonotoneFn: value and deriv required");
  if (!(lo < hi)) throw std::invalid_argument("MonotoneFn: empty domain");
  MonotoneFn fn;
  fn.rep_ = Rep::ClosedForm;
  fn.name_ = std::move(name);
  fn.value_ = std::move(value);
  fn.deriv_ = std::move(deriv);
  fn.lo_ = lo;
  fn.hi_ = hi;
  fn.recip_tail_ = std::move(reciprocal_tail);
  return fn;
}

MonotoneFn MonotoneFn::from_piecewise(std::string name, PiecewiseLinear pwl) {
  MonotoneFn fn;
  fn.rep_ = Rep::Piecewise;
  fn.name_ = std::move(name);
  fn.lo_ = pwl.x_min();
  fn.hi_ = pwl.x_max();
  auto shared = std::make_shared<const PiecewiseLinear>(std::move(pwl));
  fn.pwl_ = shared;
  fn.value_ = [shared](double x) { return (*shared)(x); };
  fn.deriv_ = [shared](double x) { return shared->slope_left(x); };
  return fn;
}

MonotoneFn MonotoneFn::power(double c, double s) {
  if (!(c > 0.0) || !(s > 0.0))
    throw std::invalid_argument("MonotoneFn::power: need c > 0, s > 0");
  std::function<double(double)> tail;
  if (s > 2.0)
    tail = [c, s](double X) {
      return std::pow(X, 2.0 - s) / (c * s * (s - 2.0));
    };
  std::string name = format_double(c) + "*x^" + format_double(s);
  return from_closed_form(
      std::move(name), [c, s](double x) { return c * std::pow(x, s); },
      [c, s](double x) { return c * s * std::pow(x, s - 1.0); }, 1.0, kInfinity,
      std::move(tail));
}

MonotoneFn MonotoneFn::spliced_ramp(std::string name, double lo, double x_star,
                                    double ramp_bottom, double ramp_top,
                                    std::function<double(double)> tail,
                                    std::function<double(double)> tail_deriv,
                                    std::function<double(double)> reciprocal_tail) {
  if (!(x_star > lo))
    throw std::invalid_argument("spliced_ramp: x_star must exceed lo");
  if (!(ramp_top > ramp_bottom) || !(ramp_bottom >= 0.0))
    throw std::invalid_argument("spliced_ramp: need 0 <= bottom < top");
  if (!tail || !tail_deriv)
    throw std::invalid_argument("spliced_ramp: tail callbacks required");
  double slope = (ramp_top - ramp_bottom) / (x_star - lo);
  MonotoneFn fn;
  fn.rep_ = Rep::Spliced;
  fn.name_ = std::move(name);
  fn.lo_ = lo;
  fn.hi_ = kInfinity;
  fn.value_ = [=](double x) {
    if (x <= x_star) return ramp_bottom + slope * (x - lo);
    return tail(x);
  };
  fn.deriv_ = [=](double x) {
    if (x <= x_star) return slope;
    return tail_deriv(x);
  };
  fn.recip_tail_ = std::move(reciprocal_tail);
  return fn;
}

double MonotoneFn::operator()(double x) const {
  if (x < lo_ - tolerance_for(lo_))
    throw std::domain_error("MonotoneFn: evaluation left of domain");
  if (std::isfinite(hi_) && x > hi_ + tolerance_for(hi_))
    throw std::domain_error("MonotoneFn: evaluation right of domain");
  return value_(std::clamp(x, lo_, hi_));
}

double MonotoneFn::derivative(double x) const {
  if (x < lo_ - tolerance_for(lo_))
    throw std::domain_error("MonotoneFn: derivative left of domain");
  if (std::isfinite(hi_) && x > hi_ + tolerance_for(hi_))
    throw std::domain_error("MonotoneFn: derivative right of domain");
  return deriv_(std::clamp(x, lo_, hi_));
}

const PiecewiseLinear& MonotoneFn::piecewise() const {
  if (!pwl_)
    throw std::logic_error("MonotoneFn: no piecewise representation attached");
  return *pwl_;
}

std::optional<double> MonotoneFn::reciprocal_tail_bound(double X) const {
  if (!recip_tail_) return std::nullopt;
  if (X < lo_) throw std::domain_error("reciprocal_tail_bound: X below domain");
  return recip_tail_(X);
}

std::optional<double> first_decrease(const std::function<double(double)>& f,
                                     double a, double b, int samples,
                                     double tol) {
  if (!(b > a) || samples < 2)
    throw std::invalid_argument("first_decrease: bad arguments");
  double running = f(a);
  for (int i = 1; i <= samples; ++i) {
    double x = a + (b - a) * static_cast<double>(i) / samples;
    double v = f(x);
    if (v < running - tol) return x;
    running = std::max(running, v);
  }
  return std::nullopt;
}

}  // namespace liouville
