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

#include <cstddef>
#include <functional>
#include <vector>

namespace liouville {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;      // absolute error estimate
  std::size_t evals = 0;
  bool converged = true;   // false when the eval budget ran out first
};

inline constexpr std::size_t kDefaultEvalBudget = 1'000'000;

// Adaptive Gauss-Kronrod (7,15) on [a, b].  Splits the worst cell until the
// summed error estimate is below tol_rel * |value| + tol_abs or the eval
// budget is exhausted; the latter is reported, never silently accepted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol_rel = 1e-10, double tol_abs = 1e-14,
                     std::size_t max_evals = kDefaultEvalBudget);

// Single (7,15) pass on one cell, no subdivision.
QuadResult gauss_kronrod_cell(const std::function<double(double)>& f, double a,
                              double b);

// Prefix integrals of f over a fixed node grid.  prefix(k) carries the
// integral from nodes.front() to nodes[k] with a per-cell error bound;
// operator() completes the partial cell by one more Kronrod pass.
class CumulativeTable {
 public:
  CumulativeTable(const std::function<double(double)>& f,
                  std::vector<double> nodes, double tol_rel = 1e-10);

  double operator()(double x) const;   // integral from nodes.front() to x
  double error_bound() const { return total_error_; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }
  double prefix(std::size_t k) const { return prefix_[k]; }

 private:
  std::function<double(double)> f_;
  std::vector<double> nodes_;
  std::vector<double> prefix_;
  double total_error_ = 0.0;
};

// C1 piecewise-cubic table with caller-supplied slopes.  Used where exact
// derivatives at the nodes are available, so the interpolant's derivative
// agrees with the analytic one at every node by construction.
class CubicHermiteTable {
 public:
  CubicHermiteTable(std::vector<double> xs, std::vector<double> ys,
                    std::vector<double> slopes);
  // One-sided variant for integrands whose derivative jumps at a node: the
  // cell right of node k uses slope_from[k], the cell left of node k uses
  // slope_to[k].
  CubicHermiteTable(std::vector<double> xs, std::vector<double> ys,
                    std::vector<double> slope_from,
                    std::vector<double> slope_to);

  double operator()(double x) const;
  double derivative(double x) const;
  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }

 private:
  std::size_t cell(double x) const;
  std::vector<double> xs_, ys_, mfrom_, mto_;
};

// Geometric node ladder: a, a*ratio, ... capped at b (b appended exactly).
std::vector<double> geometric_nodes(double a, double b, double ratio);

// Uniform nodes, endpoints included.
std::vector<double> uniform_nodes(double a, double b, std::size_t cells);

}  // namespace liouville
