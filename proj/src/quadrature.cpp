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

#include "liouville/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace liouville {

namespace {

struct Cell {
  double a, b, value, error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

// One Gauss-Kronrod (7,15) pass.  The embedded Gauss nodes sit at the even
// Kronrod abscissa indices, so both sums come from the same 15 evaluations.
Cell gk15_pass(const std::function<double(double)>& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G7 = boost::math::quadrature::gauss<double, 7>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G7::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double f0 = f(c);
  double ik = wk[0] * f0;
  double ig = wg[0] * f0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    double fp = f(c + h * xk[i]);
    double fm = f(c - h * xk[i]);
    ik += wk[i] * (fp + fm);
    if (i % 2 == 0) ig += wg[i / 2] * (fp + fm);
  }
  ik *= h;
  ig *= h;
  return Cell{a, b, ik, std::fabs(ik - ig)};
}

}  // namespace

QuadResult gauss_kronrod_cell(const std::function<double(double)>& f, double a,
                              double b) {
  if (!(a <= b)) throw std::invalid_argument("gauss_kronrod_cell: a > b");
  if (a == b) return {0.0, 0.0, 0, true};
  Cell cell = gk15_pass(f, a, b);
  return {cell.value, cell.error, 15, true};
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol_rel, double tol_abs, std::size_t max_evals) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate: endpoints must be finite");
  if (!(a <= b)) throw std::invalid_argument("integrate: a > b");
  if (a == b) return {0.0, 0.0, 0, true};

  std::priority_queue<Cell> cells;
  std::size_t evals = 0;
  double total = 0.0, total_err = 0.0;

  const int initial = 8;
  for (int i = 0; i < initial; ++i) {
    double lo = a + (b - a) * i / initial;
    double hi = (i == initial - 1) ? b : a + (b - a) * (i + 1) / initial;
    Cell cell = gk15_pass(f, lo, hi);
    evals += 15;
    total += cell.value;
    total_err += cell.error;
    cells.push(cell);
  }

  auto good_enough = [&] {
    return total_err <= std::max(tol_rel * std::fabs(total), tol_abs);
  };

  while (!good_enough() && evals + 30 <= max_evals) {
    Cell worst = cells.top();
    cells.pop();
    total -= worst.value;
    total_err -= worst.error;
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // cell narrower than one ulp, nothing left to split
      total += worst.value;
      total_err += worst.error;
      cells.push(worst);
      break;
    }
    for (Cell half : {gk15_pass(f, worst.a, mid), gk15_pass(f, mid, worst.b)}) {
      evals += 15;
      total += half.value;
      total_err += half.error;
      cells.push(half);
    }
  }

  return {total, total_err, evals, good_enough()};
}

CumulativeTable::CumulativeTable(const std::function<double(double)>& f,
                                 std::vector<double> nodes, double tol_rel)
    : f_(f), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2)
    throw std::invalid_argument("CumulativeTable: need at least two nodes");
  if (!std::is_sorted(nodes_.begin(), nodes_.end()))
    throw std::invalid_argument("CumulativeTable: nodes must be sorted");
  prefix_.resize(nodes_.size());
  prefix_[0] = 0.0;
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    QuadResult cell =
        integrate(f_, nodes_[k - 1], nodes_[k], tol_rel, 1e-300, 20'000);
    prefix_[k] = prefix_[k - 1] + cell.value;
    total_error_ += cell.error;
  }
}

double CumulativeTable::operator()(double x) const {
  if (x < nodes_.front() || x > nodes_.back())
    throw std::domain_error("CumulativeTable: query outside node range");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
  if (k == 0) return 0.0;
  --k;
  if (x == nodes_[k]) return prefix_[k];
  return prefix_[k] + integrate(f_, nodes_[k], x, 1e-10, 1e-300, 20'000).value;
}

CubicHermiteTable::CubicHermiteTable(std::vector<double> xs,
                                     std::vector<double> ys,
                                     std::vector<double> slopes)
    : CubicHermiteTable(std::move(xs), std::move(ys), slopes, slopes) {}

CubicHermiteTable::CubicHermiteTable(std::vector<double> xs,
                                     std::vector<double> ys,
                                     std::vector<double> slope_from,
                                     std::vector<double> slope_to)
    : xs_(std::move(xs)),
      ys_(std::move(ys)),
      mfrom_(std::move(slope_from)),
      mto_(std::move(slope_to)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size() ||
      xs_.size() != mfrom_.size() || xs_.size() != mto_.size())
    throw std::invalid_argument("CubicHermiteTable: size mismatch");
  if (!std::is_sorted(xs_.begin(), xs_.end()))
    throw std::invalid_argument("CubicHermiteTable: xs must be sorted");
}

std::size_t CubicHermiteTable::cell(double x) const {
  if (x < xs_.front() || x > xs_.back())
    throw std::domain_error("CubicHermiteTable: query outside table range");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - xs_.begin());
  if (k == 0) return 0;
  if (k >= xs_.size()) return xs_.size() - 2;
  return k - 1;
}

double CubicHermiteTable::operator()(double x) const {
  std::size_t k = cell(x);
  double L = xs_[k + 1] - xs_[k];
  double t = (x - xs_[k]) / L;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  double h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t);
  double h11 = t * t * (t - 1);
  return h00 * ys_[k] + h10 * L * mfrom_[k] + h01 * ys_[k + 1] +
         h11 * L * mto_[k + 1];
}

double CubicHermiteTable::derivative(double x) const {
  std::size_t k = cell(x);
  double L = xs_[k + 1] - xs_[k];
  double t = (x - xs_[k]) / L;
  double d00 = 6 * t * (t - 1);
  double d10 = (1 - t) * (1 - 3 * t);
  double d01 = 6 * t * (1 - t);
  double d11 = t * (3 * t - 2);
  return (d00 * ys_[k] + d01 * ys_[k + 1]) / L + d10 * mfrom_[k] +
         d11 * mto_[k + 1];
}

std::vector<double> geometric_nodes(double a, double b, double ratio) {
  if (!(a > 0.0 && b > a && ratio > 1.0))
    throw std::invalid_argument("geometric_nodes: need 0 < a < b, ratio > 1");
  std::vector<double> out{a};
  double x = a;
  while (x * ratio < b) {
    x *= ratio;
    out.push_back(x);
  }
  out.push_back(b);
  return out;
}

std::vector<double> uniform_nodes(double a, double b, std::size_t cells) {
  if (!(b > a) || cells == 0)
    throw std::invalid_argument("uniform_nodes: need a < b and cells > 0");
  std::vector<double> out;
  out.reserve(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    out.push_back(a + (b - a) * static_cast<double>(i) / cells);
  out.back() = b;
  return out;
}

}  // namespace liouville
