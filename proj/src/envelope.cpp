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

#include "liouville/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace liouville {

namespace {

PiecewiseLinear clip(const PiecewiseLinear& p, double a, double b) {
  std::vector<double> xs{a};
  for (double x : p.xs())
    if (x > a && x < b) xs.push_back(x);
  xs.push_back(b);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(p(x));
  return PiecewiseLinear::from_points(std::move(xs), std::move(ys));
}

void check_lines_start_below(const std::function<double(double)>& g,
                             std::span<const Line> lines, double a) {
  double ga = g(a);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!(lines[i].slope > 0.0))
      throw std::invalid_argument("polygonal_max: line " + std::to_string(i) +
                                  " has nonpositive slope");
    if (lines[i].at(a) > ga + 1e-9 * (1.0 + std::fabs(ga)))
      throw std::invalid_argument("polygonal_max: line " + std::to_string(i) +
                                  " starts above g at the left endpoint");
  }
}

}  // namespace

MonotoneFn polygonal_max(const MonotoneFn& g, std::span<const Line> lines,
                         double a, double b) {
  if (!(a < b)) throw std::invalid_argument("polygonal_max: need a < b");
  check_lines_start_below([&g](double x) { return g(x); }, lines, a);

  if (g.has_piecewise()) {
    PiecewiseLinear out = clip(g.piecewise(), a, b).max_with_lines(lines);
    return MonotoneFn::from_piecewise("max(" + g.name() + ", lines)",
                                      std::move(out));
  }

  std::vector<Line> owned(lines.begin(), lines.end());
  MonotoneFn base = g;
  auto value = [base, owned](double x) {
    double v = base(x);
    for (const Line& l : owned) v = std::max(v, l.at(x));
    return v;
  };
  auto deriv = [base, owned](double x) {
    double v = base(x);
    double best = v;
    double d = base.derivative(x);
    for (const Line& l : owned) {
      double lv = l.at(x);
      if (lv > best || (lv == best && l.slope > d)) {
        best = lv;
        d = l.slope;
      }
    }
    return d;
  };
  return MonotoneFn::from_closed_form("max(" + g.name() + ", lines)", value,
                                      deriv, a, b);
}

PiecewiseLinear tangent_envelope(const C1Fn& phi, double a, double b, int n) {
  if (!phi.value || !phi.deriv)
    throw std::invalid_argument("tangent_envelope: callbacks required");
  if (!(a < b) || n < 0 || n > 20)
    throw std::invalid_argument("tangent_envelope: bad arguments");
  std::size_t count = (std::size_t{1} << n) + 1;
  PiecewiseLinear env = [&] {
    double t0 = a;
    Line first{phi.deriv(t0), phi.value(t0) - phi.deriv(t0) * t0};
    return PiecewiseLinear::from_line(first, a, b);
  }();
  for (std::size_t i = 1; i < count; ++i) {
    double t = a + (b - a) * static_cast<double>(i) / (count - 1);
    Line tangent{phi.deriv(t), phi.value(t) - phi.deriv(t) * t};
    env = PiecewiseLinear::max(env, PiecewiseLinear::from_line(tangent, a, b));
  }
  return env;
}

MinorantCheck convex_minorant_check(const C1Fn& phi, const MonotoneFn& g,
                                    double a, double b, int samples,
                                    double tol) {
  if (!(a < b) || samples < 2)
    throw std::invalid_argument("convex_minorant_check: bad arguments");
  MinorantCheck out;
  out.samples = samples;
  for (int i = 0; i <= samples; ++i) {
    double x = a + (b - a) * static_cast<double>(i) / samples;
    double excess = g(x) - phi.value(x);
    if (excess > out.max_violation) {
      out.max_violation = excess;
      out.where = x;
    }
  }
  double scale = 1.0 + std::fabs(phi.value(b));
  out.holds = out.max_violation <= tol * scale;
  return out;
}

double dp_min_roughness(const C1Fn& phi, double a, double b, int x_cells,
                        int value_cells, const DpOptions& opts) {
  if (!phi.value || !phi.deriv)
    throw std::invalid_argument("dp_min_roughness: callbacks required");
  if (!(a < b) || x_cells < 1 || value_cells < 1 || opts.max_span < 1 ||
      opts.max_jump < 1)
    throw std::invalid_argument("dp_min_roughness: bad arguments");

  const double fa = phi.value(a), fb = phi.value(b);
  if (!(fb > fa))
    throw std::invalid_argument("dp_min_roughness: phi(b) must exceed phi(a)");
  for (int i = 0; i < 16; ++i) {
    double x0 = a + (b - a) * i / 16.0;
    double x1 = a + (b - a) * (i + 1) / 16.0;
    if (phi.deriv(x1) < phi.deriv(x0) - 1e-9 * (1.0 + std::fabs(phi.deriv(x0))))
      throw std::invalid_argument("dp_min_roughness: phi must be convex");
  }

  const int Mx = x_cells, My = value_cells;
  const int S = std::min(opts.max_span, Mx);
  const int K = std::min(opts.max_jump, My);
  const double dx = (b - a) / Mx;
  const double dy = (fb - fa) / My;
  const double tol = opts.tol * (1.0 + std::fabs(fb));

  std::vector<double> xs(Mx + 1), phis(Mx + 1), ys(My + 1);
  for (int i = 0; i <= Mx; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / Mx;
    phis[i] = phi.value(xs[i]);
  }
  for (int j = 0; j <= My; ++j)
    ys[j] = fa + (fb - fa) * static_cast<double>(j) / My;

  // Lattice knots (i, j) are admissible when ys[j] <= phi(xs[i]).
  std::vector<char> adm((Mx + 1) * (My + 1));
  for (int i = 0; i <= Mx; ++i)
    for (int j = 0; j <= My; ++j)
      adm[i * (My + 1) + j] = ys[j] <= phis[i] + tol;

  // Per (span, jump) class the candidate segment slope is fixed, hence so is
  // the abscissa where line - phi peaks (phi' equals the slope there).  A
  // segment stays below convex phi iff it does at both knots and that peak.
  struct SegClass {
    double slope, cost, x_star, phi_star;
    bool has_star;
  };
  std::vector<SegClass> cls(static_cast<std::size_t>(S) * K);
  const double da = phi.deriv(a), db = phi.deriv(b);
  for (int s = 1; s <= S; ++s)
    for (int k = 1; k <= K; ++k) {
      SegClass c;
      c.slope = (k * dy) / (s * dx);
      c.cost = (s * dx) * (s * dx) / (k * dy);
      c.has_star = c.slope > da && c.slope < db;
      if (c.has_star) {
        double lo = a, hi = b;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          (phi.deriv(mid) < c.slope ? lo : hi) = mid;
        }
        c.x_star = 0.5 * (lo + hi);
        c.phi_star = phi.value(c.x_star);
      } else {
        c.x_star = c.phi_star = 0.0;
      }
      cls[(s - 1) * static_cast<std::size_t>(K) + (k - 1)] = c;
    }

  std::vector<double> dist((Mx + 1) * (My + 1), kInfinity);
  for (int j = 0; j <= My; ++j)
    if (adm[j]) dist[j] = 0.0;

  for (int i = 0; i < Mx; ++i) {
    for (int j = 0; j <= My; ++j) {
      double base = dist[i * (My + 1) + j];
      if (std::isinf(base)) continue;
      for (int s = 1; s <= S && i + s <= Mx; ++s) {
        for (int k = 1; k <= K && j + k <= My; ++k) {
          if (!adm[(i + s) * (My + 1) + (j + k)]) continue;
          const SegClass& c = cls[(s - 1) * static_cast<std::size_t>(K) + (k - 1)];
          if (c.has_star && c.x_star > xs[i] && c.x_star < xs[i + s]) {
            double line_at_star = ys[j] + c.slope * (c.x_star - xs[i]);
            if (line_at_star > c.phi_star + tol) continue;
          }
          double& target = dist[(i + s) * (My + 1) + (j + k)];
          target = std::min(target, base + c.cost);
        }
      }
    }
  }

  double best = kInfinity;
  for (int j = 0; j <= My; ++j)
    best = std::min(best, dist[Mx * (My + 1) + j]);
  if (std::isinf(best))
    throw std::runtime_error(
        "dp_min_roughness: no feasible polygonal minorant on this lattice; "
        "raise max_span/max_jump or refine the lattice");
  return best;
}

}  // namespace liouville
