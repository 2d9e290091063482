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

#include "liouville/fieldcheck.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "liouville/util.hpp"

namespace liouville {

namespace {

struct GLRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

template <unsigned N>
GLRule expand_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  GLRule rule;
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      rule.x.push_back(0.0);
      rule.w.push_back(ws[i]);
    } else {
      rule.x.push_back(-xs[i]);
      rule.w.push_back(ws[i]);
      rule.x.push_back(xs[i]);
      rule.w.push_back(ws[i]);
    }
  }
  return rule;
}

GLRule gl_rule(int requested) {
  if (requested <= 8) return expand_rule<8>();
  if (requested <= 16) return expand_rule<16>();
  if (requested <= 24) return expand_rule<24>();
  if (requested <= 32) return expand_rule<32>();
  return expand_rule<64>();
}

double bump(double u) {
  double s = 1.0 - u * u;
  return s > 0.0 ? s * s * s : 0.0;
}

double bump_prime(double u) {
  double s = 1.0 - u * u;
  return s > 0.0 ? -6.0 * u * s * s : 0.0;
}

// Energy of the fields in the ball B_R via the axial reduction with
// closed-form transverse ball masses.
QuadResult ball_energy(const CounterexampleFields& f, double R, double tol) {
  auto integrand = [&f, R](double u) {
    double rho2 = R * R - u * u;
    double rho = rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
    double I = f.tail(u);
    return f.profile().ball_mass(rho) / (f.mu_prime(u) * I * I);
  };
  std::vector<double> cuts{-R};
  if (R > 1.0) {
    cuts.push_back(-1.0);
    cuts.push_back(1.0);
  }
  cuts.push_back(R);
  QuadResult total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    QuadResult q = integrate(integrand, cuts[k], cuts[k + 1], tol, 1e-14);
    total.value += q.value;
    total.error += q.error;
    total.evals += q.evals;
    total.converged = total.converged && q.converged;
  }
  return total;
}

}  // namespace

Box Box::cube(int dim, double a, double b) {
  if (dim < 1 || !(a < b)) throw std::invalid_argument("Box::cube: bad args");
  Box box;
  box.lo.assign(dim, a);
  box.hi.assign(dim, b);
  return box;
}

nlohmann::ordered_json EnergyReport::to_json() const {
  nlohmann::ordered_json out;
  out["R"] = R;
  out["energy"] = energy;
  out["slab_bound"] = closed_bound;
  out["mu"] = mu_value;
  out["psi"] = psi_value;
  out["quadrature_error"] = quadrature_error;
  out["chain_holds"] = chain_holds;
  return out;
}

EnergyReport energy_quadrature(const CounterexampleFields& fields,
                               const GrowthFunction& psi, double R,
                               double tol) {
  if (!(R > 0.0)) throw std::invalid_argument("energy_quadrature: R <= 0");
  EnergyReport rep;
  rep.R = R;
  QuadResult q = ball_energy(fields, R, tol);
  rep.energy = q.value;
  rep.quadrature_error = q.error;
  // Dual route: the slab |u| <= R contains the ball and its energy telescopes
  // to sigma differences, no quadrature involved.
  rep.closed_bound =
      0.5 * (fields.sigma_axial(R) - fields.sigma_axial(-R));
  rep.mu_value = fields.mu(R);
  rep.psi_value = R >= psi.domain_start() ? psi(R) : psi(psi.domain_start());
  double slack = tol * (1.0 + rep.psi_value);
  bool ball_in_slab =
      rep.energy <= rep.closed_bound + q.error + fields.tail_error() + slack;
  bool below_mu =
      rep.energy <= rep.mu_value + q.error + fields.mu_error() + slack;
  bool mu_below_psi = rep.mu_value <= rep.psi_value + fields.mu_error() + slack;
  rep.chain_holds = ball_in_slab && below_mu && mu_below_psi;
  return rep;
}

double weak_residual(const FieldSet& fields, int test_count, const Box& box,
                     std::uint64_t seed, int points_per_dim) {
  const int N = fields.dimension();
  if (static_cast<int>(box.lo.size()) != N ||
      static_cast<int>(box.hi.size()) != N)
    throw std::invalid_argument("weak_residual: box dimension mismatch");
  if (test_count < 1)
    throw std::invalid_argument("weak_residual: need at least one test");
  GLRule rule = gl_rule(points_per_dim);
  const int n = static_cast<int>(rule.x.size());

  Rng master(seed);
  std::vector<std::uint64_t> seeds(test_count);
  for (auto& s : seeds) s = master.next_u64();

  std::vector<double> residuals(test_count, 0.0);
  parallel_for(test_count, [&](std::size_t t) {
    Rng rng(seeds[t]);
    std::vector<double> center(N), half(N);
    for (int d = 0; d < N; ++d) {
      double span = box.hi[d] - box.lo[d];
      half[d] = rng.uniform(0.08, 0.22) * span;
      center[d] = rng.uniform(box.lo[d] + half[d], box.hi[d] - half[d]);
    }

    std::size_t cells = 1;
    for (int d = 0; d < N; ++d) cells *= n;
    std::vector<double> pt(N), u(N), b(N), db(N);
    double num = 0.0, norm_field2 = 0.0, norm_test2 = 0.0;
    for (std::size_t flat = 0; flat < cells; ++flat) {
      std::size_t rest = flat;
      double wt = 1.0;
      for (int d = 0; d < N; ++d) {
        int i = static_cast<int>(rest % n);
        rest /= n;
        u[d] = rule.x[i];
        pt[d] = center[d] + half[d] * u[d];
        wt *= rule.w[i] * half[d];
        b[d] = bump(u[d]);
        db[d] = bump_prime(u[d]) / half[d];
      }
      double phi = fields.phi(pt);
      double axial_flux = phi * phi * fields.dsigma_dxn(pt);
      double grad_test2 = 0.0, dpsi_axial = 0.0;
      for (int d = 0; d < N; ++d) {
        double partial = db[d];
        for (int e = 0; e < N; ++e)
          if (e != d) partial *= b[e];
        grad_test2 += partial * partial;
        if (d == N - 1) dpsi_axial = partial;
      }
      num += wt * axial_flux * dpsi_axial;
      norm_field2 += wt * axial_flux * axial_flux;
      norm_test2 += wt * grad_test2;
    }
    residuals[t] =
        std::fabs(num) / (std::sqrt(norm_field2 * norm_test2) + 1e-300);
  });
  return *std::max_element(residuals.begin(), residuals.end());
}

CutoffEta::CutoffEta(std::function<double(double)> h_prime, double R1,
                     double R2)
    : hp_(std::move(h_prime)), R1_(R1), R2_(R2) {
  if (!hp_ || !(R2_ > R1_) || !(R1_ > 0.0))
    throw std::invalid_argument("CutoffEta: bad arguments");
  auto recip = [this](double r) { return 1.0 / hp_(r); };
  std::vector<double> xs = uniform_nodes(R1_, R2_, 64);
  std::vector<double> ys(xs.size()), ms(xs.size());
  ys.back() = 0.0;
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    QuadResult cell = gauss_kronrod_cell(recip, xs[k], xs[k + 1]);
    if (cell.error > 1e-10 * (1.0 + std::fabs(cell.value)))
      cell = integrate(recip, xs[k], xs[k + 1], 1e-11, 1e-300, 100'000);
    ys[k] = ys[k + 1] + cell.value;
  }
  for (std::size_t k = 0; k < xs.size(); ++k) ms[k] = -recip(xs[k]);
  D_ = ys.front();
  table_ = std::make_shared<const CubicHermiteTable>(std::move(xs),
                                                     std::move(ys), std::move(ms));
}

double CutoffEta::operator()(double r) const {
  if (r <= R1_) return 1.0;
  if (r >= R2_) return 0.0;
  return (*table_)(r) / D_;
}

double CutoffEta::prime(double r) const {
  if (r <= R1_ || r >= R2_) return 0.0;
  return -1.0 / (hp_(r) * D_);
}

double energy_sphere_density(const CounterexampleFields& fields, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("sphere density: r < 0");
  switch (fields.dimension()) {
    case 1:
      return fields.mu_prime(r);  // (1/2)(mu'(r) + mu'(-r)), mu' even
    case 2: {
      const double inv = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
      auto f = [&](double theta) {
        double t = r * std::cos(theta);
        double axial = r * std::sin(theta);
        return inv * std::exp(-t * t) * fields.mu_prime(axial);
      };
      return r * integrate(f, 0.0, 2.0 * std::numbers::pi, 1e-10, 1e-14,
                           200'000)
                     .value;
    }
    case 3: {
      auto f = [&](double axial) {
        return std::exp(-(r * r - axial * axial)) * fields.mu_prime(axial);
      };
      return r * integrate(f, -r, r, 1e-10, 1e-14, 200'000).value;
    }
  }
  throw std::logic_error("unreachable");
}

nlohmann::ordered_json CaccioppoliReport::to_json() const {
  nlohmann::ordered_json out;
  out["R1"] = R1;
  out["R2"] = R2;
  out["lhs_energy"] = lhs;
  out["middle_weighted_gradient"] = middle;
  out["rhs_capacity"] = rhs;
  out["D"] = D;
  out["identity_residual"] = identity_residual;
  out["holds"] = holds;
  return out;
}

CaccioppoliReport caccioppoli_check(const CounterexampleFields& fields,
                                    double R1, double R2, CutoffEta* eta_out) {
  if (!(R1 > 0.0) || !(R2 > R1))
    throw std::invalid_argument("caccioppoli_check: need 0 < R1 < R2");
  CaccioppoliReport rep;
  rep.R1 = R1;
  rep.R2 = R2;

  double m = fields.m();
  const CounterexampleFields* fp = &fields;
  auto h_prime = [fp, m](double r) {
    return 0.5 * energy_sphere_density(*fp, r) + 0.5 * m * std::exp(-r);
  };
  CutoffEta eta(h_prime, R1, R2);
  rep.D = eta.D();
  rep.rhs = 8.0 / rep.D;

  QuadResult lhs = ball_energy(fields, R1, 1e-9);
  rep.lhs = lhs.value;

  QuadResult middle = integrate(
      [&](double r) {
        double ep = eta.prime(r);
        return 4.0 * energy_sphere_density(fields, r) * ep * ep;
      },
      R1, R2, 1e-8, 1e-12, 400'000);
  rep.middle = middle.value;

  QuadResult ident = integrate(
      [&](double r) {
        double ep = eta.prime(r);
        return ep * ep * eta.h_prime(r);
      },
      R1, R2, 1e-10, 1e-14, 400'000);
  rep.identity_residual = std::fabs(ident.value * rep.D - 1.0);

  double slack1 = 1e-8 * (1.0 + rep.middle) + lhs.error + middle.error;
  double slack2 = 1e-8 * (1.0 + rep.rhs) + middle.error;
  rep.holds = rep.lhs <= rep.middle + slack1 && rep.middle <= rep.rhs + slack2;
  if (eta_out) *eta_out = eta;
  return rep;
}

NonconstancyReport nonconstancy_check(const FieldSet& fields, const Box& box,
                                      int samples) {
  const int N = fields.dimension();
  if (static_cast<int>(box.lo.size()) != N ||
      static_cast<int>(box.hi.size()) != N)
    throw std::invalid_argument("nonconstancy_check: box dimension mismatch");
  if (samples < 2)
    throw std::invalid_argument("nonconstancy_check: need samples >= 2");
  std::vector<double> pt(N);
  for (int d = 0; d + 1 < N; ++d) pt[d] = 0.5 * (box.lo[d] + box.hi[d]);
  NonconstancyReport rep;
  double smin = kInfinity, smax = -kInfinity, prev = -kInfinity;
  rep.phi_min = kInfinity;
  rep.sigma_monotone = true;
  for (int i = 0; i <= samples; ++i) {
    pt[N - 1] = box.lo[N - 1] +
                (box.hi[N - 1] - box.lo[N - 1]) * static_cast<double>(i) /
                    samples;
    double s = fields.sigma(pt);
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    rep.sigma_abs_max = std::max(rep.sigma_abs_max, std::fabs(s));
    if (i > 0 && s < prev - 1e-12 * (1.0 + std::fabs(prev)))
      rep.sigma_monotone = false;
    prev = s;
    rep.phi_min = std::min(rep.phi_min, fields.phi(pt));
  }
  rep.sigma_osc = smax - smin;
  return rep;
}

}  // namespace liouville
