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

#include "liouville/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "liouville/roughness.hpp"
#include "liouville/util.hpp"

namespace liouville {

MuFunction::MuFunction(MonotoneFn h, double m, double r_max)
    : h_(std::move(h)), m_(m), r_max_(r_max) {
  if (!(m_ > 0.0)) throw std::invalid_argument("MuFunction: need m > 0");
  if (!(r_max_ > 2.0)) throw std::invalid_argument("MuFunction: r_max too small");
  if (h_.lo() > 1.0)
    throw std::invalid_argument("MuFunction: h must be defined from 1");
  std::vector<double> nodes = uniform_nodes(0.0, 1.0, 4);
  for (double x : geometric_nodes(1.0, r_max_, 1.1))
    if (x > 1.0) nodes.push_back(x);
  MonotoneFn h_copy = h_;
  double m_copy = m_;
  auto prime = [h_copy, m_copy](double r) {
    double cushion = 0.5 * m_copy * std::exp(-std::fabs(r));
    if (std::fabs(r) <= 1.0) return cushion;
    double a = std::fabs(r);
    return 0.5 * std::min(h_copy.derivative(a), r * r) + cushion;
  };
  table_ = std::make_shared<const CumulativeTable>(prime, std::move(nodes),
                                                  1e-12);
}

double MuFunction::prime(double r) const {
  double cushion = 0.5 * m_ * std::exp(-std::fabs(r));
  if (std::fabs(r) <= 1.0) return cushion;
  double a = std::fabs(r);
  return 0.5 * std::min(h_.derivative(a), r * r) + cushion;
}

double MuFunction::operator()(double R) const {
  if (!(R >= 0.0)) throw std::domain_error("MuFunction: need R >= 0");
  return (*table_)(R);
}

TailIntegral::TailIntegral(std::shared_ptr<const MuFunction> mu, double x_min,
                           double tol)
    : mu_(std::move(mu)) {
  if (!(tol > 0.0) || !(x_min < 8.0))
    throw std::invalid_argument("TailIntegral: bad arguments");

  // Tail cut: 1/mu' <= 2/h' + 2/r^2, so the remainder past X is below
  // 2 * tail_h(X) + 2/X; push that under tol/2.
  const MonotoneFn& h = mu_->h();
  if (!h.reciprocal_tail_bound(8.0))
    throw std::invalid_argument(
        "TailIntegral: h carries no reciprocal tail bound");
  double X = 8.0;
  while (mu_reciprocal_tail_bound(h, X) > 0.5 * tol && X < 1e12) X *= 2.0;
  double tail_remainder = mu_reciprocal_tail_bound(h, X);

  // Integer-anchored binary grid so the kink abscissas +-1 land on nodes.
  std::vector<double> xs;
  double lo = std::floor(x_min);
  for (int i = 0;; ++i) {
    double x = lo + static_cast<double>(i) / 256.0;
    if (x >= 8.0) break;
    xs.push_back(x);
  }
  for (double x : geometric_nodes(8.0, X, 1.04)) xs.push_back(x);

  std::vector<double> ys(xs.size());
  const MuFunction& mf = *mu_;
  auto integrand = [&mf](double r) { return 1.0 / mf.prime(r); };
  ys.back() = 0.5 * tail_remainder;
  error_ = 0.5 * tail_remainder;
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    QuadResult cell = gauss_kronrod_cell(integrand, xs[k], xs[k + 1]);
    if (cell.error > 1e-11 * (1.0 + std::fabs(cell.value)))
      cell = integrate(integrand, xs[k], xs[k + 1], 1e-12, 1e-300, 50'000);
    ys[k] = ys[k + 1] + cell.value;
    error_ += cell.error;
  }
  // mu' jumps where the min-term switches on (|r| = 1) and wherever h'
  // jumps, so each cell takes the node slope from its own side.
  std::vector<double> from(xs.size()), to(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    from[k] = -1.0 / mf.prime(std::nextafter(xs[k], kInfinity));
    to[k] = -1.0 / mf.prime(std::nextafter(xs[k], -kInfinity));
  }
  table_ = std::make_shared<const CubicHermiteTable>(
      std::move(xs), std::move(ys), std::move(from), std::move(to));
}

double TailIntegral::operator()(double x) const {
  if (x < table_->x_min())
    throw std::domain_error("TailIntegral: query left of the built range");
  if (x >= table_->x_max()) return (*table_)(table_->x_max());
  return (*table_)(x);
}

TransverseProfile TransverseProfile::gaussian(int ambient_dim) {
  if (ambient_dim < 1 || ambient_dim > 3)
    throw std::invalid_argument("TransverseProfile: dim must be 1, 2 or 3");
  return TransverseProfile(ambient_dim);
}

double TransverseProfile::operator()(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != dim_ - 1)
    throw std::invalid_argument("TransverseProfile: wrong point size");
  double norm2 = 0.0;
  for (double v : t) norm2 += v * v;
  double amp = std::pow(std::numbers::pi, -0.25 * (dim_ - 1)) /
               std::numbers::sqrt2;
  return amp * std::exp(-0.5 * norm2);
}

double TransverseProfile::ball_mass(double rho) const {
  if (!(rho >= 0.0)) throw std::invalid_argument("ball_mass: need rho >= 0");
  switch (dim_) {
    case 1: return 0.5;
    case 2: return 0.5 * std::erf(rho);
    case 3: return 0.5 * (1.0 - std::exp(-rho * rho));
  }
  throw std::logic_error("unreachable");
}

double TransverseProfile::sup() const {
  return std::pow(std::numbers::pi, -0.25 * (dim_ - 1)) / std::numbers::sqrt2;
}

CounterexampleFields::CounterexampleFields(
    std::shared_ptr<const MuFunction> mu, std::shared_ptr<const TailIntegral> I,
    TransverseProfile profile)
    : mu_(std::move(mu)), I_(std::move(I)), profile_(profile) {
  if (!mu_ || !I_) throw std::invalid_argument("CounterexampleFields: null");
}

double CounterexampleFields::phi(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("phi: wrong point size");
  double u = x.back();
  double H = profile_(x.subspan(0, x.size() - 1));
  return H * std::sqrt(mu_->prime(u)) * (*I_)(u);
}

double CounterexampleFields::sigma(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("sigma: wrong point size");
  return 1.0 / (*I_)(x.back());
}

double CounterexampleFields::dsigma_dxn(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("dsigma_dxn: wrong point size");
  return dsigma_axial(x.back());
}

double CounterexampleFields::dsigma_axial(double u) const {
  double I = (*I_)(u);
  return 1.0 / (mu_->prime(u) * I * I);
}

CounterexampleFields build_fields(const MonotoneFn& h, double m,
                                  const SynthesisOptions& opts) {
  if (opts.extent < 4.0)
    throw std::invalid_argument("build_fields: extent too small");
  auto mu = std::make_shared<const MuFunction>(h, m, opts.mu_range);
  auto I = std::make_shared<const TailIntegral>(mu, -opts.extent, opts.tol);
  return CounterexampleFields(std::move(mu), std::move(I),
                              TransverseProfile::gaussian(opts.dim));
}

CounterexampleFields synthesize(const GrowthFunction& psi,
                                const MinorantWitness& witness,
                                const SynthesisOptions& opts) {
  double m = psi.infimum();
  if (!(m > 0.0))
    throw std::domain_error(
        "synthesize: growth bound has zero infimum, no counterexample exists");
  if (!std::isfinite(witness.roughness_upper_bound))
    throw std::domain_error(
        "synthesize: witness lacks a finite certified roughness bound");
  double a = std::max(1.0, psi.domain_start());
  double b = std::isfinite(psi.domain_end()) ? psi.domain_end() : a + 63.0;
  for (int i = 0; i <= 2048; ++i) {
    double x = a + (b - a) * i / 2048.0;
    double hv = witness.h(x);
    double pv = psi(x);
    if (hv > pv + 1e-9 * (1.0 + std::fabs(pv)))
      throw std::domain_error(
          "synthesize: witness is not a minorant of the growth bound");
    if (hv < -1e-12)
      throw std::domain_error("synthesize: witness goes negative");
  }
  return build_fields(witness.h, m, opts);
}

}  // namespace liouville
