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
#include <span>

#include "liouville/classifier.hpp"
#include "liouville/monotone.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

// Radial density
//   mu'(r) = (m/2) e^{-|r|}                          for |r| <= 1,
//   mu'(r) = (1/2) min(h'(|r|), r^2) + (m/2) e^{-|r|} for |r| > 1,
// with mu(R) the cumulative integral from 0.  The exponential cushion keeps
// mu' strictly positive, the min against r^2 keeps mu below quadratic-scale
// growth wherever h is steeper than that.
class MuFunction {
 public:
  MuFunction(MonotoneFn h, double m, double r_max = 64.0);

  double prime(double r) const;       // closed form, any real r
  double operator()(double R) const;  // cumulative on [0, r_max]
  double cumulative_error() const { return table_->error_bound(); }
  double m() const { return m_; }
  double r_max() const { return r_max_; }
  const MonotoneFn& h() const { return h_; }

 private:
  MonotoneFn h_;
  double m_, r_max_;
  std::shared_ptr<const CumulativeTable> table_;
};

// I(x) = integral of 1/mu' over [x, inf).  Strictly decreasing, positive.
// Stored on a graded grid with exact slopes -1/mu'(x) at the nodes; past the
// last node the certified tail bound pins the remainder.
class TailIntegral {
 public:
  TailIntegral(std::shared_ptr<const MuFunction> mu, double x_min, double tol);

  double operator()(double x) const;
  double derivative(double x) const { return -1.0 / mu_->prime(x); }
  double x_min() const { return table_->x_min(); }
  double x_max() const { return table_->x_max(); }  // tail cut X*
  double error_bound() const { return error_; }

 private:
  std::shared_ptr<const MuFunction> mu_;
  std::shared_ptr<const CubicHermiteTable> table_;
  double error_ = 0.0;
};

// Normalized Gaussian transverse bump H on R^{N-1} with squared mass 1/2.
class TransverseProfile {
 public:
  static TransverseProfile gaussian(int ambient_dim);  // N in {1, 2, 3}

  int ambient_dim() const { return dim_; }
  int transverse_dim() const { return dim_ - 1; }
  double operator()(std::span<const double> t) const;
  double squared_mass() const { return 0.5; }
  // Integral of H^2 over the transverse ball |t| <= rho.
  double ball_mass(double rho) const;
  double sup() const;

 private:
  explicit TransverseProfile(int dim) : dim_(dim) {}
  int dim_;
};

// Product-structure fields on R^N evaluated pointwise; the last coordinate
// is the axial one.
class FieldSet {
 public:
  virtual ~FieldSet() = default;
  virtual int dimension() const = 0;
  virtual double phi(std::span<const double> x) const = 0;
  virtual double sigma(std::span<const double> x) const = 0;
  virtual double dsigma_dxn(std::span<const double> x) const = 0;
};

// phi(t, u) = H(t) sqrt(mu'(u)) I(u),  sigma(t, u) = 1 / I(u).
// Then phi^2 (d sigma / du) = H(t)^2 exactly, so div(phi^2 grad sigma) = 0
// and the axial flux of phi^2 grad sigma is the constant 1/2.
class CounterexampleFields : public FieldSet {
 public:
  CounterexampleFields(std::shared_ptr<const MuFunction> mu,
                       std::shared_ptr<const TailIntegral> I,
                       TransverseProfile profile);

  int dimension() const override { return profile_.ambient_dim(); }
  double phi(std::span<const double> x) const override;
  double sigma(std::span<const double> x) const override;
  double dsigma_dxn(std::span<const double> x) const override;

  double mu_prime(double u) const { return mu_->prime(u); }
  double mu(double R) const { return (*mu_)(R); }
  double mu_error() const { return mu_->cumulative_error(); }
  double tail(double u) const { return (*I_)(u); }
  double tail_error() const { return I_->error_bound(); }
  double sigma_axial(double u) const { return 1.0 / (*I_)(u); }
  double dsigma_axial(double u) const;
  double m() const { return mu_->m(); }
  double flux_constant() const { return profile_.squared_mass(); }
  const TransverseProfile& profile() const { return profile_; }
  const MuFunction& mu_fn() const { return *mu_; }
  const TailIntegral& tail_fn() const { return *I_; }

 private:
  std::shared_ptr<const MuFunction> mu_;
  std::shared_ptr<const TailIntegral> I_;
  TransverseProfile profile_;
};

struct SynthesisOptions {
  int dim = 2;
  double tol = 1e-6;       // drives the tail cut of I
  double extent = 16.0;    // axial build range is [-extent, tail cut]
  double mu_range = 64.0;  // cumulative mu available on [0, mu_range]
};

CounterexampleFields build_fields(const MonotoneFn& h, double m,
                                  const SynthesisOptions& opts = {});

// Validates the witness against psi (sampled minorant check, positive
// infimum, finite certified roughness) and builds the fields with
// m = inf Psi.  Throws std::domain_error when the inputs cannot support a
// counterexample.
CounterexampleFields synthesize(const GrowthFunction& psi,
                                const MinorantWitness& witness,
                                const SynthesisOptions& opts = {});

}  // namespace liouville
