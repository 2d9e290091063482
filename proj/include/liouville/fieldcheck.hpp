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

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "liouville/synthesis.hpp"

namespace liouville {

struct Box {
  std::vector<double> lo, hi;
  static Box cube(int dim, double a, double b);
};

// Energy of the fields in B_R against the growth chain.  The ball energy is
// integrated directly (transverse ball masses are closed-form); the closed
// bound (1/2) sigma(R) comes from the axial antiderivative and is computed
// independently, never substituted for the quadrature.
struct EnergyReport {
  double R = 0.0;
  double energy = 0.0;        // quadrature over the ball
  double closed_bound = 0.0;  // (1/2) sigma_axial(R)
  double mu_value = 0.0;
  double psi_value = 0.0;
  double quadrature_error = 0.0;
  bool chain_holds = false;   // energy <= closed_bound <= mu <= psi

  nlohmann::ordered_json to_json() const;
};

EnergyReport energy_quadrature(const CounterexampleFields& fields,
                               const GrowthFunction& psi, double R,
                               double tol = 1e-8);

// Max over randomized bump test functions of
//   |int phi^2 (d sigma) (d psi_test)| / (||phi^2 grad sigma|| ||grad psi_test||)
// with tensor Gauss-Legendre quadrature on each bump's support.
double weak_residual(const FieldSet& fields, int test_count, const Box& box,
                     std::uint64_t seed, int points_per_dim = 24);

// Radial cutoff built on the reciprocal of the energy-profile derivative:
// eta = 1 on [0, R1], eta(r) proportional to int_r^{R2} 1/h', eta = 0 past
// R2.  By construction D * int eta'^2 h' = 1.
class CutoffEta {
 public:
  CutoffEta(std::function<double(double)> h_prime, double R1, double R2);

  double operator()(double r) const;
  double prime(double r) const;
  double R1() const { return R1_; }
  double R2() const { return R2_; }
  double D() const { return D_; }  // int_{R1}^{R2} 1/h'
  double h_prime(double r) const { return hp_(r); }

 private:
  std::function<double(double)> hp_;
  double R1_, R2_, D_;
  std::shared_ptr<const CubicHermiteTable> table_;
};

struct CaccioppoliReport {
  double R1 = 0.0, R2 = 0.0;
  double lhs = 0.0;              // energy in B_{R1}
  double middle = 0.0;           // 4 int S eta'^2
  double rhs = 0.0;              // 8 / D
  double D = 0.0;
  double identity_residual = 0.0;  // |D * int eta'^2 h' - 1|
  bool holds = false;

  nlohmann::ordered_json to_json() const;
};

// Capacity bound for the exact fields: energy(B_{R1}) <= 4 int S eta'^2
// <= 8 / D, with S the sphere density of phi^2 sigma^2 and h' = S/2 plus the
// exponential cushion.  Returns the cutoff so its trace can be exported.
CaccioppoliReport caccioppoli_check(const CounterexampleFields& fields,
                                    double R1, double R2,
                                    CutoffEta* eta_out = nullptr);

// Sphere density of phi^2 sigma^2 = H(t)^2 mu'(u); exposed for tests.
double energy_sphere_density(const CounterexampleFields& fields, double r);

struct NonconstancyReport {
  double sigma_osc = 0.0;      // oscillation of sigma along the axial segment
  double sigma_abs_max = 0.0;  // max |sigma| seen, scales the noise floor
  bool sigma_monotone = false;  // nondecreasing along the axis
  double phi_min = 0.0;         // min of phi on the axial segment (t = 0)
};

NonconstancyReport nonconstancy_check(const FieldSet& fields, const Box& box,
                                      int samples = 512);

// Fault injection for negative controls: scales phi by `factor` on the half
// space x_N > threshold and leaves sigma untouched, which breaks the weak
// identity.
class PerturbedFields : public FieldSet {
 public:
  PerturbedFields(const FieldSet& base, double factor, double threshold)
      : base_(&base), factor_(factor), threshold_(threshold) {}

  int dimension() const override { return base_->dimension(); }
  double phi(std::span<const double> x) const override {
    double v = base_->phi(x);
    return x.back() > threshold_ ? factor_ * v : v;
  }
  double sigma(std::span<const double> x) const override {
    return base_->sigma(x);
  }
  double dsigma_dxn(std::span<const double> x) const override {
    return base_->dsigma_dxn(x);
  }

 private:
  const FieldSet* base_;
  double factor_, threshold_;
};

}  // namespace liouville
