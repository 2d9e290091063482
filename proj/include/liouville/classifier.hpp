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

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "liouville/growth.hpp"
#include "liouville/roughness.hpp"

namespace liouville {

enum class Status { SatisfiesP, FailsP, Inconclusive };
enum class Route {
  TrivialInfimum,   // inf Psi = 0 forces zero energy
  QuadraticLiminf,    // liminf Psi/x^2 finite
  ConvexTail,       // eventually convex, tail integral decides
  MinorantWitness,  // certified power minorant with finite roughness
  Evidence          // nothing certified; numerical evidence only
};

const char* status_name(Status s);
const char* route_name(Route r);

// A nondecreasing h with 0 <= h <= Psi and certified finite roughness; the
// existence of such a minorant is exactly failure of the property.
struct MinorantWitness {
  MonotoneFn h;
  std::string description;
  double roughness_upper_bound = 0.0;      // certified bound for the full
                                           // integral of 1/h' on [start, inf)
  nlohmann::ordered_json descriptor;       // enough to rebuild h
};

struct Verdict {
  Status status = Status::Inconclusive;
  Route route = Route::Evidence;
  std::string dimension_note;
};

struct ClassificationReport {
  Verdict verdict;
  std::optional<MinorantWitness> witness;
  nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
  std::optional<nlohmann::ordered_json> evidence;
  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const;
};

ClassificationReport classify(const GrowthFunction& psi);

// Rebuilds the witness minorant from its report descriptor.
MinorantWitness witness_from_json(const GrowthFunction& psi,
                                  const nlohmann::json& descriptor);

// Chain from the liminf route at concrete radii: the partial roughness of any
// minorant over [R, R_n] dominates the chord bound (R_n - R)^2 / (C R_n^2)
// whenever h(R_n) <= C R_n^2.
struct LiminfChainCheck {
  double integral = 0.0;
  double chord_bound = 0.0;
  bool premise_ok = false;  // h(R_n) <= C R_n^2 held
  bool holds = false;
};
LiminfChainCheck liminf_chain_check(const MonotoneFn& h, double C, double R,
                                 double R_n, double tol = 1e-9);

// Convex-side comparison at matched endpoints: the roughness of convex Psi
// over [a, b] never exceeds that of a nondecreasing minorant agreeing with
// Psi at a and b.
struct Prop4Check {
  double psi_side = 0.0;
  double minorant_side = 0.0;
  bool endpoints_match = false;
  bool holds = false;
};
Prop4Check convex_tail_reduction_check(const GrowthFunction& psi, const MonotoneFn& h,
                                double a, double b, double tol = 1e-8);

// Smallest R1 >= R0 with h(R1) >= Psi(R0); +infinity when h stays below
// Psi(R0) up to the cap.
double find_R1(const GrowthFunction& psi, const MonotoneFn& h, double R0,
               double cap = 1e9);

}  // namespace liouville
