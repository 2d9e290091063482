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
#include <span>
#include <string>
#include <vector>

#include "liouville/monotone.hpp"

namespace liouville {

// Scalar function with an exact first derivative.
struct C1Fn {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Pointwise max of g with finitely many lines on [a, b].  Precondition
// (checked): every line starts at or below g at a; lines must have positive
// slope so the result stays nondecreasing.
MonotoneFn polygonal_max(const MonotoneFn& g, std::span<const Line> lines,
                         double a, double b);

// Tangent lines of a convex phi at the 2^n + 1 uniform nodes of [a, b],
// collected into their upper envelope.  The envelope is a nondecreasing
// minorant of phi with sup error at most phi'(b) (b - a) / 2^n.
PiecewiseLinear tangent_envelope(const C1Fn& phi, double a, double b, int n);

struct MinorantCheck {
  bool holds = true;
  double max_violation = 0.0;  // max of g - phi over the sample grid
  double where = 0.0;
  int samples = 0;
};

// Samples g <= phi on a dense grid; convexity of phi makes the per-cell
// excursion of g - phi controllable, but this stays a sampled check and is
// reported as such.
MinorantCheck convex_minorant_check(const C1Fn& phi, const MonotoneFn& g,
                                    double a, double b, int samples = 4096,
                                    double tol = 1e-9);

struct DpOptions {
  int max_span = 8;   // cells a segment may cross horizontally
  int max_jump = 12;  // value levels a segment may climb
  double tol = 1e-9;  // slack for the below-phi feasibility test
};

// Minimum roughness over polygonal nondecreasing minorants of a convex phi
// with knots on the (x_cells + 1) x (value_cells + 1) lattice spanning
// [a, b] x [phi(a), phi(b)].  Converges to the true infimum from above as
// the lattice refines.  Throws when no feasible path exists.
double dp_min_roughness(const C1Fn& phi, double a, double b, int x_cells,
                        int value_cells, const DpOptions& opts = {});

}  // namespace liouville
