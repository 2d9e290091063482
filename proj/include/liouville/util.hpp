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
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace liouville {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Deterministic random stream.  mt19937_64 has a pinned algorithm, and the
// 53-bit mantissa fill below avoids the libstdc++-specific distribution
// implementations, so sequences are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Worker budget: LIOUVILLE_LAB_THREADS if set and positive, otherwise the
// hardware concurrency.
int thread_budget();

// Runs body(i) for i in [0, n) over a fixed chunk decomposition.  Each index
// is visited exactly once, so writes to per-index slots give results that do
// not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace liouville
