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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liouville/fieldcheck.hpp"

namespace liouville {

inline constexpr const char* kToolName = "liouville-lab";
inline constexpr const char* kToolVersion = "0.1.0";

// Process exit codes shared by the C API and the CLI.
enum ExitCode : int {
  kExitSatisfies = 0,
  kExitOk = 0,
  kExitVerifyFail = 1,
  kExitUsage = 2,
  kExitArtifactBad = 3,
  kExitFails = 10,
  kExitRefusal = 11,
  kExitInconclusive = 20,
};

struct RunOptions {
  double tol = 1e-6;
  std::uint64_t seed = 12345;
  int grid = 33;      // export points per dimension
  double rmax = 5.0;  // export box is [-rmax, rmax]^dim
  int dim = 2;
};

struct ClassifyOutcome {
  int exit_code = kExitInconclusive;
  nlohmann::ordered_json document;
};
ClassifyOutcome run_classify(const nlohmann::json& descriptor,
                             const RunOptions& opts);

struct SynthesizeOutcome {
  int exit_code = kExitOk;
  nlohmann::ordered_json manifest;  // empty on refusal
  std::string refusal_reason;
};
SynthesizeOutcome run_synthesize(const nlohmann::json& descriptor,
                                 const RunOptions& opts,
                                 const std::string& out_dir);

struct VerifyOutcome {
  int exit_code = kExitArtifactBad;
  nlohmann::ordered_json report;
};
// checks: subset of {"flux", "weak_residual", "energy", "caccioppoli",
// "nonconstancy"}; empty means all.
VerifyOutcome run_verify(const std::string& out_dir, const RunOptions& opts,
                         const std::vector<std::string>& checks = {});

// Exported field samples re-read from fields.csv.  Evaluation multiplies the
// exact closed form by the multilinear interpolation of the stored-to-exact
// ratio, so an untouched export reproduces the exact fields to roundoff and
// any tampering shows up as a local distortion the checks can see.
class CsvAdjustedFields : public FieldSet {
 public:
  CsvAdjustedFields(std::shared_ptr<const CounterexampleFields> exact,
                    std::vector<double> axis, std::vector<double> phi_ratio,
                    std::vector<double> sigma_ratio);

  int dimension() const override;
  double phi(std::span<const double> x) const override;
  double sigma(std::span<const double> x) const override;
  double dsigma_dxn(std::span<const double> x) const override;

  double max_ratio_deviation() const;  // max |ratio - 1| over both tables

 private:
  double interp(const std::vector<double>& table,
                std::span<const double> x) const;
  double interp_dlast(const std::vector<double>& table,
                      std::span<const double> x) const;
  std::shared_ptr<const CounterexampleFields> exact_;
  std::vector<double> axis_;
  std::vector<double> phi_ratio_, sigma_ratio_;
};

// Minimal JSON schema checker covering the subset the shipped schemas use:
// type, required, properties, items, enum, minItems.  Returns human-readable
// violations; empty means the document conforms.
std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc);

}  // namespace liouville
