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

#include "liouville.h"

#include <algorithm>
#include <string>
#include <vector>

#include "liouville/artifacts.hpp"

namespace {

thread_local std::string g_last_error;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

liouville::RunOptions convert(const liouville_options* opts) {
  liouville::RunOptions out;
  if (!opts) return out;
  out.tol = opts->tol;
  out.seed = opts->seed;
  out.grid = opts->grid;
  out.rmax = opts->rmax;
  out.dim = opts->dim;
  if (!(out.tol > 0.0)) throw ValidationError("options: tol must be > 0");
  if (out.grid < 2) throw ValidationError("options: grid must be >= 2");
  if (!(out.rmax > 0.0)) throw ValidationError("options: rmax must be > 0");
  if (out.dim < 1 || out.dim > 3)
    throw ValidationError("options: dim must be 1, 2, or 3");
  return out;
}

std::vector<std::string> parse_checks(const char* checks_csv) {
  static const std::vector<std::string> known = {
      "flux", "weak_residual", "energy", "caccioppoli", "nonconstancy"};
  std::vector<std::string> out;
  if (!checks_csv) return out;
  std::string s(checks_csv);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(',', start);
    std::string item = s.substr(
        start, pos == std::string::npos ? std::string::npos : pos - start);
    if (!item.empty()) {
      if (std::find(known.begin(), known.end(), item) == known.end())
        throw ValidationError("unknown check \"" + item + "\"");
      out.push_back(item);
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

struct liouville_result {
  int exit_code = 0;
  std::string json;
  std::string message;
};

extern "C" {

const char* liouville_version(void) { return liouville::kToolVersion; }

const char* liouville_last_error(void) { return g_last_error.c_str(); }

void liouville_options_init(liouville_options* opts) {
  if (!opts) return;
  liouville::RunOptions d;
  opts->tol = d.tol;
  opts->seed = d.seed;
  opts->grid = d.grid;
  opts->rmax = d.rmax;
  opts->dim = d.dim;
}

liouville_result* liouville_classify(const char* descriptor_json,
                                     const liouville_options* opts) {
  try {
    if (!descriptor_json) throw ValidationError("descriptor_json is NULL");
    auto descriptor = nlohmann::json::parse(descriptor_json);
    liouville::ClassifyOutcome outcome =
        liouville::run_classify(descriptor, convert(opts));
    auto* result = new liouville_result;
    result->exit_code = outcome.exit_code;
    result->json = outcome.document.dump(2);
    return result;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

liouville_result* liouville_synthesize(const char* descriptor_json,
                                       const liouville_options* opts,
                                       const char* out_dir) {
  try {
    if (!descriptor_json) throw ValidationError("descriptor_json is NULL");
    if (!out_dir || !*out_dir) throw ValidationError("out_dir is empty");
    auto descriptor = nlohmann::json::parse(descriptor_json);
    liouville::SynthesizeOutcome outcome =
        liouville::run_synthesize(descriptor, convert(opts), out_dir);
    auto* result = new liouville_result;
    result->exit_code = outcome.exit_code;
    result->json =
        outcome.manifest.is_null() ? std::string() : outcome.manifest.dump(2);
    result->message = outcome.refusal_reason;
    return result;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

liouville_result* liouville_verify(const char* out_dir,
                                   const liouville_options* opts,
                                   const char* checks_csv) {
  try {
    if (!out_dir || !*out_dir) throw ValidationError("out_dir is empty");
    liouville::VerifyOutcome outcome =
        liouville::run_verify(out_dir, convert(opts), parse_checks(checks_csv));
    auto* result = new liouville_result;
    result->exit_code = outcome.exit_code;
    result->json = outcome.report.dump(2);
    return result;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

int liouville_result_exit_code(const liouville_result* result) {
  return result ? result->exit_code : LIOUVILLE_EXIT_USAGE;
}

const char* liouville_result_json(const liouville_result* result) {
  return result ? result->json.c_str() : "";
}

const char* liouville_result_message(const liouville_result* result) {
  return result ? result->message.c_str() : "";
}

void liouville_result_free(liouville_result* result) { delete result; }

}  // extern "C"
