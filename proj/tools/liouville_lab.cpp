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

// Command-line front end.  Deliberately uses only the C API so it doubles as
// a smoke test of the shared-library surface.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liouville.h"

namespace {

struct ResultDeleter {
  void operator()(liouville_result* r) const { liouville_result_free(r); }
};
using ResultPtr = std::unique_ptr<liouville_result, ResultDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("--descriptor-file", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

int finish(const ResultPtr& result) {
  if (!result) {
    std::fprintf(stderr, "error: %s\n", liouville_last_error());
    return LIOUVILLE_EXIT_USAGE;
  }
  const char* msg = liouville_result_message(result.get());
  if (msg && *msg) std::fprintf(stderr, "%s\n", msg);
  const char* json = liouville_result_json(result.get());
  if (json && *json) std::printf("%s\n", json);
  return liouville_result_exit_code(result.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth-law classification and counterexample-field toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(liouville_version()));

  liouville_options opts;
  liouville_options_init(&opts);
  std::string descriptor, descriptor_file, out_dir;
  std::vector<std::string> checks;

  auto add_common = [&opts](CLI::App* cmd) {
    cmd->add_option("--tol", opts.tol, "verification tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "seed for randomized checks")
        ->capture_default_str();
    cmd->add_option("--grid", opts.grid, "export points per dimension")
        ->check(CLI::Range(2, 1024))
        ->capture_default_str();
    cmd->add_option("--rmax", opts.rmax, "export box half-width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dim", opts.dim, "ambient dimension")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
  };
  auto add_descriptor = [&](CLI::App* cmd) {
    auto* inline_opt =
        cmd->add_option("--descriptor", descriptor,
                        "growth-function descriptor as a JSON string");
    cmd->add_option("--descriptor-file", descriptor_file,
                    "path to a JSON descriptor file")
        ->excludes(inline_opt);
  };

  CLI::App* classify =
      app.add_subcommand("classify", "decide the Liouville property");
  add_descriptor(classify);
  add_common(classify);

  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "build counterexample fields for a failing growth law");
  add_descriptor(synthesize);
  synthesize->add_option("--out", out_dir, "output directory for artifacts")
      ->required();
  add_common(synthesize);

  CLI::App* verify =
      app.add_subcommand("verify", "re-check previously written artifacts");
  verify->add_option("dir", out_dir, "artifact directory")->required();
  verify
      ->add_option("--check", checks,
                   "restrict to named checks (repeatable): flux, "
                   "weak_residual, energy, caccioppoli, nonconstancy")
      ->delimiter(',');
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : LIOUVILLE_EXIT_USAGE;
  }

  try {
    if (!descriptor_file.empty()) descriptor = read_file(descriptor_file);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return LIOUVILLE_EXIT_USAGE;
  }

  if (classify->parsed() || synthesize->parsed()) {
    if (descriptor.empty()) {
      std::fprintf(stderr,
                   "error: provide --descriptor or --descriptor-file\n");
      return LIOUVILLE_EXIT_USAGE;
    }
  }

  if (classify->parsed())
    return finish(ResultPtr(liouville_classify(descriptor.c_str(), &opts)));
  if (synthesize->parsed())
    return finish(ResultPtr(
        liouville_synthesize(descriptor.c_str(), &opts, out_dir.c_str())));
  std::string checks_csv = join(checks);
  return finish(ResultPtr(
      liouville_verify(out_dir.c_str(), &opts, checks_csv.c_str())));
}
