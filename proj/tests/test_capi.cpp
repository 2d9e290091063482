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

// Exercises the shared library through its C surface only, plus the CLI as a
// subprocess.  ctest passes the CLI binary path as the single argument.

#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "doctest.h"
#include "liouville.h"

#include <nlohmann/json.hpp>

namespace {

std::string g_cli;

struct ResultFree {
  void operator()(liouville_result* r) const { liouville_result_free(r); }
};
using Result = std::unique_ptr<liouville_result, ResultFree>;

int cli(const std::string& args) {
  REQUIRE_FALSE(g_cli.empty());
  std::string cmd = "'" + g_cli + "' " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

constexpr const char* kCubic = R"({"family":"power","C":1,"k":3})";
constexpr const char* kQuad = R"({"family":"power","C":1,"k":2})";

}  // namespace

TEST_CASE("version and option defaults") {
  CHECK(std::strcmp(liouville_version(), "0.1.0") == 0);
  liouville_options opts;
  std::memset(&opts, 0xff, sizeof opts);
  liouville_options_init(&opts);
  CHECK(opts.tol == 1e-6);
  CHECK(opts.seed == 12345);
  CHECK(opts.grid == 33);
  CHECK(opts.rmax == 5.0);
  CHECK(opts.dim == 2);
  liouville_options_init(nullptr);  // must not crash
}

TEST_CASE("classify through the C surface") {
  Result r(liouville_classify(kCubic, nullptr));
  REQUIRE(r);
  CHECK(liouville_result_exit_code(r.get()) == LIOUVILLE_EXIT_FAILS);
  auto doc = nlohmann::json::parse(liouville_result_json(r.get()));
  CHECK(doc["status"] == "FailsP");
  CHECK(doc["tool"] == "liouville-lab");

  Result s(liouville_classify(kQuad, nullptr));
  REQUIRE(s);
  CHECK(liouville_result_exit_code(s.get()) == LIOUVILLE_EXIT_SATISFIES);

  Result t(liouville_classify(
      R"({"family":"tabulated","points":[[1,1],[2,4],[4,16]]})", nullptr));
  REQUIRE(t);
  CHECK(liouville_result_exit_code(t.get()) == LIOUVILLE_EXIT_INCONCLUSIVE);
}

TEST_CASE("failures return NULL and set the error string") {
  CHECK(liouville_classify(nullptr, nullptr) == nullptr);
  CHECK(std::strlen(liouville_last_error()) > 0);

  CHECK(liouville_classify("{not json", nullptr) == nullptr);
  CHECK(std::strlen(liouville_last_error()) > 0);

  CHECK(liouville_classify(R"({"family":"nope"})", nullptr) == nullptr);

  liouville_options opts;
  liouville_options_init(&opts);
  opts.tol = -1.0;
  CHECK(liouville_classify(kCubic, &opts) == nullptr);
  CHECK(std::strstr(liouville_last_error(), "tol") != nullptr);

  liouville_options_init(&opts);
  opts.dim = 7;
  CHECK(liouville_classify(kCubic, &opts) == nullptr);

  CHECK(liouville_synthesize(kCubic, nullptr, nullptr) == nullptr);
  CHECK(liouville_verify("", nullptr, nullptr) == nullptr);
  CHECK(liouville_verify("somewhere", nullptr, "flux,bogus") == nullptr);
  CHECK(std::strstr(liouville_last_error(), "bogus") != nullptr);
}

TEST_CASE("null result accessors degrade gracefully") {
  CHECK(liouville_result_exit_code(nullptr) == LIOUVILLE_EXIT_USAGE);
  CHECK(std::strlen(liouville_result_json(nullptr)) == 0);
  CHECK(std::strlen(liouville_result_message(nullptr)) == 0);
  liouville_result_free(nullptr);
}

TEST_CASE("synthesize and verify round trip through the C surface") {
  namespace fs = std::filesystem;
  fs::remove_all("capi_artifacts");

  liouville_options opts;
  liouville_options_init(&opts);
  opts.grid = 17;
  opts.rmax = 4.0;

  Result syn(liouville_synthesize(kCubic, &opts, "capi_artifacts"));
  REQUIRE(syn);
  REQUIRE(liouville_result_exit_code(syn.get()) == LIOUVILLE_EXIT_OK);
  auto man = nlohmann::json::parse(liouville_result_json(syn.get()));
  CHECK(man["command"] == "synthesize");
  CHECK(fs::exists("capi_artifacts/fields.csv"));

  Result ver(liouville_verify("capi_artifacts", &opts, nullptr));
  REQUIRE(ver);
  CHECK(liouville_result_exit_code(ver.get()) == LIOUVILLE_EXIT_OK);
  auto rep = nlohmann::json::parse(liouville_result_json(ver.get()));
  CHECK(rep["all_pass"] == true);
  CHECK(rep["checks"].size() == 5);

  Result sub(liouville_verify("capi_artifacts", &opts, "flux,nonconstancy"));
  REQUIRE(sub);
  CHECK(liouville_result_exit_code(sub.get()) == LIOUVILLE_EXIT_OK);
  auto subrep = nlohmann::json::parse(liouville_result_json(sub.get()));
  CHECK(subrep["checks"].size() == 2);

  Result bad(liouville_verify("capi_artifacts_missing", &opts, nullptr));
  REQUIRE(bad);
  CHECK(liouville_result_exit_code(bad.get()) == LIOUVILLE_EXIT_ARTIFACT_BAD);
}

TEST_CASE("refusal is a result, not an error") {
  Result r(liouville_synthesize(kQuad, nullptr, "capi_refused"));
  REQUIRE(r);
  CHECK(liouville_result_exit_code(r.get()) == LIOUVILLE_EXIT_REFUSAL);
  CHECK(std::strlen(liouville_result_message(r.get())) > 0);
  CHECK(std::strlen(liouville_result_json(r.get())) == 0);
  CHECK_FALSE(std::filesystem::exists("capi_refused"));
}

TEST_CASE("cli exit codes") {
  CHECK(cli("--help") == 0);
  CHECK(cli("classify --help") == 0);
  CHECK(cli("") == LIOUVILLE_EXIT_USAGE);
  CHECK(cli("frobnicate") == LIOUVILLE_EXIT_USAGE);
  CHECK(cli("classify") == LIOUVILLE_EXIT_USAGE);  // descriptor required
  CHECK(cli("classify --descriptor junk") == LIOUVILLE_EXIT_USAGE);
  CHECK(cli("classify --descriptor '" + std::string(kCubic) + "'") ==
        LIOUVILLE_EXIT_FAILS);
  CHECK(cli("classify --descriptor '" + std::string(kQuad) + "'") ==
        LIOUVILLE_EXIT_SATISFIES);
  CHECK(cli("classify --descriptor "
            R"('{"family":"tabulated","points":[[1,1],[2,4],[4,16]]}')") ==
        LIOUVILLE_EXIT_INCONCLUSIVE);
  CHECK(cli("classify --descriptor '" + std::string(kCubic) +
            "' --dim 9") == LIOUVILLE_EXIT_USAGE);
}

TEST_CASE("cli synthesize and verify") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_artifacts");
  std::string desc = "--descriptor '" + std::string(kCubic) + "'";
  CHECK(cli("synthesize " + desc) == LIOUVILLE_EXIT_USAGE);  // --out required
  CHECK(cli("synthesize " + desc +
            " --out cli_artifacts --grid 17 --rmax 4") == LIOUVILLE_EXIT_OK);
  CHECK(fs::exists("cli_artifacts/manifest.json"));
  CHECK(cli("synthesize --descriptor '" + std::string(kQuad) +
            "' --out cli_refused") == LIOUVILLE_EXIT_REFUSAL);
  CHECK(cli("verify cli_artifacts --grid 17 --rmax 4") == LIOUVILLE_EXIT_OK);
  CHECK(cli("verify cli_artifacts --grid 17 --rmax 4 --check flux,energy") ==
        LIOUVILLE_EXIT_OK);
  CHECK(cli("verify cli_missing") == LIOUVILLE_EXIT_ARTIFACT_BAD);
  CHECK(cli("verify") == LIOUVILLE_EXIT_USAGE);
}

int main(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') g_cli = argv[1];
  doctest::Context ctx;
  int dargc = 1;
  ctx.applyCommandLine(dargc, argv);
  return ctx.run();
}
