// SPDX-License-Identifier: Apache-2.0
//
// End-to-end CLI checks through the installed binary: exit codes, formats,
// determinism, and the shipped report schema's required fields.

#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(QJACOBI_CLI_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_CASE("eval returns the trivial value with exit 0") {
  const auto r = run("eval --family little --n 0 --lambda 0.5 --q 0.5 --a 0.3 --b 0.4");
  CHECK(r.code == 0);
  CHECK(r.out.find("-> 1") != std::string::npos);
}

TEST_CASE("eval rejects out-of-domain parameters with exit 2") {
  CHECK(run("eval --family little --n 1 --lambda 0.5 --q 0.5 --a 5.0 --b 0.4").code == 2);
  CHECK(run("eval --family bogus --n 1 --lambda 0.5").code == 2);
}

TEST_CASE("spectrum passes in-domain and rejects the truncation guard") {
  CHECK(run("spectrum --op I1 --q 0.5 --a 0.3 --b 0.4 --size 300 --top 20").code == 0);
  CHECK(run("spectrum --op I2 --q 0.5 --a 0.3 --b 0.4 --c -0.2 --size 300 --top 15").code == 0);
  CHECK(run("spectrum --op I1 --top 100 --size 300").code == 2);
}

TEST_CASE("verify emits schema-shaped JSON reports") {
  const auto r = run("verify --id sum-A.1 --q 0.5 --a 0.3 --b 0.4 --format json");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.contains("config"));
  CHECK(doc.at("pass").get<bool>());
  REQUIRE(doc.at("reports").is_array());
  REQUIRE(!doc.at("reports").empty());
  const auto& rep = doc.at("reports")[0];
  for (const char* key :
       {"identity_id", "params", "lhs", "rhs", "residual", "tolerance", "pass",
        "terms_used"})
    CHECK(rep.contains(key));
  CHECK(rep.at("identity_id") == "sum-A.1");
  CHECK(!rep.contains("wall_ms"));  // timing is opt-in to keep output deterministic
}

TEST_CASE("timing flag adds wall_ms") {
  const auto r = run("verify --id sum-A.1 --format json --timing");
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("reports")[0].contains("wall_ms"));
}

TEST_CASE("unknown identity id exits 2") {
  CHECK(run("verify --id bogus").code == 2);
}

TEST_CASE("identity failure exits 1") {
  CHECK(run("verify --id sum-A.1 --tolerance 1e-30").code == 1);
}

TEST_CASE("CSV output carries the fixed header") {
  const auto r = run("verify --id sum-A.1 --format csv");
  CHECK(r.out.rfind("identity_id,params,lhs,rhs,residual,tolerance,pass,terms_used\n",
                    0) == 0);
}

TEST_CASE("byte-identical output for identical invocations") {
  const std::string args =
      "verify --id eta-A.8,sum-A.6 --q 0.5 --a 0.3 --b 0.4 --c -0.2 --format json";
  const auto r1 = run(args);
  const auto r2 = run(args);
  CHECK(r1.out == r2.out);
  CHECK(!r1.out.empty());
}

TEST_CASE("sweep skips out-of-domain points and rejects empty grids") {
  const auto r = run("sweep --id sum-A.6 --grid \"q=0.5;a=0.3;b=0.4;c=-0.2,0.2\" --format json");
  CHECK(r.code == 0);  // the valid point passes; the invalid one is skipped
  const auto doc = nlohmann::json::parse(r.out);
  int skipped = 0;
  for (const auto& entry : doc.at("results"))
    if (entry.at("status") != "ok") ++skipped;
  CHECK(skipped == 1);
  CHECK(run("sweep --id sum-A.1 --grid \"q=;a=0.3;b=0.4;c=-0.2\"").code == 2);
}

TEST_CASE("lambda-spec evaluation matches the closed form") {
  const auto r = run(
      "eval --family big --n 3 --lambda-spec aq --q 0.5 --a 0.3 --b 0.4 --c -0.2 "
      "--format json");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const double value = doc.at("rows")[0].at("value").get<double>();
  CHECK(value == doctest::Approx(1.6968905078496022e-04).epsilon(1e-12));
}
