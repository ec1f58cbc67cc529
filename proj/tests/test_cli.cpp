// Copyright 2026 The dpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dpfreq/io.hpp"

namespace {

const std::string kCli = DPFREQ_CLI_PATH;
const std::string kDir = "/tmp/dpfreq_cli_test";

int Run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " 2>/dev/null").c_str());
  return WEXITSTATUS(status);
}

int CountLines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void WriteSpec(const std::string& path, const std::string& json) {
  dpfreq::WriteFile(path, json);
}

struct Fixture {
  Fixture() {
    REQUIRE(std::system(("rm -rf " + kDir + " && mkdir -p " + kDir).c_str()) ==
            0);
    WriteSpec(kDir + "/spec.json",
              R"({"kind":"uniform","T":32,"U":6,"regime":"bundle",)"
              R"("seed":7,"event_prob":0.3})");
    REQUIRE(Run("generate --spec " + kDir + "/spec.json --out-csv " + kDir +
                "/s.csv --out-sidecar " + kDir + "/s.json") == 0);
  }
  std::string stream_args() const {
    return " --stream " + kDir + "/s.csv --sidecar " + kDir + "/s.json ";
  }
};

}  // namespace

TEST_CASE("generate writes byte-identical files across runs") {
  Fixture f;
  REQUIRE(Run("generate --spec " + kDir + "/spec.json --out-csv " + kDir +
              "/s2.csv --out-sidecar " + kDir + "/s2.json") == 0);
  CHECK(dpfreq::ReadFile(kDir + "/s.csv") == dpfreq::ReadFile(kDir + "/s2.csv"));
  CHECK(dpfreq::ReadFile(kDir + "/s.json") ==
        dpfreq::ReadFile(kDir + "/s2.json"));
}

TEST_CASE("generate rejects infeasible specs with a nonzero exit") {
  Fixture f;
  WriteSpec(kDir + "/bad.json",
            R"({"kind":"uniform","T":10,"U":2,"regime":"singleton",)"
            R"("event_prob":2.0})");
  CHECK(Run("generate --spec " + kDir + "/bad.json --out-csv " + kDir +
            "/b.csv --out-sidecar " + kDir + "/b.json") != 0);
}

TEST_CASE("run emits one row per fixed window") {
  Fixture f;
  REQUIRE(Run("run" + f.stream_args() +
              "--query fixed --window 8 --k 1 --epsilon 1 --seed 2 --out " +
              kDir + "/est.csv") == 0);
  const std::string csv = dpfreq::ReadFile(kDir + "/est.csv");
  CHECK(CountLines(csv) == 1 + (32 - 8 + 1));
  CHECK(csv.rfind("query_kind,t1,t2,k,estimate,exact,abs_error\n", 0) == 0);
}

TEST_CASE("run emits the full triangle of time windows") {
  Fixture f;
  WriteSpec(kDir + "/small.json",
            R"({"kind":"uniform","T":10,"U":4,"regime":"bundle","seed":1})");
  REQUIRE(Run("generate --spec " + kDir + "/small.json --out-csv " + kDir +
              "/t.csv --out-sidecar " + kDir + "/t.json") == 0);
  REQUIRE(Run("run --stream " + kDir + "/t.csv --sidecar " + kDir +
              "/t.json --query time --k 1 --epsilon 1 --out " + kDir +
              "/time.csv") == 0);
  CHECK(CountLines(dpfreq::ReadFile(kDir + "/time.csv")) == 1 + 10 * 11 / 2);
}

TEST_CASE("no-noise runs with the oracle report zero absolute error") {
  Fixture f;
  REQUIRE(Run("run" + f.stream_args() +
              "--query cumulative --k 2 --no-noise --with-oracle --out " +
              kDir + "/nn.csv") == 0);
  std::istringstream in(dpfreq::ReadFile(kDir + "/nn.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto fields = SplitLine(line);
    REQUIRE(fields.size() == 7);
    CHECK(fields[6] == "0");
    CHECK(fields[4] == fields[5]);
  }
}

TEST_CASE("oracle output matches a no-noise run row for row") {
  Fixture f;
  REQUIRE(Run("run" + f.stream_args() +
              "--query fixed --window 6 --k 2 --no-noise --with-oracle --out " +
              kDir + "/a.csv") == 0);
  REQUIRE(Run("oracle" + f.stream_args() +
              "--query fixed --window 6 --k 2 --out " + kDir + "/b.csv") == 0);
  CHECK(dpfreq::ReadFile(kDir + "/a.csv") == dpfreq::ReadFile(kDir + "/b.csv"));
}

TEST_CASE("oracle switches to exact-k semantics on request") {
  Fixture f;
  REQUIRE(Run("oracle" + f.stream_args() +
              "--query cumulative --k 1 --exact-k --out " + kDir +
              "/eq.csv") == 0);
  REQUIRE(Run("oracle" + f.stream_args() +
              "--query cumulative --k 1 --out " + kDir + "/ge.csv") == 0);
  CHECK(dpfreq::ReadFile(kDir + "/eq.csv") !=
        dpfreq::ReadFile(kDir + "/ge.csv"));
}

TEST_CASE("rerunning a manifest reproduces the estimates byte for byte") {
  Fixture f;
  REQUIRE(Run("run" + f.stream_args() +
              "--query time --k 2 --epsilon 0.7 --seed 9 --with-oracle "
              "--clamp --out " +
              kDir + "/est.csv --manifest " + kDir + "/man.json") == 0);
  REQUIRE(Run("rerun --manifest " + kDir + "/man.json --out " + kDir +
              "/est2.csv") == 0);
  CHECK(dpfreq::ReadFile(kDir + "/est.csv") ==
        dpfreq::ReadFile(kDir + "/est2.csv"));
}

TEST_CASE("clamped estimates are integers within the universe") {
  Fixture f;
  REQUIRE(Run("run" + f.stream_args() +
              "--query cumulative --k 1 --epsilon 0.5 --seed 3 --clamp "
              "--out " +
              kDir + "/c.csv") == 0);
  std::istringstream in(dpfreq::ReadFile(kDir + "/c.csv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const double value = std::stod(SplitLine(line)[4]);
    CHECK(value == static_cast<long long>(value));
    CHECK(value >= 0);
    CHECK(value <= 6);
  }
}

TEST_CASE("sweep writes one summary row per value and is reproducible") {
  Fixture f;
  WriteSpec(kDir + "/sweep.json", R"({
    "axis": "T",
    "values": [16, 32],
    "generator": {"kind":"uniform","T":16,"U":4,"regime":"bundle","seed":2},
    "config": {"query":"cumulative","k":1,"window":0,"level":"event",
               "budget":{"epsilon":1.0,"delta":0.0},"composition":"basic",
               "noise":"laplace","seed":5,"singleton_wrapper":false,
               "singleton_block":0},
    "trials": 2
  })");
  REQUIRE(Run("sweep --spec " + kDir + "/sweep.json --out " + kDir +
              "/sw.csv") == 0);
  const std::string csv = dpfreq::ReadFile(kDir + "/sw.csv");
  CHECK(CountLines(csv) == 3);
  REQUIRE(Run("sweep --spec " + kDir + "/sweep.json --out " + kDir +
              "/sw2.csv") == 0);
  CHECK(csv == dpfreq::ReadFile(kDir + "/sw2.csv"));
}

TEST_CASE("invalid invocations exit nonzero") {
  Fixture f;
  CHECK(Run("run" + f.stream_args() + "--query cumulative --trials 2") != 0);
  CHECK(Run("run" + f.stream_args() +
            "--query cumulative --regime singleton") != 0);
  CHECK(Run("run" + f.stream_args() + "--query fixed --window 99") != 0);
  CHECK(Run("run" + f.stream_args() +
            "--query cumulative --noise gaussian --delta 0") != 0);
  CHECK(Run("run" + f.stream_args() + "--query cumulative --bogus-flag") != 0);
  CHECK(Run("run" + f.stream_args() +
            "--query cumulative --singleton-wrapper") != 0);
  CHECK(Run("oracle" + f.stream_args() + "--query fixed") != 0);
}
