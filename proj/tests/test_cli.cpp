// Copyright 2026 The whframe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string output;  // stdout and stderr
};

Run run(const std::string& args) {
  std::string cmd = std::string(WHFRAME_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string out_path(const char* name) { return std::string(WHFRAME_TEST_DIR) + "/" + name; }

}  // namespace

TEST_CASE("verify on the box ONB") {
  Run r = run("verify --window box:0,1 --a 1 --b 1 --signal box:0,1 --delta 0.001 --tol 1e-6 "
              "--subset-trials 20");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"verdict\": \"pass\"") != std::string::npos);
}

TEST_CASE("verify on the gaussian frame") {
  Run r = run("verify --window gaussian:1 --a 1 --b 1/2 --signal gaussian:2 --k-max 8 "
              "--delta 0.01 --subset-trials 20");
  CHECK(r.code == 0);
}

TEST_CASE("config errors exit 1 and name the field") {
  Run r = run("verify --a 1 --b 0.3333");
  CHECK(r.code == 1);
  CHECK(r.output.find("b must be a rational p/q") != std::string::npos);
  CHECK(run("verify --delta 0.01 --oversample 2").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("verify --config /nonexistent.json").code == 1);
  std::string cfg = out_path("cli_bad.json");
  std::ofstream(cfg) << R"({"window": "box:0,1", "colour": 3})";
  Run c = run("verify --config " + cfg);
  CHECK(c.code == 1);
  CHECK(c.output.find("colour") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  std::string cfg = out_path("cli_cfg.json");
  std::ofstream(cfg) << R"({"window": "box:0,1", "signal": "box:0,1", "a": "1", "b": "0.3333"})";
  CHECK(run("cc --config " + cfg).code == 1);
  Run r = run("cc --config " + cfg + " --b 1 --delta 0.01");
  CHECK(r.code == 0);
  CHECK(r.output.find("\"b\": \"1\"") != std::string::npos);
}

TEST_CASE("gk export") {
  std::string p1 = out_path("gk1.csv"), p2 = out_path("gk2.csv");
  REQUIRE(run("gk --window box:0,1 --a 1 --b 1 --k-max 2 --delta 0.01 --out " + p1).code == 0);
  std::string csv = slurp(p1);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,t,re_Gk,im_Gk");
  int blocks = 0, rows = 0, prev_k = 99;
  while (std::getline(is, line)) {
    int k = std::stoi(line.substr(0, line.find(',')));
    if (k != prev_k) ++blocks;
    prev_k = k;
    ++rows;
    if (k == 0) CHECK(line.substr(line.find(',', line.find(',') + 1)) == ",1,0");
  }
  CHECK(blocks == 5);
  CHECK(rows == 5 * 100);

  REQUIRE(run("gk --window gaussian:1 --a 1 --b 1/2 --k-max 3 --delta 0.01 --out " + p1).code ==
          0);
  REQUIRE(run("gk --window gaussian:1 --a 1 --b 1/2 --k-max 3 --delta 0.01 --out " + p2).code ==
          0);
  CHECK(slurp(p1) == slurp(p2));

  Run single = run("gk --window box:0,1 --a 1 --b 1 --k-max 0 --delta 0.01");
  CHECK(single.code == 0);
  CHECK(single.output.find("\n1,") == std::string::npos);
}

TEST_CASE("diagnose writes the traces") {
  std::string p = out_path("diag.json");
  const std::string args = "diagnose --window gaussian:1 --a 1 --b 1/2 --signal gaussian:2 "
                           "--delta 0.01 --subset-trials 30 --seed 7 --out ";
  REQUIRE(run(args + p).code == 0);
  std::string first = slurp(p);
  CHECK(first.find("\"subsets\"") != std::string::npos);
  CHECK(slurp(p + ".terms.csv").rfind("k,re_term,im_term\n", 0) == 0);
  CHECK(slurp(p + ".trace.csv").rfind("K,L,distance,quadratic_form\n", 0) == 0);
  REQUIRE(run(args + p).code == 0);
  CHECK(slurp(p) == first);

  Run box = run("diagnose --window box:0,1 --a 1 --b 1 --signal box:0,1 --delta 0.01 "
                "--k-max 3 --subset-trials 5");
  CHECK(box.code == 0);
}

TEST_CASE("bounds and cc") {
  Run b = run("bounds --window box:0,1 --a 1 --b 1 --delta 0.01 --probes 4");
  CHECK(b.code == 0);
  auto field = [&](const char* key) {
    std::size_t at = b.output.find(key);
    REQUIRE(at != std::string::npos);
    return std::stod(b.output.substr(b.output.find(':', at) + 1));
  };
  CHECK(field("\"a_est\"") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(field("\"b_est\"") == doctest::Approx(1.0).epsilon(1e-6));
  Run cc = run("cc --window gaussian:1 --a 1 --b 1/2 --delta 0.01");
  CHECK(cc.code == 0);
  CHECK(cc.output.find("\"epsilon\": 0.") != std::string::npos);
}

TEST_CASE("divergence classes") {
  Run r = run("verify --window box:-inf,inf --a 1 --b 1 --signal box:0,1 --delta 0.01");
  CHECK(r.code == 0);
  CHECK(r.output.find("diverges_as_expected") != std::string::npos);
  // A bounded window forced into a failure class is a config error.
  CHECK(run("verify --window box:0,1 --signal box:0,1 --a 1 --b 1 --class failure_bcf").code ==
        1);
}
