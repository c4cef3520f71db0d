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

// whframe: command-line front end over the C API.
//
//   whframe verify   --window box:0,1 --a 1 --b 1 --signal box:0,1
//   whframe gk       --window gaussian:1 --b 1/2 --k-max 4 --out gk.csv
//   whframe diagnose --out diag.json     (also diag.json.terms.csv, .trace.csv)
//   whframe bounds | cc | suite
//
// Flags override the fields of --config. Exit codes: 0 pass, 1 config error,
// 2 fail, 3 divergence expectation not met.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "whframe/whframe.h"

namespace {

using Json = nlohmann::ordered_json;

struct Flags {
  std::string config_path;
  std::string out;
  std::optional<std::int64_t> seed;
  std::optional<double> delta;
  std::optional<int> oversample;
  std::optional<double> span;
  std::optional<double> tol;
  std::optional<int> k_max;
  std::optional<std::string> window, signal, a, b, hypothesis, method;
  std::optional<int> probes, iters, subset_trials, max_k;
};

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-Heisenberg frame identity toolkit"};
  app.require_subcommand(1);
  Flags fl;
  app.add_option("--config", fl.config_path, "JSON config file");
  app.add_option("--out", fl.out, "output path (stdout when absent)");
  app.add_option("--seed", fl.seed, "random seed");
  auto* delta = app.add_option("--delta", fl.delta, "grid step");
  auto* over = app.add_option("--oversample", fl.oversample,
                              "grid step from the lattice: 1/(N lcm)");
  delta->excludes(over);
  app.add_option("--span", fl.span, "grid covers [-T, T]");
  app.add_option("--tol", fl.tol, "relative tolerance");
  app.add_option("--k-max", fl.k_max, "largest |k| in the correlation table");
  app.add_option("--window", fl.window, "window spec, e.g. gaussian:1");
  app.add_option("--signal", fl.signal, "signal spec, e.g. box:0,1");
  app.add_option("--a", fl.a, "shift parameter p/q");
  app.add_option("--b", fl.b, "modulation parameter p/q");
  app.add_option("--class", fl.hypothesis, "bcf, cf, cc, failure_bcf, failure_cf");
  app.add_option("--method", fl.method, "rayleigh_extremes or dense_eigen");
  app.add_option("--probes", fl.probes, "random probes for bounds");
  app.add_option("--iters", fl.iters, "power iterations for bounds");
  app.add_option("--subset-trials", fl.subset_trials, "random subsets in diagnose");
  app.add_option("--max-k", fl.max_k, "diagnostics depth");
  for (const char* name : {"verify", "gk", "diagnose", "bounds", "cc", "suite"}) {
    app.add_subcommand(name)->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Json cfg = Json::object();
  try {
    if (!fl.config_path.empty()) {
      std::ifstream is(fl.config_path);
      if (!is) {
        std::cerr << "error: cannot read config " << fl.config_path << "\n";
        return 1;
      }
      cfg = Json::parse(is);
      if (!cfg.is_object()) throw std::runtime_error("config must be a JSON object");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: config " << fl.config_path << ": " << e.what() << "\n";
    return 1;
  }
  put(cfg, "window", fl.window);
  put(cfg, "signal", fl.signal);
  put(cfg, "a", fl.a);
  put(cfg, "b", fl.b);
  if (fl.delta) {
    cfg["delta"] = *fl.delta;
    cfg.erase("oversample");
  }
  if (fl.oversample) {
    cfg["oversample"] = *fl.oversample;
    cfg.erase("delta");
  }
  put(cfg, "span", fl.span);
  put(cfg, "tol", fl.tol);
  put(cfg, "k_max", fl.k_max);
  put(cfg, "seed", fl.seed);
  put(cfg, "probes", fl.probes);
  put(cfg, "iters", fl.iters);
  put(cfg, "method", fl.method);
  put(cfg, "subset_trials", fl.subset_trials);
  put(cfg, "max_k", fl.max_k);
  put(cfg, "class", fl.hypothesis);

  whf_report* report = nullptr;
  whf_status st = whf_run_command(command.c_str(), cfg.dump().c_str(), &report);
  if (st != WHF_OK) {
    std::cerr << "error: " << whf_last_error() << "\n";
    return 1;
  }
  int code = whf_report_exit_code(report);
  const std::string text = whf_report_text(report);
  if (fl.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    bool ok = write_file(fl.out, text);
    for (size_t i = 0; ok && i < whf_report_artifact_count(report); ++i) {
      ok = write_file(fl.out + whf_report_artifact_suffix(report, i),
                      whf_report_artifact_text(report, i));
    }
    if (!ok) {
      std::cerr << "error: cannot write " << fl.out << "\n";
      code = 1;
    }
  }
  whf_report_free(report);
  return code;
}
