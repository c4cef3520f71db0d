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

#ifndef WHFRAME_CONFIG_HPP_
#define WHFRAME_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "whframe/correlation.hpp"
#include "whframe/gabor.hpp"
#include "whframe/grid.hpp"
#include "whframe/report_io.hpp"
#include "whframe/verifier.hpp"

namespace whframe {

/// One run of a command. The JSON form uses the same keys as the CLI flags
/// (with underscores): window, signal, a, b, delta, oversample, span, tol,
/// k_max, seed, probes, iters, method, subset_trials, max_k, class.
struct RunConfig {
  std::string window = "gaussian:1";
  std::string signal = "gaussian:2";
  std::string a = "1";
  std::string b = "1/2";
  std::optional<double> delta;  // default 0.001 unless oversample is set
  std::optional<int> oversample;
  double span = 8.0;                 // grid covers [-span, span]
  double tol = 1e-6;
  int k_max = 8;
  std::uint64_t seed = 42;
  int probes = 20;
  int iters = 200;
  std::string method = "rayleigh_extremes";
  int subset_trials = 200;
  int max_k = -1;
  std::optional<std::string> hypothesis;  // inferred from the window when absent

  /// Keys not listed above are rejected; messages name the field.
  static RunConfig from_json(const Json& j);
  Json to_json() const;
};

/// Everything a command needs, validated.
struct ResolvedConfig {
  RunConfig raw;
  LatticeSpec lattice;
  GridSpec grid;
  WindowSpec window;
  WindowSpec signal;
  HypothesisClass hypothesis = HypothesisClass::kBcf;
  BoundsMethod method = BoundsMethod::kRayleighExtremes;
  VerifyOptions verify;
};

ResolvedConfig resolve(const RunConfig& config);

/// Class implied by the window and signal traits.
HypothesisClass infer_class(const WindowSpec& window, const WindowSpec& signal);

struct CommandResult {
  int exit_code = 0;
  std::string text;  // report JSON or CSV
  /// Extra files as (suffix, content); written next to the main output.
  std::vector<std::pair<std::string, std::string>> artifacts;
};

/// Exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFail = 2;
inline constexpr int kExitDivergenceMismatch = 3;

/// verify, gk, diagnose, bounds, cc, suite. Throws Error on bad input.
CommandResult run_command(std::string_view command, const RunConfig& config);

}  // namespace whframe

#endif  // WHFRAME_CONFIG_HPP_
