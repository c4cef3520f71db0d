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

#ifndef WHFRAME_VERIFIER_HPP_
#define WHFRAME_VERIFIER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "whframe/correlation.hpp"
#include "whframe/gabor.hpp"
#include "whframe/grid.hpp"
#include "whframe/report_io.hpp"
#include "whframe/walnut.hpp"

namespace whframe {

/// Hypothesis regimes:
///   bcf          f bounded with compact support, g in L2
///   cf           f compactly supported, G0 bounded
///   cc           window satisfying the CC-condition (W(L-inf, L1) windows)
///   failure_bcf  g not in L2
///   failure_cf   G0 unbounded
enum class HypothesisClass { kBcf, kCf, kCc, kFailureBcf, kFailureCf };
enum class Expectation { kIdentityHolds, kDiverges };

std::string_view class_name(HypothesisClass c);
HypothesisClass parse_class(std::string_view text);

struct Scenario {
  std::string name;
  WindowSpec window;
  LatticeSpec lattice;
  WindowSpec signal;
  HypothesisClass hypothesis = HypothesisClass::kBcf;
  Expectation expected = Expectation::kIdentityHolds;

  /// Checks the class against the window and signal traits (kConfig on
  /// mismatch). The failure classes expect divergence.
  static Scenario make(std::string name, WindowSpec window, LatticeSpec lattice,
                       WindowSpec signal, HypothesisClass hypothesis);
};

Json to_json(const Scenario& s);

enum class Verdict { kPass, kFail, kDivergesAsExpected };
std::string_view verdict_name(Verdict v);

struct RefinementLevel {
  double level = 0.0;            // T for truncations, delta for refinements
  double f1 = 0.0;
  std::optional<double> law;     // analytic value (or increment) at this level
  bool within_law = false;
};

struct VerdictReport {
  Scenario scenario;
  std::optional<double> lhs;
  std::optional<IdentityRHS> rhs;
  std::optional<double> relative_gap;
  std::optional<ConvergenceReport> convergence;
  std::optional<CCReport> cc;
  Verdict verdict = Verdict::kFail;
  bool expected_met = false;
  std::string note;
  std::vector<RefinementLevel> refinement_trace;
  std::optional<std::string> error;
  Json config;  // embedded by the caller
};

struct VerifyOptions {
  GridSpec grid = GridSpec::from_span(1e-3, -8.0, 8.0);
  double tol = 1e-6;
  int k_max = 8;
  int max_k = -1;  // diagnostics depth; -1 uses k_max
  int subset_trials = 200;
  std::uint64_t seed = 42;
  int norm_iterations = 40;
  int boundedness_levels = 3;
  /// Truncation levels T (failure_bcf family) or signal offsets delta
  /// (failure_cf family); empty selects the defaults.
  std::vector<double> probe_levels;
};

/// |lhs - rhs| / max(lhs, 1e-12).
double relative_gap(double lhs, double rhs_total);

/// LHS from the coefficient energy, RHS from the Walnut terms, plus the
/// convergence diagnostics. Pass needs the gap within tol and the flags the
/// class requires: every nonzero G_k inside the table and the unconditional
/// flag (bcf, cf), or the unconditional flag (cc).
VerdictReport verify_identity(const Scenario& scenario, const VerifyOptions& options);

/// F1 along a divergent family. Truncation family (bcf, cc, failure_bcf):
/// the window cut to [-T, T), T = 4, 8, 16, 32, law (2T + 1) ||f||^2 / b.
/// Refinement family (cf, failure_cf): signal power_cusp(alpha, delta, d),
/// delta = 2^-3 .. 2^-8, law ln 2 / b per halving. Each level and each growth
/// step must match within 20%.
VerdictReport divergence_probe(const Scenario& scenario, const VerifyOptions& options);

/// verify_identity or divergence_probe according to the expectation.
VerdictReport run_scenario(const Scenario& scenario, const VerifyOptions& options);

std::vector<Scenario> canonical_scenarios();

struct SuiteReport {
  std::vector<VerdictReport> reports;
  bool all_expected_met = true;
};

/// Runs every scenario; errors are recorded per report.
SuiteReport scenario_suite(const std::vector<Scenario>& scenarios,
                           const VerifyOptions& options);

Json to_json(const VerdictReport& r);
Json to_json(const SuiteReport& r);
Json to_json(const CCReport& r);

}  // namespace whframe

#endif  // WHFRAME_VERIFIER_HPP_
