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

#include "whframe/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace whframe {

std::string_view class_name(HypothesisClass c) {
  switch (c) {
    case HypothesisClass::kBcf: return "bcf";
    case HypothesisClass::kCf: return "cf";
    case HypothesisClass::kCc: return "cc";
    case HypothesisClass::kFailureBcf: return "failure_bcf";
    case HypothesisClass::kFailureCf: return "failure_cf";
  }
  return "unknown";
}

HypothesisClass parse_class(std::string_view text) {
  for (auto c : {HypothesisClass::kBcf, HypothesisClass::kCf, HypothesisClass::kCc,
                 HypothesisClass::kFailureBcf, HypothesisClass::kFailureCf}) {
    if (class_name(c) == text) return c;
  }
  throw Error(Error::Code::kConfig, "class must be one of bcf, cf, cc, failure_bcf, failure_cf");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kDivergesAsExpected: return "diverges_as_expected";
  }
  return "unknown";
}

Scenario Scenario::make(std::string name, WindowSpec window, LatticeSpec lattice,
                        WindowSpec signal, HypothesisClass hypothesis) {
  const WindowTraits w = window.traits();
  const WindowTraits s = signal.traits();
  std::string problem;
  switch (hypothesis) {
    case HypothesisClass::kBcf:
      if (!s.bounded) problem = "signal is unbounded";
      if (!w.square_integrable) problem = "window is not square integrable";
      break;
    case HypothesisClass::kCf:
      if (!s.square_integrable) problem = "signal is not square integrable";
      if (!w.g0_bounded) problem = "window has unbounded G0";
      break;
    case HypothesisClass::kCc:
      if (!w.amalgam) problem = "window is not in W(L-inf, L1)";
      break;
    case HypothesisClass::kFailureBcf:
      if (w.square_integrable) problem = "window is square integrable";
      break;
    case HypothesisClass::kFailureCf:
      if (!w.square_integrable) problem = "window is not square integrable";
      if (w.g0_bounded) problem = "window has bounded G0";
      break;
  }
  if (!problem.empty()) {
    throw Error(Error::Code::kConfig, "class " + std::string(class_name(hypothesis)) +
                                          " is inconsistent with the inputs: " + problem);
  }
  Scenario sc;
  sc.name = std::move(name);
  sc.window = std::move(window);
  sc.lattice = lattice;
  sc.signal = std::move(signal);
  sc.hypothesis = hypothesis;
  sc.expected = (hypothesis == HypothesisClass::kFailureBcf ||
                 hypothesis == HypothesisClass::kFailureCf)
                    ? Expectation::kDiverges
                    : Expectation::kIdentityHolds;
  return sc;
}

Json to_json(const Scenario& s) {
  return Json{{"name", s.name},
              {"window", s.window.to_string()},
              {"signal", s.signal.to_string()},
              {"a", s.lattice.a.str()},
              {"b", s.lattice.b.str()},
              {"class", class_name(s.hypothesis)},
              {"expected",
               s.expected == Expectation::kDiverges ? "diverges" : "identity_holds"}};
}

double relative_gap(double lhs, double rhs_total) {
  return std::abs(lhs - rhs_total) / std::max(lhs, 1e-12);
}

namespace {

std::string grid_text(const GridSpec& g) {
  return "delta=" + fmt17(g.delta) + ", span [" + fmt17(g.t(g.i_min)) + ", " +
         fmt17(g.t(g.i_max)) + "]";
}

}  // namespace

VerdictReport verify_identity(const Scenario& scenario, const VerifyOptions& options) {
  VerdictReport r;
  r.scenario = scenario;
  const GridSpec& grid = options.grid;
  GridSignal window = make_window(scenario.window, grid);
  GridSignal f = make_window(scenario.signal, grid);
  GaborSystem sys = GaborSystem::create(window, scenario.lattice);
  r.lhs = coefficient_energy(sys, f).value;

  CorrelationTable table = build_table(window, sys.lattice, options.k_max);
  r.rhs = identity_rhs(table, f, PartialSumSpec::symmetric(options.k_max));
  r.cc = cc_report(table);
  r.relative_gap = relative_gap(*r.lhs, r.rhs->total);

  DiagnosticsOptions diag;
  diag.norm_iterations = options.norm_iterations;
  diag.boundedness =
      boundedness_sweep(scenario.window, scenario.lattice, grid, options.boundedness_levels);
  const int max_k = options.max_k < 0 ? options.k_max : std::min(options.max_k, options.k_max);
  r.convergence = convergence_diagnostics(table, f, max_k, options.subset_trials, options.seed,
                                          diag);

  const bool finite_k = table.support_k_limit <= table.k_max;
  const bool unconditional = r.convergence->verdicts.unconditional_converges;
  bool flags = unconditional;
  if (scenario.hypothesis == HypothesisClass::kBcf ||
      scenario.hypothesis == HypothesisClass::kCf) {
    flags = flags && finite_k;
  }
  const bool pass = *r.relative_gap <= options.tol && flags;
  r.verdict = pass ? Verdict::kPass : Verdict::kFail;
  r.expected_met = (scenario.expected == Expectation::kIdentityHolds) == pass;
  r.note = std::string(pass ? "consistent" : "not consistent") +
           " with the identity for class " + std::string(class_name(scenario.hypothesis)) +
           " at this grid (" + grid_text(grid) + ", k_max=" + std::to_string(options.k_max) +
           ")";
  if (!pass) {
    r.note += *r.relative_gap > options.tol ? "; gap exceeds tol" : "";
    r.note += !unconditional ? "; unconditional flag not set" : "";
    r.note += (scenario.hypothesis == HypothesisClass::kBcf ||
               scenario.hypothesis == HypothesisClass::kCf) && !finite_k
                  ? "; nonzero G_k beyond k_max"
                  : "";
  }
  return r;
}

namespace {

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

// F1 = b^-1 delta sum |f|^2 G0.
double f1_of(const GridSignal& window, const GridSignal& f, const LatticeSpec& lattice) {
  CorrelationTable t = build_table(window, bind(lattice, window.grid()), 0);
  return identity_rhs(t, f, PartialSumSpec::symmetric(0)).f1;
}

void truncation_family(VerdictReport& r, const Scenario& sc, const VerifyOptions& opt) {
  std::vector<double> levels = opt.probe_levels;
  if (levels.empty()) levels = {4.0, 8.0, 16.0, 32.0};
  const double binv = 1.0 / sc.lattice.b.value();
  bool ok = true;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double T = levels[l];
    GridSpec grid = GridSpec::from_span(opt.grid.delta, -T - 2.0, T + 2.0);
    GridSignal raw = make_window(sc.window, grid);
    std::vector<Complex> samples(raw.samples().begin(), raw.samples().end());
    const std::int64_t lo = grid.index_ceil(-T), hi = grid.index_ceil(T) - 1;
    for (std::int64_t i = grid.i_min; i <= grid.i_max; ++i) {
      if (i < lo || i > hi) samples[static_cast<std::size_t>(i - grid.i_min)] = 0.0;
    }
    GridSignal window(grid, std::move(samples));
    GridSignal f = make_window(sc.signal, grid);
    RefinementLevel lev;
    lev.level = T;
    lev.f1 = f1_of(window, f, sc.lattice);
    lev.law = (2.0 * T + 1.0) * norm_sq(f) * binv;
    lev.within_law = within(lev.f1, *lev.law, 0.2);
    if (l > 0) {
      const RefinementLevel& prev = r.refinement_trace.back();
      double growth = lev.f1 / prev.f1;
      double expected = (2.0 * T + 1.0) / (2.0 * prev.level + 1.0);
      lev.within_law = lev.within_law && within(growth, expected, 0.2) && lev.f1 >= prev.f1;
    }
    ok = ok && lev.within_law;
    r.refinement_trace.push_back(lev);
  }
  r.verdict = ok ? Verdict::kDivergesAsExpected : Verdict::kFail;
}

void refinement_family(VerdictReport& r, const Scenario& sc, const VerifyOptions& opt) {
  if (sc.signal.kind != WindowKind::kPowerCusp) {
    throw Error(Error::Code::kConfig, "the refinement probe needs a power_cusp signal");
  }
  std::vector<double> levels = opt.probe_levels;
  if (levels.empty()) {
    for (int e = 3; e <= 8; ++e) levels.push_back(std::ldexp(1.0, -e));
  }
  const double binv = 1.0 / sc.lattice.b.value();
  GridSpec grid = GridSpec::from_span(std::ldexp(1.0, -16), -1.0, 2.0);
  GridSignal window = make_window(sc.window, grid);
  bool ok = true;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    WindowSpec fs = sc.signal;
    fs.params[1] = levels[l];
    fs.source.clear();
    GridSignal f = make_window(fs, grid);
    RefinementLevel lev;
    lev.level = levels[l];
    lev.f1 = f1_of(window, f, sc.lattice);
    lev.within_law = true;
    if (l > 0) {
      const RefinementLevel& prev = r.refinement_trace.back();
      lev.law = std::log(prev.level / lev.level) * binv;
      lev.within_law = within(lev.f1 - prev.f1, *lev.law, 0.2) && lev.f1 >= prev.f1;
    }
    ok = ok && lev.within_law;
    r.refinement_trace.push_back(lev);
  }
  r.verdict = ok ? Verdict::kDivergesAsExpected : Verdict::kFail;
}

}  // namespace

VerdictReport divergence_probe(const Scenario& scenario, const VerifyOptions& options) {
  VerdictReport r;
  r.scenario = scenario;
  const bool refinement = scenario.hypothesis == HypothesisClass::kCf ||
                          scenario.hypothesis == HypothesisClass::kFailureCf;
  if (refinement) {
    refinement_family(r, scenario, options);
  } else {
    truncation_family(r, scenario, options);
  }
  const bool diverged = r.verdict == Verdict::kDivergesAsExpected;
  r.expected_met = (scenario.expected == Expectation::kDiverges) == diverged;
  r.note = std::string(diverged ? "consistent with divergence of F1"
                                : "no divergence matching the analytic law") +
           " for class " + std::string(class_name(scenario.hypothesis)) + " across " +
           (refinement ? "signal offsets delta (grid step 2^-16)"
                       : "window truncations T (" + grid_text(options.grid) + ")");
  return r;
}

VerdictReport run_scenario(const Scenario& scenario, const VerifyOptions& options) {
  return scenario.expected == Expectation::kDiverges ? divergence_probe(scenario, options)
                                                     : verify_identity(scenario, options);
}

std::vector<Scenario> canonical_scenarios() {
  auto lat = [](const char* a, const char* b) {
    return LatticeSpec{Rational::parse(a, "a"), Rational::parse(b, "b")};
  };
  auto w = [](const char* text) { return WindowSpec::parse(text); };
  return {
      Scenario::make("box_onb", w("box:0,1"), lat("1", "1"), w("box:0,1"),
                     HypothesisClass::kBcf),
      Scenario::make("scaled_box", w("box:0,1*2"), lat("1", "1"), w("box:0,1"),
                     HypothesisClass::kBcf),
      Scenario::make("half_overlap_box", w("box:0,1"), lat("1/2", "1"), w("box:-1,2"),
                     HypothesisClass::kBcf),
      Scenario::make("triangle", w("triangle:0,2"), lat("1", "1"), w("gaussian:2"),
                     HypothesisClass::kCc),
      Scenario::make("gaussian_frame", w("gaussian:1"), lat("1", "1/2"), w("gaussian:2"),
                     HypothesisClass::kCc),
      Scenario::make("cusp_cf", w("box:0,1"), lat("1", "1"), w("power_cusp:0.25,0,1"),
                     HypothesisClass::kCf),
      Scenario::make("failure_bcf", w("box:-inf,inf"), lat("1", "1"), w("box:0,1"),
                     HypothesisClass::kFailureBcf),
      Scenario::make("failure_cf", w("power_cusp:0.25,0,1"), lat("1", "1"),
                     w("power_cusp:0.25,0,1"), HypothesisClass::kFailureCf),
  };
}

SuiteReport scenario_suite(const std::vector<Scenario>& scenarios,
                           const VerifyOptions& options) {
  SuiteReport suite;
  for (const Scenario& sc : scenarios) {
    VerdictReport r;
    try {
      r = run_scenario(sc, options);
    } catch (const std::exception& e) {
      r = VerdictReport{};
      r.scenario = sc;
      r.verdict = Verdict::kFail;
      r.expected_met = false;
      r.error = e.what();
      r.note = "scenario raised an error";
    }
    suite.all_expected_met = suite.all_expected_met && r.expected_met;
    suite.reports.push_back(std::move(r));
  }
  return suite;
}

Json to_json(const CCReport& r) {
  Json j{{"cc_sup", r.cc_sup},       {"cc_partial", r.cc_partial}, {"g0_sup", r.g0_sup},
         {"g0_inf", r.g0_inf},       {"epsilon", nullptr},         {"delta", r.delta},
         {"k_max", r.k_max},         {"tail_bound", r.tail_bound}};
  if (r.epsilon) j["epsilon"] = *r.epsilon;
  return j;
}

Json to_json(const VerdictReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json trace = Json::array();
  for (const auto& lev : r.refinement_trace) {
    trace.push_back(Json{{"level", lev.level},
                         {"f1", lev.f1},
                         {"law", opt(lev.law)},
                         {"within_law", lev.within_law}});
  }
  Json j{{"scenario", to_json(r.scenario)}};
  if (!r.config.is_null()) j["config"] = r.config;
  j["lhs"] = opt(r.lhs);
  j["rhs"] = r.rhs ? to_json(*r.rhs) : Json(nullptr);
  j["relative_gap"] = opt(r.relative_gap);
  j["cc"] = r.cc ? to_json(*r.cc) : Json(nullptr);
  j["convergence"] = r.convergence ? to_json(*r.convergence) : Json(nullptr);
  j["refinement_trace"] = trace;
  j["verdict"] = verdict_name(r.verdict);
  j["expected_met"] = r.expected_met;
  j["note"] = r.note;
  j["error"] = r.error ? Json(*r.error) : Json(nullptr);
  return j;
}

Json to_json(const SuiteReport& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  return Json{{"reports", reports}, {"all_expected_met", s.all_expected_met}};
}

}  // namespace whframe
