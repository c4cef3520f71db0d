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

#include "whframe/config.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "whframe/walnut.hpp"

namespace whframe {

namespace {

Error field_error(std::string_view field, std::string_view what) {
  return Error(Error::Code::kConfig, std::string(field) + " must be " + std::string(what));
}

std::string get_string(const Json& v, std::string_view field) {
  if (!v.is_string()) throw field_error(field, "a string");
  return v.get<std::string>();
}

// a and b: strings, integers, or floats written exactly as a decimal.
std::string get_rational_text(const Json& v, std::string_view field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return fmt17(v.get<double>());
  throw Error(Error::Code::kConfig, std::string(field) + " must be a rational p/q");
}

double get_double(const Json& v, std::string_view field) {
  if (!v.is_number()) throw field_error(field, "a number");
  return v.get<double>();
}

std::int64_t get_int(const Json& v, std::string_view field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  throw field_error(field, "an integer");
}

int get_small_int(const Json& v, std::string_view field) {
  std::int64_t x = get_int(v, field);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw field_error(field, "a 32-bit integer");
  }
  return static_cast<int>(x);
}

}  // namespace

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(Error::Code::kConfig, "config must be a JSON object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "window") {
      c.window = get_string(v, key);
    } else if (key == "signal") {
      c.signal = get_string(v, key);
    } else if (key == "a") {
      c.a = get_rational_text(v, key);
    } else if (key == "b") {
      c.b = get_rational_text(v, key);
    } else if (key == "delta") {
      if (v.is_null()) {
        c.delta.reset();
      } else {
        c.delta = get_double(v, key);
      }
    } else if (key == "oversample") {
      if (v.is_null()) {
        c.oversample.reset();
      } else {
        c.oversample = get_small_int(v, key);
      }
    } else if (key == "span") {
      c.span = get_double(v, key);
    } else if (key == "tol") {
      c.tol = get_double(v, key);
    } else if (key == "k_max") {
      c.k_max = get_small_int(v, key);
    } else if (key == "seed") {
      std::int64_t s = get_int(v, key);
      if (s < 0) throw field_error(key, "a non-negative integer");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "probes") {
      c.probes = get_small_int(v, key);
    } else if (key == "iters") {
      c.iters = get_small_int(v, key);
    } else if (key == "method") {
      c.method = get_string(v, key);
    } else if (key == "subset_trials") {
      c.subset_trials = get_small_int(v, key);
    } else if (key == "max_k") {
      c.max_k = get_small_int(v, key);
    } else if (key == "class") {
      if (v.is_null()) {
        c.hypothesis.reset();
      } else {
        c.hypothesis = get_string(v, key);
      }
    } else {
      throw Error(Error::Code::kConfig, "unknown config field '" + key + "'");
    }
  }
  return c;
}

Json RunConfig::to_json() const {
  Json j{{"window", window}, {"signal", signal}, {"a", a}, {"b", b}};
  j["delta"] = delta ? Json(*delta) : Json(nullptr);
  j["oversample"] = oversample ? Json(*oversample) : Json(nullptr);
  j["span"] = span;
  j["tol"] = tol;
  j["k_max"] = k_max;
  j["seed"] = seed;
  j["probes"] = probes;
  j["iters"] = iters;
  j["method"] = method;
  j["subset_trials"] = subset_trials;
  j["max_k"] = max_k;
  j["class"] = hypothesis ? Json(*hypothesis) : Json(nullptr);
  return j;
}

HypothesisClass infer_class(const WindowSpec& window, const WindowSpec& signal) {
  const WindowTraits w = window.traits();
  if (!w.square_integrable) return HypothesisClass::kFailureBcf;
  if (!w.g0_bounded) return HypothesisClass::kFailureCf;
  if (!signal.traits().bounded) return HypothesisClass::kCf;
  if (w.amalgam) return HypothesisClass::kCc;
  return HypothesisClass::kBcf;
}

ResolvedConfig resolve(const RunConfig& c) {
  ResolvedConfig r;
  r.raw = c;
  r.lattice.a = Rational::parse(c.a, "a");
  r.lattice.b = Rational::parse(c.b, "b");
  if (r.lattice.a.num <= 0) throw field_error("a", "positive");
  if (r.lattice.b.num <= 0) throw field_error("b", "positive");
  if (!(c.span > 0.0) || !std::isfinite(c.span)) throw field_error("span", "> 0");
  if (!(c.tol > 0.0)) throw field_error("tol", "> 0");
  if (c.k_max < 0) throw field_error("k_max", ">= 0");
  if (c.probes < 1) throw field_error("probes", ">= 1");
  if (c.iters < 1) throw field_error("iters", ">= 1");
  if (c.subset_trials < 0) throw field_error("subset_trials", ">= 0");
  if (c.delta && c.oversample) {
    throw Error(Error::Code::kConfig, "delta and oversample are mutually exclusive");
  }
  double delta = 1e-3;
  int oversample = 1;
  if (c.oversample) {
    if (*c.oversample < 1) throw field_error("oversample", ">= 1");
    oversample = *c.oversample;
    delta = compatible_delta(r.lattice, oversample);
  } else if (c.delta) {
    if (!(*c.delta > 0.0) || !std::isfinite(*c.delta)) throw field_error("delta", "> 0");
    delta = *c.delta;
  }
  r.grid = GridSpec::from_span(delta, -c.span, c.span, oversample);
  bind(r.lattice, r.grid);  // grid compatibility
  if (c.method == "rayleigh_extremes") {
    r.method = BoundsMethod::kRayleighExtremes;
  } else if (c.method == "dense_eigen") {
    r.method = BoundsMethod::kDenseEigen;
  } else {
    throw field_error("method", "rayleigh_extremes or dense_eigen");
  }
  r.window = WindowSpec::parse(c.window);
  r.signal = WindowSpec::parse(c.signal);
  r.hypothesis = c.hypothesis ? parse_class(*c.hypothesis) : infer_class(r.window, r.signal);
  r.verify.grid = r.grid;
  r.verify.tol = c.tol;
  r.verify.k_max = c.k_max;
  r.verify.max_k = c.max_k;
  r.verify.subset_trials = c.subset_trials;
  r.verify.seed = c.seed;
  return r;
}

namespace {

Scenario scenario_of(const ResolvedConfig& r) {
  return Scenario::make("custom", r.window, r.lattice, r.signal, r.hypothesis);
}

CommandResult cmd_verify(const ResolvedConfig& r) {
  Scenario sc = scenario_of(r);
  VerdictReport rep = run_scenario(sc, r.verify);
  rep.config = r.raw.to_json();
  CommandResult out;
  out.text = dump_json(to_json(rep));
  if (sc.expected == Expectation::kDiverges) {
    out.exit_code = rep.expected_met ? kExitOk : kExitDivergenceMismatch;
  } else {
    out.exit_code = rep.verdict == Verdict::kPass ? kExitOk : kExitFail;
  }
  return out;
}

CommandResult cmd_gk(const ResolvedConfig& r) {
  GridSignal g = make_window(r.window, r.grid);
  CorrelationTable t = build_table(g, bind(r.lattice, r.grid), r.raw.k_max);
  std::ostringstream os;
  write_table_csv(os, t);
  return {kExitOk, os.str(), {}};
}

CommandResult cmd_diagnose(const ResolvedConfig& r) {
  GridSignal g = make_window(r.window, r.grid);
  GridSignal f = make_window(r.signal, r.grid);
  CorrelationTable t = build_table(g, bind(r.lattice, r.grid), r.raw.k_max);
  IdentityRHS rhs = identity_rhs(t, f, PartialSumSpec::symmetric(r.raw.k_max));
  DiagnosticsOptions opt;
  opt.boundedness = boundedness_sweep(r.window, r.lattice, r.grid, r.verify.boundedness_levels);
  const int max_k = r.raw.max_k < 0 ? r.raw.k_max : std::min(r.raw.max_k, r.raw.k_max);
  ConvergenceReport conv =
      convergence_diagnostics(t, f, max_k, r.raw.subset_trials, r.raw.seed, opt);
  Json j{{"config", r.raw.to_json()},
         {"convergence", to_json(conv)},
         {"rhs", to_json(rhs)}};
  CommandResult out;
  out.text = dump_json(j);
  std::ostringstream terms, trace;
  write_terms_csv(terms, rhs);
  write_trace_csv(trace, conv);
  out.artifacts = {{".terms.csv", terms.str()}, {".trace.csv", trace.str()}};
  return out;
}

CommandResult cmd_bounds(const ResolvedConfig& r) {
  GaborSystem sys = GaborSystem::create(make_window(r.window, r.grid), r.lattice);
  BoundsOptions opt;
  opt.method = r.method;
  opt.power_iterations = r.raw.iters;
  FrameBoundsReport b = frame_bounds_estimate(sys, r.raw.probes, r.raw.seed, opt);
  Json j{{"config", r.raw.to_json()}, {"bounds", to_json(b)}};
  return {kExitOk, dump_json(j), {}};
}

CommandResult cmd_cc(const ResolvedConfig& r) {
  GridSignal g = make_window(r.window, r.grid);
  CorrelationTable t = build_table(g, bind(r.lattice, r.grid), r.raw.k_max);
  Json j{{"config", r.raw.to_json()},
         {"cc", to_json(cc_report(t))},
         {"amalgam_norm", amalgam_norm(g, r.lattice.a.value())},
         {"support_k_limit", t.support_k_limit}};
  return {kExitOk, dump_json(j), {}};
}

CommandResult cmd_suite(const ResolvedConfig& r) {
  SuiteReport s = scenario_suite(canonical_scenarios(), r.verify);
  Json j{{"config", r.raw.to_json()}, {"suite", to_json(s)}};
  return {s.all_expected_met ? kExitOk : kExitFail, dump_json(j), {}};
}

}  // namespace

CommandResult run_command(std::string_view command, const RunConfig& config) {
  ResolvedConfig r = resolve(config);
  if (command == "verify") return cmd_verify(r);
  if (command == "gk") return cmd_gk(r);
  if (command == "diagnose") return cmd_diagnose(r);
  if (command == "bounds") return cmd_bounds(r);
  if (command == "cc") return cmd_cc(r);
  if (command == "suite") return cmd_suite(r);
  throw Error(Error::Code::kConfig, "unknown command '" + std::string(command) + "'");
}

}  // namespace whframe
