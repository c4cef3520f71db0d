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

#include "whframe/whframe.h"

#include <new>
#include <string>
#include <vector>

#include "whframe/config.hpp"
#include "whframe/correlation.hpp"
#include "whframe/gabor.hpp"
#include "whframe/grid.hpp"
#include "whframe/walnut.hpp"

struct whf_grid {
  whframe::GridSpec spec;
};

struct whf_signal {
  whframe::GridSignal signal;
};

struct whf_system {
  whframe::GaborSystem system;
  whframe::CorrelationTable table;
};

struct whf_report {
  whframe::CommandResult result;
};

namespace {

thread_local std::string g_last_error;

whf_status to_status(whframe::Error::Code code) {
  using C = whframe::Error::Code;
  switch (code) {
    case C::kInvalidArgument: return WHF_ERR_INVALID_ARGUMENT;
    case C::kGridMismatch: return WHF_ERR_GRID_MISMATCH;
    case C::kNotGridMultiple: return WHF_ERR_NOT_GRID_MULTIPLE;
    case C::kOutOfRange: return WHF_ERR_OUT_OF_RANGE;
    case C::kConfig: return WHF_ERR_CONFIG;
    case C::kNotConverged: return WHF_ERR_NOT_CONVERGED;
    case C::kCertificate: return WHF_ERR_CERTIFICATE;
  }
  return WHF_ERR_INTERNAL;
}

template <class Fn>
whf_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WHF_OK;
  } catch (const whframe::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return WHF_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WHF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WHF_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw whframe::Error(whframe::Error::Code::kInvalidArgument, what);
}

}  // namespace

extern "C" {

const char* whf_last_error(void) { return g_last_error.c_str(); }

const char* whf_status_name(whf_status status) {
  switch (status) {
    case WHF_OK: return "ok";
    case WHF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case WHF_ERR_GRID_MISMATCH: return "grid_mismatch";
    case WHF_ERR_NOT_GRID_MULTIPLE: return "not_grid_multiple";
    case WHF_ERR_OUT_OF_RANGE: return "out_of_range";
    case WHF_ERR_CONFIG: return "config";
    case WHF_ERR_NOT_CONVERGED: return "not_converged";
    case WHF_ERR_CERTIFICATE: return "certificate";
    case WHF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

whf_status whf_grid_create(double delta, double t_min, double t_max, whf_grid** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(delta > 0.0 && t_min <= t_max, "grid needs delta > 0 and t_min <= t_max");
    *out = new whf_grid{whframe::GridSpec::from_span(delta, t_min, t_max)};
  });
}

whf_status whf_grid_size(const whf_grid* grid, size_t* out) {
  return guarded([&] {
    require(grid && out, "NULL argument");
    *out = grid->spec.size();
  });
}

void whf_grid_free(whf_grid* grid) { delete grid; }

whf_status whf_signal_from_spec(const whf_grid* grid, const char* spec, whf_signal** out) {
  return guarded([&] {
    require(grid && spec && out, "NULL argument");
    *out = new whf_signal{whframe::make_window(whframe::WindowSpec::parse(spec), grid->spec)};
  });
}

whf_status whf_signal_from_samples(const whf_grid* grid, const double* re, const double* im,
                                   size_t n, whf_signal** out) {
  return guarded([&] {
    require(grid && re && out, "NULL argument");
    require(n == grid->spec.size(), "sample count differs from the grid size");
    std::vector<whframe::Complex> s(n);
    for (size_t i = 0; i < n; ++i) s[i] = {re[i], im ? im[i] : 0.0};
    *out = new whf_signal{whframe::GridSignal(grid->spec, std::move(s))};
  });
}

whf_status whf_signal_samples(const whf_signal* f, double* re, double* im, size_t n) {
  return guarded([&] {
    require(f && re, "NULL argument");
    require(n == f->signal.size(), "buffer length differs from the signal length");
    auto s = f->signal.samples();
    for (size_t i = 0; i < n; ++i) {
      re[i] = s[i].real();
      if (im) im[i] = s[i].imag();
    }
  });
}

whf_status whf_signal_norm_sq(const whf_signal* f, double* out) {
  return guarded([&] {
    require(f && out, "NULL argument");
    *out = whframe::norm_sq(f->signal);
  });
}

whf_status whf_inner_product(const whf_signal* f, const whf_signal* h, double* re,
                             double* im) {
  return guarded([&] {
    require(f && h && re && im, "NULL argument");
    whframe::Complex v = whframe::inner_product(f->signal, h->signal);
    *re = v.real();
    *im = v.imag();
  });
}

void whf_signal_free(whf_signal* f) { delete f; }

whf_status whf_system_create(const whf_signal* window, const char* a, const char* b,
                             int k_max, whf_system** out) {
  return guarded([&] {
    require(window && a && b && out, "NULL argument");
    whframe::LatticeSpec lat{whframe::Rational::parse(a, "a"),
                             whframe::Rational::parse(b, "b")};
    auto sys = whframe::GaborSystem::create(window->signal, lat);
    auto table = whframe::build_table(window->signal, sys.lattice, k_max);
    *out = new whf_system{std::move(sys), std::move(table)};
  });
}

whf_status whf_coefficient_energy(const whf_system* sys, const whf_signal* f, double* out) {
  return guarded([&] {
    require(sys && f && out, "NULL argument");
    *out = whframe::coefficient_energy(sys->system, f->signal).value;
  });
}

whf_status whf_identity_rhs(const whf_system* sys, const whf_signal* f, double* f1,
                            double* f2, double* total) {
  return guarded([&] {
    require(sys && f, "NULL argument");
    auto rhs = whframe::identity_rhs(sys->table, f->signal,
                                     whframe::PartialSumSpec::symmetric(sys->table.k_max));
    if (f1) *f1 = rhs.f1;
    if (f2) *f2 = rhs.f2;
    if (total) *total = rhs.total;
  });
}

whf_status whf_frame_operator_apply(const whf_system* sys, const whf_signal* f,
                                    whf_signal** out) {
  return guarded([&] {
    require(sys && f && out, "NULL argument");
    *out = new whf_signal{whframe::frame_operator_apply(sys->system, f->signal)};
  });
}

whf_status whf_walnut_apply(const whf_system* sys, const whf_signal* f, double tol,
                            whf_signal** out) {
  return guarded([&] {
    require(sys && f && out, "NULL argument");
    *out = new whf_signal{whframe::walnut_full_apply(sys->table, f->signal, tol)};
  });
}

whf_status whf_cc(const whf_system* sys, double* cc_sup, double* epsilon, int* has_epsilon) {
  return guarded([&] {
    require(sys, "NULL argument");
    auto r = whframe::cc_report(sys->table);
    if (cc_sup) *cc_sup = r.cc_sup;
    if (epsilon) *epsilon = r.epsilon.value_or(0.0);
    if (has_epsilon) *has_epsilon = r.epsilon ? 1 : 0;
  });
}

void whf_system_free(whf_system* sys) { delete sys; }

whf_status whf_run_command(const char* command, const char* config_json, whf_report** out) {
  return guarded([&] {
    require(command && out, "NULL argument");
    whframe::Json j = whframe::Json::object();
    if (config_json && *config_json) j = whframe::Json::parse(config_json);
    auto cfg = whframe::RunConfig::from_json(j);
    *out = new whf_report{whframe::run_command(command, cfg)};
  });
}

int whf_report_exit_code(const whf_report* report) {
  return report ? report->result.exit_code : whframe::kExitConfig;
}

const char* whf_report_text(const whf_report* report) {
  return report ? report->result.text.c_str() : "";
}

size_t whf_report_artifact_count(const whf_report* report) {
  return report ? report->result.artifacts.size() : 0;
}

const char* whf_report_artifact_suffix(const whf_report* report, size_t i) {
  if (!report || i >= report->result.artifacts.size()) return nullptr;
  return report->result.artifacts[i].first.c_str();
}

const char* whf_report_artifact_text(const whf_report* report, size_t i) {
  if (!report || i >= report->result.artifacts.size()) return nullptr;
  return report->result.artifacts[i].second.c_str();
}

void whf_report_free(whf_report* report) { delete report; }

}  // extern "C"
