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

#include "whframe/correlation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "whframe/report_io.hpp"

namespace whframe {

namespace {

std::int64_t floor_mod(std::int64_t i, std::int64_t p) {
  std::int64_t r = i % p;
  return r < 0 ? r + p : r;
}

std::int64_t floor_div(std::int64_t i, std::int64_t p) {
  std::int64_t q = i / p;
  return (i % p != 0 && (i < 0) != (p < 0)) ? q - 1 : q;
}

}  // namespace

// --- Rational ---------------------------------------------------------------

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Error::Code::kInvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text, std::string_view field,
                         bool dyadic_only) {
  auto fail = [&]() -> Error {
    return Error(Error::Code::kConfig, std::string(field) + " must be a rational p/q");
  };
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty() || s.size() > 18) throw fail();
    std::int64_t v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    r = make(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (fp.empty() || fp.size() > 17) throw fail();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip);
    if (whole > std::numeric_limits<std::int64_t>::max() / den) throw fail();
    r = make(whole * den + parse_int(fp), den);
    if (dyadic_only && (r.den & (r.den - 1)) != 0) throw fail();
  } else {
    r = make(parse_int(s), 1);
  }
  if (neg) r.num = -r.num;
  return r;
}

// --- lattice binding --------------------------------------------------------

BoundLattice bind(const LatticeSpec& lattice, const GridSpec& grid) {
  if (lattice.a.num <= 0 || lattice.b.num <= 0) {
    throw Error(Error::Code::kInvalidArgument, "lattice parameters a, b must be > 0");
  }
  BoundLattice bl;
  bl.spec = lattice;
  bl.grid = grid;
  auto a_steps = grid.try_steps(lattice.a.value());
  auto p_steps = grid.try_steps(1.0 / lattice.b.value());
  if (!a_steps || !p_steps || *a_steps < 1 || *p_steps < 1) {
    throw Error(Error::Code::kNotGridMultiple,
                "lattice (a=" + lattice.a.str() + ", b=" + lattice.b.str() +
                    ") is not compatible with grid step " + fmt17(grid.delta) +
                    ": a/delta and 1/(b delta) must be integers");
  }
  bl.shift_steps = *a_steps;
  bl.period_steps = *p_steps;
  return bl;
}

double compatible_delta(const LatticeSpec& lattice, int oversample) {
  if (oversample < 1) {
    throw Error(Error::Code::kInvalidArgument, "oversample must be a positive integer");
  }
  // a = p/q contributes q; 1/b = q'/p' contributes p'.
  std::int64_t l = std::lcm(lattice.a.den, lattice.b.num);
  return 1.0 / (static_cast<double>(oversample) * static_cast<double>(l));
}

// --- periodic functions -----------------------------------------------------

PeriodicFunction::PeriodicFunction(std::int64_t period, double delta,
                                   std::vector<Complex> values)
    : period_(period), delta_(delta), values_(std::move(values)) {
  if (period_ < 1 || values_.size() != static_cast<std::size_t>(period_)) {
    throw Error(Error::Code::kInvalidArgument, "periodic function needs one value per step");
  }
}

// --- correlation functions --------------------------------------------------

CorrelationResult correlation_g(const GridSignal& g, const BoundLattice& lattice,
                                int k) {
  if (!(g.grid() == lattice.grid)) {
    throw Error(Error::Code::kGridMismatch, "window grid differs from lattice grid");
  }
  const std::int64_t A = lattice.shift_steps;
  const std::int64_t lag = static_cast<std::int64_t>(k) * lattice.period_steps;
  CorrelationResult result;
  const GridSpec& grid = g.grid();
  if (std::abs(lag) > grid.i_max - grid.i_min) {
    result.values = PeriodicFunction(A, grid.delta, std::vector<Complex>(A));
    result.out_of_range = true;
    return result;
  }
  IndexRange s = g.support();
  IndexRange overlap = s.intersect(s.shifted(lag));
  std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(A));
  for (std::int64_t x = overlap.lo; x <= overlap.hi; ++x) {
    Complex v = g.at(x) * std::conj(g.at(x - lag));
    acc[static_cast<std::size_t>(floor_mod(x, A))].add(v);
  }
  std::vector<Complex> values(static_cast<std::size_t>(A));
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = acc[j].value();
  result.values = PeriodicFunction(A, grid.delta, std::move(values));
  return result;
}

namespace {

// sup_t sum_n |g(t - na)|^2 restricted to samples at distance >= radius
// (in steps) from `center`.
double far_g0_sup(const GridSignal& g, std::int64_t A, double center, double radius) {
  IndexRange s = g.support();
  std::vector<KahanSum<double>> acc(static_cast<std::size_t>(A));
  for (std::int64_t x = s.lo; x <= s.hi; ++x) {
    if (std::abs(static_cast<double>(x) - center) >= radius) {
      acc[static_cast<std::size_t>(floor_mod(x, A))].add(std::norm(g.at(x)));
    }
  }
  double m = 0.0;
  for (const auto& a : acc) m = std::max(m, a.value());
  return m;
}

}  // namespace

CorrelationTable build_table(const GridSignal& g, const BoundLattice& lattice,
                             int k_max) {
  if (k_max < 0) throw Error(Error::Code::kInvalidArgument, "k_max must be >= 0");
  CorrelationTable t;
  t.lattice = lattice;
  t.k_max = k_max;
  t.g_k.reserve(static_cast<std::size_t>(2 * k_max + 1));
  for (int k = -k_max; k <= k_max; ++k) {
    t.g_k.push_back(correlation_g(g, lattice, k).values);
  }
  IndexRange s = g.support();
  const std::int64_t P = lattice.period_steps;
  t.support_k_limit =
      s.empty() ? 0 : static_cast<int>((s.hi - s.lo) / P);

  // Split each product g(x) g(x - L) at radius L/2 around the support centre:
  // one factor always lies in the far part, so by Cauchy-Schwarz
  // sup |G_k| <= 2 sqrt(g0_sup * far_g0_sup(L/2)).
  double g0_sup = 0.0;
  for (const Complex& v : t.G(0).values()) g0_sup = std::max(g0_sup, v.real());
  double center = s.empty() ? 0.0 : 0.5 * static_cast<double>(s.lo + s.hi);
  KahanSum<double> tail;
  for (int k = k_max + 1; k <= t.support_k_limit; ++k) {
    double radius = 0.5 * static_cast<double>(k) * static_cast<double>(P);
    double bound = 2.0 * std::sqrt(g0_sup * far_g0_sup(g, lattice.shift_steps, center, radius));
    tail.add(2.0 * bound);  // k and -k
  }
  t.tail_bound = tail.value();
  return t;
}

double amalgam_norm(const GridSignal& g, double a) {
  const std::int64_t A = g.grid().steps(a);
  if (A < 1) throw Error(Error::Code::kInvalidArgument, "amalgam block length must be > 0");
  IndexRange s = g.support();
  KahanSum<double> acc;
  std::int64_t block = std::numeric_limits<std::int64_t>::min();
  double block_max = 0.0;
  for (std::int64_t x = s.lo; x <= s.hi; ++x) {
    std::int64_t n = floor_div(x, A);
    if (n != block) {
      acc.add(block_max);
      block = n;
      block_max = 0.0;
    }
    block_max = std::max(block_max, std::abs(g.at(x)));
  }
  acc.add(block_max);
  return acc.value();
}

CCReport cc_report(const CorrelationTable& table) {
  CCReport r;
  r.delta = table.lattice.grid.delta;
  r.k_max = table.k_max;
  r.tail_bound = table.tail_bound;
  const std::int64_t A = table.lattice.shift_steps;
  r.g0_inf = std::numeric_limits<double>::infinity();
  double eps = std::numeric_limits<double>::infinity();
  bool eps_ok = true;
  for (std::int64_t j = 0; j < A; ++j) {
    double g0 = table.G(0).at(j).real();
    KahanSum<double> off;
    for (int k = -table.k_max; k <= table.k_max; ++k) {
      if (k != 0) off.add(std::abs(table.G(k).at(j)));
    }
    double off_total = off.value() + table.tail_bound;
    r.cc_partial = std::max(r.cc_partial, g0 + off.value());
    r.cc_sup = std::max(r.cc_sup, g0 + off_total);
    r.g0_sup = std::max(r.g0_sup, g0);
    r.g0_inf = std::min(r.g0_inf, g0);
    if (g0 > 0.0) {
      eps = std::min(eps, 1.0 - off_total / g0);
    } else {
      eps_ok = false;
    }
  }
  if (eps_ok && eps > 0.0) r.epsilon = std::min(eps, 1.0);
  return r;
}

void write_table_csv(std::ostream& os, const CorrelationTable& table) {
  os << "k,t,re_Gk,im_Gk\n";
  const double delta = table.lattice.grid.delta;
  for (int k = -table.k_max; k <= table.k_max; ++k) {
    const PeriodicFunction& gk = table.G(k);
    for (std::int64_t j = 0; j < gk.period(); ++j) {
      Complex v = gk.at(j);
      os << k << ',' << fmt17(static_cast<double>(j) * delta) << ',' << fmt17(v.real())
         << ',' << fmt17(v.imag()) << '\n';
    }
  }
}

}  // namespace whframe
