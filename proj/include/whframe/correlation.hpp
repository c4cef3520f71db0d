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

#ifndef WHFRAME_CORRELATION_HPP_
#define WHFRAME_CORRELATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "whframe/grid.hpp"

namespace whframe {

/// Exact rational p/q with q > 0, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Accepts `p/q`, integers, and decimals. With `dyadic_only`, decimals are
  /// accepted only when exactly representable in binary floating point; the
  /// error message names `field`.
  static Rational parse(std::string_view text, std::string_view field,
                        bool dyadic_only = true);
  static Rational make(std::int64_t num, std::int64_t den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

/// Shift parameter a and modulation parameter b of a WH system.
struct LatticeSpec {
  Rational a = {1, 1};
  Rational b = {1, 1};
};

/// Lattice certified against a grid: a = shift_steps * delta and
/// 1/b = period_steps * delta exactly.
struct BoundLattice {
  LatticeSpec spec;
  GridSpec grid;
  std::int64_t shift_steps = 1;   // a / delta
  std::int64_t period_steps = 1;  // 1 / (b delta)

  double a() const { return spec.a.value(); }
  double b() const { return spec.b.value(); }
};

/// Throws kNotGridMultiple when a/delta or 1/(b delta) is not an integer.
BoundLattice bind(const LatticeSpec& lattice, const GridSpec& grid);

/// delta = 1 / (oversample * L), L the lcm of the denominators of a and 1/b.
double compatible_delta(const LatticeSpec& lattice, int oversample);

/// Function on the grid with an integer period (in grid steps). Values are
/// stored for one period starting at index 0; evaluation wraps exactly.
class PeriodicFunction {
 public:
  PeriodicFunction() = default;
  PeriodicFunction(std::int64_t period, double delta, std::vector<Complex> values);

  std::int64_t period() const { return period_; }
  double delta() const { return delta_; }
  std::span<const Complex> values() const { return values_; }

  Complex at(std::int64_t i) const {
    std::int64_t r = i % period_;
    if (r < 0) r += period_;
    return values_[static_cast<std::size_t>(r)];
  }

 private:
  std::int64_t period_ = 1;
  double delta_ = 1.0;
  std::vector<Complex> values_{Complex{}};
};

struct CorrelationResult {
  PeriodicFunction values;
  bool out_of_range = false;  // |k|/b exceeds the grid span
};

/// G_k(t) = sum_n g(t - na) conj(g(t - na - k/b)) on one period [0, a).
CorrelationResult correlation_g(const GridSignal& g, const BoundLattice& lattice,
                                int k);

struct CorrelationTable {
  BoundLattice lattice;
  int k_max = 0;
  std::vector<PeriodicFunction> g_k;  // index k + k_max
  /// Upper bound on sum_{|k| > k_max} sup_t |G_k(t)|.
  double tail_bound = 0.0;
  /// G_k vanishes identically for |k| > support_k_limit.
  int support_k_limit = 0;

  const PeriodicFunction& G(int k) const {
    return g_k[static_cast<std::size_t>(k + k_max)];
  }
  bool covers(int k) const { return k >= -k_max && k <= k_max; }
};

CorrelationTable build_table(const GridSignal& g, const BoundLattice& lattice,
                             int k_max);

/// sum_n max_{[an, a(n+1))} |g| over the grid.
double amalgam_norm(const GridSignal& g, double a);

struct CCReport {
  double cc_sup = 0.0;      // max_t sum_{|k|<=k_max} |G_k(t)| + tail_bound
  double cc_partial = 0.0;  // the same without the tail bound
  double g0_sup = 0.0;
  double g0_inf = 0.0;
  std::optional<double> epsilon;
  double delta = 0.0;
  int k_max = 0;
  double tail_bound = 0.0;
};

CCReport cc_report(const CorrelationTable& table);

/// CSV `k,t,re_Gk,im_Gk`, one period per k, 17 significant digits.
void write_table_csv(std::ostream& os, const CorrelationTable& table);

}  // namespace whframe

#endif  // WHFRAME_CORRELATION_HPP_
