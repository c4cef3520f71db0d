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

#ifndef WHFRAME_GRID_HPP_
#define WHFRAME_GRID_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace whframe {

using Complex = std::complex<double>;

/// Error raised by every module. The code is what the C API reports.
class Error : public std::runtime_error {
 public:
  enum class Code {
    kInvalidArgument,
    kGridMismatch,
    kNotGridMultiple,
    kOutOfRange,
    kConfig,
    kNotConverged,
    kCertificate,
  };

  Error(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

/// Kahan compensated accumulator. Works for double and std::complex<double>
/// (the complex case compensates each component independently).
template <class T>
class KahanSum {
 public:
  void add(T x) {
    T y = x - carry_;
    T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  T value() const { return sum_; }

 private:
  T sum_{};
  T carry_{};
};

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::int64_t i) const { return i >= lo && i <= hi; }
  IndexRange intersect(IndexRange o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
  }
  IndexRange shifted(std::int64_t s) const { return {lo + s, hi + s}; }
  bool operator==(const IndexRange&) const = default;
};

/// Uniform grid t_i = i * delta for i in [i_min, i_max]. Two grids are
/// compatible only when they compare equal.
struct GridSpec {
  double delta = 1.0;
  std::int64_t i_min = 0;
  std::int64_t i_max = 0;
  int oversample = 1;

  /// Grid covering [t_min, t_max]; end points snap to the grid when they are
  /// within 1e-9 steps of a grid point.
  static GridSpec from_span(double delta, double t_min, double t_max,
                            int oversample = 1);

  std::size_t size() const {
    return static_cast<std::size_t>(i_max - i_min + 1);
  }
  IndexRange indices() const { return {i_min, i_max}; }
  double t(std::int64_t i) const { return static_cast<double>(i) * delta; }

  /// Number of grid steps in `length`; throws kNotGridMultiple unless the
  /// length is an integer multiple of delta (relative slack 1e-9).
  std::int64_t steps(double length) const;
  std::optional<std::int64_t> try_steps(double length) const;

  /// Smallest index i with t_i >= x (or > x when `strict`).
  std::int64_t index_ceil(double x, bool strict = false) const;

  bool operator==(const GridSpec&) const = default;
};

/// A complex signal sampled on a GridSpec. Immutable once built.
class GridSignal {
 public:
  explicit GridSignal(const GridSpec& grid);
  GridSignal(const GridSpec& grid, std::vector<Complex> samples,
             std::optional<IndexRange> support_hint = std::nullopt);

  const GridSpec& grid() const { return grid_; }
  std::span<const Complex> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  /// Sample at grid index i; zero outside the grid.
  Complex at(std::int64_t i) const {
    if (i < grid_.i_min || i > grid_.i_max) return {};
    return samples_[static_cast<std::size_t>(i - grid_.i_min)];
  }

  const std::optional<IndexRange>& support_hint() const { return hint_; }

  /// Smallest index range containing every nonzero sample (exact scan).
  IndexRange support() const { return support_; }

 private:
  GridSpec grid_;
  std::vector<Complex> samples_;
  std::optional<IndexRange> hint_;
  IndexRange support_;
};

void require_same_grid(const GridSignal& f, const GridSignal& h);

Complex inner_product(const GridSignal& f, const GridSignal& h);
double norm_sq(const GridSignal& f);
double norm(const GridSignal& f);

GridSignal translate(const GridSignal& f, double shift);
GridSignal translate_steps(const GridSignal& f, std::int64_t steps);
GridSignal modulate(const GridSignal& f, double freq);

// Pointwise arithmetic used by the solvers and the polarization harness.
GridSignal operator+(const GridSignal& f, const GridSignal& h);
GridSignal operator-(const GridSignal& f, const GridSignal& h);
GridSignal operator*(Complex c, const GridSignal& f);

/// Largest pointwise modulus |f_i - h_i|.
double max_abs_diff(const GridSignal& f, const GridSignal& h);

enum class WindowKind { kGaussian, kBox, kTriangle, kPowerCusp, kUserSamples };

std::string_view window_kind_name(WindowKind kind);

/// Analytic membership flags the verifier uses to check hypothesis classes.
struct WindowTraits {
  bool bounded = true;
  bool square_integrable = true;
  bool compact = true;
  bool amalgam = true;      // member of W(L-infinity, L1)
  bool g0_bounded = true;   // sum_n |g(t - na)|^2 bounded for every a
};

/// A window (or test signal) description. String form: `kind:p1,p2,...`
/// with an optional `*amplitude` suffix, e.g. `box:0,1*2`.
///   gaussian:sigma          exp(-pi t^2 / sigma^2)
///   box:c,d                 indicator of [c, d); c, d may be -inf/inf
///   triangle:c,d            tent on [c, d] with unit peak at the midpoint
///   power_cusp:alpha,c,d    (t - c)^(-alpha) on (c, d]
///   user_samples:FILE       CSV rows `t,re[,im]`, t on the grid
struct WindowSpec {
  WindowKind kind = WindowKind::kGaussian;
  std::vector<double> params;
  double amplitude = 1.0;
  std::vector<double> user_t;
  std::vector<Complex> user_values;
  std::string source;

  static WindowSpec parse(std::string_view text);
  static WindowSpec gaussian(double sigma);
  static WindowSpec box(double c, double d);
  static WindowSpec triangle(double c, double d);
  static WindowSpec power_cusp(double alpha, double c, double d);
  static WindowSpec user_samples(std::vector<double> t,
                                 std::vector<Complex> values);

  WindowSpec scaled(double amp) const;
  WindowTraits traits() const;
  std::string to_string() const;
};

struct WindowOptions {
  /// Reject windows that are not in L2 (power_cusp with alpha >= 1/2).
  bool require_l2 = true;
};

GridSignal make_window(const WindowSpec& spec, const GridSpec& grid,
                       WindowOptions options = {});

/// Seeded complex gaussian samples on `support`, zero elsewhere.
GridSignal random_probe(const GridSpec& grid, IndexRange support,
                        std::uint64_t seed);

/// Seeded smooth signal with compact support inside [t_lo, t_hi]: a sum of
/// three modulated C-infinity bumps.
GridSignal random_smooth(const GridSpec& grid, double t_lo, double t_hi,
                         std::uint64_t seed);

}  // namespace whframe

#endif  // WHFRAME_GRID_HPP_
