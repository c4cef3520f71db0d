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

#include "whframe/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace whframe {

namespace {

constexpr double kSnap = 1e-9;
constexpr std::int64_t kIndexLimit = std::int64_t{1} << 52;

std::int64_t clamp_index(double y) {
  if (!(y > -static_cast<double>(kIndexLimit))) return -kIndexLimit;
  if (!(y < static_cast<double>(kIndexLimit))) return kIndexLimit;
  return static_cast<std::int64_t>(y);
}

IndexRange scan_support(std::span<const Complex> s, std::int64_t i_min) {
  std::int64_t lo = -1, hi = -2;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] != Complex{}) {
      if (lo < 0) lo = static_cast<std::int64_t>(j);
      hi = static_cast<std::int64_t>(j);
    }
  }
  if (lo < 0) return {};
  return {lo + i_min, hi + i_min};
}

std::string format_param(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// --- GridSpec -------------------------------------------------------------

GridSpec GridSpec::from_span(double delta, double t_min, double t_max,
                             int oversample) {
  if (!(delta > 0) || !std::isfinite(delta)) {
    throw Error(Error::Code::kInvalidArgument, "grid delta must be > 0");
  }
  if (!(t_min <= t_max)) {
    throw Error(Error::Code::kInvalidArgument, "grid span must have t_min <= t_max");
  }
  GridSpec g;
  g.delta = delta;
  g.oversample = oversample;
  g.i_min = g.index_ceil(t_min);
  g.i_max = g.index_ceil(t_max, /*strict=*/true) - 1;
  if (g.i_min > g.i_max) {
    throw Error(Error::Code::kInvalidArgument, "grid span contains no grid point");
  }
  return g;
}

std::optional<std::int64_t> GridSpec::try_steps(double length) const {
  double x = length / delta;
  if (!std::isfinite(x)) return std::nullopt;
  double r = std::nearbyint(x);
  if (std::abs(x - r) > kSnap * std::max(1.0, std::abs(x))) return std::nullopt;
  return static_cast<std::int64_t>(r);
}

std::int64_t GridSpec::steps(double length) const {
  auto s = try_steps(length);
  if (!s) {
    throw Error(Error::Code::kNotGridMultiple,
                "shift " + format_param(length) +
                    " is not an integer multiple of the grid step " +
                    format_param(delta));
  }
  return *s;
}

std::int64_t GridSpec::index_ceil(double x, bool strict) const {
  double y = x / delta;
  if (std::isinf(y)) return y > 0 ? kIndexLimit : -kIndexLimit;
  double r = std::nearbyint(y);
  if (std::abs(y - r) <= kSnap * std::max(1.0, std::abs(y))) {
    return clamp_index(r) + (strict ? 1 : 0);
  }
  return clamp_index(std::ceil(y));
}

// --- GridSignal -------------------------------------------------------------

GridSignal::GridSignal(const GridSpec& grid)
    : grid_(grid), samples_(grid.size()), support_{} {}

GridSignal::GridSignal(const GridSpec& grid, std::vector<Complex> samples,
                       std::optional<IndexRange> support_hint)
    : grid_(grid), samples_(std::move(samples)), hint_(support_hint) {
  if (samples_.size() != grid_.size()) {
    throw Error(Error::Code::kInvalidArgument,
                "sample count does not match the grid index range");
  }
  support_ = scan_support(samples_, grid_.i_min);
  if (hint_ && !support_.empty() &&
      (support_.lo < hint_->lo || support_.hi > hint_->hi)) {
    throw Error(Error::Code::kInvalidArgument,
                "nonzero samples found outside the support hint");
  }
}

void require_same_grid(const GridSignal& f, const GridSignal& h) {
  if (!(f.grid() == h.grid())) {
    throw Error(Error::Code::kGridMismatch, "signals live on incompatible grids");
  }
}

Complex inner_product(const GridSignal& f, const GridSignal& h) {
  require_same_grid(f, h);
  KahanSum<Complex> acc;
  IndexRange r = f.support().intersect(h.support());
  auto fs = f.samples();
  auto hs = h.samples();
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    auto j = static_cast<std::size_t>(i - f.grid().i_min);
    acc.add(fs[j] * std::conj(hs[j]));
  }
  return f.grid().delta * acc.value();
}

double norm_sq(const GridSignal& f) {
  KahanSum<double> acc;
  for (const Complex& v : f.samples()) acc.add(std::norm(v));
  return f.grid().delta * acc.value();
}

double norm(const GridSignal& f) { return std::sqrt(norm_sq(f)); }

GridSignal translate_steps(const GridSignal& f, std::int64_t steps) {
  if (steps == 0) return f;
  const GridSpec& g = f.grid();
  std::vector<Complex> out(g.size());
  IndexRange src = f.support();
  IndexRange dst = src.shifted(steps).intersect(g.indices());
  for (std::int64_t i = dst.lo; i <= dst.hi; ++i) {
    out[static_cast<std::size_t>(i - g.i_min)] = f.at(i - steps);
  }
  std::optional<IndexRange> hint;
  if (f.support_hint()) {
    IndexRange h = f.support_hint()->shifted(steps).intersect(g.indices());
    if (!h.empty()) hint = h;
  }
  return GridSignal(g, std::move(out), hint);
}

GridSignal translate(const GridSignal& f, double shift) {
  return translate_steps(f, f.grid().steps(shift));
}

GridSignal modulate(const GridSignal& f, double freq) {
  if (freq == 0.0) return f;
  const GridSpec& g = f.grid();
  std::vector<Complex> out(f.samples().begin(), f.samples().end());
  IndexRange r = f.support();
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    double phase = 2.0 * std::numbers::pi * freq * g.t(i);
    out[static_cast<std::size_t>(i - g.i_min)] *= std::polar(1.0, phase);
  }
  return GridSignal(g, std::move(out), f.support_hint());
}

GridSignal operator+(const GridSignal& f, const GridSignal& h) {
  require_same_grid(f, h);
  std::vector<Complex> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.samples()[j] + h.samples()[j];
  return GridSignal(f.grid(), std::move(out));
}

GridSignal operator-(const GridSignal& f, const GridSignal& h) {
  require_same_grid(f, h);
  std::vector<Complex> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.samples()[j] - h.samples()[j];
  return GridSignal(f.grid(), std::move(out));
}

GridSignal operator*(Complex c, const GridSignal& f) {
  std::vector<Complex> out(f.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = c * f.samples()[j];
  return GridSignal(f.grid(), std::move(out), f.support_hint());
}

double max_abs_diff(const GridSignal& f, const GridSignal& h) {
  require_same_grid(f, h);
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    m = std::max(m, std::abs(f.samples()[j] - h.samples()[j]));
  }
  return m;
}

// --- windows ----------------------------------------------------------------

std::string_view window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::kGaussian: return "gaussian";
    case WindowKind::kBox: return "box";
    case WindowKind::kTriangle: return "triangle";
    case WindowKind::kPowerCusp: return "power_cusp";
    case WindowKind::kUserSamples: return "user_samples";
  }
  return "unknown";
}

namespace {

WindowSpec with_params(WindowKind kind, std::vector<double> params) {
  WindowSpec s;
  s.kind = kind;
  s.params = std::move(params);
  return s;
}

}  // namespace

WindowSpec WindowSpec::gaussian(double sigma) {
  return with_params(WindowKind::kGaussian, {sigma});
}
WindowSpec WindowSpec::box(double c, double d) {
  return with_params(WindowKind::kBox, {c, d});
}
WindowSpec WindowSpec::triangle(double c, double d) {
  return with_params(WindowKind::kTriangle, {c, d});
}
WindowSpec WindowSpec::power_cusp(double alpha, double c, double d) {
  return with_params(WindowKind::kPowerCusp, {alpha, c, d});
}
WindowSpec WindowSpec::user_samples(std::vector<double> t,
                                    std::vector<Complex> values) {
  if (t.size() != values.size()) {
    throw Error(Error::Code::kInvalidArgument,
                "user_samples needs one value per sample time");
  }
  WindowSpec s;
  s.kind = WindowKind::kUserSamples;
  s.user_t = std::move(t);
  s.user_values = std::move(values);
  return s;
}

WindowSpec WindowSpec::scaled(double amp) const {
  WindowSpec s = *this;
  s.amplitude *= amp;
  return s;
}

namespace {

std::vector<double> parse_numbers(std::string_view body, std::string_view kind) {
  std::vector<double> out;
  std::string text(body);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
      throw Error(Error::Code::kConfig,
                  "window " + std::string(kind) + ": cannot parse parameter '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void load_user_samples(WindowSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Error::Code::kConfig, "user_samples: cannot open '" + path + "'");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header
    auto v = parse_numbers(line, "user_samples");
    if (v.size() < 2 || v.size() > 3) {
      throw Error(Error::Code::kConfig, "user_samples: rows must be t,re[,im]");
    }
    spec.user_t.push_back(v[0]);
    spec.user_values.emplace_back(v[1], v.size() == 3 ? v[2] : 0.0);
  }
}

}  // namespace

WindowSpec WindowSpec::parse(std::string_view text) {
  WindowSpec spec;
  spec.source = std::string(text);
  std::string_view body = text;
  auto star = body.rfind('*');
  if (star != std::string_view::npos) {
    auto amp = parse_numbers(body.substr(star + 1), "amplitude");
    if (amp.size() != 1) {
      throw Error(Error::Code::kConfig, "window amplitude must be a single number");
    }
    spec.amplitude = amp[0];
    body = body.substr(0, star);
  }
  auto colon = body.find(':');
  std::string_view kind = body.substr(0, colon);
  std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : body.substr(colon + 1);
  std::size_t want = 0;
  if (kind == "gaussian") {
    spec.kind = WindowKind::kGaussian;
    want = 1;
  } else if (kind == "box") {
    spec.kind = WindowKind::kBox;
    want = 2;
  } else if (kind == "triangle") {
    spec.kind = WindowKind::kTriangle;
    want = 2;
  } else if (kind == "power_cusp") {
    spec.kind = WindowKind::kPowerCusp;
    want = 3;
  } else if (kind == "user_samples") {
    spec.kind = WindowKind::kUserSamples;
    load_user_samples(spec, std::string(args));
    return spec;
  } else {
    throw Error(Error::Code::kConfig, "unknown window kind '" + std::string(kind) + "'");
  }
  spec.params = parse_numbers(args, kind);
  if (spec.params.size() != want) {
    throw Error(Error::Code::kConfig,
                "window " + std::string(kind) + " expects " + std::to_string(want) +
                    " parameter(s)");
  }
  return spec;
}

std::string WindowSpec::to_string() const {
  if (kind == WindowKind::kUserSamples && !source.empty()) return source;
  std::string s(window_kind_name(kind));
  if (kind == WindowKind::kUserSamples) {
    s += ":<" + std::to_string(user_values.size()) + " samples>";
  } else {
    s += ':';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) s += ',';
      s += format_param(params[i]);
    }
  }
  if (amplitude != 1.0) s += "*" + format_param(amplitude);
  return s;
}

WindowTraits WindowSpec::traits() const {
  WindowTraits t;
  switch (kind) {
    case WindowKind::kGaussian:
      t.compact = false;
      break;
    case WindowKind::kBox: {
      bool finite = std::isfinite(params[0]) && std::isfinite(params[1]);
      t.compact = finite;
      t.square_integrable = finite;
      t.amalgam = finite;
      t.g0_bounded = finite;
      break;
    }
    case WindowKind::kTriangle:
      break;
    case WindowKind::kPowerCusp:
      t.bounded = params[0] <= 0.0;
      t.square_integrable = params[0] < 0.5;
      t.amalgam = t.bounded;
      t.g0_bounded = t.bounded;
      break;
    case WindowKind::kUserSamples:
      break;
  }
  return t;
}

GridSignal make_window(const WindowSpec& spec, const GridSpec& grid,
                       WindowOptions options) {
  std::vector<Complex> out(grid.size());
  auto put = [&](std::int64_t i, Complex v) {
    out[static_cast<std::size_t>(i - grid.i_min)] = spec.amplitude * v;
  };
  auto clip = [&](std::int64_t lo, std::int64_t hi) {
    return IndexRange{lo, hi}.intersect(grid.indices());
  };
  const auto& p = spec.params;
  std::optional<IndexRange> hint;
  switch (spec.kind) {
    case WindowKind::kGaussian: {
      if (p.size() != 1 || !(p[0] > 0)) {
        throw Error(Error::Code::kInvalidArgument, "gaussian width must be > 0");
      }
      double s2 = p[0] * p[0];
      for (std::int64_t i = grid.i_min; i <= grid.i_max; ++i) {
        double t = grid.t(i);
        put(i, std::exp(-std::numbers::pi * t * t / s2));
      }
      break;
    }
    case WindowKind::kBox: {
      if (p.size() != 2 || !(p[0] < p[1])) {
        throw Error(Error::Code::kInvalidArgument, "box needs c < d");
      }
      IndexRange r = clip(grid.index_ceil(p[0]), grid.index_ceil(p[1]) - 1);
      for (std::int64_t i = r.lo; i <= r.hi; ++i) put(i, 1.0);
      if (!r.empty()) hint = r;
      break;
    }
    case WindowKind::kTriangle: {
      if (p.size() != 2 || !(p[0] < p[1]) || !std::isfinite(p[0]) ||
          !std::isfinite(p[1])) {
        throw Error(Error::Code::kInvalidArgument, "triangle needs finite c < d");
      }
      double mid = 0.5 * (p[0] + p[1]);
      double half = 0.5 * (p[1] - p[0]);
      IndexRange r = clip(grid.index_ceil(p[0]), grid.index_ceil(p[1], true) - 1);
      for (std::int64_t i = r.lo; i <= r.hi; ++i) {
        double v = 1.0 - std::abs(grid.t(i) - mid) / half;
        if (v > 0) put(i, v);
      }
      if (!r.empty()) hint = r;
      break;
    }
    case WindowKind::kPowerCusp: {
      if (p.size() != 3 || !(p[1] < p[2]) || !std::isfinite(p[1])) {
        throw Error(Error::Code::kInvalidArgument, "power_cusp needs finite c < d");
      }
      if (options.require_l2 && p[0] >= 0.5) {
        throw Error(Error::Code::kInvalidArgument,
                    "power_cusp with alpha >= 1/2 is not square integrable");
      }
      // The singular end point c is excluded: samples start strictly inside.
      IndexRange r = clip(grid.index_ceil(p[1], true), grid.index_ceil(p[2], true) - 1);
      for (std::int64_t i = r.lo; i <= r.hi; ++i) {
        put(i, std::pow(grid.t(i) - p[1], -p[0]));
      }
      if (!r.empty()) hint = r;
      break;
    }
    case WindowKind::kUserSamples: {
      for (std::size_t j = 0; j < spec.user_t.size(); ++j) {
        auto i = grid.try_steps(spec.user_t[j]);
        if (!i) {
          throw Error(Error::Code::kNotGridMultiple,
                      "user sample time is not a grid point");
        }
        if (!grid.indices().contains(*i)) {
          throw Error(Error::Code::kOutOfRange, "user sample time outside the grid");
        }
        put(*i, spec.user_values[j]);
      }
      break;
    }
  }
  return GridSignal(grid, std::move(out), hint);
}

GridSignal random_probe(const GridSpec& grid, IndexRange support,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> out(grid.size());
  IndexRange r = support.intersect(grid.indices());
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    double re = normal(rng);
    double im = normal(rng);
    out[static_cast<std::size_t>(i - grid.i_min)] = {re, im};
  }
  return GridSignal(grid, std::move(out),
                    r.empty() ? std::nullopt : std::optional<IndexRange>(r));
}

GridSignal random_smooth(const GridSpec& grid, double t_lo, double t_hi,
                         std::uint64_t seed) {
  if (!(t_lo < t_hi)) {
    throw Error(Error::Code::kInvalidArgument, "random_smooth needs t_lo < t_hi");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double len = t_hi - t_lo;
  struct Bump {
    double center, width, freq;
    Complex amp;
  };
  std::vector<Bump> bumps;
  for (int j = 0; j < 3; ++j) {
    double width = len * (0.1 + 0.35 * unit(rng));
    double center = t_lo + width + (len - 2 * width) * unit(rng);
    double freq = -2.0 + 4.0 * unit(rng);
    double re = normal(rng);
    double im = normal(rng);
    bumps.push_back({center, width, freq, {re, im}});
  }
  std::vector<Complex> out(grid.size());
  for (std::int64_t i = grid.i_min; i <= grid.i_max; ++i) {
    double t = grid.t(i);
    Complex v{};
    for (const Bump& b : bumps) {
      double x = (t - b.center) / b.width;
      if (std::abs(x) < 1.0) {
        v += b.amp * std::exp(-1.0 / (1.0 - x * x)) *
             std::polar(1.0, 2.0 * std::numbers::pi * b.freq * t);
      }
    }
    out[static_cast<std::size_t>(i - grid.i_min)] = v;
  }
  return GridSignal(grid, std::move(out));
}

}  // namespace whframe
