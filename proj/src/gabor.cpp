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

#include "whframe/gabor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>

#include "parallel.hpp"
#include "whframe/walnut.hpp"

namespace whframe {

namespace {

std::int64_t floor_mod(std::int64_t i, std::int64_t p) {
  std::int64_t r = i % p;
  return r < 0 ? r + p : r;
}

std::int64_t ceil_div(std::int64_t x, std::int64_t d) {
  return x >= 0 ? (x + d - 1) / d : -((-x) / d);
}

std::int64_t floor_div(std::int64_t x, std::int64_t d) {
  return x >= 0 ? x / d : -((-x + d - 1) / d);
}

// twiddle[r] = exp(2 pi i r / P).
std::vector<Complex> twiddles(std::int64_t P) {
  std::vector<Complex> tw(static_cast<std::size_t>(P));
  for (std::int64_t r = 0; r < P; ++r) {
    tw[static_cast<std::size_t>(r)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(P));
  }
  return tw;
}

// Indices i where both f and T_na g can be nonzero.
IndexRange overlap(const GaborSystem& sys, const GridSignal& f, std::int64_t n) {
  IndexRange gs = sys.window.support().shifted(n * sys.lattice.shift_steps);
  return f.support().intersect(gs).intersect(f.grid().indices());
}

}  // namespace

// --- system -----------------------------------------------------------------

GaborSystem GaborSystem::create(const GridSignal& window, const LatticeSpec& lattice) {
  GaborSystem sys{window, bind(lattice, window.grid()), {}, {}};
  sys.m_range = sys.full_m_range();
  sys.n_range = sys.full_n_range();
  return sys;
}

IndexRange GaborSystem::full_m_range() const {
  const std::int64_t P = lattice.period_steps;
  std::int64_t lo = -((P - 1) / 2);
  return {lo, lo + P - 1};
}

IndexRange GaborSystem::full_n_range() const {
  IndexRange s = window.support();
  if (s.empty()) return {};
  const GridSpec& g = window.grid();
  const std::int64_t A = lattice.shift_steps;
  return {ceil_div(g.i_min - s.hi, A), floor_div(g.i_max - s.lo, A)};
}

GaborSystem GaborSystem::restricted(IndexRange m, IndexRange n) const {
  IndexRange fm = full_m_range(), fn = full_n_range();
  if (!m.empty() && (!fm.contains(m.lo) || !fm.contains(m.hi))) {
    throw Error(Error::Code::kOutOfRange, "m_range exceeds the alias-free band");
  }
  if (!n.empty() && (!fn.contains(n.lo) || !fn.contains(n.hi))) {
    throw Error(Error::Code::kOutOfRange, "n_range exceeds the translates meeting the grid");
  }
  GaborSystem s = *this;
  s.m_range = m;
  s.n_range = n;
  return s;
}

double CoefficientGrid::energy() const {
  KahanSum<double> acc;
  for (const Complex& c : values) acc.add(std::norm(c));
  return acc.value();
}

// --- coefficients -----------------------------------------------------------

Complex coefficient(const GaborSystem& sys, const GridSignal& f, std::int64_t m,
                    std::int64_t n) {
  if (!sys.m_range.contains(m) || !sys.n_range.contains(n)) {
    throw Error(Error::Code::kOutOfRange,
                "coefficient index (" + std::to_string(m) + ", " + std::to_string(n) +
                    ") outside the system ranges");
  }
  require_same_grid(f, sys.window);
  GridSignal atom = modulate(translate(sys.window, static_cast<double>(n) * sys.lattice.a()),
                             static_cast<double>(m) * sys.lattice.b());
  return inner_product(f, atom);
}

CoefficientGrid analysis(const GaborSystem& sys, const GridSignal& f) {
  require_same_grid(f, sys.window);
  const std::int64_t P = sys.lattice.period_steps;
  const std::int64_t A = sys.lattice.shift_steps;
  const double delta = f.grid().delta;
  const auto tw = twiddles(P);
  CoefficientGrid out{sys.m_range, sys.n_range,
                      std::vector<Complex>(static_cast<std::size_t>(
                          sys.m_range.size() * sys.n_range.size()))};
  const std::int64_t M = sys.m_range.size();
  detail::parallel_for(static_cast<std::size_t>(sys.n_range.size()), [&](std::size_t idx) {
    const std::int64_t n = sys.n_range.lo + static_cast<std::int64_t>(idx);
    IndexRange r = overlap(sys, f, n);
    if (r.empty()) return;
    // Fold f conj(T_na g) modulo P: e^{-2 pi i m b t_i} depends on i mod P only.
    std::vector<KahanSum<Complex>> fold(static_cast<std::size_t>(P));
    for (std::int64_t i = r.lo; i <= r.hi; ++i) {
      fold[static_cast<std::size_t>(floor_mod(i, P))].add(
          f.at(i) * std::conj(sys.window.at(i - n * A)));
    }
    std::vector<std::pair<std::int64_t, Complex>> bins;
    for (std::int64_t j = 0; j < P; ++j) {
      Complex h = fold[static_cast<std::size_t>(j)].value();
      if (h != Complex{}) bins.emplace_back(j, h);
    }
    Complex* row = out.values.data() + idx * static_cast<std::size_t>(M);
    for (std::int64_t mi = 0; mi < M; ++mi) {
      const std::int64_t m = sys.m_range.lo + mi;
      KahanSum<Complex> acc;
      for (const auto& [j, h] : bins) {
        acc.add(h * tw[static_cast<std::size_t>(floor_mod(-m * j, P))]);
      }
      row[mi] = delta * acc.value();
    }
  });
  return out;
}

GridSignal synthesis(const GaborSystem& sys, const CoefficientGrid& c) {
  const GridSpec& grid = sys.window.grid();
  const std::int64_t P = sys.lattice.period_steps;
  const std::int64_t A = sys.lattice.shift_steps;
  const auto tw = twiddles(P);
  const std::size_t count = static_cast<std::size_t>(c.n_range.size());
  // Per n: Q(j) = sum_m c_mn e^{2 pi i m j / P} on the residues the translate needs.
  std::vector<std::vector<Complex>> q(count);
  std::vector<IndexRange> reach(count);
  detail::parallel_for(count, [&](std::size_t idx) {
    const std::int64_t n = c.n_range.lo + static_cast<std::int64_t>(idx);
    IndexRange r = sys.window.support().shifted(n * A).intersect(grid.indices());
    reach[idx] = r;
    if (r.empty()) return;
    bool any = false;
    for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi && !any; ++m) {
      any = c.at(m, n) != Complex{};
    }
    if (!any) {
      reach[idx] = {};
      return;
    }
    std::vector<Complex> qn(static_cast<std::size_t>(P));
    std::int64_t residues = std::min(P, r.size());
    for (std::int64_t s = 0; s < residues; ++s) {
      std::int64_t j = floor_mod(r.lo + s, P);
      KahanSum<Complex> acc;
      for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi; ++m) {
        acc.add(c.at(m, n) * tw[static_cast<std::size_t>(floor_mod(m * j, P))]);
      }
      qn[static_cast<std::size_t>(j)] = acc.value();
    }
    q[idx] = std::move(qn);
  });
  std::vector<KahanSum<Complex>> acc(grid.size());
  for (std::size_t idx = 0; idx < count; ++idx) {
    const std::int64_t n = c.n_range.lo + static_cast<std::int64_t>(idx);
    IndexRange r = reach[idx];
    for (std::int64_t i = r.lo; i <= r.hi; ++i) {
      acc[static_cast<std::size_t>(i - grid.i_min)].add(
          sys.window.at(i - n * A) * q[idx][static_cast<std::size_t>(floor_mod(i, P))]);
    }
  }
  std::vector<Complex> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = acc[j].value();
  return GridSignal(grid, std::move(out));
}

EnergyResult coefficient_energy(const GaborSystem& sys, const GridSignal& f) {
  EnergyResult r;
  GaborSystem full = sys;
  full.m_range = sys.full_m_range();
  full.n_range = sys.full_n_range();
  CoefficientGrid c = analysis(full, f);
  KahanSum<double> inside, outside;
  for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n) {
    for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi; ++m) {
      double e = std::norm(c.at(m, n));
      if (sys.m_range.contains(m) && sys.n_range.contains(n)) {
        inside.add(e);
      } else {
        outside.add(e);
      }
    }
  }
  r.value = inside.value();
  r.tail_certificate = outside.value();
  return r;
}

GridSignal frame_operator_apply(const GaborSystem& sys, const GridSignal& f) {
  return synthesis(sys, analysis(sys, f));
}

// --- frame bounds -----------------------------------------------------------

namespace {

using ApplyS = std::function<GridSignal(const GridSignal&)>;

double rayleigh(const ApplyS& apply, const GridSignal& x, GridSignal* sx) {
  GridSignal s = apply(x);
  double q = inner_product(s, x).real() / norm_sq(x);
  if (sx) *sx = std::move(s);
  return q;
}

FrameBoundsReport dense_bounds(const GaborSystem& sys) {
  const GridSpec& grid = sys.window.grid();
  const std::size_t N = grid.size();
  if (N > 4096) {
    throw Error(Error::Code::kInvalidArgument,
                "dense_eigen is limited to grids of at most 4096 samples");
  }
  Eigen::MatrixXcd S(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  detail::parallel_for(N, [&](std::size_t j) {
    std::vector<Complex> e(N);
    e[j] = 1.0;
    GridSignal col = frame_operator_apply(sys, GridSignal(grid, std::move(e)));
    for (std::size_t i = 0; i < N; ++i) {
      S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.samples()[i];
    }
  });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Error::Code::kNotConverged, "dense eigenvalue solve failed");
  }
  FrameBoundsReport r;
  r.method = BoundsMethod::kDenseEigen;
  r.a_est = std::max(0.0, solver.eigenvalues().minCoeff());
  r.b_est = solver.eigenvalues().maxCoeff();
  return r;
}

}  // namespace

FrameBoundsReport frame_bounds_estimate(const GaborSystem& sys, int probes,
                                        std::uint64_t seed, BoundsOptions options) {
  if (probes < 1) throw Error(Error::Code::kInvalidArgument, "probes must be >= 1");
  if (options.method == BoundsMethod::kDenseEigen) {
    FrameBoundsReport r = dense_bounds(sys);
    r.probe_count = probes;
    r.seed = seed;
    return r;
  }
  const GridSpec& grid = sys.window.grid();
  ApplyS apply = [&sys](const GridSignal& x) { return frame_operator_apply(sys, x); };
  if (options.walnut_route) {
    // G_k vanishes once k/b exceeds the support width, so this table is complete.
    const IndexRange sup = sys.window.support();
    const int limit =
        sup.empty() ? 0 : static_cast<int>((sup.hi - sup.lo) / sys.lattice.period_steps);
    auto table = std::make_shared<CorrelationTable>(build_table(sys.window, sys.lattice, limit));
    apply = [table, limit](const GridSignal& x) {
      return walnut_partial_apply(*table, x, PartialSumSpec::symmetric(limit));
    };
  }
  std::uint64_t stream = seed;
  auto draw = [&]() {
    for (;;) {
      GridSignal x = random_probe(grid, grid.indices(), stream++);
      if (norm_sq(x) > 0.0) return x;  // zero-norm probes are redrawn
    }
  };
  std::optional<GridSignal> best_hi, best_lo;
  double q_hi = -std::numeric_limits<double>::infinity();
  double q_lo = std::numeric_limits<double>::infinity();
  for (int p = 0; p < probes; ++p) {
    GridSignal x = draw();
    double q = rayleigh(apply, x, nullptr);
    if (q > q_hi) {
      q_hi = q;
      best_hi = x;
    }
    if (q < q_lo) {
      q_lo = q;
      best_lo = x;
    }
  }
  // Power iteration on S for the top, then on (B I - S) for the bottom.
  GridSignal x = *best_hi;
  for (int it = 0; it < options.power_iterations; ++it) {
    GridSignal sx(grid);
    double q = rayleigh(apply, x, &sx);
    q_hi = std::max(q_hi, q);
    double nrm = norm(sx);
    if (nrm == 0.0) break;
    x = Complex(1.0 / nrm) * sx;
  }
  const double shift = q_hi;
  GridSignal y = *best_lo;
  for (int it = 0; it < options.power_iterations; ++it) {
    GridSignal sy(grid);
    double q = rayleigh(apply, y, &sy);
    q_lo = std::min(q_lo, q);
    GridSignal z = Complex(shift) * y - sy;
    double nrm = norm(z);
    if (nrm == 0.0) break;
    y = Complex(1.0 / nrm) * z;
  }
  FrameBoundsReport r;
  r.method = BoundsMethod::kRayleighExtremes;
  r.a_est = std::max(0.0, std::min(q_lo, q_hi));
  r.b_est = q_hi;
  r.probe_count = probes;
  r.seed = seed;
  return r;
}

// --- reconstruction ---------------------------------------------------------

GridSignal inverse_frame_apply(const GaborSystem& sys, const GridSignal& f, double tol,
                               CgOptions options) {
  require_same_grid(f, sys.window);
  const double f_norm = norm(f);
  if (f_norm == 0.0) return GridSignal(f.grid());
  double upper = options.upper_bound.value_or(0.0);
  if (!(upper > 0.0)) upper = inner_product(frame_operator_apply(sys, f), f).real() / norm_sq(f);
  if (!(upper > 0.0)) {
    throw Error(Error::Code::kInvalidArgument,
                "frame operator is not positive on this signal");
  }
  GridSignal x = Complex(1.0 / upper) * f;
  GridSignal r = f - frame_operator_apply(sys, x);
  GridSignal p = r;
  double rr = norm_sq(r);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (std::sqrt(rr) <= tol * f_norm) return x;
    GridSignal ap = frame_operator_apply(sys, p);
    double pap = inner_product(ap, p).real();
    if (!(pap > 0.0)) break;
    double alpha = rr / pap;
    x = x + Complex(alpha) * p;
    r = r - Complex(alpha) * ap;
    double rr_new = norm_sq(r);
    p = r + Complex(rr_new / rr) * p;
    rr = rr_new;
  }
  if (std::sqrt(rr) <= tol * f_norm) return x;
  throw Error(Error::Code::kNotConverged,
              "conjugate gradients stopped with relative residual " +
                  fmt17(std::sqrt(rr) / f_norm));
}

void write_coefficients_csv(std::ostream& os, const CoefficientGrid& c) {
  os << "m,n,re,im\n";
  for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n) {
    for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi; ++m) {
      Complex v = c.at(m, n);
      os << m << ',' << n << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    }
  }
}

std::string_view bounds_method_name(BoundsMethod m) {
  return m == BoundsMethod::kDenseEigen ? "dense_eigen" : "rayleigh_extremes";
}

Json to_json(const FrameBoundsReport& r) {
  return Json{{"a_est", r.a_est},
              {"b_est", r.b_est},
              {"method", bounds_method_name(r.method)},
              {"probe_count", r.probe_count},
              {"seed", r.seed}};
}

}  // namespace whframe
