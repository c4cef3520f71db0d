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

#ifndef WHFRAME_GABOR_HPP_
#define WHFRAME_GABOR_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "whframe/correlation.hpp"
#include "whframe/grid.hpp"
#include "whframe/report_io.hpp"

namespace whframe {

/// The system (E_mb T_na g) truncated to m_range x n_range.
///
/// On a grid with 1/(b delta) = P steps, e^{2 pi i m b t_i} depends on m only
/// through m mod P, so a band of P consecutive m is the complete (alias-free)
/// system. The default n_range holds every n whose translate T_na g meets the
/// grid, so the discretized system is finite and exact.
struct GaborSystem {
  GridSignal window;
  BoundLattice lattice;
  IndexRange m_range;
  IndexRange n_range;

  static GaborSystem create(const GridSignal& window, const LatticeSpec& lattice);

  /// Same system with narrower ranges; both must lie inside the full ones.
  GaborSystem restricted(IndexRange m, IndexRange n) const;

  /// The full alias-free band: P consecutive m centred on 0, |m b| <= 1/(2 delta).
  IndexRange full_m_range() const;
  IndexRange full_n_range() const;
};

struct CoefficientGrid {
  IndexRange m_range;
  IndexRange n_range;
  std::vector<Complex> values;  // row-major in n, then m

  Complex at(std::int64_t m, std::int64_t n) const {
    return values[static_cast<std::size_t>((n - n_range.lo) * m_range.size() +
                                           (m - m_range.lo))];
  }
  double energy() const;
};

/// <f, E_mb T_na g>, evaluated literally as an inner product with the
/// translated and modulated window.
Complex coefficient(const GaborSystem& sys, const GridSignal& f, std::int64_t m,
                    std::int64_t n);

/// All coefficients. For each n the product f conj(T_na g) is folded modulo P
/// and transformed by a direct length-P sum with exact integer twiddles.
CoefficientGrid analysis(const GaborSystem& sys, const GridSignal& f);

/// sum c_mn E_mb T_na g, restricted to the grid.
GridSignal synthesis(const GaborSystem& sys, const CoefficientGrid& c);

struct EnergyResult {
  double value = 0.0;
  /// Bound on the energy outside m_range x n_range; zero for the full system.
  double tail_certificate = 0.0;
};

EnergyResult coefficient_energy(const GaborSystem& sys, const GridSignal& f);

/// S f = sum <f, E_mb T_na g> E_mb T_na g (analysis followed by synthesis).
GridSignal frame_operator_apply(const GaborSystem& sys, const GridSignal& f);

enum class BoundsMethod { kRayleighExtremes, kDenseEigen };

struct FrameBoundsReport {
  double a_est = 0.0;
  double b_est = 0.0;
  int probe_count = 0;
  BoundsMethod method = BoundsMethod::kRayleighExtremes;
  std::uint64_t seed = 0;
};

struct BoundsOptions {
  BoundsMethod method = BoundsMethod::kRayleighExtremes;
  int power_iterations = 200;
  /// Rayleigh mode only: apply S as b^-1 sum_k (T_{k/b} f) G_k over the full
  /// correlation table instead of analysis followed by synthesis. The two
  /// agree on the grid; this one costs O(N k) per application.
  bool walnut_route = true;
};

/// Rayleigh extremes are inner estimates: A_true <= a_est and b_est <= B_true.
/// Dense mode materializes S (grid size capped at 4096) and is exact for the
/// discretized operator.
FrameBoundsReport frame_bounds_estimate(const GaborSystem& sys, int probes,
                                        std::uint64_t seed,
                                        BoundsOptions options = {});

struct CgOptions {
  int max_iterations = 500;
  /// Initial guess f / upper_bound; when absent the Rayleigh quotient of f is used.
  std::optional<double> upper_bound;
};

/// Solves S h = f by conjugate gradients to ||S h - f|| <= tol ||f||.
/// Throws kNotConverged (message carries the residual) at the iteration cap.
GridSignal inverse_frame_apply(const GaborSystem& sys, const GridSignal& f,
                               double tol, CgOptions options = {});

/// CSV `m,n,re,im`.
void write_coefficients_csv(std::ostream& os, const CoefficientGrid& c);

std::string_view bounds_method_name(BoundsMethod m);
Json to_json(const FrameBoundsReport& r);

}  // namespace whframe

#endif  // WHFRAME_GABOR_HPP_
