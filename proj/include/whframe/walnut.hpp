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

#ifndef WHFRAME_WALNUT_HPP_
#define WHFRAME_WALNUT_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whframe/correlation.hpp"
#include "whframe/grid.hpp"
#include "whframe/report_io.hpp"

namespace whframe {

/// Which finite k-set a Walnut partial sum uses.
///   symmetric(K)       -K..K
///   rectangular(K, L)  -L..K
///   subset(M)          explicit set, duplicates rejected
struct PartialSumSpec {
  enum class Mode { kSymmetric, kRectangular, kSubset };

  Mode mode = Mode::kSymmetric;
  int K = 0;
  int L = 0;
  std::vector<int> subset;

  static PartialSumSpec symmetric(int K);
  static PartialSumSpec rectangular(int K, int L);
  static PartialSumSpec of_subset(std::vector<int> M);

  /// The k-set in ascending order.
  std::vector<int> indices() const;
  std::string to_string() const;
};

Json to_json(const PartialSumSpec& spec);

/// S_M f = b^-1 sum_{k in M} (T_{k/b} f) G_k, G_k extended a-periodically.
/// Terms are added per sample in ascending k. Indices outside the table are
/// accepted only where G_k vanishes identically (|k| > support_k_limit).
GridSignal walnut_partial_apply(const CorrelationTable& table, const GridSignal& f,
                                const PartialSumSpec& spec);

/// Adjoint of walnut_partial_apply: h -> b^-1 sum_k T_{-k/b}(conj(G_k) h).
GridSignal walnut_partial_adjoint(const CorrelationTable& table, const GridSignal& h,
                                  const PartialSumSpec& spec);

/// symmetric(k_max) with certified remainder tail_bound / b <= tol (relative
/// to ||f||). Throws kCertificate asking for a larger k_max otherwise.
GridSignal walnut_full_apply(const CorrelationTable& table, const GridSignal& f,
                             double tol);

struct IdentityRHS {
  double f1 = 0.0;
  double f2 = 0.0;              // sum_{k >= 1} 2 Re term_k
  double f2_two_sided = 0.0;    // Re sum_{k != 0} term_k
  double total = 0.0;           // f1 + f2
  double imag_residual = 0.0;   // |Im sum_k term_k|
  double pairing_residual = 0.0;  // max_k |term_k - conj(term_-k)|
  /// Bound on the contribution of the k outside the schedule.
  double tail_certificate = 0.0;
  std::vector<std::pair<int, Complex>> per_k_terms;  // schedule order
  PartialSumSpec schedule;
};

/// term_k = b^-1 <(T_{k/b} f) G_k, f> for each k of the schedule.
IdentityRHS identity_rhs(const CorrelationTable& table, const GridSignal& f,
                         const PartialSumSpec& schedule);

Json to_json(const IdentityRHS& rhs);

/// CSV `k,re_term,im_term`.
void write_terms_csv(std::ostream& os, const IdentityRHS& rhs);

/// A linear map on the grid space. An empty adjoint marks a self-adjoint map.
struct LinearOperator {
  std::function<GridSignal(const GridSignal&)> apply;
  std::function<GridSignal(const GridSignal&)> adjoint;
};

LinearOperator partial_sum_operator(const CorrelationTable& table,
                                    const PartialSumSpec& spec);

/// Power-iteration estimate of ||S_M|| from S_M* S_M; never exceeds the true
/// norm. Deterministic for a fixed seed.
double partial_norm_estimate(const CorrelationTable& table, const PartialSumSpec& spec,
                             int iters, std::uint64_t seed);

/// Same estimate for any operator on `grid`.
double operator_norm_estimate(const LinearOperator& op, const GridSpec& grid, int iters,
                              std::uint64_t seed, GridSignal* top_vector = nullptr);

/// |4<Tx, y> - (Q(x+y) - Q(x-y) + i Q(x+iy) - i Q(x-iy))| with Q(z) = <Tz, z>.
double polarization_check(const LinearOperator& op, const GridSignal& x,
                          const GridSignal& y);

struct NormBoundCheck {
  double op_norm_est = 0.0;
  double max_quadratic = 0.0;  // max |<Tf, f>| / ||f||^2 over the probes
  int probes = 0;
  bool holds = false;          // op_norm_est <= 2 max_quadratic
};

/// Probes are `random_probes` seeded vectors plus the four unit vectors
/// (v + i^j u)/||v + i^j u||, v the power-iteration vector and u = Tv/||Tv||.
NormBoundCheck norm_bound_check(const LinearOperator& op, const GridSpec& grid,
                                int random_probes, int iters, std::uint64_t seed);

/// H_n(t) = sum_k f(t - k/b) conj(g(t - na - k/b)) on one period [0, 1/b).
PeriodicFunction periodized_product(const GridSignal& f, const GridSignal& g,
                                    const BoundLattice& lattice, std::int64_t n);

/// delta * sum over one period of |h|^2.
double period_norm_sq(const PeriodicFunction& h);

struct TraceEntry {
  PartialSumSpec spec;
  double quadratic_form = 0.0;     // <S_M f, f>
  double distance = 0.0;           // ||S_M f - S_full f||
  std::optional<double> op_norm_est;
};

struct SubsetEntry {
  std::string kind;  // exhaustive, random, prefix
  std::vector<int> subset;
  int core = -1;     // largest K with [-K, K] inside the subset, -1 if none
  double deviation = 0.0;
  double threshold = 0.0;
  double norm = 0.0;  // ||S_M f||
  bool ok = false;
};

/// g0_sup under grid halving. Unbounded when every halving multiplies it by
/// at least 1.1.
struct BoundednessEvidence {
  std::vector<std::pair<double, double>> sweep;  // (delta, g0_sup)
  bool unbounded = false;
};

BoundednessEvidence boundedness_sweep(const WindowSpec& window, const LatticeSpec& lattice,
                                      const GridSpec& grid, int levels);

struct ConvergenceVerdicts {
  bool symmetric_converges = false;
  bool rectangular_converges = false;
  bool unconditional_converges = false;
  std::string symmetric_rule;
  std::string rectangular_rule;
  std::string unconditional_rule;
};

struct ConvergenceReport {
  std::vector<TraceEntry> symmetric;    // K = 0..max_k
  std::vector<TraceEntry> rectangular;  // (K, L) in 0..max_k, L fastest
  std::vector<SubsetEntry> subsets;
  double f_norm = 0.0;
  double full_norm = 0.0;            // ||S_full f||
  double full_remainder = 0.0;       // tail_bound / b * ||f||
  double max_subset_norm = 0.0;
  std::optional<double> sup_partial_norm;  // max_K ||S_K|| estimate
  std::optional<BoundednessEvidence> boundedness;
  ConvergenceVerdicts verdicts;
  std::uint64_t seed = 0;
};

struct DiagnosticsOptions {
  /// Power iterations for the op-norm column of the symmetric trace; 0 skips.
  int norm_iterations = 40;
  /// Permutations whose prefixes are tested as enumeration orders.
  int permutations = 4;
  std::optional<BoundednessEvidence> boundedness;
};

/// Symmetric and rectangular distance traces, subset sums, and verdicts.
/// S_full is symmetric(table.k_max).
///   symmetric:     non-increasing for K >= ceil(max_k / 2) and final
///                  distance <= 1e-5 ||f||
///   rectangular:   outer shell min(K, L) >= ceil(max_k / 2) within 1e-5 ||f||
///   unconditional: every subset M deviates from S_full f by at most
///                  10 ||S_K f - S_full f|| + 1e-12 ||f||, K the core of M
/// All flags are false when the boundedness evidence says G0 is unbounded.
ConvergenceReport convergence_diagnostics(const CorrelationTable& table, const GridSignal& f,
                                          int max_k, int subset_trials, std::uint64_t seed,
                                          DiagnosticsOptions options = {});

Json to_json(const ConvergenceReport& report);

/// CSV `K,L,distance,quadratic_form` over both traces (symmetric rows have K = L).
void write_trace_csv(std::ostream& os, const ConvergenceReport& report);

}  // namespace whframe

#endif  // WHFRAME_WALNUT_HPP_
