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

#include "whframe/walnut.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "parallel.hpp"

namespace whframe {

// --- PartialSumSpec ---------------------------------------------------------

PartialSumSpec PartialSumSpec::symmetric(int K) {
  if (K < 0) throw Error(Error::Code::kInvalidArgument, "K must be >= 0");
  PartialSumSpec s;
  s.mode = Mode::kSymmetric;
  s.K = K;
  s.L = K;
  return s;
}

PartialSumSpec PartialSumSpec::rectangular(int K, int L) {
  if (K < 0 || L < 0) throw Error(Error::Code::kInvalidArgument, "K and L must be >= 0");
  PartialSumSpec s;
  s.mode = Mode::kRectangular;
  s.K = K;
  s.L = L;
  return s;
}

PartialSumSpec PartialSumSpec::of_subset(std::vector<int> M) {
  std::set<int> seen;
  for (int k : M) {
    if (!seen.insert(k).second) {
      throw Error(Error::Code::kInvalidArgument,
                  "subset contains duplicate index " + std::to_string(k));
    }
  }
  PartialSumSpec s;
  s.mode = Mode::kSubset;
  s.subset = std::move(M);
  return s;
}

std::vector<int> PartialSumSpec::indices() const {
  std::vector<int> out;
  if (mode == Mode::kSubset) {
    out = subset;
    std::sort(out.begin(), out.end());
    return out;
  }
  for (int k = -L; k <= K; ++k) out.push_back(k);
  return out;
}

std::string PartialSumSpec::to_string() const {
  switch (mode) {
    case Mode::kSymmetric:
      return "symmetric(" + std::to_string(K) + ")";
    case Mode::kRectangular:
      return "rectangular(" + std::to_string(K) + "," + std::to_string(L) + ")";
    case Mode::kSubset: {
      std::string s = "subset{";
      for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(subset[i]);
      }
      return s + "}";
    }
  }
  return {};
}

Json to_json(const PartialSumSpec& spec) {
  switch (spec.mode) {
    case PartialSumSpec::Mode::kSymmetric:
      return Json{{"mode", "symmetric"}, {"K", spec.K}};
    case PartialSumSpec::Mode::kRectangular:
      return Json{{"mode", "rectangular"}, {"K", spec.K}, {"L", spec.L}};
    case PartialSumSpec::Mode::kSubset:
      return Json{{"mode", "subset"}, {"M", spec.subset}};
  }
  return {};
}

// --- partial sums -----------------------------------------------------------

namespace {

// G_k is identically zero beyond the support limit; anything else must be in
// the table.
bool check_k(const CorrelationTable& table, int k) {
  if (table.covers(k)) return true;
  if (std::abs(k) > table.support_k_limit) return false;
  throw Error(Error::Code::kOutOfRange,
              "k = " + std::to_string(k) + " is outside the correlation table (k_max = " +
                  std::to_string(table.k_max) + ")");
}

void require_table_grid(const CorrelationTable& table, const GridSignal& f) {
  if (!(table.lattice.grid == f.grid())) {
    throw Error(Error::Code::kGridMismatch, "signal grid differs from the table grid");
  }
}

// b^-1 (T_{k/b} f) G_k as a full-grid vector.
std::vector<Complex> term_vector(const CorrelationTable& table, const GridSignal& f, int k) {
  const GridSpec& grid = f.grid();
  std::vector<Complex> out(grid.size());
  if (!check_k(table, k)) return out;
  const std::int64_t lag = static_cast<std::int64_t>(k) * table.lattice.period_steps;
  const double binv = 1.0 / table.lattice.b();
  const PeriodicFunction& gk = table.G(k);
  IndexRange r = f.support().shifted(lag).intersect(grid.indices());
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    out[static_cast<std::size_t>(i - grid.i_min)] = binv * f.at(i - lag) * gk.at(i);
  }
  return out;
}

}  // namespace

GridSignal walnut_partial_apply(const CorrelationTable& table, const GridSignal& f,
                                const PartialSumSpec& spec) {
  require_table_grid(table, f);
  const GridSpec& grid = f.grid();
  std::vector<Complex> out(grid.size());
  for (int k : spec.indices()) {
    std::vector<Complex> t = term_vector(table, f, k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
  }
  return GridSignal(grid, std::move(out));
}

GridSignal walnut_partial_adjoint(const CorrelationTable& table, const GridSignal& h,
                                  const PartialSumSpec& spec) {
  require_table_grid(table, h);
  const GridSpec& grid = h.grid();
  const double binv = 1.0 / table.lattice.b();
  std::vector<Complex> out(grid.size());
  for (int k : spec.indices()) {
    if (!check_k(table, k)) continue;
    const std::int64_t lag = static_cast<std::int64_t>(k) * table.lattice.period_steps;
    const PeriodicFunction& gk = table.G(k);
    IndexRange r = h.support().shifted(-lag).intersect(grid.indices());
    for (std::int64_t j = r.lo; j <= r.hi; ++j) {
      out[static_cast<std::size_t>(j - grid.i_min)] +=
          binv * std::conj(gk.at(j + lag)) * h.at(j + lag);
    }
  }
  return GridSignal(grid, std::move(out));
}

GridSignal walnut_full_apply(const CorrelationTable& table, const GridSignal& f,
                             double tol) {
  double remainder = table.tail_bound / table.lattice.b();
  if (remainder > tol) {
    throw Error(Error::Code::kCertificate,
                "tail bound " + fmt17(remainder) + " exceeds tolerance " + fmt17(tol) +
                    " at k_max = " + std::to_string(table.k_max) + "; increase k_max");
  }
  return walnut_partial_apply(table, f, PartialSumSpec::symmetric(table.k_max));
}

// --- identity right-hand side ---------------------------------------------

IdentityRHS identity_rhs(const CorrelationTable& table, const GridSignal& f,
                         const PartialSumSpec& schedule) {
  require_table_grid(table, f);
  IdentityRHS rhs;
  rhs.schedule = schedule;
  const std::vector<int> ks = schedule.indices();
  const double binv = 1.0 / table.lattice.b();
  const double delta = f.grid().delta;
  rhs.per_k_terms.resize(ks.size());
  detail::parallel_for(ks.size(), [&](std::size_t idx) {
    const int k = ks[idx];
    Complex term{};
    if (check_k(table, k)) {
      const std::int64_t lag = static_cast<std::int64_t>(k) * table.lattice.period_steps;
      const PeriodicFunction& gk = table.G(k);
      IndexRange r = f.support().intersect(f.support().shifted(lag));
      KahanSum<Complex> acc;
      for (std::int64_t i = r.lo; i <= r.hi; ++i) {
        acc.add(f.at(i - lag) * gk.at(i) * std::conj(f.at(i)));
      }
      term = binv * delta * acc.value();
    }
    rhs.per_k_terms[idx] = {k, term};
  });

  KahanSum<Complex> all;
  KahanSum<double> f2, f2_two;
  for (const auto& [k, term] : rhs.per_k_terms) {
    all.add(term);
    if (k == 0) rhs.f1 = term.real();
    if (k >= 1) f2.add(2.0 * term.real());
    if (k != 0) f2_two.add(term.real());
  }
  for (const auto& [k, term] : rhs.per_k_terms) {
    if (k <= 0) continue;
    for (const auto& [j, other] : rhs.per_k_terms) {
      if (j == -k) {
        rhs.pairing_residual = std::max(rhs.pairing_residual, std::abs(term - std::conj(other)));
      }
    }
  }
  rhs.f2 = f2.value();
  rhs.f2_two_sided = f2_two.value();
  rhs.total = rhs.f1 + rhs.f2;
  rhs.imag_residual = std::abs(all.value().imag());

  std::set<int> in_schedule(ks.begin(), ks.end());
  KahanSum<double> missing;
  missing.add(table.tail_bound);
  for (int k = -table.k_max; k <= table.k_max; ++k) {
    if (in_schedule.count(k)) continue;
    double sup = 0.0;
    for (const Complex& v : table.G(k).values()) sup = std::max(sup, std::abs(v));
    missing.add(sup);
  }
  rhs.tail_certificate = missing.value() * binv * norm_sq(f);
  return rhs;
}

Json to_json(const IdentityRHS& rhs) {
  Json terms = Json::array();
  for (const auto& [k, t] : rhs.per_k_terms) {
    terms.push_back(Json{{"k", k}, {"re", t.real()}, {"im", t.imag()}});
  }
  return Json{{"f1", rhs.f1},
              {"f2", rhs.f2},
              {"f2_two_sided", rhs.f2_two_sided},
              {"total", rhs.total},
              {"imag_residual", rhs.imag_residual},
              {"pairing_residual", rhs.pairing_residual},
              {"tail_certificate", rhs.tail_certificate},
              {"schedule", to_json(rhs.schedule)},
              {"per_k_terms", terms}};
}

void write_terms_csv(std::ostream& os, const IdentityRHS& rhs) {
  os << "k,re_term,im_term\n";
  for (const auto& [k, t] : rhs.per_k_terms) {
    os << k << ',' << fmt17(t.real()) << ',' << fmt17(t.imag()) << '\n';
  }
}

// --- operator norms and polarization ---------------------------------------

LinearOperator partial_sum_operator(const CorrelationTable& table,
                                    const PartialSumSpec& spec) {
  LinearOperator op;
  op.apply = [table, spec](const GridSignal& x) {
    return walnut_partial_apply(table, x, spec);
  };
  op.adjoint = [table, spec](const GridSignal& x) {
    return walnut_partial_adjoint(table, x, spec);
  };
  return op;
}

double operator_norm_estimate(const LinearOperator& op, const GridSpec& grid, int iters,
                              std::uint64_t seed, GridSignal* top_vector) {
  if (iters < 1) throw Error(Error::Code::kInvalidArgument, "iters must be >= 1");
  GridSignal x = random_probe(grid, grid.indices(), seed);
  x = Complex(1.0 / norm(x)) * x;
  double best = 0.0;
  if (top_vector) *top_vector = x;
  for (int it = 0; it < iters; ++it) {
    GridSignal y = op.apply(x);
    double est = norm(y);
    if (est > best) {
      best = est;
      if (top_vector) *top_vector = x;
    }
    GridSignal z = op.adjoint ? op.adjoint(y) : op.apply(y);
    double nz = norm(z);
    if (nz == 0.0) break;
    x = Complex(1.0 / nz) * z;
  }
  return best;
}

double partial_norm_estimate(const CorrelationTable& table, const PartialSumSpec& spec,
                             int iters, std::uint64_t seed) {
  return operator_norm_estimate(partial_sum_operator(table, spec), table.lattice.grid, iters,
                                seed);
}

double polarization_check(const LinearOperator& op, const GridSignal& x,
                          const GridSignal& y) {
  require_same_grid(x, y);
  const Complex i1(0.0, 1.0);
  auto q = [&](const GridSignal& z) { return inner_product(op.apply(z), z); };
  Complex combo = q(x + y) - q(x - y) + i1 * q(x + i1 * y) - i1 * q(x - i1 * y);
  return std::abs(4.0 * inner_product(op.apply(x), y) - combo);
}

NormBoundCheck norm_bound_check(const LinearOperator& op, const GridSpec& grid,
                                int random_probes, int iters, std::uint64_t seed) {
  NormBoundCheck r;
  GridSignal v(grid);
  r.op_norm_est = operator_norm_estimate(op, grid, iters, seed, &v);
  std::vector<GridSignal> probes;
  for (int p = 0; p < random_probes; ++p) {
    probes.push_back(random_probe(grid, grid.indices(), seed + 1 + static_cast<std::uint64_t>(p)));
  }
  GridSignal tv = op.apply(v);
  if (norm(tv) > 0.0) {
    GridSignal u = Complex(1.0 / norm(tv)) * tv;
    const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const Complex& ph : phases) probes.push_back(v + ph * u);
  }
  for (const GridSignal& z : probes) {
    double nz = norm_sq(z);
    if (nz == 0.0) continue;
    r.max_quadratic = std::max(r.max_quadratic, std::abs(inner_product(op.apply(z), z)) / nz);
    ++r.probes;
  }
  r.holds = r.op_norm_est <= 2.0 * r.max_quadratic * (1.0 + 1e-12);
  return r;
}

// --- periodization ---------------------------------------------------------

PeriodicFunction periodized_product(const GridSignal& f, const GridSignal& g,
                                    const BoundLattice& lattice, std::int64_t n) {
  require_same_grid(f, g);
  if (!(lattice.grid == f.grid())) {
    throw Error(Error::Code::kGridMismatch, "lattice is bound to a different grid");
  }
  const std::int64_t P = lattice.period_steps;
  const std::int64_t shift = n * lattice.shift_steps;
  std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(P));
  IndexRange r = f.support().intersect(g.support().shifted(shift));
  for (std::int64_t i = r.lo; i <= r.hi; ++i) {
    std::int64_t j = ((i % P) + P) % P;
    acc[static_cast<std::size_t>(j)].add(f.at(i) * std::conj(g.at(i - shift)));
  }
  std::vector<Complex> values(static_cast<std::size_t>(P));
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = acc[j].value();
  return PeriodicFunction(P, f.grid().delta, std::move(values));
}

double period_norm_sq(const PeriodicFunction& h) {
  KahanSum<double> acc;
  for (const Complex& v : h.values()) acc.add(std::norm(v));
  return h.delta() * acc.value();
}

// --- convergence diagnostics -----------------------------------------------

BoundednessEvidence boundedness_sweep(const WindowSpec& window, const LatticeSpec& lattice,
                                      const GridSpec& grid, int levels) {
  BoundednessEvidence ev;
  for (int l = 0; l <= levels; ++l) {
    const std::int64_t scale = std::int64_t{1} << l;
    GridSpec g{grid.delta / static_cast<double>(scale), grid.i_min * scale,
               grid.i_max * scale, grid.oversample};
    GridSignal w = make_window(window, g, WindowOptions{false});
    CorrelationTable t = build_table(w, bind(lattice, g), 0);
    double sup = 0.0;
    for (const Complex& v : t.G(0).values()) sup = std::max(sup, v.real());
    ev.sweep.emplace_back(g.delta, sup);
  }
  ev.unbounded = ev.sweep.size() >= 2;
  for (std::size_t i = 1; i < ev.sweep.size(); ++i) {
    if (!(ev.sweep[i].second >= 1.1 * ev.sweep[i - 1].second)) ev.unbounded = false;
  }
  return ev;
}

namespace {

double distance(const std::vector<Complex>& x, const std::vector<Complex>& y, double delta) {
  KahanSum<double> acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc.add(std::norm(x[i] - y[i]));
  return std::sqrt(delta * acc.value());
}

double vec_norm(const std::vector<Complex>& x, double delta) {
  KahanSum<double> acc;
  for (const Complex& v : x) acc.add(std::norm(v));
  return std::sqrt(delta * acc.value());
}

int core_of(const std::vector<int>& sorted_subset) {
  std::set<int> s(sorted_subset.begin(), sorted_subset.end());
  int K = -1;
  while (s.count(K + 1) && s.count(-(K + 1))) ++K;
  return K;
}

}  // namespace

ConvergenceReport convergence_diagnostics(const CorrelationTable& table, const GridSignal& f,
                                          int max_k, int subset_trials, std::uint64_t seed,
                                          DiagnosticsOptions options) {
  require_table_grid(table, f);
  if (max_k < 0 || max_k > table.k_max) {
    throw Error(Error::Code::kOutOfRange, "max_k must lie in [0, table k_max]");
  }
  if (subset_trials < 0) throw Error(Error::Code::kInvalidArgument, "subset_trials must be >= 0");
  ConvergenceReport rep;
  rep.seed = seed;
  rep.boundedness = options.boundedness;
  const double delta = f.grid().delta;
  const std::size_t N = f.grid().size();
  const int kf = table.k_max;

  std::vector<std::vector<Complex>> terms(static_cast<std::size_t>(2 * kf + 1));
  detail::parallel_for(terms.size(), [&](std::size_t idx) {
    terms[idx] = term_vector(table, f, static_cast<int>(idx) - kf);
  });
  auto sum_of = [&](const std::vector<int>& sorted) {
    std::vector<Complex> out(N);
    for (int k : sorted) {
      const auto& t = terms[static_cast<std::size_t>(k + kf)];
      for (std::size_t i = 0; i < N; ++i) out[i] += t[i];
    }
    return out;
  };
  auto qform = [&](const std::vector<Complex>& s) {
    KahanSum<Complex> acc;
    for (std::size_t i = 0; i < N; ++i) {
      acc.add(s[i] * std::conj(f.samples()[i]));
    }
    return delta * acc.value().real();
  };

  const std::vector<Complex> full = sum_of(PartialSumSpec::symmetric(kf).indices());
  rep.f_norm = norm(f);
  rep.full_norm = vec_norm(full, delta);
  rep.full_remainder = table.tail_bound / table.lattice.b() * rep.f_norm;

  std::vector<double> tau(static_cast<std::size_t>(max_k + 1));
  for (int K = 0; K <= max_k; ++K) {
    PartialSumSpec spec = PartialSumSpec::symmetric(K);
    std::vector<Complex> s = sum_of(spec.indices());
    TraceEntry e{spec, qform(s), distance(s, full, delta), std::nullopt};
    if (options.norm_iterations > 0) {
      e.op_norm_est = partial_norm_estimate(table, spec, options.norm_iterations, seed);
      rep.sup_partial_norm = std::max(rep.sup_partial_norm.value_or(0.0), *e.op_norm_est);
    }
    tau[static_cast<std::size_t>(K)] = e.distance;
    rep.symmetric.push_back(std::move(e));
  }
  for (int K = 0; K <= max_k; ++K) {
    for (int L = 0; L <= max_k; ++L) {
      PartialSumSpec spec = PartialSumSpec::rectangular(K, L);
      std::vector<Complex> s = sum_of(spec.indices());
      rep.rectangular.push_back({spec, qform(s), distance(s, full, delta), std::nullopt});
    }
  }

  const double floor = 1e-12 * rep.f_norm;
  auto add_subset = [&](std::string kind, std::vector<int> m) {
    std::sort(m.begin(), m.end());
    SubsetEntry e;
    e.kind = std::move(kind);
    e.core = core_of(m);
    std::vector<Complex> s = sum_of(m);
    e.deviation = distance(s, full, delta);
    e.norm = vec_norm(s, delta);
    e.threshold = 10.0 * (e.core < 0 ? rep.full_norm : tau[static_cast<std::size_t>(e.core)]) +
                  floor;
    e.ok = e.deviation <= e.threshold;
    e.subset = std::move(m);
    rep.max_subset_norm = std::max(rep.max_subset_norm, e.norm);
    rep.subsets.push_back(std::move(e));
  };
  const int small = std::min(4, max_k);
  const int width = 2 * small + 1;
  for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
    std::vector<int> m;
    for (int b = 0; b < width; ++b) {
      if (mask & (1u << b)) m.push_back(b - small);
    }
    add_subset("exhaustive", std::move(m));
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> core_pick(-1, max_k);
  for (int trial = 0; trial < subset_trials; ++trial) {
    int c = core_pick(rng);
    std::vector<int> m;
    for (int k = -max_k; k <= max_k; ++k) {
      if (std::abs(k) <= c || coin(rng)) m.push_back(k);
    }
    add_subset("random", std::move(m));
  }
  std::vector<int> order(static_cast<std::size_t>(2 * max_k + 1));
  std::iota(order.begin(), order.end(), -max_k);
  for (int p = 0; p < options.permutations; ++p) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t len = 1; len <= order.size(); ++len) {
      add_subset("prefix", std::vector<int>(order.begin(), order.begin() + static_cast<long>(len)));
    }
  }

  ConvergenceVerdicts& v = rep.verdicts;
  const int k0 = (max_k + 1) / 2;
  const double sym_slack = 1e-14 * rep.f_norm;
  const double limit = 1e-5 * rep.f_norm;
  bool monotone = true;
  for (int K = k0 + 1; K <= max_k; ++K) {
    if (tau[static_cast<std::size_t>(K)] > tau[static_cast<std::size_t>(K - 1)] + sym_slack) {
      monotone = false;
    }
  }
  v.symmetric_converges = monotone && tau.back() <= limit;
  double shell = 0.0;
  for (const TraceEntry& e : rep.rectangular) {
    if (std::min(e.spec.K, e.spec.L) >= k0) shell = std::max(shell, e.distance);
  }
  v.rectangular_converges = shell <= limit;
  v.unconditional_converges =
      std::all_of(rep.subsets.begin(), rep.subsets.end(), [](const SubsetEntry& e) { return e.ok; });
  v.symmetric_rule = "distance non-increasing for K >= " + std::to_string(k0) +
                     " and final distance <= 1e-5 ||f||";
  v.rectangular_rule = "max distance over min(K,L) >= " + std::to_string(k0) +
                       " is <= 1e-5 ||f||";
  v.unconditional_rule =
      "every tested subset deviates by <= 10x the symmetric tail at its core + 1e-12 ||f||";
  if (rep.boundedness && rep.boundedness->unbounded) {
    v.symmetric_converges = v.rectangular_converges = v.unconditional_converges = false;
    const std::string why = "; overridden: g0_sup grows under grid refinement";
    v.symmetric_rule += why;
    v.rectangular_rule += why;
    v.unconditional_rule += why;
  }
  return rep;
}

namespace {

Json trace_json(const TraceEntry& e) {
  Json j{{"spec", to_json(e.spec)},
         {"quadratic_form", e.quadratic_form},
         {"distance", e.distance}};
  j["op_norm_est"] = e.op_norm_est ? Json(*e.op_norm_est) : Json(nullptr);
  return j;
}

}  // namespace

Json to_json(const ConvergenceReport& r) {
  Json sym = Json::array(), rect = Json::array(), subs = Json::array();
  for (const auto& e : r.symmetric) sym.push_back(trace_json(e));
  for (const auto& e : r.rectangular) rect.push_back(trace_json(e));
  for (const auto& e : r.subsets) {
    subs.push_back(Json{{"kind", e.kind},
                        {"M", e.subset},
                        {"core", e.core},
                        {"deviation", e.deviation},
                        {"threshold", e.threshold},
                        {"norm", e.norm},
                        {"ok", e.ok}});
  }
  Json verdicts{{"symmetric_converges", r.verdicts.symmetric_converges},
                {"rectangular_converges", r.verdicts.rectangular_converges},
                {"unconditional_converges", r.verdicts.unconditional_converges},
                {"rules",
                 Json{{"symmetric", r.verdicts.symmetric_rule},
                      {"rectangular", r.verdicts.rectangular_rule},
                      {"unconditional", r.verdicts.unconditional_rule}}},
                {"f_norm", r.f_norm},
                {"full_norm", r.full_norm},
                {"full_remainder", r.full_remainder},
                {"max_subset_norm", r.max_subset_norm}};
  verdicts["sup_partial_norm"] =
      r.sup_partial_norm ? Json(*r.sup_partial_norm) : Json(nullptr);
  if (r.boundedness) {
    Json sweep = Json::array();
    for (const auto& [d, s] : r.boundedness->sweep) {
      sweep.push_back(Json{{"delta", d}, {"g0_sup", s}});
    }
    verdicts["boundedness"] = Json{{"sweep", sweep}, {"unbounded", r.boundedness->unbounded}};
  }
  return Json{{"symmetric", sym},
              {"rectangular", rect},
              {"subsets", subs},
              {"verdicts", verdicts},
              {"seed", r.seed}};
}

void write_trace_csv(std::ostream& os, const ConvergenceReport& r) {
  os << "K,L,distance,quadratic_form\n";
  for (const auto* list : {&r.symmetric, &r.rectangular}) {
    for (const auto& e : *list) {
      os << e.spec.K << ',' << e.spec.L << ',' << fmt17(e.distance) << ','
         << fmt17(e.quadratic_form) << '\n';
    }
  }
}

}  // namespace whframe
