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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "whframe/gabor.hpp"
#include "whframe/walnut.hpp"

using namespace whframe;

namespace {

LatticeSpec lattice(const char* a, const char* b) {
  return {Rational::parse(a, "a"), Rational::parse(b, "b")};
}

struct Setup {
  GridSpec grid;
  GaborSystem sys;
  CorrelationTable table;
};

Setup setup(const char* window, const char* a, const char* b, int k_max,
            double delta = 1e-2, double span = 4) {
  GridSpec g = GridSpec::from_span(delta, -span, span);
  GaborSystem sys = GaborSystem::create(make_window(WindowSpec::parse(window), g), lattice(a, b));
  CorrelationTable t = build_table(sys.window, sys.lattice, k_max);
  return {g, sys, t};
}

double rel_diff(const GridSignal& x, const GridSignal& y) { return norm(x - y) / norm(y); }

}  // namespace

TEST_CASE("partial sum specs") {
  CHECK(PartialSumSpec::symmetric(2).indices() == std::vector<int>{-2, -1, 0, 1, 2});
  CHECK(PartialSumSpec::rectangular(2, 1).indices() == std::vector<int>{-1, 0, 1, 2});
  CHECK(PartialSumSpec::of_subset({3, -1}).indices() == std::vector<int>{-1, 3});
  CHECK(PartialSumSpec::of_subset({3, -1}).to_string() == "subset{3,-1}");
  CHECK_THROWS_AS(PartialSumSpec::of_subset({1, 2, 1}), Error);
  CHECK_THROWS_AS(PartialSumSpec::symmetric(-1), Error);
}

TEST_CASE("box system partial sums") {
  Setup s = setup("box:0,1", "1", "1", 4, 1e-3, 8);
  GridSignal f = random_probe(s.grid, {-2000, 3000}, 1);
  CHECK(max_abs_diff(walnut_partial_apply(s.table, f, PartialSumSpec::symmetric(0)), f) == 0.0);
  CHECK(norm(walnut_partial_apply(s.table, f, PartialSumSpec::of_subset({1, 2}))) == 0.0);
  CHECK(max_abs_diff(walnut_full_apply(s.table, f, 1e-12), f) == 0.0);
}

TEST_CASE("Walnut sum equals the frame operator") {
  for (const char* w : {"gaussian:1", "triangle:0,2"}) {
    const char* b = std::string(w) == "gaussian:1" ? "1/2" : "1";
    Setup s = setup(w, "1", b, 8);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      GridSignal f = random_probe(s.grid, {-300, 300}, seed);
      GridSignal direct = frame_operator_apply(s.sys, f);
      CHECK(rel_diff(walnut_partial_apply(s.table, f, PartialSumSpec::symmetric(8)), direct) <=
            1e-12);
      CHECK(rel_diff(walnut_full_apply(s.table, f, 1e-6), direct) <= 1e-12);
    }
  }
}

TEST_CASE("full apply needs a certificate") {
  Setup s = setup("gaussian:1", "1", "1/2", 0);
  GridSignal f = random_probe(s.grid, {-100, 100}, 1);
  try {
    walnut_full_apply(s.table, f, 1e-6);
    FAIL("no certificate error");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::kCertificate);
    CHECK(std::string(e.what()).find("k_max") != std::string::npos);
  }
  // k beyond the table but inside the window support is rejected too.
  CHECK_THROWS_AS(walnut_partial_apply(s.table, f, PartialSumSpec::symmetric(1)), Error);
  // Beyond the support limit G_k vanishes and the index is accepted.
  CHECK(norm(walnut_partial_apply(s.table, f, PartialSumSpec::of_subset({50}))) == 0.0);
}

TEST_CASE("adjoint") {
  Setup s = setup("gaussian:1", "1", "1/2", 4);
  GridSignal x = random_probe(s.grid, s.grid.indices(), 1);
  GridSignal y = random_probe(s.grid, s.grid.indices(), 2);
  for (auto spec : {PartialSumSpec::of_subset({-3, 1, 2}), PartialSumSpec::rectangular(3, 0)}) {
    Complex lhs = inner_product(walnut_partial_apply(s.table, x, spec), y);
    Complex rhs = inner_product(x, walnut_partial_adjoint(s.table, y, spec));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("identity right-hand side") {
  Setup box = setup("box:0,1", "1", "1", 4, 1e-3, 8);
  GridSignal chi = make_window(WindowSpec::box(0, 1), box.grid);
  IdentityRHS r = identity_rhs(box.table, chi, PartialSumSpec::symmetric(4));
  CHECK(r.f1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.f2 == 0.0);
  CHECK(r.total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(identity_rhs(box.table, GridSignal(box.grid), PartialSumSpec::symmetric(4)).total == 0.0);

  Setup g = setup("gaussian:1", "1", "1/2", 8);
  GridSignal f = make_window(WindowSpec::gaussian(2), g.grid);
  IdentityRHS rg = identity_rhs(g.table, f, PartialSumSpec::symmetric(8));
  double lhs = coefficient_energy(g.sys, f).value;
  CHECK(std::abs(rg.total - lhs) <= 1e-12 * lhs);
  CHECK(rg.pairing_residual <= 1e-14);
  CHECK(rg.imag_residual <= 1e-14);
  CHECK(std::abs(rg.f2 - rg.f2_two_sided) <= 1e-14);
  CHECK(rg.per_k_terms.size() == 17);
  CHECK(rg.tail_certificate == 0.0);
  std::ostringstream os;
  write_terms_csv(os, rg);
  CHECK(os.str().rfind("k,re_term,im_term\n-8,", 0) == 0);
}

TEST_CASE("partial norm estimates") {
  Setup box = setup("box:0,1", "1", "1", 3);
  CHECK(partial_norm_estimate(box.table, PartialSumSpec::symmetric(2), 20, 1) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(partial_norm_estimate(box.table, PartialSumSpec::of_subset({1, -2}), 20, 1) == 0.0);
  Setup box2 = setup("box:0,1*2", "1", "1", 3);
  for (int K = 0; K <= 3; ++K) {
    CHECK(partial_norm_estimate(box2.table, PartialSumSpec::symmetric(K), 20, 1) ==
          doctest::Approx(4.0).epsilon(1e-6));
  }
  Setup g = setup("gaussian:1", "1", "1/2", 8);
  FrameBoundsReport dense = frame_bounds_estimate(g.sys, 1, 1, {BoundsMethod::kDenseEigen, 0});
  double sup = 0.0;
  for (int K = 1; K <= 8; ++K) {
    double est = partial_norm_estimate(g.table, PartialSumSpec::symmetric(K), 200, 3);
    CHECK(est <= dense.b_est * (1 + 1e-10));
    sup = std::max(sup, est);
  }
  CHECK(sup >= 0.95 * dense.b_est);
}

TEST_CASE("polarization") {
  GridSpec grid = GridSpec::from_span(1e-2, -2, 2);
  LinearOperator id{[](const GridSignal& x) { return x; }, {}};
  GridSignal x = random_probe(grid, grid.indices(), 1);
  GridSignal y = random_probe(grid, grid.indices(), 2);
  CHECK(polarization_check(id, x, y) <= 1e-10 * norm(x) * norm(y));

  Setup g = setup("gaussian:1", "1", "1/2", 4);
  LinearOperator sk = partial_sum_operator(g.table, PartialSumSpec::symmetric(2));
  GridSignal u = random_probe(g.grid, g.grid.indices(), 3);
  GridSignal v = random_probe(g.grid, g.grid.indices(), 4);
  CHECK(polarization_check(sk, u, v) <= 1e-8 * norm(u) * norm(v));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  std::vector<double> diag(grid.size());
  for (double& d : diag) d = nd(rng);
  LinearOperator dop{[diag](const GridSignal& z) {
                       std::vector<Complex> out(z.size());
                       for (std::size_t i = 0; i < out.size(); ++i) out[i] = diag[i] * z.samples()[i];
                       return GridSignal(z.grid(), std::move(out));
                     },
                     {}};
  NormBoundCheck nb = norm_bound_check(dop, grid, 100, 50, 7);
  CHECK(nb.holds);
  CHECK(nb.probes == 104);
  double true_norm = 0.0;
  for (double d : diag) true_norm = std::max(true_norm, std::abs(d));
  CHECK(nb.op_norm_est <= true_norm * (1 + 1e-12));
}

TEST_CASE("periodized product and the per-n Plancherel step") {
  GridSpec g = GridSpec::from_span(1e-3, -8, 8);
  GridSignal box = make_window(WindowSpec::box(0, 1), g);
  BoundLattice unit = bind(lattice("1", "1"), g);
  PeriodicFunction h0 = periodized_product(box, box, unit, 0);
  CHECK(h0.period() == 1000);
  for (const Complex& v : h0.values()) CHECK(v == Complex(1.0, 0.0));
  for (const Complex& v : periodized_product(box, box, unit, 5).values()) CHECK(v == Complex{});

  Setup s = setup("gaussian:1", "1", "1/2", 2);
  GridSignal f = random_smooth(s.grid, -2, 2, 6);
  for (std::int64_t n : {-1, 0, 1}) {
    double lhs = 0.0;
    for (std::int64_t m = s.sys.m_range.lo; m <= s.sys.m_range.hi; ++m) {
      lhs += std::norm(coefficient(s.sys, f, m, n));
    }
    double rhs = 2.0 * period_norm_sq(periodized_product(f, s.sys.window, s.sys.lattice, n));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("convergence diagnostics: box") {
  Setup s = setup("box:0,1", "1", "1", 4);
  GridSignal f = random_probe(s.grid, {-100, 200}, 1);
  ConvergenceReport r = convergence_diagnostics(s.table, f, 4, 20, 42);
  for (const auto& e : r.symmetric) CHECK(e.distance == 0.0);
  CHECK(r.verdicts.symmetric_converges);
  CHECK(r.verdicts.rectangular_converges);
  CHECK(r.verdicts.unconditional_converges);
  CHECK(r.subsets.size() == 512 + 20 + 4 * 9);
  Json j = to_json(r);
  CHECK(j.contains("symmetric"));
  CHECK(j.contains("rectangular"));
  CHECK(j.contains("subsets"));
  CHECK(j.contains("verdicts"));
  CHECK(j["seed"] == 42);
}

TEST_CASE("convergence diagnostics: gaussian") {
  Setup s = setup("gaussian:1", "1", "1/2", 8, 1e-2, 8);
  GridSignal f = make_window(WindowSpec::gaussian(2), s.grid);
  ConvergenceReport r = convergence_diagnostics(s.table, f, 8, 50, 1);
  CHECK(r.symmetric.back().distance <= 1e-6 * r.f_norm);
  for (std::size_t K = 1; K < r.symmetric.size(); ++K) {
    CHECK(r.symmetric[K].distance <= r.symmetric[K - 1].distance);
  }
  CHECK(r.verdicts.symmetric_converges);
  CHECK(r.verdicts.unconditional_converges);
  ConvergenceReport again = convergence_diagnostics(s.table, f, 8, 50, 1);
  CHECK(dump_json(to_json(r)) == dump_json(to_json(again)));
  ConvergenceReport other = convergence_diagnostics(s.table, f, 8, 50, 2);
  CHECK(to_json(r)["subsets"] != to_json(other)["subsets"]);
}

TEST_CASE("boundedness sweep flags a cusp window") {
  GridSpec g = GridSpec::from_span(1e-3, -2, 2);
  BoundednessEvidence cusp =
      boundedness_sweep(WindowSpec::power_cusp(0.25, 0, 1), lattice("1", "1"), g, 3);
  CHECK(cusp.unbounded);
  CHECK(cusp.sweep.size() == 4);
  CHECK(cusp.sweep[1].second / cusp.sweep[0].second == doctest::Approx(std::sqrt(2.0)));
  BoundednessEvidence gauss =
      boundedness_sweep(WindowSpec::gaussian(1), lattice("1", "1/2"), g, 3);
  CHECK_FALSE(gauss.unbounded);

  GridSignal w = make_window(WindowSpec::power_cusp(0.25, 0, 1), g);
  CorrelationTable t = build_table(w, bind(lattice("1", "1"), g), 2);
  GridSignal f = make_window(WindowSpec::box(0, 1), g);
  DiagnosticsOptions opt;
  opt.boundedness = cusp;
  ConvergenceReport r = convergence_diagnostics(t, f, 2, 10, 1, opt);
  CHECK_FALSE(r.verdicts.symmetric_converges);
  CHECK_FALSE(r.verdicts.rectangular_converges);
  CHECK_FALSE(r.verdicts.unconditional_converges);
  CHECK(to_json(r)["verdicts"]["boundedness"]["unbounded"] == true);
}
