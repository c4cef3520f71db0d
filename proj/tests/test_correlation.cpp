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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "whframe/correlation.hpp"

using namespace whframe;

namespace {

LatticeSpec lattice(const char* a, const char* b) {
  return {Rational::parse(a, "a"), Rational::parse(b, "b")};
}

double gauss(double t) { return std::exp(-std::numbers::pi * t * t); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(Rational::parse("1/2", "b") == Rational{1, 2});
  CHECK(Rational::parse("2/4", "b") == Rational{1, 2});
  CHECK(Rational::parse("0.5", "b") == Rational{1, 2});
  CHECK(Rational::parse("3", "a") == Rational{3, 1});
  CHECK(Rational::parse("-1/4", "a") == Rational{-1, 4});
  CHECK(Rational::parse("0.001", "delta", false) == Rational{1, 1000});
  try {
    Rational::parse("0.3333", "b");
    FAIL("accepted a non-dyadic decimal");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::kConfig);
    CHECK(std::string(e.what()) == "b must be a rational p/q");
  }
  CHECK_THROWS_AS(Rational::parse("1/x", "a"), Error);
  CHECK_THROWS_AS(Rational::parse("", "a"), Error);
}

TEST_CASE("lattice binding") {
  GridSpec g = GridSpec::from_span(1e-3, -1, 1);
  BoundLattice bl = bind(lattice("1", "1/2"), g);
  CHECK(bl.shift_steps == 1000);
  CHECK(bl.period_steps == 2000);
  try {
    bind(lattice("1/3", "1"), g);
    FAIL("bound an incompatible lattice");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::kNotGridMultiple);
  }
  CHECK(compatible_delta(lattice("1/3", "1/2"), 2) == doctest::Approx(1.0 / 6.0));
  CHECK(compatible_delta(lattice("1", "2/3"), 1) == doctest::Approx(0.5));
}

TEST_CASE("box window: G0 = 1 and G_k = 0") {
  GridSpec g = GridSpec::from_span(1e-3, -8, 8);
  GridSignal box = make_window(WindowSpec::box(0, 1), g);
  CorrelationTable t = build_table(box, bind(lattice("1", "1"), g), 4);
  for (const Complex& v : t.G(0).values()) CHECK(v == Complex(1.0, 0.0));
  for (int k = 1; k <= 4; ++k) {
    for (const Complex& v : t.G(k).values()) CHECK(v == Complex{});
    for (const Complex& v : t.G(-k).values()) CHECK(v == Complex{});
  }
  CHECK(t.tail_bound == 0.0);
  CHECK(t.support_k_limit == 0);
}

TEST_CASE("gaussian G_k against the lattice sum written out") {
  GridSpec g = GridSpec::from_span(1e-3, -8, 8);
  GridSignal w = make_window(WindowSpec::gaussian(1), g);
  BoundLattice bl = bind(lattice("1", "1/2"), g);
  CorrelationTable t = build_table(w, bl, 2);
  double err = 0.0;
  for (int k = -2; k <= 2; ++k) {
    for (std::int64_t j = 0; j < 1000; ++j) {
      double tj = static_cast<double>(j) * 1e-3;
      double want = 0.0;
      for (int n = -30; n <= 30; ++n) {
        double x = tj - n, y = tj - n - 2.0 * k;
        if (std::abs(x) <= 8.0 && std::abs(y) <= 8.0) want += gauss(x) * gauss(y);
      }
      err = std::max(err, std::abs(t.G(k).at(j) - want));
    }
  }
  CHECK(err <= 1e-12);
  // a-periodic extension by index wrap.
  CHECK(t.G(1).at(-1) == t.G(1).at(999));
  CHECK(t.G(1).at(1000) == t.G(1).at(0));
}

TEST_CASE("G_{-k}(t) = conj(G_k(t + k/b)) with a and 1/b incommensurate") {
  // a = 1, 1/b = 4/3: neither k/b nor 2k/b is a multiple of a for k = 1, 2.
  GridSpec g = GridSpec::from_span(1.0 / 300.0, -6, 6);
  GridSignal w = modulate(make_window(WindowSpec::gaussian(1.2), g), 0.3);
  BoundLattice bl = bind(lattice("1", "3/4"), g);
  CorrelationTable t = build_table(w, bl, 3);
  double plus = 0.0, minus = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const std::int64_t shift = k * bl.period_steps;
    for (std::int64_t j = 0; j < bl.shift_steps; ++j) {
      plus = std::max(plus, std::abs(t.G(-k).at(j) - std::conj(t.G(k).at(j + shift))));
      minus = std::max(minus, std::abs(t.G(-k).at(j) - std::conj(t.G(k).at(j - shift))));
    }
  }
  CHECK(plus <= 1e-14);
  CHECK(minus > 1e-3);  // the t - k/b form does not hold here
}

TEST_CASE("tail bound dominates the dropped G_k") {
  GridSpec g = GridSpec::from_span(1e-2, -8, 8);
  GridSignal w = make_window(WindowSpec::gaussian(2), g);
  BoundLattice bl = bind(lattice("1", "1/2"), g);
  CorrelationTable full = build_table(w, bl, 8);
  CHECK(full.support_k_limit == 8);
  CHECK(full.tail_bound == 0.0);
  for (int k_max = 0; k_max <= 4; ++k_max) {
    CorrelationTable t = build_table(w, bl, k_max);
    double dropped = 0.0;
    for (int k = k_max + 1; k <= 8; ++k) {
      for (int s : {-1, 1}) {
        double sup = 0.0;
        for (const Complex& v : full.G(s * k).values()) sup = std::max(sup, std::abs(v));
        dropped += sup;
      }
    }
    CHECK(t.tail_bound >= dropped);
  }
}

TEST_CASE("amalgam norm") {
  GridSpec g = GridSpec::from_span(1e-3, -8, 8);
  GridSignal w = make_window(WindowSpec::gaussian(1), g);
  // Block [n, n+1) peaks at t = n for n >= 0 and at the last grid point
  // n + 1 - delta for n < 0.
  double want = 0.0;
  for (int n = 0; n < 8; ++n) want += gauss(n) + gauss(n + 1e-3);
  CHECK(amalgam_norm(w, 1.0) == doctest::Approx(want).epsilon(1e-13));
  double continuum = 0.0;
  for (int n = 0; n < 10; ++n) continuum += 2.0 * gauss(n);
  CHECK(continuum == doctest::Approx(2.0864348).epsilon(1e-7));
  // The left blocks miss their peak by one grid step: an O(delta) deficit.
  CHECK(std::abs(amalgam_norm(w, 1.0) - continuum) < 1e-3);
  GridSignal box = make_window(WindowSpec::box(0, 1), g);
  CHECK(amalgam_norm(box, 1.0) == 1.0);
  CHECK(amalgam_norm(box, 0.5) == 2.0);
}

TEST_CASE("cc report") {
  GridSpec g = GridSpec::from_span(1e-3, -8, 8);
  BoundLattice unit = bind(lattice("1", "1"), g);
  CCReport box = cc_report(build_table(make_window(WindowSpec::box(0, 1), g), unit, 4));
  CHECK(box.cc_sup == 1.0);
  CHECK(box.g0_inf == 1.0);
  REQUIRE(box.epsilon);
  CHECK(*box.epsilon == 1.0);

  // Triangle on [0, 2]: G0 = t^2 + (1-t)^2, G_{+-1} = t(1-t) on [0, 1), so the
  // CC sum is identically 1 and the margin closes at t = 1/2.
  CCReport tri = cc_report(build_table(make_window(WindowSpec::triangle(0, 2), g), unit, 3));
  CHECK(tri.cc_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri.g0_inf == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(tri.epsilon);

  GridSignal gw = make_window(WindowSpec::gaussian(1), g);
  BoundLattice half = bind(lattice("1", "1/2"), g);
  double prev_partial = 0.0, prev_sup = 1e300;
  for (int k_max = 0; k_max <= 8; ++k_max) {
    CCReport r = cc_report(build_table(gw, half, k_max));
    CHECK(r.cc_partial >= prev_partial);
    CHECK(r.cc_sup <= prev_sup * (1 + 1e-15));
    CHECK(r.cc_partial <= r.cc_sup);
    prev_partial = r.cc_partial;
    prev_sup = r.cc_sup;
  }
  CCReport gr = cc_report(build_table(gw, half, 8));
  REQUIRE(gr.epsilon);
  CHECK(*gr.epsilon > 0.0);
}

TEST_CASE("table CSV") {
  GridSpec g = GridSpec::from_span(0.25, -2, 2);
  GridSignal box = make_window(WindowSpec::box(0, 1), g);
  CorrelationTable t = build_table(box, bind(lattice("1", "1"), g), 2);
  std::ostringstream a, b;
  write_table_csv(a, t);
  write_table_csv(b, build_table(box, bind(lattice("1", "1"), g), 2));
  CHECK(a.str() == b.str());
  std::string s = a.str();
  CHECK(s.rfind("k,t,re_Gk,im_Gk\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 5 * 4);
  CHECK(s.find("\n0,0.25,1,0\n") != std::string::npos);
  std::ostringstream c;
  write_table_csv(c, build_table(box, bind(lattice("1", "1"), g), 0));
  std::string cs = c.str();
  CHECK(std::count(cs.begin(), cs.end(), '\n') == 1 + 4);
}

TEST_CASE("correlation outside the grid span") {
  GridSpec g = GridSpec::from_span(0.5, -1, 1);
  GridSignal box = make_window(WindowSpec::box(0, 1), g);
  CorrelationResult r = correlation_g(box, bind(lattice("1", "1"), g), 5);
  CHECK(r.out_of_range);
}
