// Copyright 2026 The sieve-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sievelab/fixtures.hpp"
#include "sievelab/functionals.hpp"
#include "sievelab/golden.hpp"
#include "sievelab/regions.hpp"
#include "sievelab/reproduce.hpp"
#include "sievelab/simplex_exact.hpp"

using namespace sievelab;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Full-dimensional quadrature of F^2 over the unit simplex, exact per level.
double quad_J(const SymmetricPolynomial& F) {
  PolyhedralOptions opt;
  for (int i = 0; i < F.k(); ++i) {
    opt.order.push_back(i);
    opt.fixed_nodes.push_back(F.degree() + F.k());
  }
  auto dom = iterated_from_region(make_support(F.k(), Support::Simplex), opt);
  return integrate_iterated(dom, [&](Point x) { double v = F.evaluate(x); return v * v; }, QuadConfig{}).value;
}

SymmetricPolynomial random_poly(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> c(-9, 9);
  std::vector<PowerSumTerm> terms{{Rational(c(rng)), {}},
                                  {Rational(c(rng)), {{1, 1}}},
                                  {Rational(c(rng)), {{2, 1}}},
                                  {Rational(c(rng)), {{1, 1}, {2, 1}}}};
  return SymmetricPolynomial(k, Basis::Raw, terms);
}

}  // namespace

TEST_SUITE("simplex_exact") {
  TEST_CASE("Dirichlet monomials") {
    std::vector<int> a{1, 0};
    CHECK(simplex_monomial(2, a, Rational(1)) == Rational(1, 6));
    std::vector<int> z{0, 0, 0};
    CHECK(simplex_monomial(3, z, Rational(1)) == Rational(1, 6));
    std::vector<int> b{2, 1, 0, 0, 0};
    CHECK(simplex_monomial(5, b, Rational(1, 2)) == Rational(2, 40320) / 256);
  }

  TEST_CASE("Dirichlet monomial against Monte Carlo") {
    std::vector<int> b{2, 1, 0, 0, 0};
    std::vector<Interval> box(5, Interval{Rational(0), Rational(1, 2)});
    Region half(5, box, {{std::vector<Rational>(5, Rational(1)), Rational(1, 2), Sense::LessEq}}, "half simplex");
    QuadConfig c;
    c.mc_samples = 4'000'000;
    auto mc = integrate_mc(half, [](Point x) { return x[0] * x[0] * x[1]; }, c);
    const double exact = Rational(Rational(2, 40320) / 256).get_d();
    CHECK(std::abs(mc.value - exact) <= 3 * mc.std_error);
  }

  TEST_CASE("cached table agrees with the direct formula") {
    MonomialIntegralTable table(4);
    std::vector<int> a{3, 0, 1, 2}, b{2, 1, 0, 3};
    CHECK(table.get(a) == simplex_monomial(4, a, Rational(1)));
    CHECK(table.get(b) == table.get(a));
  }

  TEST_CASE("J of simple weights") {
    CHECK(conjecture_J(SymmetricPolynomial::constant(3, Rational(1))) == Rational(1, 6));
    CHECK(conjecture_J(SymmetricPolynomial::p1_power(3, 1)) == Rational(1, 60));
  }

  TEST_CASE("exact J against full-dimensional quadrature on random weights") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
      const int k = 3 + trial % 2;
      auto F = random_poly(rng, k);
      CAPTURE(F.to_string());
      CHECK(conjecture_J(F).get_d() == doctest::Approx(quad_J(F)).epsilon(1e-10));
    }
  }

  TEST_CASE("J0 of a constant weight in closed form") {
    // k! J0 = H_k - 1 + theta/(k+1) + log(1/theta) for F = 1.
    for (int k : {3, 4, 6}) {
      for (const Rational th : {Rational(1, 3), Rational(1, 4), Rational(2, 5)}) {
        auto r = conjecture_J0(SymmetricPolynomial::constant(k, Rational(1)), th);
        Rational H(0);
        for (int i = 1; i <= k; ++i) H += Rational(1, i);
        Rational fact(1);
        for (int i = 2; i <= k; ++i) fact *= i;
        CHECK(r.polynomial_part == (H - 1 + th / (k + 1)) / fact);
        CHECK(r.log_coeff == 1 / fact);
        CHECK(r.J == 1 / fact);
        CHECK(r.value(th) == doctest::Approx(Rational((H - 1 + th / (k + 1)) / fact).get_d() +
                                             std::log(1 / th.get_d()) / fact.get_d()));
      }
    }
  }

  TEST_CASE("log coefficient equals J") {
    const auto F = preset("tableC_F2_k4");
    auto r = conjecture_J0(F, Rational(1, 3));
    CHECK(r.log_coeff == conjecture_J(F));
  }

  TEST_CASE("exact J0 against the quadrature path") {
    // A tiny lower cutoff forces the quadrature path; the integrand is
    // bounded near y = 0 so the cutoff costs O(epsilon).
    const auto F = preset("tableC_F1_k4");
    QuadConfig cfg;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-12;
    auto numeric = [&](const Rational& th) {
      auto p = SieveParams::conjecture(4, th, Support::Simplex);
      p.epsilon = Rational(1, 1'000'000'000);
      return compute_J0(F, p, cfg).total.value;
    };
    const Rational th(1, 3);
    const double exact = conjecture_J0(F, th).value(th);
    CHECK(numeric(th) == doctest::Approx(exact).epsilon(1e-6));
    // d/dtheta by central differences on both paths.
    const Rational h(1, 10000);
    const double d_num = (numeric(th + h) - numeric(th - h)) / (2 * h.get_d());
    const double d_ex =
        (conjecture_J0(F, th + h).value(th + h) - conjecture_J0(F, th - h).value(th - h)) / (2 * h.get_d());
    CHECK(d_num == doctest::Approx(d_ex).epsilon(1e-6));
  }

  TEST_CASE("polarised expansion is exact") {
    SparsePoly x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    auto p = (x + y).pow(3) - (x - y).pow(3);
    std::vector<Rational> pt{Rational(2, 3), Rational(5, 7)};
    const Rational a = pt[0], b = pt[1];
    CHECK(p.evaluate(pt) == 6 * a * a * b + 2 * b * b * b);
  }

  TEST_CASE("published conjecture-mode values") {
    const auto p3 = SieveParams::conjecture(3, Rational(1, 3), Support::Simplex);
    auto r3 = upsilon(preset("tableC_F1_k3"), p3, QuadConfig{});
    CHECK(std::abs(r3.upsilon - golden("D.conjecture_F1.k3").value) <= 5e-5);
    const auto p5 = SieveParams::conjecture(5, Rational(1, 3), Support::Simplex);
    auto r5 = upsilon(preset("tableC_F2_k5"), p5, QuadConfig{});
    CHECK(std::abs(r5.upsilon - golden("D.conjecture_F2.k5").value) <= 5e-5);
    CHECK(r5.J.method == "exact");
  }

  TEST_CASE("non-diagonal weights on the extended support") {
    // Non-diagonal weights on the extended support use full-dimensional
    // quadrature, which stops at k = 5.
    auto p = SieveParams::conjecture(6, Rational(1, 4), Support::Extended);
    CHECK_THROWS_AS(compute_J(preset("tableC_F2_k6"), p, QuadConfig{}), NotAvailable);
  }
}

TEST_SUITE("functionals") {
  TEST_CASE("J of the constant weight is the simplex volume") {
    for (int k = 3; k <= 7; ++k) {
      auto p = SieveParams::standard(k, Rational(1, 4), Rational(1, 2), Support::Simplex, {});
      auto j = compute_J(SymmetricPolynomial::constant(k, Rational(1)), p, QuadConfig{});
      CHECK(j.value == doctest::Approx(1.0 / factorial(k)).epsilon(1e-12));
    }
  }

  TEST_CASE("J of the constant weight on the extended support against Monte Carlo") {
    auto p = SieveParams::standard(5, Rational(1, 4), Rational(3, 8), Support::Extended, {});
    auto j = compute_J(SymmetricPolynomial::constant(5, Rational(1)), p, QuadConfig{});
    QuadConfig c;
    c.mc_samples = 2'000'000;
    auto mc = integrate_mc(make_support(5, Support::Extended), [](Point) { return 1.0; }, c);
    CHECK(std::abs(j.value - mc.value) <= 3 * mc.std_error);
    CHECK(j.value > 1.0 / 120);
  }

  TEST_CASE("J11 on the simplex with a constant weight") {
    auto p = SieveParams::standard(3, Rational(1, 4), Rational(1, 2), Support::Simplex, {});
    auto v = compute_J11(SymmetricPolynomial::constant(3, Rational(1)), p, QuadConfig{});
    CHECK(v.value == doctest::Approx(1.0 / 12).epsilon(1e-12));
  }

  TEST_CASE("constant weight J0 against its shell closed form") {
    // With f = 1 the difference part vanishes; on the simplex the shell part
    // is (1 - (1-y)^k)/k! for y < 1 and 1/k! beyond.
    const int k = 4;
    const Rational th(1, 4), th0(1, 2);
    auto p = SieveParams::standard(k, th, th0, Support::Simplex, {});
    auto v = compute_J0(SymmetricPolynomial::constant(k, Rational(1)), p, QuadConfig{});
    const double a = th.get_d(), b = th0.get_d(), kf = factorial(k);
    // int_0^{b/a} (b - a y)/(b y) * shell(y) dy, split at y = 1.
    double H = 0.0;
    for (int i = 1; i <= k; ++i) H += 1.0 / i;
    const double first = H - (a / b) * (1.0 - 1.0 / (k + 1));
    const double second = std::log(b / a) - (a / b) * (b / a - 1.0);
    CHECK(v.total.value == doctest::Approx((first + second) / kf).epsilon(1e-10));
  }

  TEST_CASE("corrections vanish at the conjecture level") {
    const auto F = preset("headline5");
    auto p = SieveParams::standard(5, Rational(1, 4), Rational(1), Support::Extended, {});
    CHECK(compute_J11(F, p, QuadConfig{}).value == 0.0);
    for (auto [r, s] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {3, 3}})
      CHECK(compute_Jrs(F, p, r, s, QuadConfig{}).value == 0.0);
  }

  TEST_CASE("unsupported corrections") {
    const auto F = preset("headline5");
    const auto p = headline_params();
    CHECK_THROWS_AS(compute_Jrs(F, p, 1, 2, QuadConfig{}), InvalidInput);
    CHECK_THROWS_AS(compute_Jrs(F, p, 5, 1, QuadConfig{}), NotAvailable);
    CHECK_THROWS_AS(compute_Jrs(preset("tableC_F2_k5"), p, 2, 1, QuadConfig{}), NotAvailable);
  }

  TEST_CASE("flat corrections never exceed the standard ones") {
    const Rational th(71, 200);
    auto flat = SieveParams::flat(5, th, Support::Simplex, {});
    auto stdp = SieveParams::standard(5, th, 1 - 2 * th, Support::Simplex, {});
    const auto F = preset("tableC_F1_k5");
    for (auto [r, s] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}}) {
      const double a = compute_Jrs(F, flat, r, s, QuadConfig{}).value;
      const double b = compute_Jrs(F, stdp, r, s, QuadConfig{}).value;
      CHECK(a >= 0.0);
      CHECK(a <= b + 1e-9);
    }
  }

  TEST_CASE("(3,3) flat term against Monte Carlo") {
    auto p = SieveParams::flat(5, Rational(71, 200), Support::Extended, {});
    const auto f = diagonal_reduce(preset("tableC_F1_k5"));
    auto lifted = lift_ts(make_correction_domain(3, 3, p), "A:3,3");
    auto q = integrate_correction_region(f, p, 3, 3, lifted, QuadConfig{});
    CorrectionIntegrand ci(f, p, 3, 3);
    QuadConfig c;
    c.mc_samples = 2'000'000;
    auto mc = integrate_mc(lifted, [&](Point x) { return ci(x); }, c);
    CHECK(q.value > 0.0);
    CHECK(std::abs(q.value - mc.value) <= std::max(3 * mc.std_error, 0.01 * q.value));
    CHECK(compute_Jrs_flat(preset("tableC_F1_k5"), p, 3, 3, QuadConfig{}).value ==
          doctest::Approx(q.value).epsilon(1e-9));
  }

  TEST_CASE("scale invariance and recomputation") {
    auto p = SieveParams::standard(3, Rational(1, 4), Rational(3, 8), Support::Extended,
                                   parse_corrections("1,1;2,1;2,2"));
    const auto F = preset("remark3");
    auto a = upsilon(F, p, QuadConfig{});
    auto b = upsilon(F.scaled(Rational(37, 5)), p, QuadConfig{});
    CHECK(std::abs(a.upsilon - b.upsilon) <= 1e-10 * a.upsilon);
    CHECK(std::abs(a.recompute_upsilon() - a.upsilon) <= 1e-12 * a.upsilon);
  }

  TEST_CASE("adding corrections never increases upsilon") {
    auto p = SieveParams::standard(3, Rational(1, 4), Rational(3, 8), Support::Extended,
                                   parse_corrections("1,1;2,1;3,1;2,2;3,2"));
    auto rep = upsilon(preset("remark3"), p, QuadConfig{});
    const auto all = rep.Jrs;
    for (const auto& [c, v] : all) CHECK(v.value >= 0.0);
    // Every subset, ordered by inclusion, gives a monotone chain.
    const int n = static_cast<int>(all.size());
    std::vector<Correction> keys;
    for (const auto& [c, v] : all) keys.push_back(c);
    for (int mask = 0; mask < (1 << n); ++mask) {
      auto sub = rep;
      sub.Jrs.clear();
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) sub.Jrs[keys[i]] = all.at(keys[i]);
      const double u = sub.recompute_upsilon();
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1) continue;
        auto more = sub;
        more.Jrs[keys[i]] = all.at(keys[i]);
        CHECK(more.recompute_upsilon() <= u + 1e-12);
      }
    }
  }

  TEST_CASE("standard mode at theta0 = 1 equals conjecture mode") {
    const auto F = preset("remark3");
    auto a = upsilon(F, SieveParams::standard(3, Rational(1, 4), Rational(1), Support::Extended,
                                              parse_corrections("all")),
                     QuadConfig{});
    auto b = upsilon(F, SieveParams::conjecture(3, Rational(1, 4), Support::Extended), QuadConfig{});
    CHECK(std::abs(a.upsilon - b.upsilon) <= 1e-8);
  }

  TEST_CASE("extended support contains the simplex") {
    for (const auto& name : {"headline5", "tableC_F1_k5", "tableC_F1_k7"}) {
      const auto F = preset(name);
      auto e = compute_J(F, SieveParams::standard(F.k(), Rational(1, 4), Rational(3, 8), Support::Extended, {}),
                         QuadConfig{});
      auto s = compute_J(F, SieveParams::standard(F.k(), Rational(1, 4), Rational(3, 8), Support::Simplex, {}),
                         QuadConfig{});
      CHECK(e.value >= s.value);
    }
  }

  TEST_CASE("headline J, J0 and the two-shift terms") {
    const auto F = preset("headline5");
    const auto p = headline_params();
    QuadConfig cfg;
    CHECK(std::abs(compute_J(F, p, cfg).value - golden("headline.J").value) <= 1e-6);
    auto j0 = compute_J0(F, p, cfg);
    CHECK(std::abs(j0.total.value - golden("headline.J0").value) <= 1e-6);
    CHECK(std::abs(j0.raw_difference.value - golden("headline.J0.difference_raw").value) <= 1e-6);
    CHECK(std::abs(j0.raw_shell.value - golden("headline.J0.shell_raw").value) <= 1e-6);
    CHECK(std::abs(compute_J11(F, p, cfg).value - golden("headline.J11").value) <= 1e-6);
    CHECK(std::abs(compute_Jrs(F, p, 2, 1, cfg).value - golden("headline.J21").value) <= 1e-6);
    CHECK(std::abs(compute_Jrs(F, p, 2, 2, cfg).value - golden("headline.J22").value) <= 1e-6);
  }

  TEST_CASE("explicit-limit fixtures sum to the generic path") {
    const auto F = preset("headline5");
    const auto p = headline_params();
    QuadConfig cfg;
    std::map<std::string, double> sums;
    for (const auto& piece : explicit_pieces_k5(diagonal_reduce(F)))
      sums[piece.group] += integrate_iterated(piece.domain, piece.integrand, cfg).value;
    auto j0 = compute_J0(F, p, cfg);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    CHECK(rel(sums.at("J0;1"), j0.raw_difference.value) <= 1e-5);
    CHECK(rel(sums.at("J0;2"), j0.raw_shell.value) <= 1e-5);
    CHECK(rel((sums.at("R2;1") + sums.at("R2;2")) / 2, compute_Jrs(F, p, 2, 1, cfg).value) <= 1e-5);
    CHECK(rel(sums.at("J2,2") / 2, compute_Jrs(F, p, 2, 2, cfg).value) <= 1e-5);
    CHECK(rel((sums.at("R3';1") + sums.at("R3';2")) / 2, compute_Jrs(F, p, 3, 2, cfg).value) <= 1e-5);
  }
}
