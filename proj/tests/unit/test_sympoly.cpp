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

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "sievelab/golden.hpp"
#include "sievelab/sympoly.hpp"

using namespace sievelab;

namespace {

SymmetricPolynomial headline_F() {
  return SymmetricPolynomial(5, Basis::Shifted,
                             {{Rational(11), {}}, {Rational(85), {{1, 1}}}, {Rational(170), {{1, 2}}}});
}

std::vector<Rational> random_rationals(std::mt19937_64& rng, int n, int denom) {
  std::uniform_int_distribution<int> d(0, denom);
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.emplace_back(d(rng), denom * n);
  for (auto& q : v) q.canonicalize();
  return v;
}

}  // namespace

TEST_SUITE("sympoly") {
  TEST_CASE("evaluate at the origin and on the face sum t = 1") {
    auto F = headline_F();
    std::vector<double> zero(5, 0.0), face{0.2, 0.2, 0.2, 0.2, 0.2};
    CHECK(F.evaluate(zero) == doctest::Approx(266.0).epsilon(1e-15));
    CHECK(F.evaluate(face) == doctest::Approx(11.0).epsilon(1e-14));
  }

  TEST_CASE("two-power-sum polynomial against a hand expansion") {
    // 1846 - 3225 P1 + 2203 P1^2 - 727 P1^3 + 228 P2 - 223 P1 P2 at
    // t = (1/5, 3/10, 1/10): P1 = 3/5, P2 = 7/50.
    const Rational p1(3, 5), p2(7, 50);
    const Rational expected = 1846 - 3225 * p1 + 2203 * p1 * p1 - 727 * p1 * p1 * p1 + 228 * p2 - 223 * p1 * p2;
    const auto F = preset("tableC_F2_k3");
    std::vector<Rational> t{Rational(1, 5), Rational(3, 10), Rational(1, 10)};
    CHECK(F.evaluate(t) == expected);
    CHECK(expected == Rational(140059, 250));
    std::vector<double> td{0.2, 0.3, 0.1};
    CHECK(F.evaluate(td) == doctest::Approx(560.236).epsilon(1e-12));
  }

  TEST_CASE("permutation invariance, exact and floating") {
    std::mt19937_64 rng(11);
    for (const auto& name : {"tableC_F2_k3", "tableC_F2_k6", "tableC_F1_k8"}) {
      const auto F = preset(name);
      for (int trial = 0; trial < 20; ++trial) {
        auto t = random_rationals(rng, F.k(), 97);
        auto u = t;
        std::shuffle(u.begin(), u.end(), rng);
        CHECK(F.evaluate(t) == F.evaluate(u));
        std::vector<double> td, ud;
        for (auto& q : t) td.push_back(q.get_d());
        for (auto& q : u) ud.push_back(q.get_d());
        const double a = F.evaluate(td), b = F.evaluate(ud);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }

  TEST_CASE("basis round trip reproduces the term list") {
    for (const auto& name : preset_names()) {
      const auto F = preset(name);
      const auto other = F.basis() == Basis::Shifted ? Basis::Raw : Basis::Shifted;
      CHECK(F.to_basis(other).to_basis(F.basis()) == F);
    }
  }

  TEST_CASE("basis conversion preserves values") {
    const auto F = headline_F();
    const auto R = F.to_basis(Basis::Raw);
    std::vector<Rational> t{Rational(1, 7), Rational(2, 9), Rational(0), Rational(1, 11), Rational(1, 13)};
    CHECK(F.evaluate(t) == R.evaluate(t));
  }

  TEST_CASE("diagonal reduction of a constant") {
    auto f = diagonal_reduce(SymmetricPolynomial::constant(4, Rational(7)));
    REQUIRE(f.degree() == 0);
    CHECK(f(0.3) == 7.0);
    CHECK(f(2.5) == 7.0);
  }

  TEST_CASE("diagonal reduction rejects a second power sum") {
    CHECK_THROWS_AS(diagonal_reduce(preset("tableC_F2_k3")), NotAvailable);
  }

  TEST_CASE("diagonal consistency on random simplex points") {
    const auto F = preset("tableC_F1_k5");
    REQUIRE(F.p1_only());
    const auto f = diagonal_reduce(F);
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> ex(1.0);
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> t(5);
      double s = ex(rng);
      for (auto& x : t) s += (x = ex(rng));
      for (auto& x : t) x /= s;
      double sum = 0.0;
      for (double x : t) sum += x;
      const double a = F.evaluate(t), b = f(sum);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("antiderivative against central differences") {
    const auto f = diagonal_reduce(headline_F());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int n = 0; n < 200; ++n) {
      const double x = u(rng), h = 1e-5;
      const double fd = (f.antiderivative(x + h) - f.antiderivative(x - h)) / (2 * h);
      CHECK(fd == doctest::Approx(f(x)).epsilon(1e-6));
    }
  }

  TEST_CASE("clipped integrals") {
    const DiagonalPolynomial one(5, {Rational(1)});
    CHECK(int_clipped(one, 0.4, 0.4, 0.0) == 0.0);
    CHECK(int_clipped(one, 0.2, 0.9, -0.5) == doctest::Approx(0.3).epsilon(1e-15));
    const DiagonalPolynomial lin(5, {Rational(0), Rational(2)});
    CHECK(int_clipped(lin, 0.0, 3.0, 0.0) == doctest::Approx(1.0));
  }

  TEST_CASE("support membership") {
    std::vector<double> a{0.6, 0.6, 0.3}, b{0.2, 0.3, 0.4}, o{0.0, 0.0, 0.0};
    CHECK_FALSE(in_support(a, Support::Extended));
    CHECK(in_support(b, Support::Simplex));
    CHECK(in_support(o, Support::Simplex));
    CHECK(in_support(o, Support::Extended));
  }

  TEST_CASE("shifted evaluation respects the support") {
    const auto F = headline_F();
    std::vector<double> t(5, 0.3);
    CHECK(shift_evaluate(F, t, 1, 1.0, Support::Extended) == 0.0);
    std::vector<double> s{0.1, 0.1, 0.1, 0.1, 0.1};
    CHECK(shift_evaluate(F, s, 2, 0.0, Support::Extended) == F.evaluate(s));
    const auto G = SymmetricPolynomial::p1_power(3, 1);
    std::vector<double> g{0.2, 0.2, 0.2};
    CHECK(shift_evaluate(G, g, 1, 0.3, Support::Simplex) == doctest::Approx(0.1).epsilon(1e-14));
  }

  TEST_CASE("JSON round trip") {
    const auto F = preset("tableC_F2_k7");
    CHECK(polynomial_from_json(polynomial_to_json(F)) == F);
  }

  TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(polynomial_from_json(R"({"k": 0, "basis": "raw", "terms": []})"), InvalidInput);
    CHECK_THROWS_AS(polynomial_from_json(R"({"k": 3, "basis": "odd", "terms": []})"), InvalidInput);
    CHECK_THROWS_AS(polynomial_from_json("not json"), InvalidInput);
  }

  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/8") == Rational(3, 8));
    CHECK(parse_rational("0.355") == Rational(71, 200));
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
  }
}
