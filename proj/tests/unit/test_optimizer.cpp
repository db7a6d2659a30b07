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
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "sievelab/functionals.hpp"
#include "sievelab/golden.hpp"
#include "sievelab/optimizer.hpp"
#include "sievelab/simplex_exact.hpp"

using namespace sievelab;

namespace {

double quotient(const Matrix& A, const Matrix& B, const std::vector<double>& x) {
  double num = 0.0, den = 0.0;
  const int n = A.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num += x[i] * A(i, j) * x[j];
      den += x[i] * B(i, j) * x[j];
    }
  return num / den;
}

std::vector<double> sphere(double a, double b, double c) {
  return {std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b) * std::cos(c),
          std::sin(a) * std::sin(b) * std::sin(c)};
}

// Grid over hyperspherical angles, then a shrinking pattern search.
double grid_minimum(const Matrix& A, const Matrix& B) {
  const double pi = std::acos(-1.0);
  const int n = 40;
  double best = std::numeric_limits<double>::infinity();
  double ang[3] = {0, 0, 0};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int l = 0; l < 2 * n; ++l) {
        const double a = pi * i / n, b = pi * j / n, c = pi * l / n;
        const double q = quotient(A, B, sphere(a, b, c));
        if (q < best) {
          best = q;
          ang[0] = a, ang[1] = b, ang[2] = c;
        }
      }
  for (double step = pi / n; step > 1e-9; step /= 2) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int d = 0; d < 3; ++d)
        for (double sgn : {-1.0, 1.0}) {
          double trial[3] = {ang[0], ang[1], ang[2]};
          trial[d] += sgn * step;
          const double q = quotient(A, B, sphere(trial[0], trial[1], trial[2]));
          if (q < best) {
            best = q;
            ang[0] = trial[0], ang[1] = trial[1], ang[2] = trial[2];
            moved = true;
          }
        }
    }
  }
  return best;
}

Matrix random_spd(std::mt19937_64& rng, int n, double shift) {
  std::normal_distribution<double> g;
  Matrix M(n), S(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = g(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += M(i, l) * M(j, l);
      S(i, j) = s + (i == j ? shift : 0.0);
    }
  return S;
}

SieveParams conj3() { return SieveParams::conjecture(3, Rational(1, 3), Support::Simplex); }

}  // namespace

TEST_SUITE("optimizer") {
  TEST_CASE("diagonal pencil") {
    GramPair g{1, 1.0, Matrix(2), Matrix::identity(2), {}};
    g.A(0, 0) = 2.0;
    g.A(1, 1) = 1.0;
    auto r = minimize_rayleigh(g, false);
    CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r.coefficients[0]) <= 1e-12);
    CHECK(std::abs(r.coefficients[1]) > 0.0);
  }

  TEST_CASE("Jacobi eigenpairs reconstruct the matrix") {
    std::mt19937_64 rng(2);
    auto S = random_spd(rng, 6, 0.0);
    auto e = jacobi_eigen(S);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double v = 0.0;
        for (int l = 0; l < 6; ++l) v += e.vectors[l][i] * e.values[l] * e.vectors[l][j];
        CHECK(v == doctest::Approx(S(i, j)).epsilon(1e-10).scale(1.0));
      }
    for (int l = 1; l < 6; ++l) CHECK(e.values[l - 1] <= e.values[l]);
  }

  TEST_CASE("Cholesky rejects an indefinite matrix") {
    Matrix B(2);
    B(0, 0) = 1.0;
    B(1, 1) = -1.0;
    CHECK_THROWS_AS(cholesky(B), NumericalError);
  }

  TEST_CASE("random pencils against a grid search") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 3; ++trial) {
      GramPair g{1, 1.0, random_spd(rng, 4, 0.1), random_spd(rng, 4, 0.5), {}};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) {
          g.A(i, j) = g.A(j, i);
          g.B(i, j) = g.B(j, i);
        }
      auto r = minimize_rayleigh(g, false);
      const double brute = grid_minimum(g.A, g.B);
      CHECK(r.lambda == doctest::Approx(brute).epsilon(1e-6));
      CHECK(quotient(g.A, g.B, r.coefficients) == doctest::Approx(r.lambda).epsilon(1e-10));
    }
  }

  TEST_CASE("one-element basis reproduces upsilon") {
    const auto F = preset("tableC_F1_k3");
    BasisSpec b{3, {F}, {"F"}, false};
    auto g = assemble_gram(b, conj3(), QuadConfig{});
    const double via_gram = g.k * g.A(0, 0) / g.B(0, 0) + g.k / g.theta0;
    CHECK(via_gram == doctest::Approx(upsilon(F, conj3(), QuadConfig{}).upsilon).epsilon(1e-10));
  }

  TEST_CASE("Gram entries against exact polarisation") {
    const auto one = SymmetricPolynomial::constant(3, Rational(1));
    const auto lin = SymmetricPolynomial::p1_power(3, 1);
    BasisSpec b{3, {one, lin}, {"1", "1-P1"}, false};
    auto g = assemble_gram(b, conj3(), QuadConfig{});
    CHECK(g.A(0, 1) == g.A(1, 0));
    CHECK(g.B(0, 1) == g.B(1, 0));
    const Rational th(1, 3);
    auto J = [](const SymmetricPolynomial& F) { return conjecture_J(F); };
    auto J0 = [&](const SymmetricPolynomial& F) { return conjecture_J0(F, th).value(th); };
    const Rational b01 = (J(one + lin) - J(one - lin)) / 4;
    CHECK(g.B(0, 0) == doctest::Approx(J(one).get_d()).epsilon(1e-14));
    CHECK(g.B(1, 1) == doctest::Approx(J(lin).get_d()).epsilon(1e-14));
    CHECK(g.B(0, 1) == doctest::Approx(b01.get_d()).epsilon(1e-13));
    CHECK(b01 == Rational(1, 24));
    CHECK(g.A(0, 1) == doctest::Approx((J0(one + lin) - J0(one - lin)) / 4).epsilon(1e-12));
  }

  TEST_CASE("minimiser properties on the cubic basis") {
    auto basis = BasisSpec::cubic_p1(3, false);
    auto g = assemble_gram(basis, conj3(), QuadConfig{});
    auto free = minimize_rayleigh(g, false);
    auto pos = minimize_rayleigh(g, true);
    // Normalised so the constant coefficient is 1.
    CHECK(free.coefficients[0] == doctest::Approx(1.0));
    for (double c : pos.coefficients) CHECK(c >= 0.0);
    CHECK(pos.upsilon >= free.upsilon - 1e-12);
    for (int i = 0; i < 4; ++i) {
      const double alone = g.k * g.A(i, i) / g.B(i, i) + g.k / g.theta0;
      CHECK(free.upsilon <= alone + 1e-12);
      CHECK(pos.upsilon <= alone + 1e-12);
    }
    // Rescaling the basis leaves the optimum unchanged.
    auto scaled = basis;
    scaled.elements[2] = scaled.elements[2].scaled(Rational(9));
    auto g2 = assemble_gram(scaled, conj3(), QuadConfig{});
    CHECK(minimize_rayleigh(g2, false).upsilon == doctest::Approx(free.upsilon).epsilon(1e-10));
    // The eigen value and a direct evaluation of the combined polynomial agree.
    auto direct = upsilon(combine(basis, free.coefficients), conj3(), QuadConfig{});
    CHECK(direct.upsilon == doctest::Approx(free.upsilon).epsilon(1e-9));
  }

  TEST_CASE("quadratic basis reaches the published bound at k = 3") {
    auto rep = reoptimize_table(Table::G, 3, QuadConfig{});
    CHECK(rep.all_pass());
  }

  TEST_CASE("basis JSON") {
    auto b = BasisSpec::from_json(R"({"k": 3, "positivity": true, "elements": [
      {"k": 3, "basis": "shifted", "terms": [{"c": "1", "e": {}}]},
      {"k": 3, "basis": "shifted", "terms": [{"c": "1", "e": {"1": 1}}]}]})");
    CHECK(b.elements.size() == 2);
    CHECK(b.positivity);
    CHECK_THROWS_AS(BasisSpec::from_json(R"({"k": 3, "elements": []})"), InvalidInput);
    CHECK_THROWS_AS(BasisSpec::from_json(R"({"k": 4, "elements": [
      {"k": 3, "basis": "shifted", "terms": [{"c": "1", "e": {}}]}]})"),
                    InvalidInput);
  }
}
