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

#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sievelab/common.hpp"
#include "sievelab/sympoly.hpp"

namespace sievelab {

/// Dirichlet integrals over the unit simplex in k variables,
/// int t^a = prod a_i! / (k + |a|)!, cached by the sorted exponent multiset.
class MonomialIntegralTable {
 public:
  explicit MonomialIntegralTable(int k);

  int k() const { return k_; }
  Rational get(std::span<const int> a) const;

 private:
  int k_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, Rational> cache_;
};

/// int over {t >= 0, sum t <= u} of prod t_i^{a_i}.
Rational simplex_monomial(int k, std::span<const int> a, const Rational& u);

/// int over the unit simplex of F^2, exact.
Rational conjecture_J(const SymmetricPolynomial& F);

/// J_0 at theta0 = 1 on the simplex support: polynomial_part + log_coeff * ln(1/theta).
struct ConjectureJ0 {
  Rational polynomial_part;
  Rational log_coeff;
  Rational J;
  double value(const Rational& theta) const;
};

ConjectureJ0 conjecture_J0(const SymmetricPolynomial& F, const Rational& theta);

/// Sparse polynomial in up to 15 variables with exponents below 16, exact
/// coefficients. Exposed for tests.
class SparsePoly {
 public:
  explicit SparsePoly(int nvars) : n_(nvars) {}
  static SparsePoly constant(int nvars, const Rational& c);
  static SparsePoly variable(int nvars, int i);

  int nvars() const { return n_; }
  const std::unordered_map<std::uint64_t, Rational>& terms() const { return terms_; }
  static int exponent(std::uint64_t key, int i) { return static_cast<int>(key >> (4 * i) & 0xF); }

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(const Rational& c) const;
  SparsePoly pow(int e) const;
  /// Replaces variable i by (x_i + x_j).
  SparsePoly shift(int i, int j) const;
  Rational evaluate(std::span<const Rational> x) const;

 private:
  void add_term(std::uint64_t key, const Rational& c);
  int n_;
  std::unordered_map<std::uint64_t, Rational> terms_;
};

/// Expands F into monomials over nvars >= k variables (extra ones unused).
SparsePoly expand(const SymmetricPolynomial& F, int nvars);

}  // namespace sievelab
