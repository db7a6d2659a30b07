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

// Sieve weight polynomials. A SymmetricPolynomial is a combination of
// products of power sums P_j = t_1^j + ... + t_k^j; in the shifted basis the
// P_1 factor is replaced by (1 - P_1). A DiagonalPolynomial is the univariate
// f with F(t) = f(t_1 + ... + t_k), available when F only involves P_1.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sievelab/common.hpp"

namespace sievelab {

enum class Basis { Shifted, Raw };

std::string_view to_string(Basis b);
Basis parse_basis(std::string_view text);

/// c * prod_j B_j^{e_j}, where B_1 = (1 - P_1) in the shifted basis and
/// B_j = P_j otherwise.
struct PowerSumTerm {
  Rational coeff;
  std::map<int, int> exponents;

  bool operator==(const PowerSumTerm& o) const = default;
};

class SymmetricPolynomial {
 public:
  SymmetricPolynomial(int k, Basis basis, std::vector<PowerSumTerm> terms);

  static SymmetricPolynomial constant(int k, const Rational& c, Basis basis = Basis::Shifted);
  /// B_1^a in the given basis, i.e. (1 - P_1)^a (shifted) or P_1^a (raw).
  static SymmetricPolynomial p1_power(int k, int a, Basis basis = Basis::Shifted);

  int k() const { return k_; }
  Basis basis() const { return basis_; }
  const std::vector<PowerSumTerm>& terms() const { return terms_; }

  double evaluate(std::span<const double> t) const;
  Rational evaluate(std::span<const Rational> t) const;

  SymmetricPolynomial to_basis(Basis target) const;
  /// True when every term involves P_1 only (or is constant).
  bool p1_only() const;
  /// Total degree in the t variables.
  int degree() const;
  /// Largest power-sum index that occurs (0 for constants).
  int max_power_sum() const;

  SymmetricPolynomial operator+(const SymmetricPolynomial& o) const;
  SymmetricPolynomial operator-(const SymmetricPolynomial& o) const;
  SymmetricPolynomial scaled(const Rational& c) const;

  bool operator==(const SymmetricPolynomial& o) const = default;

  /// Deterministic text form, used as a cache key and in reports.
  std::string to_string() const;

 private:
  void canonicalize();

  int k_;
  Basis basis_;
  std::vector<PowerSumTerm> terms_;
};

class DiagonalPolynomial {
 public:
  DiagonalPolynomial(int k, std::vector<Rational> coeffs);

  int k() const { return k_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Antiderivative with zero constant term.
  const std::vector<Rational>& antiderivative_coeffs() const { return antider_; }

  double operator()(double x) const;
  double antiderivative(double x) const;
  Rational evaluate(const Rational& x) const;

  DiagonalPolynomial derivative() const;
  DiagonalPolynomial squared() const;
  /// x -> f(x + y) as a polynomial in x (double coefficients are exact
  /// enough for quadrature; the rational form is not needed there).
  std::vector<double> shifted_coeffs(double y) const;

  const std::vector<double>& coeffs_double() const { return fd_; }
  const std::vector<double>& antiderivative_double() const { return ad_; }

 private:
  int k_;
  std::vector<Rational> coeffs_;
  std::vector<Rational> antider_;
  std::vector<double> fd_;
  std::vector<double> ad_;
};

inline double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// f with F(t) = f(sum t_i). Throws NotAvailable when F involves P_j, j >= 2.
DiagonalPolynomial diagonal_reduce(const SymmetricPolynomial& F);

/// Integral of f from min(a, 1+u) to min(b, 1+u).
double int_clipped(const DiagonalPolynomial& f, double a, double b, double u);

/// Membership of t in R_k (simplex) or R'_k (extended).
bool in_support(std::span<const double> t, Support support);

/// F(t + y e_j) when the shifted point lies in `support` (or support is
/// nullopt), else 0. j is 1-based.
double shift_evaluate(const SymmetricPolynomial& F, std::span<const double> t, int j, double y,
                      std::optional<Support> support);

/// {"k": int, "basis": "shifted"|"raw", "terms": [{"c": "p/q", "e": {"1": a, ...}}]}
SymmetricPolynomial polynomial_from_json(std::string_view text);
std::string polynomial_to_json(const SymmetricPolynomial& F);
SymmetricPolynomial load_polynomial(const std::string& path);

}  // namespace sievelab
