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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/functionals.hpp"
#include "sievelab/params.hpp"
#include "sievelab/sympoly.hpp"

namespace sievelab {

/// Dense row-major square matrix, n <= 16 in practice.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  static Matrix identity(int n);

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct BasisSpec {
  int k = 5;
  std::vector<SymmetricPolynomial> elements;
  std::vector<std::string> names;
  bool positivity = false;

  /// 1, (1-P_1), (1-P_1)^2, (1-P_1)^3.
  static BasisSpec cubic_p1(int k, bool positivity = true);
  /// cubic_p1 plus P_2 and (1-P_1) P_2.
  static BasisSpec cubic_p2(int k, bool positivity = true);
  /// 1, (1-P_1), (1-P_1)^2.
  static BasisSpec quadratic_p1(int k);
  /// The twelve products of (1-P_1), P_2, P_3, P_4 of weight at most 4.
  static BasisSpec weight4(int k);
  /// {"k": 5, "positivity": false, "elements": [<polynomial json>, ...]}
  static BasisSpec from_json(std::string_view text);

  void validate() const;
};

/// Quadratic forms on the span of a basis: A for the numerator
/// J_0 - theta * sum J_{r,s}, B for J.
struct GramPair {
  int k = 0;
  double theta0 = 1.0;
  Matrix A;
  Matrix B;
  std::vector<std::string> methods;
};

/// Memo of functional evaluations keyed by polynomial, functional and params.
class GramCache {
 public:
  std::optional<double> find(const std::string& key) const;
  void store(const std::string& key, double value);
  std::size_t size() const { return values_.size(); }
  std::size_t hits() const { return hits_; }

 private:
  std::map<std::string, double> values_;
  mutable std::size_t hits_ = 0;
};

/// J_0 - theta * sum of the correction terms selected by params.
FunctionalValue numerator_form(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg);

GramPair assemble_gram(const BasisSpec& basis, const SieveParams& params, const QuadConfig& cfg,
                       GramCache* cache = nullptr);

struct EigenResult {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // vectors[i] pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi on a symmetric matrix; throws NumericalError after 100 sweeps.
EigenResult jacobi_eigen(const Matrix& S);
/// Lower-triangular L with B = L L^T; throws NumericalError if B is not positive definite.
Matrix cholesky(const Matrix& B);

struct RayleighResult {
  std::vector<double> coefficients;
  double lambda = 0.0;
  double upsilon = 0.0;
  bool positivity = false;
  int iterations = 0;
};

/// Minimises x^T A x / x^T B x, optionally over x >= 0. Returns
/// upsilon = k * lambda + k / theta0 and a normalised minimiser.
RayleighResult minimize_rayleigh(const GramPair& gram, bool positivity);

/// Sum of c_i e_i with coefficients rounded to 12 significant digits.
SymmetricPolynomial combine(const BasisSpec& basis, const std::vector<double>& coefficients);

enum class Table { C, D, E, F, G };
Table parse_table(std::string_view text);
std::string_view to_string(Table t);

struct TableCell {
  std::string id;
  std::string description;
  double value = 0.0;
  double published = 0.0;
  double tolerance = 0.0;
  /// "upper": pass when value <= published + tolerance; "abs": |value - published| <= tolerance.
  std::string comparison = "abs";
  bool pass = false;
  std::optional<SymmetricPolynomial> polynomial;
  /// Upsilon of `polynomial` recomputed through the functionals module.
  std::optional<double> direct;
  std::string note;
};

struct TableReport {
  Table table;
  int k = 0;
  std::vector<TableCell> cells;
  bool all_pass() const;
  std::string to_json() const;
};

/// Re-derives the polynomials of one table row by minimisation (or, for
/// the flat-mode table, evaluates the printed polynomials) and compares
/// against the published values.
TableReport reoptimize_table(Table table, int k, const QuadConfig& cfg);

}  // namespace sievelab
