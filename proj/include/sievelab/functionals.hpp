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
#include <string>
#include <vector>

#include "sievelab/params.hpp"
#include "sievelab/quad.hpp"
#include "sievelab/regions.hpp"
#include "sievelab/sympoly.hpp"

namespace sievelab {

/// A computed functional with its error estimate and how it was obtained:
/// "quadrature", "exact" or "monte-carlo".
struct FunctionalValue {
  double value = 0.0;
  double error = 0.0;
  std::string method = "quadrature";
  bool converged = true;
  std::uint64_t evaluations = 0;
};

/// J_0 with its two raw halves (the shifted-difference part and the shell
/// part), each before the 1/(k-3)! normalisation.
struct J0Value {
  FunctionalValue total;
  FunctionalValue raw_difference;
  FunctionalValue raw_shell;
};

struct FunctionalReport {
  SieveParams params;
  std::string polynomial;
  FunctionalValue J;
  J0Value J0;
  std::map<Correction, FunctionalValue> Jrs;
  double upsilon = 0.0;
  double upsilon_error = 0.0;
  bool converged = true;
  std::vector<std::string> warnings;

  /// k (J0 - theta sum Jrs) / J + k / theta0 from the stored fields.
  double recompute_upsilon() const;
  std::string to_json() const;
  static std::string csv_header();
  std::string to_csv_row() const;
};

FunctionalValue compute_J(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg);
J0Value compute_J0(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg);
FunctionalValue compute_J11(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg);
/// Correction term over the domain implied by params.mode (flat or standard).
FunctionalValue compute_Jrs(const SymmetricPolynomial& F, const SieveParams& params, int r, int s,
                            const QuadConfig& cfg);
/// Same with the flat domain regardless of params.mode.
FunctionalValue compute_Jrs_flat(const SymmetricPolynomial& F, const SieveParams& params, int r, int s,
                                 const QuadConfig& cfg);

FunctionalReport upsilon(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg);

bool correction_supported(int r, int s);

// ---------------------------------------------------------------------------
// Building blocks shared with the decomposition checks and the fixtures.

/// Reduced integrand of a correction term: shift weight times the squared
/// alternating sum of clipped integrals times the (t, s) density. Extended
/// support uses coordinates (y..., t, s) as in lift_ts and the density
/// (t-s)^(k-3)/(k-3)!; the simplex support uses (y..., t) with clip bound 1
/// and density t^(k-2)/(k-2)!.
class CorrectionIntegrand {
 public:
  CorrectionIntegrand(const DiagonalPolynomial& f, const SieveParams& params, int r, int s);
  double operator()(Point x) const;
  /// The squared alternating sum alone.
  double squared_sum(Point x) const;
  double weight(Point y) const;

 private:
  int k_;
  int r_, s_;
  double theta_, theta0_;
  bool extended_;
  std::vector<double> A_;
};

/// Correction term J_{r,s} restricted to a sub-region of its lifted domain
/// (coordinates as in CorrectionIntegrand); used for decomposition pieces.
FunctionalValue integrate_correction_region(const DiagonalPolynomial& f, const SieveParams& params, int r, int s,
                                            const Region& lifted, const QuadConfig& cfg);

/// Hyperplanes t + c_J = U over (y..., t, s) for every subset J of the shifts.
std::vector<LinearForm> correction_kinks(int nshift, int k, Support support);

/// Fixed Gauss-Legendre node counts for the (t, s) levels.
std::pair<int, int> ts_nodes(int kernel_degree, int k, Support support);

}  // namespace sievelab
