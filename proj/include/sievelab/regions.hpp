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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sievelab/common.hpp"
#include "sievelab/params.hpp"

namespace sievelab {

enum class Sense { Less, LessEq };

/// coeffs . x  (< or <=)  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
  Sense sense = Sense::LessEq;
};

struct Interval {
  Rational lo;
  Rational hi;
};

/// A bounded polytope: a rational box intersected with linear constraints.
/// Membership treats ties as members regardless of the printed sense.
class Region {
 public:
  Region(int dim, std::vector<Interval> box, std::vector<LinearConstraint> constraints, std::string label);

  int dim() const { return dim_; }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::string& label() const { return label_; }
  std::span<const double> lower() const { return lo_; }
  std::span<const double> upper() const { return hi_; }

  bool contains(std::span<const double> x) const;
  /// Distance-style slack: smallest (rhs - coeffs.x) over constraints and box
  /// faces; negative outside. Used to detect boundary ties.
  double slack(std::span<const double> x) const;
  double box_volume() const;

  Region with(std::vector<LinearConstraint> extra, std::string label) const;

 private:
  int dim_;
  std::vector<Interval> box_;
  std::vector<LinearConstraint> constraints_;
  std::string label_;
  std::vector<double> lo_, hi_, rhs_;
  std::vector<std::vector<double>> coeffs_;
};

/// Simplex {sum t <= 1} or extended {sum_{i != j} t_i <= 1 for all j}, in [0,1]^k.
Region make_support(int k, Support kind);

/// Shift-variable domain of the (r,s) correction in units y = x / theta,
/// coordinates ordered y_1 < ... < y_{r-1}. Empty when theta0 = 1.
Region make_correction_domain(int r, int s, const SieveParams& params);

/// Appends the reduced (t, s) coordinates 0 <= s <= t <= 1.
Region lift_ts(const Region& shifts, const std::string& label);

struct Decomposition {
  std::string label;
  int k = 5;
  Region parent;
  std::vector<Region> children;
};

/// Case splits of the correction integrals by the position of the clip
/// bound U = 1 + s/(k-1) among the shifted limits t + c. Labels:
/// "R2" (2 pieces), "R3" (4), "R4" (11), "R3p" (2, the s = 2 domain).
Decomposition make_decomposition(std::string_view label, const SieveParams& params);
std::vector<std::string> decomposition_labels();

/// Resolves labels such as "support:simplex", "A:3,1", "R3", "R3.2".
Region named_region(std::string_view label, const SieveParams& params);

struct SampleResult {
  int dim = 0;
  std::vector<double> points;  // row-major, n x dim
  std::uint64_t proposals = 0;
  double acceptance = 0.0;
  std::size_t count() const { return dim == 0 ? 0 : points.size() / static_cast<std::size_t>(dim); }
};

/// Deterministic uniform sampling by rejection from the box. Throws
/// NumericalError (region possibly empty) when fewer than 1e-6 of 1e7
/// proposals are accepted.
SampleResult sample(const Region& region, std::uint64_t seed, std::size_t n);

/// Counts box proposals that land inside the region.
std::uint64_t count_hits(const Region& region, std::uint64_t seed, std::uint64_t proposals);

/// Audit dump: {"label", "dim", "box": [[lo, hi], ...], "constraints": [...]}.
std::string region_json(const Region& region);

/// Seeded uniform generator on [0,1) with a portable bit-to-double map.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sievelab
