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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sievelab/common.hpp"
#include "sievelab/regions.hpp"

namespace sievelab {

/// GL15 runs Gauss-Kronrod 7/15 panels, GL7 runs 3/7 panels; the Kronrod
/// extension supplies the local error estimate that drives bisection.
enum class PanelRule { GL7, GL15 };

std::string_view to_string(PanelRule r);
PanelRule parse_panel_rule(std::string_view text);

struct QuadConfig {
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_depth = 40;
  PanelRule panel_rule = PanelRule::GL15;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 1'000'000;
};

using Point = std::span<const double>;
using Integrand = std::function<double(Point)>;
using BoundFn = std::function<double(Point)>;
using BreakFn = std::function<void(Point, std::vector<double>&)>;

/// One nesting level. Bounds and breakpoints read the point buffer, in which
/// only coordinates bound by outer levels are meaningful.
struct Level {
  int coord = 0;
  BoundFn lower;
  BoundFn upper;
  BreakFn breakpoints;  // optional interior split points
  /// > 0: fixed Gauss-Legendre with this many nodes per breakpoint segment
  /// (exact for polynomial pieces of degree < 2n); 0: adaptive.
  int fixed_nodes = 0;
};

class IteratedDomain {
 public:
  explicit IteratedDomain(int dim) : dim_(dim) {}

  /// Levels outermost first, coordinate i bound by level i.
  static IteratedDomain from_limits(std::vector<std::pair<BoundFn, BoundFn>> limits);

  void add_level(Level level) { levels_.push_back(std::move(level)); }
  void mark_empty() { empty_ = true; }

  int dim() const { return dim_; }
  bool empty() const { return empty_; }
  const std::vector<Level>& levels() const { return levels_; }

 private:
  int dim_;
  bool empty_ = false;
  std::vector<Level> levels_;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::uint64_t evaluations = 0;
};

/// Nested quadrature. The tolerance share handed to each inner level shrinks
/// geometrically; panels never evaluate endpoints.
QuadResult integrate_iterated(const IteratedDomain& domain, const Integrand& integrand, const QuadConfig& cfg);

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Box-sampling estimator of the integral over the region, deterministic per
/// cfg.seed, using cfg.mc_samples proposals.
McResult integrate_mc(const Region& region, const Integrand& integrand, const QuadConfig& cfg);

/// constant + coeffs . x over the region's coordinates.
struct LinearForm {
  std::vector<Rational> coeffs;
  Rational constant;
};

struct PolyhedralOptions {
  /// Integration order, outermost first, as region coordinate indices.
  std::vector<int> order;
  /// Per level (same indexing as order): 0 adaptive, n > 0 fixed n-node rule.
  std::vector<int> fixed_nodes;
  /// Hyperplanes across which the integrand is not smooth.
  std::vector<LinearForm> kinks;
  /// Also project kinks out of fixed levels into adaptive ones.
  bool project_into_adaptive = true;
};

/// Converts a polytope into iterated limits by Fourier-Motzkin elimination.
/// Breakpoints at each level come from the kinks, their traces on the inner
/// bounds of fixed levels, and the switch points between competing bounds.
IteratedDomain iterated_from_region(const Region& region, const PolyhedralOptions& options);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

}  // namespace sievelab
