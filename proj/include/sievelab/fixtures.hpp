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

#include <string>
#include <vector>

#include "sievelab/quad.hpp"
#include "sievelab/regions.hpp"
#include "sievelab/sympoly.hpp"

namespace sievelab {

/// One explicit-limit integral of the k = 5, (theta, theta0) = (1/4, 3/8)
/// evaluation, stored as a polytope (for the Monte-Carlo oracle) together
/// with its iterated limits. Values are raw: the 1/(k-3)! = 1/2 factor is
/// not applied.
struct ExplicitPiece {
  std::string group;
  std::string label;
  Region region;
  IteratedDomain domain;
  Integrand integrand;
  /// True when the printed limits differ from the ones evaluated here.
  bool amended = false;
};

struct ExplicitGroup {
  std::string name;
  /// Published raw value of the group sum (a lower or upper bound as printed).
  double published = 0.0;
  double tolerance = 0.0;
};

/// Groups: "J0;1", "J0;2", "R2;1", "R2;2", "J2,2", "R3';1", "R3';2".
/// With as_printed, a few limits are taken literally from the source
/// display instead of the corrected form (see ExplicitPiece::amended).
std::vector<ExplicitPiece> explicit_pieces_k5(const DiagonalPolynomial& f, bool as_printed = false);
std::vector<ExplicitGroup> explicit_groups_k5();

}  // namespace sievelab
