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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/sympoly.hpp"

namespace sievelab {

/// One published reference value with its acceptance rule.
///   abs:   |x - value| <= tol
///   upper: x <= value + tol
///   lower: x >= value (published lower bound), and x - value <= tol
///   range: lo < x < hi
struct GoldenCell {
  std::string id;
  double value = 0.0;
  double tol = 0.0;
  std::string cmp = "abs";
  std::string anchor;
  double lo = 0.0;
  double hi = 0.0;
  int k = 0;
  std::string theta;
  std::string scale;

  bool accepts(double x) const;
  /// Signed distance outside the accepted set (0 when accepted).
  double excess(double x) const;
};

const std::vector<GoldenCell>& golden_cells();
/// Throws InvalidInput for an unknown id.
const GoldenCell& golden(std::string_view id);
/// Cells whose id starts with the given prefix, in file order.
std::vector<GoldenCell> golden_prefix(std::string_view prefix);

std::vector<std::string> preset_names();
/// Throws InvalidInput naming the known presets when absent.
SymmetricPolynomial preset(std::string_view name);
std::optional<SymmetricPolynomial> find_preset(std::string_view name);

}  // namespace sievelab
