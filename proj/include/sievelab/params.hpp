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

#include <compare>
#include <string>
#include <vector>

#include "sievelab/common.hpp"

namespace sievelab {

/// standard: the exact prime-counting identity; flat: the restricted
/// inequality variant with theta0 = 1 - 2 theta; conjecture: theta0 = 1,
/// where every correction term vanishes.
enum class Mode { Standard, Flat, Conjecture };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

struct Correction {
  int r = 1;
  int s = 1;
  auto operator<=>(const Correction&) const = default;
};

struct SieveParams {
  int k = 5;
  Rational theta{1, 4};
  Rational theta0{3, 8};
  Support support = Support::Extended;
  std::vector<Correction> corrections;
  Mode mode = Mode::Standard;
  /// Lower cutoff on the smallest prime-factor exponent; 0 evaluates the
  /// epsilon -> 0 limit.
  Rational epsilon{0};

  static SieveParams standard(int k, Rational theta, Rational theta0, Support support,
                              std::vector<Correction> corrections);
  static SieveParams flat(int k, Rational theta, Support support, std::vector<Correction> corrections);
  static SieveParams conjecture(int k, Rational theta, Support support);

  /// Advisory warnings (hypothesis constraints such as theta <= theta0).
  /// Hard violations (k < 3, theta outside (0, 1/2]) throw InvalidInput.
  std::vector<std::string> validate() const;

  /// Stable textual key of every field; equal params give equal keys.
  std::string key() const;
};

/// Parses "none", "all", or "1,1;2,1;3,1" style lists.
std::vector<Correction> parse_corrections(std::string_view text);
std::string to_string(const std::vector<Correction>& cs);

/// Correction set used for the headline k = 5 computation.
std::vector<Correction> headline_corrections();

}  // namespace sievelab
