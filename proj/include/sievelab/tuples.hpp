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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sievelab {

/// A_i n + B_i with A_i > 0.
struct LinearForm1 {
  std::int64_t a = 1;
  std::int64_t b = 0;
  bool operator==(const LinearForm1&) const = default;
};

class LinearFormTuple {
 public:
  /// Throws InvalidInput on A_i <= 0, an empty tuple, or two forms sharing a root.
  explicit LinearFormTuple(std::vector<LinearForm1> forms);
  /// "0,2,6" as the shifts n + h_i.
  static LinearFormTuple from_shifts(std::string_view text);
  /// "1:0,1:2,3:1" as A:B pairs.
  static LinearFormTuple from_forms(std::string_view text);

  int k() const { return static_cast<int>(forms_.size()); }
  const std::vector<LinearForm1>& forms() const { return forms_; }
  std::string to_string() const;

 private:
  std::vector<LinearForm1> forms_;
};

bool is_prime(std::uint64_t n);

/// Number of residues n mod p at which some form vanishes.
int nu_p(const LinearFormTuple& tuple, std::uint64_t p);

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<std::uint64_t> witness;
  /// Every prime that was examined, ascending.
  std::vector<std::uint64_t> primes_checked;
  std::vector<std::string> warnings;
};

AdmissibilityResult is_admissible(const LinearFormTuple& tuple);

enum class Assumption { Unconditional, GEH };
Assumption parse_assumption(std::string_view text);

/// Bound on the number of prime factors of the product, from the tables of
/// proven results. Returns nullopt when no bound is tabulated for k.
std::optional<int> rho(int k, Assumption assumption);

/// JSON {admissible, witness, k, rho_unconditional, rho_geh, ...}. Throws
/// InvalidInput (naming the witness prime) for an inadmissible tuple.
std::string rho_report(const LinearFormTuple& tuple, Assumption assumption);

}  // namespace sievelab
