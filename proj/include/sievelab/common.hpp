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

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sievelab {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class SieveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (dimension mismatch, s > r, ...).
class InvalidInput : public SieveError {
 public:
  using SieveError::SieveError;
};

/// The requested combination has no evaluation path; the message names the
/// missing path and the alternative.
class NotAvailable : public SieveError {
 public:
  using SieveError::SieveError;
};

/// Numerical failure with a concrete cause (NaN integrand, eigensolver
/// non-convergence, degenerate basis).
class NumericalError : public SieveError {
 public:
  using SieveError::SieveError;
};

/// Parses "p/q", an integer, or a finite decimal ("0.355") into an exact
/// rational. Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1) rendering.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Support of the sieve weight F: the simplex R_k = {sum t_i <= 1} or the
/// extended region R'_k = {sum_{i != j} t_i <= 1 for every j}.
enum class Support { Simplex, Extended };

std::string_view to_string(Support s);
Support parse_support(std::string_view text);

}  // namespace sievelab
