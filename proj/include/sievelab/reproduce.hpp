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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/functionals.hpp"
#include "sievelab/golden.hpp"

namespace sievelab {

/// One compared value of a reproduction run.
struct ReproRow {
  std::string id;
  std::string description;
  double value = 0.0;
  double error = 0.0;
  std::string method;
  GoldenCell golden;
  bool pass = false;
  /// Informational rows are printed but do not decide the exit status.
  bool informational = false;
  std::string note;
};

struct ReproReport {
  std::string name;
  std::vector<ReproRow> rows;
  bool converged = true;

  bool all_pass() const;
  std::size_t failures() const;
  static std::string csv_header();
  std::string to_csv() const;
  std::string to_json() const;
};

/// Parameters of the headline evaluation: k = 5, (1/4, 3/8), extended,
/// corrections (1,1) (2,1) (3,1) (4,1) (2,2) (3,2).
SieveParams headline_params(int k = 5);

/// Tables "C", "D", "E", "F", "G", plus "final" (headline bound) and
/// "remark" (k = 3). Independent cells run on up to `threads` threads;
/// rows keep table order.
ReproReport reproduce(std::string_view which, const QuadConfig& cfg, int threads = 1);
std::vector<std::string> reproduce_targets();

struct PieceCheck {
  std::string label;
  double quadrature = 0.0;
  double quadrature_error = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  bool oracle_agree = false;
  std::optional<GoldenCell> golden;
  bool golden_pass = true;
};

struct VerifyReport {
  std::string label;
  /// "raw" (before 1/(k-3)!) or "scaled".
  std::string scale;
  std::uint64_t partition_samples = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t allowed_ambiguous = 0;
  std::vector<double> counterexample;
  bool partition_ok = true;
  std::vector<PieceCheck> pieces;
  double piece_sum = 0.0;
  double parent = 0.0;
  double parent_error = 0.0;
  bool additivity_ok = true;
  std::optional<GoldenCell> total_golden;
  double total_scaled = 0.0;
  bool total_pass = true;
  /// Sum of the pieces truncated to the printed number of decimals.
  std::optional<double> truncated_sum;
  /// Group totals compared with published values (explicit fixtures).
  std::vector<ReproRow> groups;

  bool oracle_ok() const;
  bool pass() const;
  std::string to_json() const;
};

/// Decomposition labels "R2", "R3", "R3p", "R4", and "explicit" for the
/// k = 5 explicit-limit fixture set. Uses cfg.mc_samples and cfg.seed.
VerifyReport verify_decomposition(std::string_view label, const QuadConfig& cfg);

/// Maps jobs onto at most `threads` worker threads; results keep job order.
template <typename T>
std::vector<T> run_parallel(const std::vector<std::function<T()>>& jobs, int threads);

/// Hardware concurrency, capped by SIEVE_LAB_THREADS when set and positive.
int default_threads();

}  // namespace sievelab

#include <atomic>
#include <exception>
#include <thread>

namespace sievelab {

template <typename T>
std::vector<T> run_parallel(const std::vector<std::function<T()>>& jobs, int threads) {
  std::vector<std::optional<T>> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        out[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<T> res;
  res.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

}  // namespace sievelab
