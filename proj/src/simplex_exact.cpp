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

#include "sievelab/simplex_exact.hpp"

#include <algorithm>
#include <cmath>

namespace sievelab {

namespace {

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational rpow(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// y-polynomial helpers, dense ascending coefficients.
using Dense = std::vector<Rational>;

void add_scaled_one_minus_y_pow(Dense& out, const Rational& c, int m, int N) {
  // c * y^m * (1 - y)^N
  if (out.size() < static_cast<std::size_t>(m + N + 1)) out.resize(static_cast<std::size_t>(m + N + 1), Rational(0));
  for (int i = 0; i <= N; ++i) {
    Rational term = c * binomial(N, i);
    if (i % 2) term = -term;
    out[static_cast<std::size_t>(m + i)] += term;
  }
}

}  // namespace

MonomialIntegralTable::MonomialIntegralTable(int k) : k_(k) {
  if (k < 1) throw InvalidInput("simplex dimension must be positive");
}

Rational MonomialIntegralTable::get(std::span<const int> a) const {
  if (static_cast<int>(a.size()) > k_) throw InvalidInput("exponent vector longer than simplex dimension");
  std::vector<int> sorted(a.begin(), a.end());
  for (int v : sorted)
    if (v < 0) throw InvalidInput("exponents must be nonnegative");
  std::sort(sorted.rbegin(), sorted.rend());
  while (!sorted.empty() && sorted.back() == 0) sorted.pop_back();
  std::uint64_t key = 0;
  bool packable = sorted.size() <= 8;
  for (std::size_t i = 0; packable && i < sorted.size(); ++i) {
    if (sorted[i] > 255) packable = false;
    else key |= static_cast<std::uint64_t>(sorted[i]) << (8 * i);
  }
  if (packable) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Rational num = 1;
  int total = 0;
  for (int v : sorted) {
    num *= factorial(v);
    total += v;
  }
  Rational r = num / factorial(k_ + total);
  if (packable) {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, r);
  }
  return r;
}

Rational simplex_monomial(int k, std::span<const int> a, const Rational& u) {
  MonomialIntegralTable table(k);
  int total = 0;
  for (int v : a) total += v;
  return rpow(u, k + total) * table.get(a);
}

// ---------------------------------------------------------------------------

SparsePoly SparsePoly::constant(int nvars, const Rational& c) {
  SparsePoly p(nvars);
  p.add_term(0, c);
  return p;
}

SparsePoly SparsePoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InvalidInput("variable index out of range");
  SparsePoly p(nvars);
  p.add_term(std::uint64_t{1} << (4 * i), 1);
  return p;
}

void SparsePoly::add_term(std::uint64_t key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  SparsePoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly r(std::max(n_, o.n_));
  r.terms_.reserve(terms_.size() * o.terms_.size() / 2 + 1);
  Rational prod;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      for (int i = 0; i < r.n_; ++i)
        if (exponent(ka, i) + exponent(kb, i) > 15) throw InvalidInput("polynomial degree exceeds 15 in one variable");
      prod = ca * cb;
      r.add_term(ka + kb, prod);
    }
  return r;
}

SparsePoly SparsePoly::scaled(const Rational& c) const {
  SparsePoly r(n_);
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

SparsePoly SparsePoly::pow(int e) const {
  SparsePoly r = constant(n_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

SparsePoly SparsePoly::shift(int i, int j) const {
  SparsePoly r(n_);
  for (const auto& [key, c] : terms_) {
    const int a = exponent(key, i);
    const std::uint64_t base = key & ~(std::uint64_t{0xF} << (4 * i));
    for (int m = 0; m <= a; ++m) {
      // x_i^m x_j^(a-m)
      if (exponent(base, j) + (a - m) > 15) throw InvalidInput("polynomial degree exceeds 15 in one variable");
      std::uint64_t k2 = base + (static_cast<std::uint64_t>(m) << (4 * i)) + (static_cast<std::uint64_t>(a - m) << (4 * j));
      r.add_term(k2, c * binomial(a, m));
    }
  }
  return r;
}

Rational SparsePoly::evaluate(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidInput("point dimension does not match polynomial");
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    Rational v = c;
    for (int i = 0; i < n_; ++i) v *= rpow(x[static_cast<std::size_t>(i)], exponent(key, i));
    total += v;
  }
  return total;
}

SparsePoly expand(const SymmetricPolynomial& F, int nvars) {
  const int k = F.k();
  if (nvars < k || nvars > 15) throw InvalidInput("expansion needs k <= nvars <= 15");
  const auto raw = F.to_basis(Basis::Raw);
  std::vector<SparsePoly> psum(static_cast<std::size_t>(raw.max_power_sum()) + 1, SparsePoly(nvars));
  for (int j = 1; j <= raw.max_power_sum(); ++j)
    for (int i = 0; i < k; ++i) psum[static_cast<std::size_t>(j)] = psum[static_cast<std::size_t>(j)] + SparsePoly::variable(nvars, i).pow(j);
  SparsePoly out(nvars);
  for (const auto& term : raw.terms()) {
    SparsePoly t = SparsePoly::constant(nvars, term.coeff);
    for (const auto& [j, e] : term.exponents) t = t * psum[static_cast<std::size_t>(j)].pow(e);
    out = out + t;
  }
  return out;
}

namespace {

int total_degree(std::uint64_t key, int nvars) {
  int d = 0;
  for (int i = 0; i < nvars; ++i) d += SparsePoly::exponent(key, i);
  return d;
}

std::vector<int> exps(std::uint64_t key, int count) {
  std::vector<int> a(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) a[static_cast<std::size_t>(i)] = SparsePoly::exponent(key, i);
  return a;
}

}  // namespace

Rational conjecture_J(const SymmetricPolynomial& F) {
  const int k = F.k();
  auto P = expand(F, k);
  auto sq = P * P;
  MonomialIntegralTable table(k);
  Rational total = 0;
  for (const auto& [key, c] : sq.terms()) total += c * table.get(exps(key, k));
  return total;
}

double ConjectureJ0::value(const Rational& theta) const {
  return to_double(polynomial_part) + to_double(log_coeff) * std::log(to_double(Rational(1) / theta));
}

ConjectureJ0 conjecture_J0(const SymmetricPolynomial& F, const Rational& theta) {
  if (theta <= 0 || theta > 1) throw InvalidInput("theta must lie in (0, 1]");
  const int k = F.k();
  if (k + 1 > 15) throw InvalidInput("exact path supports k <= 14");
  const int yv = k;  // shift variable index
  MonomialIntegralTable table(k);

  auto P = expand(F, k + 1);
  auto sq = P * P;
  Rational J = 0;
  for (const auto& [key, c] : sq.terms()) J += c * table.get(exps(key, k));

  // Unshifted part over the shrunken simplex: I_1(y) = sum c y^m (1-y)^(k+|a|) M(a)
  auto G = P - P.shift(0, yv);
  auto G2 = G * G;
  Dense I;
  for (const auto& [key, c] : G2.terms()) {
    const int m = SparsePoly::exponent(key, yv);
    const int deg = total_degree(key, k);
    add_scaled_one_minus_y_pow(I, c * table.get(exps(key, k)), m, k + deg);
  }
  // Shell part: I_2(y) = J - sum d (1-y)^(k+|b|) M(b)
  if (I.empty()) I.resize(1, Rational(0));
  I[0] += J;
  for (const auto& [key, c] : sq.terms()) {
    const int deg = total_degree(key, k);
    add_scaled_one_minus_y_pow(I, -c * table.get(exps(key, k)), 0, k + deg);
  }
  if (I[0] != 0) throw NumericalError("shift integral does not vanish at y = 0");

  // int_0^1 (1 - theta y) I(y)/y dy, and the y > 1 tail J (ln(1/theta) - 1 + theta).
  const Rational upper = Rational(Rational(1) / theta) < 1 ? Rational(Rational(1) / theta) : Rational(1);
  Rational poly = 0;
  for (std::size_t i = 1; i < I.size(); ++i) {
    const Rational& q = I[i];  // coefficient of y^(i-1) after dividing by y
    if (q == 0) continue;
    const int e = static_cast<int>(i);
    poly += q * (rpow(upper, e) / e - theta * rpow(upper, e + 1) / (e + 1));
  }
  ConjectureJ0 out;
  out.J = J;
  if (Rational(1) / theta > 1) {
    poly += J * (theta - 1);
    out.log_coeff = J;
  }
  out.polynomial_part = poly;
  return out;
}

}  // namespace sievelab
