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

#include "sievelab/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "json.hpp"

namespace sievelab {

namespace {

Rational binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

template <class T>
T ipow(T base, int e) {
  T acc = 1;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

template <class T>
T evaluate_terms(int k, Basis basis, const std::vector<PowerSumTerm>& terms, std::span<const T> t) {
  if (static_cast<int>(t.size()) != k)
    throw InvalidInput("point has " + std::to_string(t.size()) + " coordinates, polynomial expects " +
                       std::to_string(k));
  int jmax = 0;
  for (const auto& term : terms)
    for (const auto& [j, e] : term.exponents) jmax = std::max(jmax, j);
  std::vector<T> p(static_cast<std::size_t>(jmax) + 1, T(0));
  for (int j = 1; j <= jmax; ++j)
    for (const auto& ti : t) p[j] += ipow(T(ti), j);
  if (jmax >= 1 && basis == Basis::Shifted) p[1] = T(1) - p[1];

  T total = 0;
  for (const auto& term : terms) {
    T v;
    if constexpr (std::is_same_v<T, double>) v = term.coeff.get_d();
    else v = T(term.coeff);
    for (const auto& [j, e] : term.exponents) v *= ipow(p[j], e);
    total += v;
  }
  return total;
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::Shifted ? "shifted" : "raw"; }

Basis parse_basis(std::string_view text) {
  if (text == "shifted") return Basis::Shifted;
  if (text == "raw") return Basis::Raw;
  throw InvalidInput("unknown basis '" + std::string(text) + "' (expected shifted|raw)");
}

SymmetricPolynomial::SymmetricPolynomial(int k, Basis basis, std::vector<PowerSumTerm> terms)
    : k_(k), basis_(basis), terms_(std::move(terms)) {
  if (k < 1) throw InvalidInput("polynomial dimension k must be positive");
  for (const auto& term : terms_)
    for (const auto& [j, e] : term.exponents)
      if (j < 1 || e < 0) throw InvalidInput("power-sum index must be >= 1 and exponent >= 0");
  canonicalize();
}

SymmetricPolynomial SymmetricPolynomial::constant(int k, const Rational& c, Basis basis) {
  return SymmetricPolynomial(k, basis, {PowerSumTerm{c, {}}});
}

SymmetricPolynomial SymmetricPolynomial::p1_power(int k, int a, Basis basis) {
  PowerSumTerm t{Rational(1), {}};
  if (a > 0) t.exponents[1] = a;
  return SymmetricPolynomial(k, basis, {t});
}

void SymmetricPolynomial::canonicalize() {
  std::map<std::map<int, int>, Rational> merged;
  for (auto& term : terms_) {
    std::map<int, int> ex;
    for (const auto& [j, e] : term.exponents)
      if (e != 0) ex[j] = e;
    merged[ex] += term.coeff;
  }
  terms_.clear();
  for (auto& [ex, c] : merged)
    if (c != 0) terms_.push_back(PowerSumTerm{c, ex});
}

double SymmetricPolynomial::evaluate(std::span<const double> t) const {
  return evaluate_terms<double>(k_, basis_, terms_, t);
}

Rational SymmetricPolynomial::evaluate(std::span<const Rational> t) const {
  return evaluate_terms<Rational>(k_, basis_, terms_, t);
}

SymmetricPolynomial SymmetricPolynomial::to_basis(Basis target) const {
  if (target == basis_) return *this;
  // B_1 <-> 1 - B_1 is an involution: X^a = sum_i C(a,i) (-1)^i (1-X)^i.
  std::vector<PowerSumTerm> out;
  for (const auto& term : terms_) {
    auto it = term.exponents.find(1);
    if (it == term.exponents.end()) {
      out.push_back(term);
      continue;
    }
    const int a = it->second;
    for (int i = 0; i <= a; ++i) {
      PowerSumTerm t = term;
      t.coeff = term.coeff * binomial(a, i) * ((i % 2) ? -1 : 1);
      if (i == 0)
        t.exponents.erase(1);
      else
        t.exponents[1] = i;
      out.push_back(std::move(t));
    }
  }
  return SymmetricPolynomial(k_, target, std::move(out));
}

bool SymmetricPolynomial::p1_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PowerSumTerm& t) {
    return std::all_of(t.exponents.begin(), t.exponents.end(), [](const auto& je) { return je.first == 1; });
  });
}

int SymmetricPolynomial::degree() const {
  int d = 0;
  for (const auto& term : terms_) {
    int td = 0;
    for (const auto& [j, e] : term.exponents) td += j * e;
    d = std::max(d, td);
  }
  return d;
}

int SymmetricPolynomial::max_power_sum() const {
  int m = 0;
  for (const auto& term : terms_)
    for (const auto& [j, e] : term.exponents) m = std::max(m, j);
  return m;
}

SymmetricPolynomial SymmetricPolynomial::operator+(const SymmetricPolynomial& o) const {
  if (o.k_ != k_) throw InvalidInput("cannot add polynomials of different dimension");
  auto rhs = o.to_basis(basis_);
  auto terms = terms_;
  terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
  return SymmetricPolynomial(k_, basis_, std::move(terms));
}

SymmetricPolynomial SymmetricPolynomial::operator-(const SymmetricPolynomial& o) const {
  return *this + o.scaled(Rational(-1));
}

SymmetricPolynomial SymmetricPolynomial::scaled(const Rational& c) const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff *= c;
  return SymmetricPolynomial(k_, basis_, std::move(terms));
}

std::string SymmetricPolynomial::to_string() const {
  std::ostringstream os;
  os << "k=" << k_ << ';' << sievelab::to_string(basis_) << ';';
  for (const auto& term : terms_) {
    os << sievelab::to_string(term.coeff);
    for (const auto& [j, e] : term.exponents) os << "*B" << j << '^' << e;
    os << ';';
  }
  return os.str();
}

DiagonalPolynomial::DiagonalPolynomial(int k, std::vector<Rational> coeffs) : k_(k), coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0);
  antider_.assign(coeffs_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) antider_[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
  for (const auto& c : coeffs_) fd_.push_back(c.get_d());
  for (const auto& c : antider_) ad_.push_back(c.get_d());
}

double DiagonalPolynomial::operator()(double x) const { return horner(fd_, x); }

double DiagonalPolynomial::antiderivative(double x) const { return horner(ad_, x); }

Rational DiagonalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

DiagonalPolynomial DiagonalPolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
  return DiagonalPolynomial(k_, std::move(d));
}

DiagonalPolynomial DiagonalPolynomial::squared() const {
  std::vector<Rational> sq(2 * coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < coeffs_.size(); ++j) sq[i + j] += coeffs_[i] * coeffs_[j];
  return DiagonalPolynomial(k_, std::move(sq));
}

std::vector<double> DiagonalPolynomial::shifted_coeffs(double y) const {
  // Taylor shift: sum_j c_j (x+y)^j.
  std::vector<double> out(fd_);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) out[j - 1] += y * out[j];
  return out;
}

DiagonalPolynomial diagonal_reduce(const SymmetricPolynomial& F) {
  if (!F.p1_only())
    throw NotAvailable("diagonal reduction needs a polynomial in P_1 only; this one involves P_" +
                       std::to_string(F.max_power_sum()) + " (use the exact simplex path instead)");
  const auto raw = F.to_basis(Basis::Raw);
  std::vector<Rational> c(static_cast<std::size_t>(raw.degree()) + 1, Rational(0));
  for (const auto& term : raw.terms()) {
    auto it = term.exponents.find(1);
    const int a = it == term.exponents.end() ? 0 : it->second;
    c[a] += term.coeff;
  }
  return DiagonalPolynomial(F.k(), std::move(c));
}

double int_clipped(const DiagonalPolynomial& f, double a, double b, double u) {
  const double cap = 1.0 + u;
  return f.antiderivative(std::min(b, cap)) - f.antiderivative(std::min(a, cap));
}

bool in_support(std::span<const double> t, Support support) {
  double sum = 0.0, lo = 1.0;
  for (double v : t) {
    if (v < 0.0 || v > 1.0) return false;
    sum += v;
    lo = std::min(lo, v);
  }
  if (support == Support::Simplex) return sum <= 1.0;
  return t.empty() || sum - lo <= 1.0;
}

double shift_evaluate(const SymmetricPolynomial& F, std::span<const double> t, int j, double y,
                      std::optional<Support> support) {
  if (static_cast<int>(t.size()) != F.k()) throw InvalidInput("point dimension does not match polynomial");
  if (j < 1 || j > F.k()) throw InvalidInput("shift coordinate out of range");
  std::vector<double> p(t.begin(), t.end());
  p[j - 1] += y;
  if (support && !in_support(p, *support)) return 0.0;
  return F.evaluate(p);
}

}  // namespace sievelab

namespace sievelab {

SymmetricPolynomial polynomial_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("polynomial file is not valid JSON: ") + e.what());
  }
  try {
    const int k = j.at("k").get<int>();
    const Basis basis = parse_basis(j.value("basis", std::string("shifted")));
    std::vector<PowerSumTerm> terms;
    for (const auto& t : j.at("terms")) {
      PowerSumTerm term;
      const auto& c = t.at("c");
      term.coeff = c.is_string() ? parse_rational(c.get<std::string>()) : parse_rational(c.dump());
      if (t.contains("e"))
        for (const auto& [key, val] : t.at("e").items()) {
          const int idx = std::stoi(key);
          const int e = val.get<int>();
          if (idx < 1 || e < 0) throw InvalidInput("power-sum index must be >= 1 and exponent >= 0");
          if (e > 0) term.exponents[idx] += e;
        }
      terms.push_back(std::move(term));
    }
    return SymmetricPolynomial(k, basis, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial file: ") + e.what());
  }
}

std::string polynomial_to_json(const SymmetricPolynomial& F) {
  nlohmann::ordered_json j;
  j["k"] = F.k();
  j["basis"] = std::string(to_string(F.basis()));
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : F.terms()) {
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    for (const auto& [idx, ex] : t.exponents) e[std::to_string(idx)] = ex;
    terms.push_back({{"c", sievelab::to_string(t.coeff)}, {"e", e}});
  }
  j["terms"] = terms;
  return j.dump(1);
}

SymmetricPolynomial load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open polynomial file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return polynomial_from_json(ss.str());
}

}  // namespace sievelab
