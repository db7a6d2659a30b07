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

#include "sievelab/tuples.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sievelab/common.hpp"

namespace sievelab {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used, 10);
  } catch (const std::exception&) {
    throw InvalidInput("malformed integer '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("malformed integer '" + s + "'");
  return v;
}

std::uint64_t mod(std::int64_t x, std::uint64_t p) {
  const auto m = static_cast<__int128>(x) % static_cast<__int128>(p);
  return static_cast<std::uint64_t>(m < 0 ? m + p : m);
}

void add_prime_factors(unsigned __int128 n, std::set<std::uint64_t>& out) {
  for (std::uint64_t d = 2; static_cast<unsigned __int128>(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.insert(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    // Cofactor beyond 64 bits cannot occur for products of two int64 values
    // whose small factors were removed unless it is itself prime.
    if (n <= static_cast<unsigned __int128>(UINT64_MAX)) out.insert(static_cast<std::uint64_t>(n));
  }
}

}  // namespace

LinearFormTuple::LinearFormTuple(std::vector<LinearForm1> forms) : forms_(std::move(forms)) {
  if (forms_.empty()) throw InvalidInput("a tuple needs at least one linear form");
  for (const auto& f : forms_)
    if (f.a <= 0) throw InvalidInput("leading coefficients A_i must be positive");
  for (std::size_t i = 0; i < forms_.size(); ++i)
    for (std::size_t j = i + 1; j < forms_.size(); ++j) {
      const __int128 res = static_cast<__int128>(forms_[i].a) * forms_[j].b -
                           static_cast<__int128>(forms_[j].a) * forms_[i].b;
      if (res == 0)
        throw InvalidInput("forms " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " share a root");
    }
}

LinearFormTuple LinearFormTuple::from_shifts(std::string_view text) {
  std::vector<LinearForm1> forms;
  for (const auto& tok : split(text, ',')) forms.push_back({1, parse_int(tok)});
  return LinearFormTuple(std::move(forms));
}

LinearFormTuple LinearFormTuple::from_forms(std::string_view text) {
  std::vector<LinearForm1> forms;
  for (const auto& tok : split(text, ',')) {
    auto parts = split(tok, ':');
    if (parts.size() != 2) throw InvalidInput("expected A:B, got '" + tok + "'");
    forms.push_back({parse_int(parts[0]), parse_int(parts[1])});
  }
  return LinearFormTuple(std::move(forms));
}

std::string LinearFormTuple::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (i) os << ", ";
    if (forms_[i].a != 1) os << forms_[i].a;
    os << 'n';
    if (forms_[i].b > 0) os << '+' << forms_[i].b;
    if (forms_[i].b < 0) os << forms_[i].b;
  }
  return os.str();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int nu_p(const LinearFormTuple& tuple, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("nu_p needs a prime, got " + std::to_string(p));
  int count = 0;
  for (std::uint64_t n = 0; n < p; ++n) {
    for (const auto& f : tuple.forms()) {
      const auto v = (static_cast<unsigned __int128>(mod(f.a, p)) * n + mod(f.b, p)) % p;
      if (v == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

AdmissibilityResult is_admissible(const LinearFormTuple& tuple) {
  // For p > k not dividing any A_i each form removes one residue, so only
  // small primes and primes dividing some A_i or some resultant can fail.
  std::set<std::uint64_t> cand;
  for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(std::max(tuple.k(), 2)); ++p)
    if (is_prime(p)) cand.insert(p);
  const auto& fs = tuple.forms();
  for (const auto& f : fs) add_prime_factors(static_cast<unsigned __int128>(f.a), cand);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      __int128 res = static_cast<__int128>(fs[i].a) * fs[j].b - static_cast<__int128>(fs[j].a) * fs[i].b;
      if (res < 0) res = -res;
      add_prime_factors(static_cast<unsigned __int128>(res), cand);
    }
  AdmissibilityResult out;
  for (auto p : cand) {
    out.primes_checked.push_back(p);
    if (static_cast<std::uint64_t>(nu_p(tuple, p)) == p) {
      out.admissible = false;
      out.witness = p;
      break;
    }
  }
  // Normalisation: all A_i built from the same primes, none dividing any B_i.
  std::set<std::uint64_t> first;
  add_prime_factors(static_cast<unsigned __int128>(fs.front().a), first);
  bool same = true, coprime = true;
  for (const auto& f : fs) {
    std::set<std::uint64_t> ps;
    add_prime_factors(static_cast<unsigned __int128>(f.a), ps);
    if (ps != first) same = false;
    for (auto p : ps)
      for (const auto& g : fs)
        if (mod(g.b, p) == 0) coprime = false;
  }
  if (!same) out.warnings.push_back("leading coefficients are not composed of the same primes");
  if (!coprime) out.warnings.push_back("a prime dividing some A_i also divides some B_j");
  return out;
}

Assumption parse_assumption(std::string_view text) {
  if (text == "unconditional") return Assumption::Unconditional;
  if (text == "GEH" || text == "geh") return Assumption::GEH;
  throw InvalidInput("unknown assumption '" + std::string(text) + "' (unconditional|GEH)");
}

std::optional<int> rho(int k, Assumption assumption) {
  // Unconditional: earlier table with k = 5 improved to 14 by the extended support.
  static const std::map<int, int> uncond = {{3, 7}, {4, 11}, {5, 14}, {6, 18}, {7, 22}, {8, 26}, {9, 30}, {10, 34}};
  // Under GEH[2/3]; k = 3 has no improvement over the unconditional value.
  static const std::map<int, int> geh = {{3, 7}, {4, 10}, {5, 13}, {6, 17}, {7, 20}, {8, 24}, {9, 28}, {10, 32}};
  const auto& table = assumption == Assumption::GEH ? geh : uncond;
  auto it = table.find(k);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string rho_report(const LinearFormTuple& tuple, Assumption assumption) {
  auto adm = is_admissible(tuple);
  if (!adm.admissible)
    throw InvalidInput("tuple is not admissible: every residue class mod " + std::to_string(*adm.witness) +
                       " is covered");
  nlohmann::ordered_json j;
  j["tuple"] = tuple.to_string();
  j["k"] = tuple.k();
  j["admissible"] = true;
  j["witness"] = nullptr;
  auto ru = rho(tuple.k(), Assumption::Unconditional);
  auto rg = rho(tuple.k(), Assumption::GEH);
  j["rho_unconditional"] = ru ? nlohmann::json(*ru) : nlohmann::json(nullptr);
  j["rho_geh"] = rg ? nlohmann::json(*rg) : nlohmann::json(nullptr);
  auto r = rho(tuple.k(), assumption);
  j["assumption"] = assumption == Assumption::GEH ? "GEH" : "unconditional";
  j["rho"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
  std::string src;
  if (assumption == Assumption::GEH)
    src = "conditional table under GEH[2/3]";
  else if (tuple.k() == 5)
    src = "main theorem, extended sieve support";
  else if (tuple.k() == 3)
    src = "k = 3 extended-support remark (earlier result reproved)";
  else
    src = "earlier unconditional table";
  j["provenance"] = src;
  if (r)
    j["statement"] = "Omega(P(n)) <= " + std::to_string(*r) + " for infinitely many n";
  j["warnings"] = adm.warnings;
  return j.dump(2);
}

}  // namespace sievelab
