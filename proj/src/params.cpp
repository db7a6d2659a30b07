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

#include "sievelab/params.hpp"

#include <algorithm>
#include <sstream>

namespace sievelab {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Standard: return "standard";
    case Mode::Flat: return "flat";
    case Mode::Conjecture: return "conjecture";
  }
  return "standard";
}

Mode parse_mode(std::string_view text) {
  if (text == "standard") return Mode::Standard;
  if (text == "flat") return Mode::Flat;
  if (text == "conjecture") return Mode::Conjecture;
  throw InvalidInput("unknown mode '" + std::string(text) + "' (expected standard|flat|conjecture)");
}

SieveParams SieveParams::standard(int k, Rational theta, Rational theta0, Support support,
                                  std::vector<Correction> corrections) {
  SieveParams p;
  p.k = k;
  p.theta = std::move(theta);
  p.theta0 = std::move(theta0);
  p.support = support;
  p.corrections = std::move(corrections);
  p.mode = Mode::Standard;
  p.validate();
  return p;
}

SieveParams SieveParams::flat(int k, Rational theta, Support support, std::vector<Correction> corrections) {
  SieveParams p;
  p.k = k;
  p.theta0 = Rational(1) - 2 * theta;
  p.theta = std::move(theta);
  p.support = support;
  p.corrections = std::move(corrections);
  p.mode = Mode::Flat;
  p.validate();
  return p;
}

SieveParams SieveParams::conjecture(int k, Rational theta, Support support) {
  SieveParams p;
  p.k = k;
  p.theta = std::move(theta);
  p.theta0 = 1;
  p.support = support;
  p.mode = Mode::Conjecture;
  p.validate();
  return p;
}

std::vector<std::string> SieveParams::validate() const {
  if (k < 3) throw InvalidInput("k must be at least 3");
  if (theta <= 0 || theta > Rational(1, 2)) throw InvalidInput("theta must lie in (0, 1/2]");
  if (theta0 <= 0 || theta0 > 1) throw InvalidInput("theta0 must lie in (0, 1]");
  if (epsilon < 0) throw InvalidInput("epsilon must be nonnegative");
  for (const auto& c : corrections) {
    if (c.s < 1 || c.r < 1) throw InvalidInput("correction indices must be positive");
    if (c.s > c.r) throw InvalidInput("correction (r,s) requires s <= r");
  }
  if (mode == Mode::Flat && theta0 != Rational(1) - 2 * theta)
    throw InvalidInput("flat mode requires theta0 = 1 - 2 theta");
  if (mode == Mode::Conjecture && theta0 != 1) throw InvalidInput("conjecture mode requires theta0 = 1");

  std::vector<std::string> warnings;
  if (mode == Mode::Standard && theta > theta0) warnings.push_back("theta > theta0: standard mode assumes theta <= theta0");
  if (mode != Mode::Conjecture) {
    const Rational lhs = support == Support::Simplex ? Rational(theta0 + 2 * theta)
                                                     : Rational(theta0 + Rational(2 * k, k - 1) * theta);
    if (lhs >= 1)
      warnings.push_back(support == Support::Simplex ? "theta0 + 2 theta >= 1"
                                                     : "theta0 + 2k/(k-1) theta >= 1");
  }
  return warnings;
}

std::string SieveParams::key() const {
  std::ostringstream os;
  os << "k=" << k << ";theta=" << sievelab::to_string(theta) << ";theta0=" << sievelab::to_string(theta0)
     << ";support=" << sievelab::to_string(support) << ";mode=" << sievelab::to_string(mode)
     << ";eps=" << sievelab::to_string(epsilon) << ";corr=" << sievelab::to_string(corrections);
  return os.str();
}

std::vector<Correction> parse_corrections(std::string_view text) {
  std::string s(text);
  if (s.empty() || s == "none") return {};
  if (s == "all") return {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {3, 3}};
  std::vector<Correction> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto comma = item.find(',');
    if (comma == std::string::npos) throw InvalidInput("correction '" + item + "' must look like r,s");
    try {
      Correction c{std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1))};
      if (c.s > c.r || c.s < 1) throw InvalidInput("correction (r,s) requires 1 <= s <= r");
      out.push_back(c);
    } catch (const std::logic_error&) {
      throw InvalidInput("correction '" + item + "' must look like r,s");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const std::vector<Correction>& cs) {
  if (cs.empty()) return "none";
  std::string out;
  for (const auto& c : cs) {
    if (!out.empty()) out += ';';
    out += std::to_string(c.r) + "," + std::to_string(c.s);
  }
  return out;
}

std::vector<Correction> headline_corrections() { return {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}}; }

}  // namespace sievelab
