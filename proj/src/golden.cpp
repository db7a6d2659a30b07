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

#include "sievelab/golden.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sievelab/common.hpp"

namespace sievelab {

namespace detail {
std::string_view embedded_golden();
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();
}  // namespace detail

bool GoldenCell::accepts(double x) const { return std::isfinite(x) && excess(x) == 0.0; }

double GoldenCell::excess(double x) const {
  if (cmp == "range") return x <= lo ? lo - x : (x >= hi ? x - hi : 0.0);
  if (cmp == "upper") return std::max(0.0, x - (value + tol));
  if (cmp == "lower") return x < value ? value - x : std::max(0.0, x - value - tol);
  return std::max(0.0, std::abs(x - value) - tol);
}

const std::vector<GoldenCell>& golden_cells() {
  static const std::vector<GoldenCell> cells = [] {
    std::vector<GoldenCell> out;
    const auto doc = nlohmann::json::parse(detail::embedded_golden());
    for (const auto& c : doc.at("cells")) {
      GoldenCell g;
      g.id = c.at("id").get<std::string>();
      g.value = c.at("value").get<double>();
      g.tol = c.at("tol").get<double>();
      g.cmp = c.value("cmp", "abs");
      g.anchor = c.value("anchor", "");
      g.lo = c.value("lo", 0.0);
      g.hi = c.value("hi", 0.0);
      g.k = c.value("k", 0);
      g.theta = c.value("theta", "");
      g.scale = c.value("scale", "");
      out.push_back(std::move(g));
    }
    return out;
  }();
  return cells;
}

const GoldenCell& golden(std::string_view id) {
  for (const auto& c : golden_cells())
    if (c.id == id) return c;
  throw InvalidInput("unknown golden value '" + std::string(id) + "'");
}

std::vector<GoldenCell> golden_prefix(std::string_view prefix) {
  std::vector<GoldenCell> out;
  for (const auto& c : golden_cells())
    if (std::string_view(c.id).substr(0, prefix.size()) == prefix) out.push_back(c);
  return out;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : detail::embedded_presets()) out.emplace_back(name);
  return out;
}

std::optional<SymmetricPolynomial> find_preset(std::string_view name) {
  for (const auto& [n, json] : detail::embedded_presets())
    if (n == name) return polynomial_from_json(json);
  return std::nullopt;
}

SymmetricPolynomial preset(std::string_view name) {
  if (auto p = find_preset(name)) return *p;
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown preset '" + std::string(name) + "'; known: " + known);
}

}  // namespace sievelab
