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

#include "sievelab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace sievelab {

namespace {

std::vector<Rational> zeros(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)); }

LinearConstraint lt(std::vector<Rational> coeffs, Rational rhs) {
  return {std::move(coeffs), std::move(rhs), Sense::Less};
}

}  // namespace

Region::Region(int dim, std::vector<Interval> box, std::vector<LinearConstraint> constraints, std::string label)
    : dim_(dim), box_(std::move(box)), constraints_(std::move(constraints)), label_(std::move(label)) {
  if (dim_ <= 0) throw InvalidInput("region dimension must be positive");
  if (static_cast<int>(box_.size()) != dim_) throw InvalidInput("region box size does not match dimension");
  for (const auto& c : constraints_)
    if (static_cast<int>(c.coeffs.size()) != dim_) throw InvalidInput("constraint size does not match dimension");
  for (const auto& b : box_) {
    lo_.push_back(to_double(b.lo));
    hi_.push_back(to_double(b.hi));
  }
  for (const auto& c : constraints_) {
    std::vector<double> row;
    for (const auto& a : c.coeffs) row.push_back(to_double(a));
    coeffs_.push_back(std::move(row));
    rhs_.push_back(to_double(c.rhs));
  }
}

bool Region::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidInput("point dimension does not match region");
  for (int i = 0; i < dim_; ++i)
    if (!(x[i] >= lo_[i] && x[i] <= hi_[i])) return false;
  for (std::size_t c = 0; c < coeffs_.size(); ++c) {
    double v = 0.0;
    for (int i = 0; i < dim_; ++i) v += coeffs_[c][i] * x[i];
    if (v > rhs_[c]) return false;
  }
  return true;
}

double Region::slack(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidInput("point dimension does not match region");
  double s = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim_; ++i) s = std::min({s, x[i] - lo_[i], hi_[i] - x[i]});
  for (std::size_t c = 0; c < coeffs_.size(); ++c) {
    double v = 0.0;
    for (int i = 0; i < dim_; ++i) v += coeffs_[c][i] * x[i];
    s = std::min(s, rhs_[c] - v);
  }
  return s;
}

double Region::box_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= std::max(0.0, hi_[i] - lo_[i]);
  return v;
}

Region Region::with(std::vector<LinearConstraint> extra, std::string label) const {
  auto cs = constraints_;
  for (auto& c : extra) cs.push_back(std::move(c));
  return Region(dim_, box_, std::move(cs), std::move(label));
}

Region make_support(int k, Support kind) {
  if (k < 1) throw InvalidInput("support dimension must be positive");
  std::vector<Interval> box(static_cast<std::size_t>(k), Interval{0, 1});
  std::vector<LinearConstraint> cs;
  if (kind == Support::Simplex) {
    cs.push_back({std::vector<Rational>(static_cast<std::size_t>(k), Rational(1)), 1, Sense::LessEq});
    return Region(k, box, cs, "support:simplex:k=" + std::to_string(k));
  }
  for (int j = 0; j < k; ++j) {
    std::vector<Rational> row(static_cast<std::size_t>(k), Rational(1));
    row[j] = 0;
    cs.push_back({row, 1, Sense::LessEq});
  }
  return Region(k, box, cs, "support:extended:k=" + std::to_string(k));
}

Region make_correction_domain(int r, int s, const SieveParams& params) {
  if (s < 1 || s > r) throw InvalidInput("correction domain requires 1 <= s <= r");
  if (r < 2) throw InvalidInput("correction domain requires r >= 2; (1,1) has no shift variables");
  const int n = r - 1;
  const Rational& th = params.theta;
  const Rational& th0 = params.theta0;
  const Rational cut = th0 / th;
  const Rational lo = params.epsilon / th;
  const Rational inv = Rational(1) / th;
  std::vector<Interval> box(static_cast<std::size_t>(n), Interval{lo, inv});
  std::vector<LinearConstraint> cs;
  for (int i = 0; i + 1 < n; ++i) {
    auto row = zeros(n);
    row[i] = 1;
    row[i + 1] = -1;
    cs.push_back(lt(row, 0));
  }
  // y_{r-s} <= theta0/theta < y_{r-s+1} (1-based)
  if (r - s >= 1) {
    auto row = zeros(n);
    row[r - s - 1] = 1;
    cs.push_back({row, cut, Sense::LessEq});
  }
  if (s >= 2) {
    auto row = zeros(n);
    row[r - s] = -1;
    cs.push_back(lt(row, -cut));
  }
  auto all = std::vector<Rational>(static_cast<std::size_t>(n), Rational(1));
  {
    auto row = all;
    row[n - 1] += 1;
    cs.push_back(lt(row, inv));
  }
  cs.push_back(lt(all, (Rational(1) - th0) / th));
  if (params.mode == Mode::Flat) cs.push_back(lt(all, (Rational(1) - th) / th));
  std::string label = "A:" + std::to_string(r) + "," + std::to_string(s);
  if (params.mode == Mode::Flat) label += ":flat";
  return Region(n, box, cs, label);
}

Region lift_ts(const Region& shifts, const std::string& label) {
  const int n = shifts.dim();
  auto box = shifts.box();
  box.push_back({0, 1});
  box.push_back({0, 1});
  std::vector<LinearConstraint> cs;
  for (const auto& c : shifts.constraints()) {
    auto row = c.coeffs;
    row.push_back(0);
    row.push_back(0);
    cs.push_back({row, c.rhs, c.sense});
  }
  auto row = zeros(n + 2);
  row[n] = -1;
  row[n + 1] = 1;
  cs.push_back(lt(row, 0));
  return Region(n + 2, box, cs, label);
}

namespace {

// Offset c = sum of the selected shift coordinates, as a bit mask.
struct Window {
  int lo_mask = 0;
  int hi_mask = -1;  // -1: unbounded above
};

// t + c_lo < 1 + s/(k-1) < t + c_hi over coordinates (shifts..., t, s).
std::vector<LinearConstraint> window_constraints(int n, int k, const Window& w) {
  const Rational inv_k1(1, k - 1);
  std::vector<LinearConstraint> cs;
  {
    auto row = zeros(n + 2);
    for (int i = 0; i < n; ++i)
      if (w.lo_mask >> i & 1) row[i] = 1;
    row[n] = 1;
    row[n + 1] = -inv_k1;
    cs.push_back(lt(row, 1));
  }
  if (w.hi_mask >= 0) {
    auto row = zeros(n + 2);
    for (int i = 0; i < n; ++i)
      if (w.hi_mask >> i & 1) row[i] = -1;
    row[n] = -1;
    row[n + 1] = inv_k1;
    cs.push_back(lt(row, -1));
  }
  return cs;
}

// sign * (c_a - c_b) < 0 over shift coordinates, i.e. c_a < c_b for sign = 1.
LinearConstraint offset_less(int n, int a_mask, int b_mask) {
  auto row = zeros(n + 2);
  for (int i = 0; i < n; ++i) {
    if (a_mask >> i & 1) row[i] += 1;
    if (b_mask >> i & 1) row[i] -= 1;
  }
  return lt(row, 0);
}

}  // namespace

std::vector<std::string> decomposition_labels() { return {"R2", "R3", "R3p", "R4"}; }

Decomposition make_decomposition(std::string_view label, const SieveParams& params) {
  const int k = params.k;
  Decomposition d{std::string(label), k, Region(1, {{0, 1}}, {}, ""), {}};
  auto build = [&](int r, int s, const std::vector<std::pair<Window, std::vector<std::pair<int, int>>>>& spec) {
    const int n = r - 1;
    d.parent = lift_ts(make_correction_domain(r, s, params), d.label);
    int idx = 1;
    for (const auto& [win, order] : spec) {
      auto cs = window_constraints(n, k, win);
      for (const auto& [a, b] : order) cs.push_back(offset_less(n, a, b));
      d.children.push_back(d.parent.with(cs, d.label + "." + std::to_string(idx++)));
    }
  };
  // Bit i selects shift coordinate i (ascending order: bit 0 is the smallest).
  if (label == "R2") {
    build(2, 1, {{{0, 1}, {}}, {{1, -1}, {}}});
  } else if (label == "R3") {
    // offsets 0 < z < y < y+z with z = bit 0, y = bit 1
    build(3, 1, {{{0, 1}, {}}, {{1, 2}, {}}, {{2, 3}, {}}, {{3, -1}, {}}});
  } else if (label == "R3p") {
    build(3, 2, {{{0, 1}, {}}, {{1, -1}, {}}});
  } else if (label == "R4") {
    // w = bit 0, z = bit 1, y = bit 2; "y > z+w" is offset_less(3, 4).
    const int w = 1, z = 2, y = 4;
    const std::pair<int, int> big{z | w, y}, small{y, z | w};
    build(4, 1, {{{0, w}, {}},
                 {{w, z}, {}},
                 {{z, z | w}, {big}},
                 {{z | w, y}, {big}},
                 {{y, y | w}, {big}},
                 {{z, y}, {small}},
                 {{y, z | w}, {small}},
                 {{z | w, y | w}, {small}},
                 {{y | w, y | z}, {}},
                 {{y | z, y | z | w}, {}},
                 {{y | z | w, -1}, {}}});
  } else {
    throw InvalidInput("unknown decomposition '" + std::string(label) + "' (expected R2|R3|R3p|R4)");
  }
  return d;
}

Region named_region(std::string_view label, const SieveParams& params) {
  std::string l(label);
  if (l == "support:simplex") return make_support(params.k, Support::Simplex);
  if (l == "support:extended") return make_support(params.k, Support::Extended);
  if (l.rfind("A:", 0) == 0) {
    auto comma = l.find(',');
    if (comma == std::string::npos) throw InvalidInput("expected A:r,s");
    return make_correction_domain(std::stoi(l.substr(2, comma - 2)), std::stoi(l.substr(comma + 1)), params);
  }
  auto dot = l.find('.');
  auto d = make_decomposition(l.substr(0, dot), params);
  if (dot == std::string::npos) return d.parent;
  int idx = std::stoi(l.substr(dot + 1));
  if (idx < 1 || idx > static_cast<int>(d.children.size()))
    throw InvalidInput("piece index out of range for " + d.label);
  return d.children[static_cast<std::size_t>(idx - 1)];
}

namespace {

void propose(const Region& region, UniformRng& rng, std::vector<double>& x) {
  auto lo = region.lower();
  auto hi = region.upper();
  for (int i = 0; i < region.dim(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * rng.next();
}

}  // namespace

SampleResult sample(const Region& region, std::uint64_t seed, std::size_t n) {
  constexpr std::uint64_t kProbe = 10'000'000;
  UniformRng rng(seed);
  SampleResult out;
  out.dim = region.dim();
  out.points.reserve(n * static_cast<std::size_t>(region.dim()));
  std::vector<double> x(static_cast<std::size_t>(region.dim()));
  std::size_t got = 0;
  while (got < n) {
    propose(region, rng, x);
    ++out.proposals;
    if (region.contains(x)) {
      out.points.insert(out.points.end(), x.begin(), x.end());
      ++got;
    }
    if (out.proposals == kProbe && static_cast<double>(got) < 1e-6 * static_cast<double>(kProbe))
      throw NumericalError("region '" + region.label() + "' is possibly empty: acceptance below 1e-6 after 1e7 proposals");
  }
  out.acceptance = out.proposals ? static_cast<double>(got) / static_cast<double>(out.proposals) : 0.0;
  return out;
}

std::uint64_t count_hits(const Region& region, std::uint64_t seed, std::uint64_t proposals) {
  UniformRng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(region.dim()));
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < proposals; ++i) {
    propose(region, rng, x);
    if (region.contains(x)) ++hits;
  }
  return hits;
}

std::string region_json(const Region& region) {
  nlohmann::ordered_json j;
  j["label"] = region.label();
  j["dim"] = region.dim();
  auto box = nlohmann::ordered_json::array();
  for (const auto& b : region.box()) box.push_back({to_string(b.lo), to_string(b.hi)});
  j["box"] = box;
  auto cs = nlohmann::ordered_json::array();
  for (const auto& c : region.constraints()) {
    nlohmann::ordered_json row;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& a : c.coeffs) coeffs.push_back(to_string(a));
    row["coeffs"] = coeffs;
    row["sense"] = c.sense == Sense::Less ? "<" : "<=";
    row["rhs"] = to_string(c.rhs);
    cs.push_back(row);
  }
  j["constraints"] = cs;
  return j.dump(2);
}

}  // namespace sievelab
