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

#include "sievelab/fixtures.hpp"

#include <limits>

namespace sievelab {

namespace {

constexpr double kTheta = 0.25;
constexpr double kTheta0 = 0.375;

// c + sum a_i x_i over the piece coordinates.
struct Affine {
  Rational c;
  std::vector<std::pair<int, Rational>> a;
};

Affine K(Rational c) { return {std::move(c), {}}; }
Affine V(int i, Rational coef = 1, Rational c = 0) { return {std::move(c), {{i, std::move(coef)}}}; }
Affine V2(int i, Rational ci, int j, Rational cj, Rational c) { return {std::move(c), {{i, std::move(ci)}, {j, std::move(cj)}}}; }

struct Limits {
  Affine lo, hi;
};

double eval(const Affine& f, Point x) {
  double v = to_double(f.c);
  for (const auto& [i, a] : f.a) v += to_double(a) * x[static_cast<std::size_t>(i)];
  return v;
}

class PieceBuilder {
 public:
  PieceBuilder(std::vector<Interval> box, std::vector<int> fixed) : box_(std::move(box)), fixed_(std::move(fixed)) {}

  ExplicitPiece make(std::string group, std::string label, const std::vector<Limits>& lim, Integrand g,
                     bool amended) const {
    const int n = static_cast<int>(lim.size());
    std::vector<LinearConstraint> cs;
    IteratedDomain dom(n);
    for (int L = 0; L < n; ++L) {
      // lo <= x_L and x_L <= hi as linear constraints
      std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
      row[static_cast<std::size_t>(L)] = -1;
      for (const auto& [i, a] : lim[static_cast<std::size_t>(L)].lo.a) row[static_cast<std::size_t>(i)] += a;
      cs.push_back({row, -lim[static_cast<std::size_t>(L)].lo.c, Sense::LessEq});
      std::vector<Rational> row2(static_cast<std::size_t>(n), Rational(0));
      row2[static_cast<std::size_t>(L)] = 1;
      for (const auto& [i, a] : lim[static_cast<std::size_t>(L)].hi.a) row2[static_cast<std::size_t>(i)] -= a;
      cs.push_back({row2, lim[static_cast<std::size_t>(L)].hi.c, Sense::LessEq});
      Level lv;
      lv.coord = L;
      Affine lo = lim[static_cast<std::size_t>(L)].lo, hi = lim[static_cast<std::size_t>(L)].hi;
      lv.lower = [lo](Point x) { return eval(lo, x); };
      lv.upper = [hi](Point x) { return eval(hi, x); };
      lv.fixed_nodes = fixed_[static_cast<std::size_t>(L)];
      dom.add_level(std::move(lv));
    }
    return {std::move(group), std::move(label), Region(n, box_, cs, label), std::move(dom), std::move(g), amended};
  }

 private:
  std::vector<Interval> box_;
  std::vector<int> fixed_;
};

}  // namespace

std::vector<ExplicitGroup> explicit_groups_k5() {
  return {{"J0;1", 11.3104037062, 2e-6},   {"J0;2", 20.2508453206, 2e-6}, {"R2;1", 15.2749404974, 2e-6},
          {"R2;2", 16.5050961382, 2e-6},   {"J2,2", 2 * 1.9342154969, 2e-6}, {"R3';1", 0.347, 2e-3},
          {"R3';2", 1.564, 2e-3}};
}

std::vector<ExplicitPiece> explicit_pieces_k5(const DiagonalPolynomial& f, bool as_printed) {
  if (f.k() != 5) throw InvalidInput("the explicit-limit fixtures are defined for k = 5");
  std::vector<ExplicitPiece> out;
  const auto A = f.antiderivative_double();
  const auto& fc = f.coeffs_double();
  const Rational q(1, 4), one(1), four(4);

  // J_0 halves over (y, t, s, x); x is integrated explicitly.
  {
    PieceBuilder pb({{0, Rational(3, 2)}, {0, 1}, {0, 1}, {0, Rational(5, 4)}}, {0, 8, 8, 8});
    auto w0 = [](double y) { return (kTheta0 - kTheta * y) / (kTheta0 * y); };
    Integrand diff = [w0, fc](Point x) {
      const double d = horner(fc, x[3]) - horner(fc, x[3] + x[0]);
      const double ts = x[1] - x[2];
      return w0(x[0]) * d * d * ts * ts;
    };
    Integrand shell = [w0, fc](Point x) {
      const double v = horner(fc, x[3]);
      const double ts = x[1] - x[2];
      return w0(x[0]) * v * v * ts * ts;
    };
    const Limits y_lo{K(0), K(q)}, y_hi{K(q), K(one)};
    const Limits t_a{K(0), V(0, -1, 1)};                              // 0 .. 1-y
    const Limits t_b{V(0, -1, 1), K(one)};                            // 1-y .. 1
    const Limits t_c{V(0, -1, 1), V(0, Rational(-4, 3), Rational(4, 3))};  // 1-y .. (4-4y)/3
    const Limits t_d{V(0, Rational(-4, 3), Rational(4, 3)), K(one)};   // (4-4y)/3 .. 1
    const Limits s_full{K(0), V(1)};
    const Limits s_up{V2(1, 4, 0, 4, -4), V(1)};   // 4t+4y-4 .. t
    const Limits s_dn{K(0), V2(1, 4, 0, 4, -4)};   // 0 .. 4t+4y-4
    const Affine lowx = V(1), cut{Rational(1), {{0, Rational(-1)}, {2, q}}}, clip{Rational(1), {{2, q}}};
    const Limits x_diff{lowx, cut}, x_shell{cut, clip}, x_full{lowx, clip};
    int i = 1;
    for (const auto& [yl, tl, sl] : std::vector<std::tuple<Limits, Limits, Limits>>{
             {y_lo, t_a, s_full}, {y_hi, t_a, s_full}, {y_lo, t_b, s_up}, {y_hi, t_c, s_up}})
      out.push_back(pb.make("J0;1", "J0;1[" + std::to_string(i++) + "]", {yl, tl, sl, x_diff}, diff, false));
    i = 1;
    const std::vector<std::tuple<Limits, Limits, Limits, Limits, bool>> shell_pieces = {
        {y_lo, t_a, s_full, x_shell, false},
        {y_hi, t_a, s_full, x_shell, false},
        {y_lo, t_b, s_up, x_shell, false},
        {y_hi, t_c, s_up, as_printed ? x_diff : x_shell, true},
        {y_hi, t_d, s_full, x_full, false},
        {y_lo, t_b, s_dn, x_full, false},
        {y_hi, t_c, s_dn, x_full, false},
        {Limits{K(one), K(Rational(3, 2))}, Limits{K(0), K(one)}, s_full, x_full, false}};
    for (const auto& [yl, tl, sl, xl, amended] : shell_pieces)
      out.push_back(pb.make("J0;2", "J0;2[" + std::to_string(i++) + "]", {yl, tl, sl, xl}, shell, amended));
  }

  // J_{2,1} and J_{2,2} over (y, t, s).
  {
    PieceBuilder pb({{0, 2}, {0, 1}, {0, 1}}, {0, 8, 8});
    auto w21 = [](double y) { return (1 - kTheta0 - kTheta * y) / (kTheta0 * y * (1 - kTheta * y)); };
    auto w22 = [](double y) { return (1 - 2 * kTheta0) / (kTheta0 * y * (1 - kTheta * y)); };
    Integrand clipped = [w21, A](Point x) {
      const double d = horner(A, 1 + x[2] / 4) - horner(A, x[1]);
      const double ts = x[1] - x[2];
      return w21(x[0]) * d * d * ts * ts;
    };
    Integrand unclipped = [w21, A](Point x) {
      const double d = horner(A, x[1] + x[0]) - horner(A, x[1]);
      const double ts = x[1] - x[2];
      return w21(x[0]) * d * d * ts * ts;
    };
    Integrand j22 = [w22, A](Point x) {
      const double d = horner(A, 1 + x[2] / 4) - horner(A, x[1]);
      const double ts = x[1] - x[2];
      return w22(x[0]) * d * d * ts * ts;
    };
    const Limits s_full{K(0), V(1)};
    const Limits s_up{V2(1, 4, 0, 4, -4), V(1)};
    const Limits s_dn{K(0), V2(1, 4, 0, 4, -4)};
    const Limits t_a{K(0), V(0, -1, 1)}, t_b{V(0, -1, 1), K(one)};
    const Limits t_c{V(0, -1, 1), V(0, Rational(-4, 3), Rational(4, 3))};
    const Limits t_d{V(0, Rational(-4, 3), Rational(4, 3)), K(one)};
    const Limits y_lo{K(0), K(q)}, y_hi{K(q), K(one)}, y_all{K(0), K(one)}, y_top{K(one), K(Rational(3, 2))};
    int i = 1;
    for (const auto& [yl, tl, sl] : std::vector<std::tuple<Limits, Limits, Limits>>{
             {y_top, Limits{K(0), K(one)}, s_full}, {y_hi, t_d, s_full}, {y_lo, t_b, s_dn}, {y_hi, t_c, s_dn}})
      out.push_back(pb.make("R2;1", "R2;1[" + std::to_string(i++) + "]", {yl, tl, sl}, clipped, false));
    i = 1;
    for (const auto& [yl, tl, sl] : std::vector<std::tuple<Limits, Limits, Limits>>{
             {y_all, t_a, s_full}, {y_lo, t_b, s_up}, {y_hi, t_c, s_up}})
      out.push_back(pb.make("R2;2", "R2;2[" + std::to_string(i++) + "]", {yl, tl, sl}, unclipped, false));
    out.push_back(pb.make("J2,2", "J2,2[1]", {Limits{K(Rational(3, 2)), K(Rational(2))}, Limits{K(0), K(one)}, s_full},
                          j22, false));
  }

  // J_{3,2} over (y, z, t, s) with y the larger shift.
  {
    PieceBuilder pb({{Rational(3, 2), 2}, {0, 1}, {0, 1}, {0, 1}}, {0, 0, 8, 8});
    auto w = [](double y, double z) {
      return (1 - 2 * kTheta0 - kTheta * z) / (kTheta0 * y * z * (1 - kTheta * (y + z)));
    };
    Integrand clipped = [w, A](Point x) {
      const double d = horner(A, 1 + x[3] / 4) - horner(A, x[2]);
      const double ts = x[2] - x[3];
      return w(x[0], x[1]) * d * d * ts * ts;
    };
    Integrand unclipped = [w, A](Point x) {
      const double d = horner(A, x[2] + x[1]) - horner(A, x[2]);
      const double ts = x[2] - x[3];
      return w(x[0], x[1]) * d * d * ts * ts;
    };
    const Limits y_a{K(Rational(3, 2)), K(Rational(15, 8))}, y_b{K(Rational(15, 8)), K(Rational(2))};
    const Limits z_q4{K(q), V(0, -2, 4)}, z_0q{K(0), K(q)}, z_04{K(0), V(0, -2, 4)};
    const Limits t_hi{V(1, Rational(-4, 3), Rational(4, 3)), K(one)};
    const Limits t_b{V(1, -1, 1), K(one)};
    const Limits t_c{V(1, -1, 1), V(1, Rational(-4, 3), Rational(4, 3))};
    const Limits t_a{K(0), V(1, -1, 1)};
    const Limits s_full{K(0), V(2)};
    const Limits s_dn{K(0), V2(2, 4, 1, 4, -4)};
    const Limits s_up{V2(2, 4, 1, 4, -4), V(2)};
    int i = 1;
    for (const auto& [yl, zl, tl, sl] : std::vector<std::tuple<Limits, Limits, Limits, Limits>>{
             {y_a, z_q4, t_hi, s_full}, {y_a, z_0q, t_b, s_dn}, {y_b, z_04, t_b, s_dn}, {y_a, z_q4, t_c, s_dn}})
      out.push_back(pb.make("R3';1", "R3';1[" + std::to_string(i++) + "]", {yl, zl, tl, sl}, clipped, false));
    i = 1;
    const Limits s_two = as_printed ? s_dn : s_up;
    for (const auto& [yl, zl, tl, sl, amended] : std::vector<std::tuple<Limits, Limits, Limits, Limits, bool>>{
             {y_a, z_04, t_a, s_full, false},
             {y_b, z_04, t_a, s_full, false},
             {y_a, z_0q, t_b, s_two, true},
             {y_b, z_04, t_b, s_two, true},
             {y_a, z_q4, t_c, s_two, true}})
      out.push_back(pb.make("R3';2", "R3';2[" + std::to_string(i++) + "]", {yl, zl, tl, sl}, unclipped, amended));
  }
  return out;
}

}  // namespace sievelab
