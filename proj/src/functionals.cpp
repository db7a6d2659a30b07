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

#include "sievelab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sievelab/regions.hpp"
#include "sievelab/simplex_exact.hpp"

namespace sievelab {

namespace {

double factorial_d(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> poly_antider(const std::vector<double>& a) {
  std::vector<double> out(a.size() + 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i] / static_cast<double>(i + 1);
  return out;
}

// Density of the reduced (t, s) variables, normalised.
struct Density {
  int k;
  bool extended;
  double norm;
  Density(int k_, Support support)
      : k(k_), extended(support == Support::Extended),
        norm(1.0 / factorial_d(support == Support::Extended ? k_ - 3 : k_ - 2)) {}
  double operator()(double t, double s) const { return extended ? norm * ipow(t - s, k - 3) : norm * ipow(t, k - 2); }
  double clip(double s) const { return extended ? 1.0 + s / (k - 1) : 1.0; }
};

Region lift(const Region* shifts, Support support, const std::string& label) {
  if (support == Support::Extended) {
    if (shifts) return lift_ts(*shifts, label);
    return Region(2, {{0, 1}, {0, 1}}, {{{Rational(-1), Rational(1)}, 0, Sense::LessEq}}, label);
  }
  if (!shifts) return Region(1, {{0, 1}}, {}, label);
  auto box = shifts->box();
  box.push_back({0, 1});
  std::vector<LinearConstraint> cs;
  for (const auto& c : shifts->constraints()) {
    auto row = c.coeffs;
    row.push_back(0);
    cs.push_back({row, c.rhs, c.sense});
  }
  return Region(shifts->dim() + 1, box, cs, label);
}

FunctionalValue integrate_reduced(const Region& region, int nshift, Support support, int k, int kernel_degree,
                                  const Integrand& integrand, std::vector<LinearForm> kinks, const QuadConfig& cfg) {
  PolyhedralOptions opt;
  for (int i = nshift - 1; i >= 0; --i) {
    opt.order.push_back(i);
    opt.fixed_nodes.push_back(0);
  }
  auto [nt, ns] = ts_nodes(kernel_degree, k, support);
  opt.order.push_back(nshift);
  opt.fixed_nodes.push_back(nt);
  if (support == Support::Extended) {
    opt.order.push_back(nshift + 1);
    opt.fixed_nodes.push_back(ns);
  }
  opt.kinks = std::move(kinks);
  auto dom = iterated_from_region(region, opt);
  auto r = integrate_iterated(dom, integrand, cfg);
  FunctionalValue v;
  v.value = r.value;
  v.error = r.error;
  v.converged = r.converged;
  v.evaluations = r.evaluations;
  v.method = "quadrature";
  return v;
}

DiagonalPolynomial require_diagonal(const SymmetricPolynomial& F, const char* what) {
  try {
    return diagonal_reduce(F);
  } catch (const NotAvailable&) {
    throw NotAvailable(std::string(what) +
                       " needs a weight depending on P_1 only for the reduced quadrature path; general "
                       "polynomials are supported through the exact simplex path in conjecture mode");
  }
}

FunctionalValue zero_value(const char* method) {
  FunctionalValue v;
  v.method = method;
  return v;
}

}  // namespace

std::pair<int, int> ts_nodes(int kernel_degree, int k, Support support) {
  if (support == Support::Extended) {
    const int D = kernel_degree + k - 3;
    return {(D + 2 + 1) / 2, (D + 1 + 1) / 2};
  }
  const int D = kernel_degree + k - 2;
  return {(D + 1 + 1) / 2, 0};
}

std::vector<LinearForm> correction_kinks(int nshift, int k, Support support) {
  const int dim = nshift + (support == Support::Extended ? 2 : 1);
  std::vector<LinearForm> out;
  for (int mask = 0; mask < (1 << nshift); ++mask) {
    LinearForm h{std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)), -1};
    for (int i = 0; i < nshift; ++i)
      if (mask >> i & 1) h.coeffs[static_cast<std::size_t>(i)] = 1;
    h.coeffs[static_cast<std::size_t>(nshift)] = 1;
    if (support == Support::Extended) h.coeffs[static_cast<std::size_t>(nshift + 1)] = Rational(-1, k - 1);
    out.push_back(std::move(h));
  }
  return out;
}

FunctionalValue integrate_correction_region(const DiagonalPolynomial& f, const SieveParams& params, int r, int s,
                                            const Region& lifted, const QuadConfig& cfg) {
  CorrectionIntegrand ci(f, params, r, s);
  Integrand g = [&](Point x) { return ci(x); };
  return integrate_reduced(lifted, r - 1, params.support, params.k, 2 * f.degree() + 2, g,
                           correction_kinks(r - 1, params.k, params.support), cfg);
}

bool correction_supported(int r, int s) {
  static const std::vector<Correction> ok = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {3, 3}};
  return std::find(ok.begin(), ok.end(), Correction{r, s}) != ok.end();
}

CorrectionIntegrand::CorrectionIntegrand(const DiagonalPolynomial& f, const SieveParams& params, int r, int s)
    : k_(params.k), r_(r), s_(s), theta_(to_double(params.theta)), theta0_(to_double(params.theta0)),
      extended_(params.support == Support::Extended), A_(f.antiderivative_double()) {}

double CorrectionIntegrand::weight(Point y) const {
  const int n = r_ - 1;
  double prod = 1.0, sum = 0.0, small = 0.0;
  for (int i = 0; i < n; ++i) {
    prod *= y[static_cast<std::size_t>(i)];
    sum += y[static_cast<std::size_t>(i)];
    if (i < r_ - s_) small += y[static_cast<std::size_t>(i)];
  }
  const double num = 1.0 - s_ * theta0_ - theta_ * small;
  return num / (theta0_ * prod * (1.0 - theta_ * sum));
}

double CorrectionIntegrand::squared_sum(Point x) const {
  const int n = r_ - 1;
  const double t = x[static_cast<std::size_t>(n)];
  const double U = extended_ ? 1.0 + x[static_cast<std::size_t>(n + 1)] / (k_ - 1) : 1.0;
  const double AU = horner(A_, U);
  double total = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double a = t;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        a += x[static_cast<std::size_t>(i)];
        ++bits;
      }
    if (a >= U) continue;
    const double g = AU - horner(A_, a);
    total += (bits % 2 ? -g : g);
  }
  return total * total;
}

double CorrectionIntegrand::operator()(Point x) const {
  const int n = r_ - 1;
  const double t = x[static_cast<std::size_t>(n)];
  double density;
  if (extended_) {
    const double s = x[static_cast<std::size_t>(n + 1)];
    density = ipow(t - s, k_ - 3) / factorial_d(k_ - 3);
  } else {
    density = ipow(t, k_ - 2) / factorial_d(k_ - 2);
  }
  return weight(x) * squared_sum(x) * density;
}

// ---------------------------------------------------------------------------

FunctionalValue compute_J(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg) {
  params.validate();
  if (F.k() != params.k) throw InvalidInput("polynomial k does not match params k");
  if (params.support == Support::Simplex) {
    FunctionalValue v;
    v.value = to_double(conjecture_J(F));
    v.method = "exact";
    return v;
  }
  const int k = params.k;
  if (F.p1_only()) {
    auto f = diagonal_reduce(F);
    auto A2 = f.squared().antiderivative_double();
    Density rho(k, params.support);
    Integrand g = [&](Point x) {
      const double t = x[0], s = x[1];
      return (horner(A2, rho.clip(s)) - horner(A2, t)) * rho(t, s);
    };
    return integrate_reduced(lift(nullptr, params.support, "J"), 0, params.support, k, 2 * f.degree() + 1, g, {},
                             cfg);
  }
  if (k > 5) throw NotAvailable("J for a non-diagonal weight on the extended support needs k <= 5");
  // Full-dimensional polynomial quadrature over R'_k; every level is exact.
  auto region = make_support(k, Support::Extended);
  PolyhedralOptions opt;
  for (int i = 0; i < k; ++i) {
    opt.order.push_back(i);
    opt.fixed_nodes.push_back(F.degree() + k);
  }
  auto dom = iterated_from_region(region, opt);
  Integrand g = [&](Point x) {
    const double v = F.evaluate(x);
    return v * v;
  };
  auto r = integrate_iterated(dom, g, cfg);
  FunctionalValue v;
  v.value = r.value;
  v.error = r.error;
  v.converged = r.converged;
  v.evaluations = r.evaluations;
  return v;
}

J0Value compute_J0(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg) {
  params.validate();
  if (F.k() != params.k) throw InvalidInput("polynomial k does not match params k");
  const int k = params.k;
  J0Value out;
  if (params.support == Support::Simplex && params.theta0 == 1 && params.epsilon == 0) {
    auto r = conjecture_J0(F, params.theta);
    out.total.value = r.value(params.theta);
    out.total.method = "exact";
    out.raw_difference.method = out.raw_shell.method = "not-split";
    return out;
  }
  auto f = require_diagonal(F, "J_0");
  const auto& fc = f.coeffs_double();
  const auto A2 = f.squared().antiderivative_double();
  const double th = to_double(params.theta), th0 = to_double(params.theta0);
  Density rho(k, params.support);

  Region ydom(1, {{params.epsilon / params.theta, params.theta0 / params.theta}}, {}, "J0:y");
  auto region = lift(&ydom, params.support, "J0");
  std::vector<LinearForm> kinks = correction_kinks(1, k, params.support);

  // Antiderivative of (f(x) - f(x+y))^2 in x, cached per y.
  double cached_y = std::nan("");
  std::vector<double> H;
  auto H_for = [&](double y) -> const std::vector<double>& {
    if (y != cached_y) {
      auto sh = f.shifted_coeffs(y);
      std::vector<double> g(fc.size());
      for (std::size_t i = 0; i < fc.size(); ++i) g[i] = fc[i] - sh[i];
      H = poly_antider(poly_mul(g, g));
      cached_y = y;
    }
    return H;
  };
  const int tdim = 1;
  auto clip_s = [&](Point x) { return params.support == Support::Extended ? x[2] : 0.0; };
  Integrand diff = [&](Point x) {
    const double y = x[0], t = x[tdim], s = clip_s(x);
    const double U = rho.clip(s);
    const double m = std::max(t, U - y);
    const auto& h = H_for(y);
    const double w = (th0 - th * y) / (th0 * y);
    return w * (horner(h, m) - horner(h, t)) * rho(t, s);
  };
  Integrand shell = [&](Point x) {
    const double y = x[0], t = x[tdim], s = clip_s(x);
    const double U = rho.clip(s);
    const double m = std::max(t, U - y);
    const double w = (th0 - th * y) / (th0 * y);
    return w * (horner(A2, U) - horner(A2, m)) * rho(t, s);
  };
  const double raw = factorial_d(k - 3);
  auto d = integrate_reduced(region, 1, params.support, k, 2 * f.degree() + 1, diff, kinks, cfg);
  auto sh = integrate_reduced(region, 1, params.support, k, 2 * f.degree() + 1, shell, kinks, cfg);
  out.total.value = d.value + sh.value;
  out.total.error = d.error + sh.error;
  out.total.converged = d.converged && sh.converged;
  out.total.evaluations = d.evaluations + sh.evaluations;
  out.raw_difference = d;
  out.raw_difference.value *= raw;
  out.raw_difference.error *= raw;
  out.raw_shell = sh;
  out.raw_shell.value *= raw;
  out.raw_shell.error *= raw;
  return out;
}

FunctionalValue compute_J11(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg) {
  params.validate();
  if (F.k() != params.k) throw InvalidInput("polynomial k does not match params k");
  if (params.theta0 == 1) return zero_value("exact");
  auto f = require_diagonal(F, "J_{1,1}");
  const auto A = f.antiderivative_double();
  const int k = params.k;
  const double th0 = to_double(params.theta0);
  const double pre = (1.0 - th0) / th0;
  Density rho(k, params.support);
  Integrand g = [&](Point x) {
    const double t = x[0], s = params.support == Support::Extended ? x[1] : 0.0;
    const double d = horner(A, rho.clip(s)) - horner(A, t);
    return pre * d * d * rho(t, s);
  };
  return integrate_reduced(lift(nullptr, params.support, "J11"), 0, params.support, k, 2 * f.degree() + 2, g, {},
                           cfg);
}

namespace {

FunctionalValue correction(const SymmetricPolynomial& F, const SieveParams& params, int r, int s,
                           const QuadConfig& cfg) {
  params.validate();
  if (F.k() != params.k) throw InvalidInput("polynomial k does not match params k");
  if (s > r || s < 1) throw InvalidInput("correction (r,s) requires 1 <= s <= r");
  if (!correction_supported(r, s))
    throw NotAvailable("correction (" + std::to_string(r) + "," + std::to_string(s) +
                       ") has no evaluation path; supported: (1,1) (2,1) (3,1) (4,1) (2,2) (3,2) (3,3)");
  if (r == 1) return compute_J11(F, params, cfg);
  if (params.theta0 == 1) return zero_value("exact");
  auto f = require_diagonal(F, "J_{r,s}");
  auto shifts = make_correction_domain(r, s, params);
  auto region = lift(&shifts, params.support, shifts.label());
  CorrectionIntegrand ci(f, params, r, s);
  Integrand g = [&](Point x) { return ci(x); };
  return integrate_reduced(region, r - 1, params.support, params.k, 2 * f.degree() + 2, g,
                           correction_kinks(r - 1, params.k, params.support), cfg);
}

}  // namespace

FunctionalValue compute_Jrs(const SymmetricPolynomial& F, const SieveParams& params, int r, int s,
                            const QuadConfig& cfg) {
  return correction(F, params, r, s, cfg);
}

FunctionalValue compute_Jrs_flat(const SymmetricPolynomial& F, const SieveParams& params, int r, int s,
                                 const QuadConfig& cfg) {
  SieveParams p = params;
  p.mode = Mode::Flat;
  p.theta0 = Rational(1) - 2 * p.theta;
  return correction(F, p, r, s, cfg);
}

FunctionalReport upsilon(const SymmetricPolynomial& F, const SieveParams& params, const QuadConfig& cfg) {
  FunctionalReport rep;
  rep.params = params;
  rep.polynomial = F.to_string();
  rep.warnings = params.validate();
  rep.J = compute_J(F, params, cfg);
  rep.J0 = compute_J0(F, params, cfg);
  if (params.mode == Mode::Conjecture) {
    if (!params.corrections.empty()) rep.warnings.push_back("conjecture mode: correction terms vanish and are skipped");
  } else {
    for (const auto& c : params.corrections) rep.Jrs[c] = compute_Jrs(F, params, c.r, c.s, cfg);
  }
  rep.upsilon = rep.recompute_upsilon();
  const int k = params.k;
  const double th = to_double(params.theta);
  double num = rep.J0.total.value, num_err = rep.J0.total.error;
  bool conv = rep.J.converged && rep.J0.total.converged;
  for (const auto& [c, v] : rep.Jrs) {
    num -= th * v.value;
    num_err += th * v.error;
    conv = conv && v.converged;
  }
  rep.upsilon_error = k * num_err / rep.J.value + k * std::fabs(num) * rep.J.error / (rep.J.value * rep.J.value);
  rep.converged = conv;
  return rep;
}

double FunctionalReport::recompute_upsilon() const {
  const int k = params.k;
  double num = J0.total.value;
  for (const auto& [c, v] : Jrs) num -= to_double(params.theta) * v.value;
  return k * num / J.value + k / to_double(params.theta0);
}

namespace {

nlohmann::ordered_json value_json(const FunctionalValue& v) {
  return {{"value", v.value}, {"error", v.error}, {"method", v.method}, {"converged", v.converged}};
}

}  // namespace

std::string FunctionalReport::to_json() const {
  nlohmann::ordered_json j;
  j["params"] = {{"k", params.k},
                 {"theta", to_string(params.theta)},
                 {"theta0", to_string(params.theta0)},
                 {"support", std::string(to_string(params.support))},
                 {"mode", std::string(to_string(params.mode))},
                 {"corrections", to_string(params.corrections)},
                 {"epsilon", to_string(params.epsilon)}};
  j["polynomial"] = polynomial;
  j["J"] = value_json(J);
  auto j0 = value_json(J0.total);
  j0["raw_difference"] = value_json(J0.raw_difference);
  j0["raw_shell"] = value_json(J0.raw_shell);
  j["J0"] = j0;
  auto jrs = nlohmann::ordered_json::object();
  for (const auto& [c, v] : Jrs) jrs[std::to_string(c.r) + "," + std::to_string(c.s)] = value_json(v);
  j["Jrs"] = jrs;
  j["upsilon"] = upsilon;
  j["upsilon_error"] = upsilon_error;
  j["converged"] = converged;
  j["warnings"] = warnings;
  return j.dump(2);
}

std::string FunctionalReport::csv_header() { return "k,mode,support,theta,theta0,corrections,J,J0,sum_Jrs,upsilon,converged"; }

std::string FunctionalReport::to_csv_row() const {
  double sum = 0.0;
  for (const auto& [c, v] : Jrs) sum += v.value;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%s", J.value, J0.total.value, sum, upsilon,
                converged ? "true" : "false");
  return std::to_string(params.k) + "," + std::string(to_string(params.mode)) + "," +
         std::string(to_string(params.support)) + "," + to_string(params.theta) + "," + to_string(params.theta0) +
         ",\"" + to_string(params.corrections) + "\"," + buf;
}

}  // namespace sievelab
