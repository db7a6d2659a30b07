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

#include "sievelab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace sievelab {

std::string_view to_string(PanelRule r) { return r == PanelRule::GL7 ? "GL7" : "GL15"; }

PanelRule parse_panel_rule(std::string_view text) {
  if (text == "GL7") return PanelRule::GL7;
  if (text == "GL15") return PanelRule::GL15;
  throw InvalidInput("unknown panel rule '" + std::string(text) + "' (expected GL7|GL15)");
}

IteratedDomain IteratedDomain::from_limits(std::vector<std::pair<BoundFn, BoundFn>> limits) {
  IteratedDomain d(static_cast<int>(limits.size()));
  for (std::size_t i = 0; i < limits.size(); ++i)
    d.add_level(Level{static_cast<int>(i), std::move(limits[i].first), std::move(limits[i].second), {}, 0});
  return d;
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  if (n < 1) throw InvalidInput("Gauss-Legendre rule needs at least one node");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(static_cast<double>(dz)) < 1e-19) break;
    }
    {
      long double p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
    }
    double wi = static_cast<double>(2 / ((1 - z * z) * dp * dp));
    x[static_cast<std::size_t>(i)] = -static_cast<double>(z);
    x[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(z);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

// Kronrod abscissae (positive half, descending) with Kronrod and Gauss weights.
constexpr std::array<double, 8> kXgk15 = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                          0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk15 = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                          0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg7 = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::array<double, 4> kXgk7 = {0.960491268708020283423507092629080, 0.774596669241483377035853079956480,
                                         0.434243749346802558002071502844628, 0.0};
constexpr std::array<double, 4> kWgk7 = {0.104656226026467265193823857192073, 0.268488089868333440728569280666710,
                                         0.401397414775962222905051818618432, 0.450916538658474142345110087045571};
constexpr std::array<double, 2> kWg3 = {0.555555555555555555555555555555556, 0.888888888888888888888888888888889};

struct Panel {
  double a, b;
  double value;
  double disc_err;   // rule discrepancy
  double inner_err;  // accumulated from nested levels
  int depth;
};

class Engine {
 public:
  Engine(const IteratedDomain& d, const Integrand& f, const QuadConfig& cfg)
      : d_(d), f_(f), cfg_(cfg), x_(static_cast<std::size_t>(d.dim()), 0.0), breaks_(d.levels().size()),
        panels_(d.levels().size()) {}

  QuadResult run() {
    QuadResult r;
    if (d_.empty() || d_.levels().empty()) return r;
    auto [v, e] = level(0, cfg_.abs_tol, cfg_.rel_tol);
    r.value = v;
    r.error = e;
    r.converged = converged_;
    r.evaluations = evals_;
    return r;
  }

 private:
  static constexpr double kShare = 0.1;
  static constexpr std::size_t kMaxPanels = 4000;

  struct Est {
    double value, error;
  };

  [[noreturn]] void nan_error(const char* what) const {
    std::ostringstream os;
    os.precision(17);
    os << what << " is NaN at point (";
    for (std::size_t i = 0; i < x_.size(); ++i) os << (i ? ", " : "") << x_[i];
    os << ")";
    throw NumericalError(os.str());
  }

  Est at(std::size_t L, double v, double abs_tol, double rel_tol) {
    x_[static_cast<std::size_t>(d_.levels()[L].coord)] = v;
    if (L + 1 == d_.levels().size()) {
      ++evals_;
      double y = f_(x_);
      if (std::isnan(y)) nan_error("integrand");
      return {y, 0.0};
    }
    return level(L + 1, abs_tol, rel_tol);
  }

  Est gk(std::size_t L, double a, double b, double iabs, double irel, double& inner_err) {
    const bool wide = cfg_.panel_rule == PanelRule::GL15;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double* xgk = wide ? kXgk15.data() : kXgk7.data();
    const double* wgk = wide ? kWgk15.data() : kWgk7.data();
    const double* wg = wide ? kWg7.data() : kWg3.data();
    const int half = wide ? 7 : 3;
    auto fc = at(L, c, iabs, irel);
    double rk = fc.value * wgk[half];
    double rg = (half % 2 == 1) ? fc.value * wg[half / 2] : 0.0;
    double resabs = std::fabs(rk);
    double ie = fc.error * wgk[half];
    std::array<double, 15> fv{};
    fv[static_cast<std::size_t>(half)] = fc.value;
    for (int j = 0; j < half; ++j) {
      auto f1 = at(L, c - h * xgk[j], iabs, irel);
      auto f2 = at(L, c + h * xgk[j], iabs, irel);
      fv[static_cast<std::size_t>(j)] = f1.value;
      fv[static_cast<std::size_t>(2 * half - j)] = f2.value;
      rk += wgk[j] * (f1.value + f2.value);
      resabs += wgk[j] * (std::fabs(f1.value) + std::fabs(f2.value));
      ie += wgk[j] * (f1.error + f2.error);
      if (j % 2 == 1) rg += wg[j / 2] * (f1.value + f2.value);
    }
    const double mean = rk * 0.5;
    double resasc = wgk[half] * std::fabs(fc.value - mean);
    for (int j = 0; j < half; ++j)
      resasc += wgk[j] * (std::fabs(fv[static_cast<std::size_t>(j)] - mean) +
                          std::fabs(fv[static_cast<std::size_t>(2 * half - j)] - mean));
    double err = std::fabs((rk - rg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
    inner_err = ie * std::fabs(h);
    return {rk * h, err};
  }

  Est level(std::size_t L, double abs_tol, double rel_tol) {
    const Level& lv = d_.levels()[L];
    const double lo = lv.lower(x_), hi = lv.upper(x_);
    if (std::isnan(lo) || std::isnan(hi)) nan_error("integration limit");
    if (!(hi > lo)) return {0.0, 0.0};
    auto& br = breaks_[L];
    br.clear();
    br.push_back(lo);
    if (lv.breakpoints) {
      lv.breakpoints(x_, br);
      const double guard = 1e-13 * (hi - lo);
      auto keep = std::remove_if(br.begin() + 1, br.end(),
                                 [&](double v) { return !(v > lo + guard && v < hi - guard); });
      br.erase(keep, br.end());
      std::sort(br.begin(), br.end());
      br.erase(std::unique(br.begin(), br.end(), [&](double p, double q) { return q - p <= guard; }), br.end());
    }
    br.push_back(hi);
    const double width = hi - lo;
    const double iabs = kShare * abs_tol / width;
    const double irel = kShare * rel_tol;

    if (lv.fixed_nodes > 0) {
      const auto& [gx, gw] = gauss_legendre(lv.fixed_nodes);
      std::vector<double> segs(br.begin(), br.end());
      double v = 0.0, e = 0.0;
      for (std::size_t s = 0; s + 1 < segs.size(); ++s) {
        const double c = 0.5 * (segs[s] + segs[s + 1]), h = 0.5 * (segs[s + 1] - segs[s]);
        for (std::size_t j = 0; j < gx.size(); ++j) {
          auto r = at(L, c + h * gx[j], abs_tol / width, rel_tol);
          v += h * gw[j] * r.value;
          e += h * gw[j] * r.error;
        }
      }
      return {v, e};
    }

    auto& ps = panels_[L];
    ps.clear();
    std::vector<double> segs(br.begin(), br.end());
    for (std::size_t s = 0; s + 1 < segs.size(); ++s) {
      double ie = 0.0;
      auto r = gk(L, segs[s], segs[s + 1], iabs, irel, ie);
      ps.push_back({segs[s], segs[s + 1], r.value, r.error, ie, 0});
    }
    for (;;) {
      double total = 0.0, err = 0.0;
      for (const auto& p : ps) {
        total += p.value;
        err += p.disc_err + p.inner_err;
      }
      const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
      if (err <= tol) return {total, err};
      std::size_t pick = ps.size();
      double worst = -1.0;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i].depth < cfg_.max_depth && ps[i].disc_err > worst) {
          worst = ps[i].disc_err;
          pick = i;
        }
      if (pick == ps.size() || worst <= 0.05 * tol / static_cast<double>(ps.size()) || ps.size() >= kMaxPanels) {
        // Remaining error is dominated by inner levels or depth is exhausted.
        if (pick == ps.size() || ps.size() >= kMaxPanels) converged_ = false;
        double disc = 0.0;
        for (const auto& p : ps) disc += p.disc_err;
        if (disc > tol) converged_ = false;
        return {total, err};
      }
      Panel p = ps[pick];
      const double mid = 0.5 * (p.a + p.b);
      double ie1 = 0.0, ie2 = 0.0;
      auto r1 = gk(L, p.a, mid, iabs, irel, ie1);
      auto r2 = gk(L, mid, p.b, iabs, irel, ie2);
      ps[pick] = {p.a, mid, r1.value, r1.error, ie1, p.depth + 1};
      ps.push_back({mid, p.b, r2.value, r2.error, ie2, p.depth + 1});
    }
  }

  const IteratedDomain& d_;
  const Integrand& f_;
  QuadConfig cfg_;
  std::vector<double> x_;
  std::vector<std::vector<double>> breaks_;
  std::vector<std::vector<Panel>> panels_;
  std::uint64_t evals_ = 0;
  bool converged_ = true;
};

}  // namespace

QuadResult integrate_iterated(const IteratedDomain& domain, const Integrand& integrand, const QuadConfig& cfg) {
  if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0)) throw InvalidInput("quadrature tolerances must be positive");
  if (domain.dim() > 5) throw InvalidInput("iterated quadrature supports at most 5 dimensions");
  Engine e(domain, integrand, cfg);
  return e.run();
}

McResult integrate_mc(const Region& region, const Integrand& integrand, const QuadConfig& cfg) {
  if (cfg.mc_samples == 0) throw InvalidInput("mc_samples must be positive");
  UniformRng rng(cfg.seed);
  const int n = region.dim();
  auto lo = region.lower();
  auto hi = region.upper();
  std::vector<double> x(static_cast<std::size_t>(n));
  // Welford running mean and variance.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < cfg.mc_samples; ++i) {
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = lo[j] + (hi[j] - lo[j]) * rng.next();
    double v = 0.0;
    if (region.contains(x)) {
      ++hits;
      v = integrand(x);
      if (std::isnan(v)) throw NumericalError("integrand is NaN inside region '" + region.label() + "'");
    }
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  if (cfg.mc_samples >= 10'000'000 && static_cast<double>(hits) < 1e-6 * static_cast<double>(cfg.mc_samples))
    throw NumericalError("region '" + region.label() + "' is possibly empty: acceptance below 1e-6");
  const double vol = region.box_volume();
  const double N = static_cast<double>(cfg.mc_samples);
  McResult r;
  r.value = vol * mean;
  r.std_error = N > 1 ? vol * std::sqrt(m2 / (N - 1) / N) : 0.0;
  r.hits = hits;
  r.samples = cfg.mc_samples;
  return r;
}

// ---------------------------------------------------------------------------
// Polyhedral domains

namespace {

struct Half {
  std::vector<Rational> a;  // a . x + c <= 0
  Rational c;
};

struct DForm {
  std::vector<double> a;
  double c = 0.0;
  double operator()(Point x) const {
    double v = c;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
    return v;
  }
};

class Builder {
 public:
  Builder(const Region& region, const PolyhedralOptions& opt) : reg_(region), opt_(opt), n_(region.dim()) {
    if (static_cast<int>(opt.order.size()) != n_) throw InvalidInput("integration order must list every coordinate");
    pos_.assign(static_cast<std::size_t>(n_), -1);
    for (int L = 0; L < n_; ++L) {
      int c = opt.order[static_cast<std::size_t>(L)];
      if (c < 0 || c >= n_ || pos_[static_cast<std::size_t>(c)] != -1) throw InvalidInput("integration order is not a permutation");
      pos_[static_cast<std::size_t>(c)] = L;
    }
    fixed_ = opt.fixed_nodes;
    fixed_.resize(static_cast<std::size_t>(n_), 0);
  }

  IteratedDomain build() {
    IteratedDomain dom(n_);
    // Constraint systems C_L, involving only levels 0..L.
    std::vector<std::vector<Half>> sys(static_cast<std::size_t>(n_));
    std::vector<Half> all;
    for (int i = 0; i < n_; ++i) {
      Half up{zeros(), -reg_.box()[i].hi};
      up.a[static_cast<std::size_t>(i)] = 1;
      Half dn{zeros(), reg_.box()[i].lo};
      dn.a[static_cast<std::size_t>(i)] = -1;
      all.push_back(up);
      all.push_back(dn);
    }
    for (const auto& c : reg_.constraints()) all.push_back({c.coeffs, -c.rhs});
    bool infeasible = false;
    sys[static_cast<std::size_t>(n_ - 1)] = reduce(all, infeasible);
    for (int L = n_ - 1; L >= 1; --L) {
      const int v = opt_.order[static_cast<std::size_t>(L)];
      std::vector<Half> next, pos, neg;
      for (const auto& h : sys[static_cast<std::size_t>(L)]) {
        const auto& av = h.a[static_cast<std::size_t>(v)];
        if (av == 0) next.push_back(h);
        else if (av > 0) pos.push_back(h);
        else neg.push_back(h);
      }
      for (const auto& p : pos)
        for (const auto& q : neg) {
          const Rational sp = p.a[static_cast<std::size_t>(v)], sq = -q.a[static_cast<std::size_t>(v)];
          Half h{zeros(), p.c * sq + q.c * sp};
          for (int i = 0; i < n_; ++i) h.a[static_cast<std::size_t>(i)] = p.a[static_cast<std::size_t>(i)] * sq + q.a[static_cast<std::size_t>(i)] * sp;
          next.push_back(std::move(h));
        }
      sys[static_cast<std::size_t>(L - 1)] = reduce(next, infeasible);
    }
    if (infeasible) {
      dom.mark_empty();
      return dom;
    }

    // Bounds per level.
    std::vector<std::vector<Half>> lowers(static_cast<std::size_t>(n_)), uppers(static_cast<std::size_t>(n_));
    for (int L = 0; L < n_; ++L) {
      const int v = opt_.order[static_cast<std::size_t>(L)];
      for (const auto& h : sys[static_cast<std::size_t>(L)]) {
        const auto& av = h.a[static_cast<std::size_t>(v)];
        if (av == 0) continue;
        // x_v = -(c + rest)/a_v
        Half b{zeros(), -h.c / av};
        for (int i = 0; i < n_; ++i)
          if (i != v) b.a[static_cast<std::size_t>(i)] = -h.a[static_cast<std::size_t>(i)] / av;
        (av > 0 ? uppers : lowers)[static_cast<std::size_t>(L)].push_back(std::move(b));
      }
      if (lowers[static_cast<std::size_t>(L)].empty() || uppers[static_cast<std::size_t>(L)].empty())
        throw InvalidInput("region is unbounded along an integration coordinate");
    }

    // Kink planes per level, propagated inward-out.
    std::vector<std::map<std::string, Half>> kinks(static_cast<std::size_t>(n_));
    for (const auto& k : opt_.kinks) {
      if (static_cast<int>(k.coeffs.size()) != n_) throw InvalidInput("kink form size does not match region");
      insert_plane(kinks, {k.coeffs, k.constant});
    }
    std::vector<std::vector<Half>> level_breaks(static_cast<std::size_t>(n_));
    for (int L = n_ - 1; L >= 0; --L) {
      const auto Ls = static_cast<std::size_t>(L);
      const int v = opt_.order[Ls];
      for (const auto& [key, h] : kinks[Ls]) level_breaks[Ls].push_back(h);
      if (L == 0) break;
      auto pairs = [&](const std::vector<Half>& bs) {
        for (std::size_t i = 0; i < bs.size(); ++i)
          for (std::size_t j = i + 1; j < bs.size(); ++j) {
            Half d{zeros(), bs[i].c - bs[j].c};
            for (int q = 0; q < n_; ++q) d.a[static_cast<std::size_t>(q)] = bs[i].a[static_cast<std::size_t>(q)] - bs[j].a[static_cast<std::size_t>(q)];
            insert_plane(kinks, d);
          }
      };
      pairs(lowers[Ls]);
      pairs(uppers[Ls]);
      if (fixed_[Ls] > 0) {
        for (const auto& [key, h] : kinks[Ls]) {
          for (const auto* bs : {&lowers[Ls], &uppers[Ls]})
            for (const auto& b : *bs) {
              const Rational av = h.a[static_cast<std::size_t>(v)];
              Half s{h.a, h.c + av * b.c};
              s.a[static_cast<std::size_t>(v)] = 0;
              for (int q = 0; q < n_; ++q)
                if (q != v) s.a[static_cast<std::size_t>(q)] += av * b.a[static_cast<std::size_t>(q)];
              int dl = deepest(s);
              if (dl >= 0 && (opt_.project_into_adaptive || fixed_[static_cast<std::size_t>(dl)] > 0))
                insert_plane(kinks, s);
            }
        }
      }
    }

    for (int L = 0; L < n_; ++L) {
      const auto Ls = static_cast<std::size_t>(L);
      const int v = opt_.order[Ls];
      auto lo = to_forms(lowers[Ls]);
      auto hi = to_forms(uppers[Ls]);
      std::vector<DForm> bk;
      for (const auto& h : level_breaks[Ls]) {
        const Rational av = h.a[static_cast<std::size_t>(v)];
        Half b{zeros(), -h.c / av};
        for (int i = 0; i < n_; ++i)
          if (i != v) b.a[static_cast<std::size_t>(i)] = -h.a[static_cast<std::size_t>(i)] / av;
        bk.push_back(to_form(b));
      }
      Level lv;
      lv.coord = v;
      lv.lower = [lo](Point x) {
        double r = -std::numeric_limits<double>::infinity();
        for (const auto& f : lo) r = std::max(r, f(x));
        return r;
      };
      lv.upper = [hi](Point x) {
        double r = std::numeric_limits<double>::infinity();
        for (const auto& f : hi) r = std::min(r, f(x));
        return r;
      };
      if (!bk.empty())
        lv.breakpoints = [bk](Point x, std::vector<double>& out) {
          for (const auto& f : bk) out.push_back(f(x));
        };
      lv.fixed_nodes = fixed_[Ls];
      dom.add_level(std::move(lv));
    }
    return dom;
  }

 private:
  std::vector<Rational> zeros() const { return std::vector<Rational>(static_cast<std::size_t>(n_), Rational(0)); }

  int deepest(const Half& h) const {
    int d = -1;
    for (int i = 0; i < n_; ++i)
      if (h.a[static_cast<std::size_t>(i)] != 0) d = std::max(d, pos_[static_cast<std::size_t>(i)]);
    return d;
  }

  // Scales so the deepest coefficient is +-1.
  Half normalized(Half h) const {
    int d = deepest(h);
    if (d < 0) return h;
    Rational s = abs(h.a[static_cast<std::size_t>(opt_.order[static_cast<std::size_t>(d)])]);
    for (auto& a : h.a) a /= s;
    h.c /= s;
    return h;
  }

  static std::string key_of(const std::vector<Rational>& a) {
    std::string k;
    for (const auto& v : a) k += v.get_str() + ",";
    return k;
  }

  // Normalizes, drops trivial rows, keeps the tightest of parallel rows.
  std::vector<Half> reduce(const std::vector<Half>& hs, bool& infeasible) const {
    std::map<std::string, Half> best;
    for (const auto& h0 : hs) {
      Half h = normalized(h0);
      if (deepest(h) < 0) {
        if (h.c > 0) infeasible = true;
        continue;
      }
      auto key = key_of(h.a);
      auto it = best.find(key);
      if (it == best.end()) best.emplace(key, h);
      else if (h.c > it->second.c) it->second.c = h.c;
    }
    std::vector<Half> out;
    for (auto& [k, h] : best) out.push_back(std::move(h));
    return out;
  }

  // Planes are orientation-free: normalize sign so the deepest coefficient is +1.
  void insert_plane(std::vector<std::map<std::string, Half>>& kinks, Half h) const {
    int d = deepest(h);
    if (d < 0) return;
    h = normalized(h);
    const auto& lead = h.a[static_cast<std::size_t>(opt_.order[static_cast<std::size_t>(d)])];
    if (lead < 0) {
      for (auto& a : h.a) a = -a;
      h.c = -h.c;
    }
    auto key = key_of(h.a) + "|" + h.c.get_str();
    kinks[static_cast<std::size_t>(d)].emplace(key, std::move(h));
  }

  static DForm to_form(const Half& b) {
    DForm f;
    for (const auto& a : b.a) f.a.push_back(to_double(a));
    f.c = to_double(b.c);
    return f;
  }

  static std::vector<DForm> to_forms(const std::vector<Half>& bs) {
    std::vector<DForm> out;
    for (const auto& b : bs) out.push_back(to_form(b));
    return out;
  }

  const Region& reg_;
  const PolyhedralOptions& opt_;
  int n_;
  std::vector<int> pos_;
  std::vector<int> fixed_;
};

}  // namespace

IteratedDomain iterated_from_region(const Region& region, const PolyhedralOptions& options) {
  return Builder(region, options).build();
}

}  // namespace sievelab
