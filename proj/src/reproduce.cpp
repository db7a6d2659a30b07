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

#include "sievelab/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sievelab/fixtures.hpp"
#include "sievelab/optimizer.hpp"

namespace sievelab {

namespace {

using Job = std::function<std::vector<ReproRow>()>;

// Quadrature tolerances tight enough for a cell's acceptance window.
QuadConfig cell_config(QuadConfig cfg, const GoldenCell& g) {
  const double tol = g.cmp == "range" ? 1e-4 : g.tol;
  const double scale = std::max(std::abs(g.value), 1e-300);
  if (tol > 0) {
    cfg.rel_tol = std::min(cfg.rel_tol, tol / (10 * scale));
    cfg.abs_tol = std::min(cfg.abs_tol, tol / 10);
  }
  return cfg;
}

ReproRow make_row(const GoldenCell& g, std::string description, const FunctionalValue& v, std::string note = {}) {
  ReproRow r;
  r.id = g.id;
  r.description = std::move(description);
  r.value = v.value;
  r.error = v.error;
  r.method = v.method;
  r.golden = g;
  r.pass = g.accepts(v.value) && v.converged;
  r.note = std::move(note);
  if (!v.converged) r.note += (r.note.empty() ? "" : "; ") + std::string("not converged");
  return r;
}

FunctionalValue as_value(double x, const std::string& method, bool converged = true, double err = 0.0) {
  FunctionalValue v;
  v.value = x;
  v.error = err;
  v.method = method;
  v.converged = converged;
  return v;
}

ReproRow row_from_cell(const TableCell& c) {
  GoldenCell g = golden(c.id);
  g.cmp = c.comparison;
  g.tol = c.tolerance;
  const bool searched = c.id.rfind("E.", 0) != 0;
  auto row = make_row(g, c.description, as_value(c.value, searched ? "optimizer" : "quadrature"), c.note);
  if (c.direct) {
    std::ostringstream os;
    os.precision(10);
    os << "direct re-evaluation " << *c.direct;
    row.note += (row.note.empty() ? "" : "; ") + os.str();
  }
  return row;
}

std::vector<Job> table_d_jobs(const QuadConfig& cfg) {
  std::vector<Job> jobs;
  for (int k = 3; k <= 10; ++k) {
    const std::string ks = "k" + std::to_string(k);
    jobs.push_back([=] {
      std::vector<ReproRow> rows;
      const auto F1 = preset("tableC_F1_" + ks);
      for (const auto& [id, corr] : std::vector<std::pair<std::string, std::string>>{
               {"D.bound.", "1,1;2,1;3,1;2,2;3,2"}, {"D.bound_with_J41.", "1,1;2,1;3,1;2,2;3,2;4,1"}}) {
        const auto& g = golden(id + ks);
        auto p = SieveParams::standard(k, Rational(1, 3), Rational(1, 3), Support::Simplex, parse_corrections(corr));
        auto r = upsilon(F1, p, cell_config(cfg, g));
        rows.push_back(make_row(g, "printed F1, theta = theta0 = 1/3, simplex, corrections " + corr,
                                as_value(r.upsilon, "quadrature", r.converged, r.upsilon_error)));
      }
      const auto conj = SieveParams::conjecture(k, Rational(1, 3), Support::Simplex);
      {
        const auto& g = golden("D.conjecture_F1." + ks);
        auto r = upsilon(F1, conj, cfg);
        rows.push_back(make_row(g, "printed F1, exact simplex path, theta = 1/3", as_value(r.upsilon, "exact")));
      }
      const auto& g2 = golden("D.conjecture_F2." + ks);
      if (k < 10) {
        auto r = upsilon(preset("tableC_F2_" + ks), conj, cfg);
        rows.push_back(make_row(g2, "printed F2, exact simplex path, theta = 1/3", as_value(r.upsilon, "exact")));
      } else {
        // The printed k = 10 F2 coefficients are corrupt; minimise over its basis instead.
        auto gram = assemble_gram(BasisSpec::cubic_p2(k), conj, cfg);
        auto res = minimize_rayleigh(gram, true);
        rows.push_back(make_row(g2, "F2 basis minimised (printed F2 unusable), exact simplex path",
                                as_value(res.upsilon, "optimizer"),
                                "printed F2 gives " + std::to_string(upsilon(preset("tableC_F2_" + ks), conj, cfg).upsilon)));
        auto gram1 = assemble_gram(BasisSpec::cubic_p1(k), conj, cfg);
        auto res1 = minimize_rayleigh(gram1, true);
        auto info = make_row(golden("D.conjecture_F1." + ks), "F1 basis minimised (cross-check of the printed F1)",
                             as_value(res1.upsilon, "optimizer"));
        info.id += ".optimized";
        info.informational = true;
        rows.push_back(info);
      }
      return rows;
    });
  }
  return jobs;
}

std::vector<Job> optimizer_jobs(Table t, const QuadConfig& cfg) {
  std::vector<Job> jobs;
  for (int k = 3; k <= 10; ++k)
    jobs.push_back([=] {
      std::vector<ReproRow> rows;
      for (const auto& c : reoptimize_table(t, k, cfg).cells) rows.push_back(row_from_cell(c));
      return rows;
    });
  return jobs;
}

std::vector<ReproRow> headline_rows(const SymmetricPolynomial& F, const SieveParams& p, const QuadConfig& cfg,
                                    int threads, bool remark) {
  // Each functional is an independent job; Upsilon is assembled afterwards.
  auto cfg_for = [&](const char* id) { return remark ? cfg : cell_config(cfg, golden(id)); };
  std::vector<std::function<FunctionalValue()>> jobs;
  jobs.push_back([&, c = cfg_for("headline.J")] { return compute_J(F, p, c); });
  std::vector<J0Value> j0(1);
  jobs.push_back([&, c = cfg_for("headline.J0")] {
    j0[0] = compute_J0(F, p, c);
    return j0[0].total;
  });
  const char* ids[] = {"headline.J11", "headline.J21", "headline.J31", "headline.J41", "headline.J22", "headline.J32"};
  const std::vector<Correction> order = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}};
  for (std::size_t i = 0; i < order.size(); ++i)
    jobs.push_back([&, i, c = cfg_for(ids[i])] { return compute_Jrs(F, p, order[i].r, order[i].s, c); });
  auto vals = run_parallel(jobs, threads);

  FunctionalReport rep;
  rep.params = p;
  rep.J = vals[0];
  rep.J0 = j0[0];
  for (std::size_t i = 0; i < order.size(); ++i) rep.Jrs[order[i]] = vals[2 + i];
  rep.upsilon = rep.recompute_upsilon();
  bool conv = true;
  for (const auto& v : vals) conv = conv && v.converged;

  std::vector<ReproRow> rows;
  if (!remark) {
    rows.push_back(make_row(golden("headline.J"), "J", vals[0]));
    rows.push_back(make_row(golden("headline.J0"), "J_0", rep.J0.total));
    rows.push_back(make_row(golden("headline.J0.difference_raw"), "J_0 difference half (raw)", rep.J0.raw_difference));
    rows.push_back(make_row(golden("headline.J0.shell_raw"), "J_0 shell half (raw)", rep.J0.raw_shell));
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& c = order[i];
      rows.push_back(make_row(golden(ids[i]), "J_{" + std::to_string(c.r) + "," + std::to_string(c.s) + "}",
                              vals[2 + i]));
    }
    rows.push_back(make_row(golden("headline.upsilon"), "Upsilon, k = 5, (1/4, 3/8), extended",
                            as_value(rep.upsilon, "combined", conv)));
    rows.push_back(make_row(golden("final.upsilon"), "Upsilon vs the rounded final bound",
                            as_value(rep.upsilon, "combined", conv)));
  } else {
    rows.push_back(make_row(golden("remark3.upsilon"), "Upsilon, k = 3, (1/4, 3/8), extended, six corrections",
                            as_value(rep.upsilon, "combined", conv)));
    auto without = rep;
    without.Jrs.erase(Correction{3, 2});
    auto info = make_row(golden("remark3.upsilon"), "same without J_{3,2}",
                         as_value(without.recompute_upsilon(), "combined", conv));
    info.id += ".without_J32";
    info.informational = true;
    rows.push_back(info);
  }
  return rows;
}

}  // namespace

SieveParams headline_params(int k) {
  return SieveParams::standard(k, Rational(1, 4), Rational(3, 8), Support::Extended, headline_corrections());
}

std::vector<std::string> reproduce_targets() { return {"C", "D", "E", "F", "G", "final", "remark"}; }

int default_threads() {
  int n = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SIEVE_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

bool ReproReport::all_pass() const { return failures() == 0; }

std::size_t ReproReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows)
    if (!r.informational && !r.pass) ++n;
  return n;
}

std::string ReproReport::csv_header() { return "id,value,published,comparison,tolerance,status,method,anchor,note"; }

std::string ReproReport::to_csv() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  };
  std::ostringstream os;
  os.precision(12);
  os << csv_header() << "\n";
  for (const auto& r : rows) {
    os << r.id << ',' << r.value << ',' << r.golden.value << ',' << r.golden.cmp << ',' << r.golden.tol << ','
       << (r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL")) << ',' << r.method << ',' << quote(r.golden.anchor)
       << ',' << quote(r.note) << "\n";
  }
  return os.str();
}

std::string ReproReport::to_json() const {
  nlohmann::ordered_json j;
  j["target"] = name;
  j["pass"] = all_pass();
  j["failures"] = failures();
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["description"] = r.description;
    e["value"] = r.value;
    e["error"] = r.error;
    e["method"] = r.method;
    e["published"] = r.golden.value;
    e["comparison"] = r.golden.cmp;
    e["tolerance"] = r.golden.tol;
    if (r.golden.cmp == "range") e["range"] = {r.golden.lo, r.golden.hi};
    e["anchor"] = r.golden.anchor;
    e["status"] = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    if (!r.note.empty()) e["note"] = r.note;
    arr.push_back(std::move(e));
  }
  return j.dump(2);
}

ReproReport reproduce(std::string_view which, const QuadConfig& cfg, int threads) {
  ReproReport rep;
  rep.name = std::string(which);
  std::vector<Job> jobs;
  if (which == "D") {
    jobs = table_d_jobs(cfg);
  } else if (which == "C" || which == "E" || which == "F" || which == "G") {
    jobs = optimizer_jobs(parse_table(which), cfg);
  } else if (which == "final") {
    rep.rows = headline_rows(preset("headline5"), headline_params(5), cfg, threads, false);
  } else if (which == "remark") {
    rep.rows = headline_rows(preset("remark3"), headline_params(3), cfg, threads, true);
  } else {
    throw InvalidInput("unknown reproduction target '" + std::string(which) + "' (C|D|E|F|G|final|remark)");
  }
  for (auto& chunk : run_parallel(jobs, threads))
    for (auto& r : chunk) rep.rows.push_back(std::move(r));
  for (const auto& r : rep.rows)
    if (r.note.find("not converged") != std::string::npos) rep.converged = false;
  return rep;
}

// ---------------------------------------------------------------------------

bool VerifyReport::oracle_ok() const {
  for (const auto& p : pieces)
    if (!p.oracle_agree) return false;
  return true;
}

bool VerifyReport::pass() const {
  bool groups_ok = true;
  for (const auto& g : groups)
    if (!g.informational && !g.pass) groups_ok = false;
  bool pieces_ok = true;
  for (const auto& p : pieces)
    if (!p.golden_pass) pieces_ok = false;
  return partition_ok && oracle_ok() && additivity_ok && total_pass && groups_ok && pieces_ok;
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["scale"] = scale;
  j["pass"] = pass();
  if (label != "explicit") {
    j["partition"] = {{"ok", partition_ok},
                      {"samples", partition_samples},
                      {"ambiguous", ambiguous},
                      {"allowed", allowed_ambiguous}};
    if (!counterexample.empty()) j["partition"]["counterexample"] = counterexample;
  }
  auto& arr = j["pieces"] = nlohmann::ordered_json::array();
  for (const auto& p : pieces) {
    nlohmann::ordered_json e;
    e["label"] = p.label;
    e["quadrature"] = p.quadrature;
    e["quadrature_error"] = p.quadrature_error;
    e["mc"] = p.mc;
    e["mc_stderr"] = p.mc_stderr;
    e["oracle_agree"] = p.oracle_agree;
    if (p.golden) {
      e["published"] = p.golden->value;
      e["published_anchor"] = p.golden->anchor;
      e["published_pass"] = p.golden_pass;
    }
    arr.push_back(std::move(e));
  }
  if (label != "explicit") {
    j["piece_sum"] = piece_sum;
    j["parent"] = parent;
    j["parent_error"] = parent_error;
    j["additivity_ok"] = additivity_ok;
    j["total_scaled"] = total_scaled;
    if (total_golden) {
      j["total_published"] = total_golden->value;
      j["total_tolerance"] = total_golden->tol;
      j["total_pass"] = total_pass;
    }
    if (truncated_sum) j["truncated_piece_sum"] = *truncated_sum;
  }
  if (!groups.empty()) {
    auto& g = j["groups"] = nlohmann::ordered_json::array();
    for (const auto& r : groups)
      g.push_back({{"group", r.id}, {"value", r.value}, {"published", r.golden.value}, {"tolerance", r.golden.tol},
                   {"status", r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL")}});
  }
  return j.dump(2);
}

namespace {

bool oracle_agree(double q, double mc, double se) {
  return std::abs(q - mc) <= std::max({3 * se, 0.01 * std::abs(q), 1e-9});
}

VerifyReport verify_explicit(const QuadConfig& cfg) {
  VerifyReport rep;
  rep.label = "explicit";
  rep.scale = "raw";
  const auto f = diagonal_reduce(preset("headline5"));
  std::map<std::string, double> sums;
  QuadConfig qc = cfg;
  qc.rel_tol = std::min(cfg.rel_tol, 1e-10);
  qc.abs_tol = std::min(cfg.abs_tol, 1e-12);
  for (const auto& piece : explicit_pieces_k5(f)) {
    PieceCheck pc;
    pc.label = piece.label;
    auto q = integrate_iterated(piece.domain, piece.integrand, qc);
    auto m = integrate_mc(piece.region, piece.integrand, cfg);
    pc.quadrature = q.value;
    pc.quadrature_error = q.error;
    pc.mc = m.value;
    pc.mc_stderr = m.std_error;
    pc.oracle_agree = oracle_agree(q.value, m.value, m.std_error) && q.converged;
    sums[piece.group] += q.value;
    rep.pieces.push_back(pc);
  }
  for (const auto& g : explicit_groups_k5()) {
    ReproRow r;
    r.id = g.name;
    r.value = sums[g.name];
    r.golden.id = g.name;
    r.golden.value = g.published;
    r.golden.tol = g.tolerance;
    r.pass = r.golden.accepts(r.value);
    rep.groups.push_back(r);
  }
  return rep;
}

}  // namespace

VerifyReport verify_decomposition(std::string_view label, const QuadConfig& cfg) {
  if (label == "explicit") return verify_explicit(cfg);
  struct Spec {
    int r, s;
    std::string prefix, total, scale;
  };
  Spec sp;
  if (label == "R2")
    sp = {2, 1, "pieces.R2.", "headline.J21", "raw"};
  else if (label == "R3")
    sp = {3, 1, "pieces.R3.", "headline.J31", "raw"};
  else if (label == "R3p")
    sp = {3, 2, "pieces.R3p.", "headline.J32", "raw"};
  else if (label == "R4")
    sp = {4, 1, "pieces.R4.", "headline.J41", "scaled"};
  else
    throw InvalidInput("unknown decomposition '" + std::string(label) + "' (R2|R3|R3p|R4|explicit)");

  const auto params = headline_params(5);
  const auto d = make_decomposition(label, params);
  const auto f = diagonal_reduce(preset("headline5"));
  const double factor = sp.scale == "raw" ? 2.0 : 1.0;  // (k-3)! at k = 5
  VerifyReport rep;
  rep.label = std::string(label);
  rep.scale = sp.scale;

  // Partition: every sampled parent point lies in exactly one child.
  const auto n = static_cast<std::size_t>(cfg.mc_samples);
  auto pts = sample(d.parent, cfg.seed, n);
  rep.partition_samples = n;
  rep.allowed_ambiguous = static_cast<std::uint64_t>(std::ceil(10.0 * static_cast<double>(n) / 1e6));
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> x(pts.points.data() + i * static_cast<std::size_t>(pts.dim),
                              static_cast<std::size_t>(pts.dim));
    int hits = 0;
    for (const auto& c : d.children) hits += c.contains(x) ? 1 : 0;
    if (hits != 1) {
      ++rep.ambiguous;
      if (rep.counterexample.empty()) rep.counterexample.assign(x.begin(), x.end());
    }
  }
  rep.partition_ok = rep.ambiguous <= rep.allowed_ambiguous;

  CorrectionIntegrand ci(f, params, sp.r, sp.s);
  Integrand g = [&](Point x) { return factor * ci(x); };
  const auto published = golden_prefix(sp.prefix);
  double trunc = 0.0;
  bool have_trunc = true;
  QuadConfig qc = cfg;
  qc.rel_tol = std::min(cfg.rel_tol, 1e-7);
  std::vector<std::function<PieceCheck()>> jobs;
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    jobs.push_back([&, i] {
      PieceCheck pc;
      pc.label = d.children[i].label();
      auto q = integrate_correction_region(f, params, sp.r, sp.s, d.children[i], qc);
      QuadConfig mc = cfg;
      mc.seed = cfg.seed + 1 + i;
      auto m = integrate_mc(d.children[i], g, mc);
      pc.quadrature = factor * q.value;
      pc.quadrature_error = factor * q.error;
      pc.mc = m.value;
      pc.mc_stderr = m.std_error;
      pc.oracle_agree = oracle_agree(pc.quadrature, m.value, m.std_error) && q.converged;
      if (i < published.size()) {
        pc.golden = published[i];
        pc.golden_pass = published[i].accepts(pc.quadrature);
      }
      return pc;
    });
  }
  for (auto& pc : run_parallel(jobs, default_threads())) {
    if (published.empty()) have_trunc = false;
    trunc += std::floor(pc.quadrature * 1000 + 1e-9) / 1000;
    rep.piece_sum += pc.quadrature;
    rep.pieces.push_back(std::move(pc));
  }
  auto parent = compute_Jrs(preset("headline5"), params, sp.r, sp.s, qc);
  rep.parent = factor * parent.value;
  rep.parent_error = factor * parent.error;
  rep.additivity_ok = std::abs(rep.piece_sum - rep.parent) <= 1e-5 * std::abs(rep.parent) + rep.parent_error;
  rep.total_scaled = rep.piece_sum / factor;
  rep.total_golden = golden(sp.total);
  rep.total_pass = rep.total_golden->accepts(rep.total_scaled);
  if (have_trunc && sp.prefix != "pieces.R2.") rep.truncated_sum = trunc / factor;
  return rep;
}

}  // namespace sievelab
