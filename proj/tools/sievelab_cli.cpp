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

// Command-line front end: compute, reproduce, optimize, verify,
// admissible, regions show, presets.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sievelab/fixtures.hpp"
#include "sievelab/functionals.hpp"
#include "sievelab/golden.hpp"
#include "sievelab/optimizer.hpp"
#include "sievelab/regions.hpp"
#include "sievelab/reproduce.hpp"
#include "sievelab/tuples.hpp"

namespace sl = sievelab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kOk = 0, kUsage = 1, kFlagged = 2;

struct Common {
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_depth = 40;
  std::string panel_rule = "GL15";
  std::uint64_t seed = 1;
  double mc_samples = 1e6;
  std::string out;

  sl::QuadConfig config() const {
    sl::QuadConfig c;
    c.abs_tol = abs_tol;
    c.rel_tol = rel_tol;
    c.max_depth = max_depth;
    c.panel_rule = sl::parse_panel_rule(panel_rule);
    c.seed = seed;
    c.mc_samples = static_cast<std::uint64_t>(mc_samples);
    return c;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--abs-tol", c.abs_tol, "Absolute tolerance per innermost integral")->capture_default_str();
  app->add_option("--rel-tol", c.rel_tol, "Relative tolerance")->capture_default_str();
  app->add_option("--max-depth", c.max_depth, "Bisection depth limit")->capture_default_str();
  app->add_option("--panel-rule", c.panel_rule, "GL7 or GL15")->capture_default_str();
  app->add_option("--seed", c.seed, "Monte-Carlo seed")->capture_default_str();
  app->add_option("--mc-samples", c.mc_samples, "Monte-Carlo samples")->capture_default_str();
  app->add_option("--out", c.out, "Write the result to this path instead of stdout");
}

struct ParamFlags {
  std::optional<int> k;
  std::optional<std::string> theta, theta0, support, corrections, mode;

  void add(CLI::App* app) {
    app->add_option("--k", k, "Number of linear forms");
    app->add_option("--theta", theta, "Sieve level, e.g. 1/4");
    app->add_option("--theta0", theta0, "Truncation level, e.g. 3/8");
    app->add_option("--support", support, "simplex or extended");
    app->add_option("--corrections", corrections, "none, all, or pairs like \"1,1;2,1\"");
    app->add_option("--mode", mode, "standard, flat or conjecture");
  }

  // Fills unset flags from `base`, then applies the mode.
  sl::SieveParams resolve(const sl::SieveParams& base) const {
    const int kk = k.value_or(base.k);
    const auto th = theta ? sl::parse_rational(*theta) : base.theta;
    const auto th0 = theta0 ? sl::parse_rational(*theta0) : base.theta0;
    const auto sup = support ? sl::parse_support(*support) : base.support;
    const auto corr = corrections ? sl::parse_corrections(*corrections) : base.corrections;
    const auto md = mode ? sl::parse_mode(*mode) : base.mode;
    switch (md) {
      case sl::Mode::Flat:
        if (theta0) std::cerr << "note: --theta0 is ignored in flat mode (theta0 = 1 - 2 theta)\n";
        return sl::SieveParams::flat(kk, th, sup, corr);
      case sl::Mode::Conjecture:
        return sl::SieveParams::conjecture(kk, th, sup);
      case sl::Mode::Standard:
        break;
    }
    return sl::SieveParams::standard(kk, th, th0, sup, corr);
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Manifest {
 public:
  Manifest(std::string command, const Common& c) : command_(std::move(command)), common_(c) {
    start_ = std::chrono::steady_clock::now();
  }
  void params(const std::string& key) { params_ = key; }
  void output(const std::string& o) { outputs_.push_back(o); }
  void emit() const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    nlohmann::ordered_json j;
    j["command"] = command_;
    std::ostringstream h;
    h << std::hex << fnv1a(params_);
    j["params_hash"] = h.str();
    j["seed"] = common_.seed;
    j["tolerances"] = {{"abs_tol", common_.abs_tol},
                       {"rel_tol", common_.rel_tol},
                       {"max_depth", common_.max_depth},
                       {"panel_rule", common_.panel_rule},
                       {"mc_samples", common_.mc_samples}};
    j["threads"] = sl::default_threads();
    j["wall_time_s"] = wall;
    j["outputs"] = outputs_;
    j["version"] = kVersion;
    std::cerr << "manifest: " << j.dump() << "\n";
  }

 private:
  std::string command_;
  const Common& common_;
  std::string params_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

void write_output(const std::string& text, const std::string& path, Manifest& m) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    m.output("stdout");
    return;
  }
  std::ofstream f(path);
  if (!f) throw sl::InvalidInput("cannot write '" + path + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  m.output(path);
}

// A polynomial file path, or a preset stem when no such file exists.
sl::SymmetricPolynomial load_poly(const std::string& spec) {
  if (std::filesystem::exists(spec)) return sl::load_polynomial(spec);
  const auto stem = std::filesystem::path(spec).stem().string();
  if (auto p = sl::find_preset(stem)) return *p;
  throw sl::InvalidInput("polynomial file '" + spec + "' not found and no preset named '" + stem + "'");
}

sl::SieveParams preset_defaults(const std::string& name, int k) {
  if (name == "headline5" || name == "remark3") return sl::headline_params(k);
  if (name.rfind("tableC_", 0) == 0)
    return sl::SieveParams::standard(k, sl::Rational(1, 3), sl::Rational(1, 3), sl::Support::Simplex,
                                     sl::parse_corrections("1,1;2,1;3,1;2,2;3,2;4,1"));
  return sl::SieveParams::standard(k, sl::Rational(1, 4), sl::Rational(3, 8), sl::Support::Extended, {});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sieve functional calculator: evaluates, reproduces and optimises Upsilon bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  ParamFlags pf;

  // compute
  auto* compute = app.add_subcommand("compute", "Evaluate J, J0, J_{r,s} and Upsilon for one polynomial");
  std::string poly, preset_name, format = "json";
  pf.add(compute);
  add_common(compute, common);
  auto* poly_opt = compute->add_option("--poly", poly, "Polynomial spec file (JSON)");
  compute->add_option("--preset", preset_name, "Built-in polynomial (see `presets`)")->excludes(poly_opt);
  compute->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Recompute a published table and compare cell by cell");
  std::string target;
  reproduce->add_option("target", target, "C, D, E, F, G, final or remark")
      ->required()
      ->check(CLI::IsMember(sl::reproduce_targets()));
  std::string rformat = "csv";
  reproduce->add_option("--format", rformat, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  add_common(reproduce, common);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Minimise Upsilon over a polynomial basis");
  std::string table, basis_file, poly_out;
  bool positivity = false;
  ParamFlags of;
  of.add(optimize);
  optimize->add_option("--table", table, "C, D, E, F or G (documented basis and parameters)");
  optimize->add_option("--basis", basis_file, "Custom basis JSON");
  optimize->add_flag("--positivity", positivity, "Restrict a custom basis to nonnegative coefficients");
  optimize->add_option("--poly-out", poly_out, "Write the best polynomial spec here");
  add_common(optimize, common);

  // verify
  auto* verify = app.add_subcommand("verify", "Partition and oracle checks for a decomposition");
  std::string vlabel;
  verify->add_option("label", vlabel, "R2, R3, R3p, R4 or explicit")
      ->required()
      ->check(CLI::IsMember({"R2", "R3", "R3p", "R4", "explicit"}));
  add_common(verify, common);

  // admissible
  auto* admissible = app.add_subcommand("admissible", "Admissibility of a tuple of linear forms");
  std::string shifts, forms, assumption = "unconditional";
  auto* shifts_opt = admissible->add_option("shifts", shifts, "Shifts h_i of n + h_i, e.g. \"0,2,6\"");
  admissible->add_option("--forms", forms, "A:B pairs, e.g. \"1:0,1:2,1:6\"")->excludes(shifts_opt);
  admissible->add_option("--assumption", assumption, "unconditional or GEH");
  add_common(admissible, common);

  // regions show
  auto* regions = app.add_subcommand("regions", "Region utilities");
  auto* show = regions->add_subcommand("show", "Print a region as JSON constraints");
  regions->require_subcommand(1);
  std::string rlabel;
  show->add_option("label", rlabel, "support:simplex, support:extended, A:r,s, R2, R3, R3p, R4, R3.2, ...")
      ->required();
  ParamFlags rf;
  rf.add(show);
  add_common(show, common);

  auto* presets = app.add_subcommand("presets", "List built-in polynomials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::string command;
  for (auto* s : app.get_subcommands()) command = s->get_name();
  Manifest manifest(command, common);
  std::string joined;
  for (int i = 1; i < argc; ++i) joined += std::string(argv[i]) + '\x1f';
  manifest.params(joined);

  int code = kOk;
  try {
    const auto cfg = common.config();
    if (*compute) {
      if (poly.empty() && preset_name.empty()) throw sl::InvalidInput("compute needs --poly or --preset");
      auto F = preset_name.empty() ? load_poly(poly) : sl::preset(preset_name);
      const std::string stem =
          preset_name.empty() ? std::filesystem::path(poly).stem().string() : preset_name;
      if (pf.k && *pf.k != F.k())
        throw sl::InvalidInput("--k " + std::to_string(*pf.k) + " differs from the polynomial's k = " +
                               std::to_string(F.k()));
      auto params = pf.resolve(preset_defaults(stem, F.k()));
      for (const auto& w : params.validate()) std::cerr << "warning: " << w << "\n";
      auto rep = sl::upsilon(F, params, cfg);
      write_output(format == "json" ? rep.to_json() : sl::FunctionalReport::csv_header() + "\n" + rep.to_csv_row(),
                   common.out, manifest);
      code = rep.converged ? kOk : kFlagged;
    } else if (*reproduce) {
      auto rep = sl::reproduce(target, cfg, sl::default_threads());
      write_output(rformat == "json" ? rep.to_json() : rep.to_csv(), common.out, manifest);
      std::cerr << "reproduce " << target << ": " << rep.rows.size() << " rows, " << rep.failures()
                << " failing\n";
      code = rep.all_pass() ? kOk : kFlagged;
    } else if (*optimize) {
      if (table.empty() == basis_file.empty()) throw sl::InvalidInput("optimize needs exactly one of --table or --basis");
      nlohmann::ordered_json out;
      std::optional<sl::SymmetricPolynomial> best;
      if (!table.empty()) {
        if (!of.k) throw sl::InvalidInput("optimize --table needs --k");
        auto rep = sl::reoptimize_table(sl::parse_table(table), *of.k, cfg);
        out = nlohmann::ordered_json::parse(rep.to_json());
        if (!rep.cells.empty()) best = rep.cells.back().polynomial;
        code = rep.all_pass() ? kOk : kFlagged;
      } else {
        std::ifstream f(basis_file);
        if (!f) throw sl::InvalidInput("cannot read basis '" + basis_file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        auto basis = sl::BasisSpec::from_json(ss.str());
        basis.positivity = basis.positivity || positivity;
        auto params = of.resolve(sl::SieveParams::conjecture(basis.k, sl::Rational(1, 4), sl::Support::Simplex));
        auto gram = sl::assemble_gram(basis, params, cfg);
        auto res = sl::minimize_rayleigh(gram, basis.positivity);
        best = sl::combine(basis, res.coefficients);
        auto direct = sl::upsilon(*best, params, cfg);
        out["k"] = basis.k;
        out["basis"] = basis.names;
        out["coefficients"] = res.coefficients;
        out["upsilon"] = res.upsilon;
        out["direct_upsilon"] = direct.upsilon;
        out["positivity"] = basis.positivity;
        out["polynomial"] = nlohmann::ordered_json::parse(sl::polynomial_to_json(*best));
      }
      if (!poly_out.empty() && best) {
        std::ofstream pf_out(poly_out);
        if (!pf_out) throw sl::InvalidInput("cannot write '" + poly_out + "'");
        pf_out << sl::polynomial_to_json(*best) << "\n";
        manifest.output(poly_out);
      }
      write_output(out.dump(2), common.out, manifest);
    } else if (*verify) {
      auto rep = sl::verify_decomposition(vlabel, cfg);
      write_output(rep.to_json(), common.out, manifest);
      code = rep.pass() ? kOk : kFlagged;
    } else if (*admissible) {
      if (shifts.empty() && forms.empty()) throw sl::InvalidInput("admissible needs shifts or --forms");
      auto tuple = forms.empty() ? sl::LinearFormTuple::from_shifts(shifts) : sl::LinearFormTuple::from_forms(forms);
      auto adm = sl::is_admissible(tuple);
      nlohmann::ordered_json j;
      j["tuple"] = tuple.to_string();
      j["admissible"] = adm.admissible;
      j["witness"] = adm.witness ? nlohmann::json(*adm.witness) : nlohmann::json(nullptr);
      j["k"] = tuple.k();
      if (adm.admissible) {
        auto rep = nlohmann::ordered_json::parse(sl::rho_report(tuple, sl::parse_assumption(assumption)));
        for (const auto& key : {"rho_unconditional", "rho_geh", "assumption", "rho", "provenance", "statement"})
          j[key] = rep[key];
      } else {
        j["rho_unconditional"] = nullptr;
        j["rho_geh"] = nullptr;
      }
      j["primes_checked"] = adm.primes_checked;
      j["warnings"] = adm.warnings;
      write_output(j.dump(2), common.out, manifest);
    } else if (*regions) {
      auto params = rf.resolve(sl::headline_params(5));
      const auto labels = sl::decomposition_labels();
      std::string text;
      if (std::find(labels.begin(), labels.end(), rlabel) != labels.end()) {
        auto d = sl::make_decomposition(rlabel, params);
        nlohmann::ordered_json j;
        j["label"] = rlabel;
        j["parent"] = nlohmann::ordered_json::parse(sl::region_json(d.parent));
        j["children"] = nlohmann::ordered_json::array();
        for (const auto& c : d.children) j["children"].push_back(nlohmann::ordered_json::parse(sl::region_json(c)));
        text = j.dump(2);
      } else {
        text = sl::region_json(sl::named_region(rlabel, params));
      }
      write_output(text, common.out, manifest);
    } else if (*presets) {
      std::string text;
      for (const auto& n : sl::preset_names()) text += n + "\n";
      write_output(text, common.out, manifest);
    }
  } catch (const sl::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kUsage;
  }
  manifest.emit();
  return code;
}
