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

// Python bindings. Reports cross the boundary as JSON text; the package
// __init__ turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sievelab/functionals.hpp"
#include "sievelab/golden.hpp"
#include "sievelab/optimizer.hpp"
#include "sievelab/reproduce.hpp"
#include "sievelab/simplex_exact.hpp"
#include "sievelab/tuples.hpp"

namespace py = pybind11;
namespace sl = sievelab;

namespace {

sl::QuadConfig make_config(double abs_tol, double rel_tol, std::uint64_t seed, std::uint64_t mc_samples) {
  sl::QuadConfig c;
  c.abs_tol = abs_tol;
  c.rel_tol = rel_tol;
  c.seed = seed;
  c.mc_samples = mc_samples;
  return c;
}

sl::SieveParams make_params(int k, const std::string& theta, const std::string& theta0, const std::string& support,
                            const std::string& corrections, const std::string& mode) {
  const auto th = sl::parse_rational(theta);
  const auto sup = sl::parse_support(support);
  switch (sl::parse_mode(mode)) {
    case sl::Mode::Flat:
      return sl::SieveParams::flat(k, th, sup, sl::parse_corrections(corrections));
    case sl::Mode::Conjecture:
      return sl::SieveParams::conjecture(k, th, sup);
    case sl::Mode::Standard:
      break;
  }
  return sl::SieveParams::standard(k, th, sl::parse_rational(theta0), sup, sl::parse_corrections(corrections));
}

}  // namespace

PYBIND11_MODULE(_sievelab, m) {
  m.doc() = "Sieve functionals, exact simplex integrals and Upsilon optimisation";

  py::register_exception<sl::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<sl::NotAvailable>(m, "NotAvailable", PyExc_NotImplementedError);
  py::register_exception<sl::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<sl::SymmetricPolynomial>(m, "Polynomial")
      .def_static("from_json", &sl::polynomial_from_json, py::arg("text"))
      .def_static("preset", &sl::preset, py::arg("name"))
      .def_property_readonly("k", &sl::SymmetricPolynomial::k)
      .def_property_readonly("degree", &sl::SymmetricPolynomial::degree)
      .def("evaluate",
           [](const sl::SymmetricPolynomial& F, const std::vector<double>& t) {
             if (static_cast<int>(t.size()) != F.k()) throw sl::InvalidInput("point has the wrong dimension");
             return F.evaluate(t);
           },
           py::arg("t"))
      .def("scaled", [](const sl::SymmetricPolynomial& F, const std::string& c) { return F.scaled(sl::parse_rational(c)); })
      .def("to_json", &sl::polynomial_to_json)
      .def("__repr__", &sl::SymmetricPolynomial::to_string);

  m.def("preset_names", &sl::preset_names);

  m.def(
      "upsilon_json",
      [](const sl::SymmetricPolynomial& F, const std::string& theta, const std::string& theta0,
         const std::string& support, const std::string& corrections, const std::string& mode, double abs_tol,
         double rel_tol) {
        auto p = make_params(F.k(), theta, theta0, support, corrections, mode);
        auto cfg = make_config(abs_tol, rel_tol, 1, 1'000'000);
        py::gil_scoped_release nogil;
        return sl::upsilon(F, p, cfg).to_json();
      },
      py::arg("poly"), py::arg("theta") = "1/4", py::arg("theta0") = "3/8", py::arg("support") = "extended",
      py::arg("corrections") = "none", py::arg("mode") = "standard", py::arg("abs_tol") = 1e-8,
      py::arg("rel_tol") = 1e-6);

  m.def(
      "reproduce_json",
      [](const std::string& target, double abs_tol, double rel_tol) {
        auto cfg = make_config(abs_tol, rel_tol, 1, 1'000'000);
        py::gil_scoped_release nogil;
        return sl::reproduce(target, cfg, sl::default_threads()).to_json();
      },
      py::arg("target"), py::arg("abs_tol") = 1e-8, py::arg("rel_tol") = 1e-6);

  m.def(
      "optimize_json",
      [](const std::string& table, int k) {
        py::gil_scoped_release nogil;
        return sl::reoptimize_table(sl::parse_table(table), k, sl::QuadConfig{}).to_json();
      },
      py::arg("table"), py::arg("k"));

  m.def(
      "verify_json",
      [](const std::string& label, std::uint64_t mc_samples, std::uint64_t seed) {
        auto cfg = make_config(1e-8, 1e-6, seed, mc_samples);
        py::gil_scoped_release nogil;
        return sl::verify_decomposition(label, cfg).to_json();
      },
      py::arg("label"), py::arg("mc_samples") = 1'000'000, py::arg("seed") = 1);

  m.def(
      "admissible",
      [](const std::string& shifts, const std::string& forms) {
        auto t = forms.empty() ? sl::LinearFormTuple::from_shifts(shifts) : sl::LinearFormTuple::from_forms(forms);
        auto r = sl::is_admissible(t);
        return py::make_tuple(r.admissible, r.witness ? py::cast(*r.witness) : py::none());
      },
      py::arg("shifts") = "", py::arg("forms") = "");

  m.def(
      "rho_report_json",
      [](const std::string& shifts, const std::string& assumption) {
        return sl::rho_report(sl::LinearFormTuple::from_shifts(shifts), sl::parse_assumption(assumption));
      },
      py::arg("shifts"), py::arg("assumption") = "unconditional");

  m.def(
      "simplex_monomial",
      [](int k, const std::vector<int>& a, const std::string& u) {
        return sl::to_string(sl::simplex_monomial(k, a, sl::parse_rational(u)));
      },
      py::arg("k"), py::arg("exponents"), py::arg("u") = "1", "Exact integral as a \"p/q\" string.");

  m.def(
      "conjecture_J", [](const sl::SymmetricPolynomial& F) { return sl::to_string(sl::conjecture_J(F)); },
      py::arg("poly"), "Exact integral of F^2 over the unit simplex as a \"p/q\" string.");
}
