# Copyright 2026 The sieve-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end to the sieve-lab C++ core."""

import json
from fractions import Fraction

from ._sievelab import (
    InvalidInput,
    NotAvailable,
    NumericalError,
    Polynomial,
    admissible,
    preset_names,
)
from . import _sievelab as _core

__all__ = [
    "InvalidInput",
    "NotAvailable",
    "NumericalError",
    "Polynomial",
    "admissible",
    "conjecture_J",
    "optimize",
    "preset_names",
    "reproduce",
    "rho_report",
    "simplex_monomial",
    "upsilon",
    "verify",
]


def upsilon(poly, theta="1/4", theta0="3/8", support="extended", corrections="none",
            mode="standard", abs_tol=1e-8, rel_tol=1e-6):
    """Evaluate J, J0, the corrections and Upsilon. `poly` is a Polynomial or a preset name."""
    if isinstance(poly, str):
        poly = Polynomial.preset(poly)
    return json.loads(_core.upsilon_json(poly, str(theta), str(theta0), support, corrections,
                                         mode, abs_tol, rel_tol))


def reproduce(target, abs_tol=1e-8, rel_tol=1e-6):
    return json.loads(_core.reproduce_json(target, abs_tol, rel_tol))


def optimize(table, k):
    return json.loads(_core.optimize_json(table, k))


def verify(label, mc_samples=1_000_000, seed=1):
    return json.loads(_core.verify_json(label, mc_samples, seed))


def rho_report(shifts, assumption="unconditional"):
    return json.loads(_core.rho_report_json(shifts, assumption))


def simplex_monomial(k, exponents, u="1"):
    return Fraction(_core.simplex_monomial(k, list(exponents), str(u)))


def conjecture_J(poly):
    return Fraction(_core.conjecture_J(poly))
