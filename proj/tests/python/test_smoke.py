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

"""Smoke tests for the Python bindings and the command-line tool."""

import json
import os
import subprocess
from fractions import Fraction

import pytest

import sievelab


def test_presets_listed():
    names = sievelab.preset_names()
    assert "headline5" in names and "remark3" in names
    assert sum(n.startswith("tableC_") for n in names) == 16


def test_polynomial_evaluation():
    F = sievelab.Polynomial.preset("headline5")
    assert F.k == 5
    assert F.evaluate([0.0] * 5) == pytest.approx(266.0)
    assert F.evaluate([0.2] * 5) == pytest.approx(11.0)
    with pytest.raises(sievelab.InvalidInput):
        F.evaluate([0.1, 0.2])


def test_polynomial_json_round_trip():
    F = sievelab.Polynomial.preset("tableC_F2_k4")
    G = sievelab.Polynomial.from_json(F.to_json())
    assert repr(G) == repr(F)


def test_exact_integrals():
    assert sievelab.simplex_monomial(2, [1, 0]) == Fraction(1, 6)
    assert sievelab.simplex_monomial(5, [2, 1, 0, 0, 0], "1/2") == Fraction(2, 40320) / 256
    one_minus_p1 = sievelab.Polynomial.from_json(
        '{"k": 3, "basis": "shifted", "terms": [{"c": "1", "e": {"1": 1}}]}')
    assert sievelab.conjecture_J(one_minus_p1) == Fraction(1, 60)


def test_conjecture_upsilon():
    rep = sievelab.upsilon("tableC_F1_k4", theta="1/3", support="simplex", mode="conjecture")
    assert rep["upsilon"] == pytest.approx(10.44612, abs=5e-5)


def test_scale_invariance():
    F = sievelab.Polynomial.preset("tableC_F1_k3")
    a = sievelab.upsilon(F, theta="1/3", support="simplex", mode="conjecture")["upsilon"]
    b = sievelab.upsilon(F.scaled("7/2"), theta="1/3", support="simplex", mode="conjecture")["upsilon"]
    assert a == pytest.approx(b, rel=1e-10)


def test_admissibility():
    assert sievelab.admissible("0,2,4") == (False, 3)
    assert sievelab.admissible("0,2,6") == (True, None)
    assert sievelab.rho_report("0,4,6,10,12")["rho"] == 14
    assert sievelab.rho_report("0,4,6,10,12", "GEH")["rho"] == 13
    with pytest.raises(sievelab.InvalidInput):
        sievelab.rho_report("0,2,4")


def test_optimize_quadratic_table():
    rep = sievelab.optimize("G", 3)
    assert rep["pass"]
    assert rep["cells"][0]["value"] <= 7.85039 + 1e-3


def test_verify_two_shift_split():
    rep = sievelab.verify("R2", mc_samples=100_000, seed=7)
    assert rep["partition"]["ok"]
    assert all(p["oracle_agree"] for p in rep["pieces"])
    assert rep["total_pass"]


def test_invalid_input_maps_to_value_error():
    with pytest.raises(ValueError):
        sievelab.upsilon("headline5", theta="oops")


CLI = os.environ.get("SIEVELAB_CLI")


@pytest.mark.skipif(not CLI, reason="command-line tool path not provided")
def test_cli_compute_is_deterministic():
    args = [CLI, "compute", "--k", "4", "--theta", "1/3", "--theta0", "1", "--support", "simplex",
            "--poly", "tableC_F1_k4.json", "--corrections", "none"]
    first = subprocess.run(args, capture_output=True, text=True, check=True)
    second = subprocess.run(args, capture_output=True, text=True, check=True)
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["upsilon"] == pytest.approx(10.44612, abs=5e-5)
    assert "manifest" in first.stderr


@pytest.mark.skipif(not CLI, reason="command-line tool path not provided")
def test_cli_exit_codes():
    assert subprocess.run([CLI, "compute", "--k", "4"], capture_output=True).returncode == 1
    assert subprocess.run([CLI, "admissible", "0,2,x"], capture_output=True).returncode == 1
    assert subprocess.run([CLI, "nonsense"], capture_output=True).returncode == 1
    out = subprocess.run([CLI, "admissible", "0,2,4"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["witness"] == 3


@pytest.mark.skipif(not CLI, reason="command-line tool path not provided")
def test_cli_reproduce_cites_anchors():
    out = subprocess.run([CLI, "reproduce", "G"], capture_output=True, text=True)
    assert out.returncode == 0
    lines = out.stdout.strip().splitlines()
    header = lines[0].split(",")
    anchor = header.index("anchor")
    assert len(lines) == 9
    for line in lines[1:]:
        assert line.split(",")[anchor]
