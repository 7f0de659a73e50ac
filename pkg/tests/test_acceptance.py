"""Acceptance battery: one test per selfcheck suite, each printing its
own PASS/FAIL line and holding the suite to its time budget."""

import pytest

from ipckit.selfcheck import SUITES, run_suites

BUDGETS = {
    "levels": 1.0,
    "growth": 1.0,
    "charform": 60.0,
    "exactness": 60.0,
    "ladder": 30.0,
    "interval1": 60.0,
    "interval2": 300.0,
    "omega": 300.0,
    "poset": 120.0,
    "taxonomy": 60.0,
    "negtrans": 60.0,
    "kripke": 30.0,
}


def _run(name):
    [r] = run_suites([name], seed=0)
    print(r.line())
    assert r.ok, r.detail
    assert r.seconds < BUDGETS[name], \
        f"{name} took {r.seconds:.2f}s, budget {BUDGETS[name]:.0f}s"


def test_registry_matches_budgets():
    assert list(SUITES) == list(BUDGETS)


def test_acceptance_01_slice_counts():
    _run("levels")


def test_acceptance_02_growth_and_plateau():
    _run("growth")


def test_acceptance_03_characteristic_formulas():
    _run("charform")


def test_acceptance_04_exactness_vs_prover():
    _run("exactness")


def test_acceptance_05_one_variable_ladder():
    _run("ladder")


def test_acceptance_06_interval_m1():
    _run("interval1")


def test_acceptance_07_interval_m2():
    _run("interval2")


def test_acceptance_08_omega_translation():
    _run("omega")


def test_acceptance_09_poset_embeddings():
    _run("poset")


def test_acceptance_10_tautology_taxonomy():
    _run("taxonomy")


def test_acceptance_11_negative_translations():
    _run("negtrans")


def test_acceptance_12_kripke_lemmas():
    _run("kripke")
