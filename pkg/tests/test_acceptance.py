"""Acceptance gate: every criterion at its pinned scale, one line per result.

Run with `pytest tests/test_acceptance.py -v -s` (or `tiltbraid verify --suite
all`).  Every comparison is exact; there are no tolerances anywhere.
"""

import pytest

from tiltbraid.verify import AcceptanceContext, CRITERIA


@pytest.fixture(scope="module")
def actx():
    return AcceptanceContext()


def _run(actx, key):
    result = CRITERIA[key](actx)
    print(result.line())
    assert result.passed, result.line()


def test_criterion_01_two_term_tilting_counts(actx):
    _run(actx, "C1")


def test_criterion_02_reference_grid(actx):
    _run(actx, "C2")


def test_criterion_03_braid_action(actx):
    _run(actx, "C3")


def test_criterion_04_poset_compatibility(actx):
    _run(actx, "C4")


def test_criterion_05_top_summand_law(actx):
    _run(actx, "C5")


def test_criterion_06_rigidity(actx):
    _run(actx, "C6")


def test_criterion_07_interval_invariance(actx):
    _run(actx, "C7")


def test_criterion_08_symmetric_doubling(actx):
    _run(actx, "C8")


def test_criterion_09_algebra_crosscheck(actx):
    _run(actx, "C9")


def test_criterion_10_automorphism_group_law(actx):
    _run(actx, "C10")
