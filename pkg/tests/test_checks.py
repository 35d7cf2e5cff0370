"""Randomized inequality suites and the aggregate report."""

import pytest

from cbradial.checks import (
    CheckRow,
    check_all,
    dyadic_suite,
    hadamard_suite,
    l1_from_l2_suite,
    subordination_suite,
    transfer_suite,
)


def test_check_row_slack_and_ok():
    # positive slack means the inequality holds with room to spare
    row = CheckRow(suite="s", case="c", lhs=1.0, rhs=2.0)
    assert row.slack == pytest.approx(1.0)
    assert row.ok(1e-7)
    bad = CheckRow(suite="s", case="c", lhs=2.0, rhs=1.0)
    assert not bad.ok(1e-7)
    assert bad.ok(2.0)


def test_individual_suites_pass():
    for rows in (
        hadamard_suite(trials=5, seed=3),
        l1_from_l2_suite(trials=5, seed=3),
        dyadic_suite(pairs=4),
        transfer_suite(),
        subordination_suite(),
    ):
        assert rows
        for row in rows:
            assert row.ok(1e-7), (row.suite, row.case, row.slack)


def test_check_all_aggregates():
    rep = check_all(seed=1, trials=5, dyadic_pairs=4)
    assert rep.passed
    assert rep.violations == ()
    suites = {r.suite for r in rep.rows}
    assert len(suites) == 5
    assert len(rep.rows) >= 5 + 5 + 4


def test_check_all_seed_changes_cases_not_outcome():
    a = check_all(seed=1, trials=4, dyadic_pairs=3)
    b = check_all(seed=2, trials=4, dyadic_pairs=3)
    assert a.passed and b.passed
    la = [r.lhs for r in a.rows if r.suite == "hadamard-hankel"]
    lb = [r.lhs for r in b.rows if r.suite == "hadamard-hankel"]
    assert la != lb
