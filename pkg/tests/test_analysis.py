from __future__ import annotations

import csv
import io
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abctree import analysis as A
from abctree import formulas as F
from abctree.graph import DomainError, edge_weight

f = edge_weight

QUOTED_CONSTANTS = [-0.0331932, -0.0380048, 0.0389653, -0.0128606, -0.0108595, -0.0291485,
                   -0.0236034, -0.0201971, -0.00978226, -0.00478432, -0.668141]


# --- inequality families ---------------------------------------------------

@pytest.mark.parametrize("fid", sorted(A.PROP_FUNCTIONS))
def test_default_grid_has_no_violations(fid):
    rep = A.monotonicity_scan(fid)
    assert rep.ok, rep.violations[:3]
    assert rep.points > 0


def test_grow_first_vanishes_at_y2():
    for x in A.Grid().points():
        assert A.grow_first(x, 2) == 0.0


def test_identities_hold():
    rep = A.identity_checks()
    assert rep.ok, rep.violations[:3]


@given(st.floats(2, 500), st.floats(3, 500))
def test_shrink_second_is_negated_grow_first(x, y):
    assert abs(A.shrink_second(x, y) + A.grow_first(y - 1, x)) <= 1e-15


@given(st.floats(2, 500), st.floats(2, 500), st.integers(0, 5), st.integers(0, 5))
def test_shift_telescopes(x, y, dx, dy):
    if dy >= y - 1:
        return
    assert abs(A.shift(x, y, dx, dy) - A.shift_telescoped(x, y, dx, dy)) <= 1e-12


def test_scan_detects_planted_violation():
    # a fine grid over a function that is not monotone must report it
    fake = A.PropFunction("fake", 2, "", lambda x, y: math.sin(x), 0, None, 0)
    rep = A.ScanReport("fake", {})
    xs = [2 + 0.5 * i for i in range(20)]
    table = [[fake.evaluate(x, y) for y in xs] for x in xs]
    A._scan_table(table, xs, xs, fake, rep, {})
    assert not rep.ok


def test_scan_rejects_bad_grid():
    with pytest.raises(DomainError):
        A.monotonicity_scan("A020", A.Grid(lo=1.0))
    with pytest.raises(DomainError):
        A.monotonicity_scan("A999")


def test_scan_report_json():
    rep = A.monotonicity_scan("A050", A.Grid(hi=6))
    data = json.loads(rep.to_json())
    assert data["function"] == "A050" and data["ok"] is True and data["violations"] == []


# --- roots -----------------------------------------------------------------

def test_root_of_b1_b5_derivative():
    lo, hi = A.sign_change_scan("b1_b5_merge_derivative", 6, 100)
    assert hi - lo <= 1e-4
    assert abs(0.5 * (lo + hi) - 31.3997) <= 1e-3


def test_b1_b4_merge_integer_flip():
    lo, hi = A.sign_change_scan("b1_b4_merge", 6, 400)
    assert 241 <= lo <= hi <= 242


def test_two_cut_shared_derivative_root():
    lo, hi = A.sign_change_scan("two_cut_shared_worst_derivative", 6, 20)
    assert abs(0.5 * (lo + hi) - 8.8) <= 0.05


def test_one_cut_derivative_root():
    lo, hi = A.sign_change_scan("one_cut_worst_derivative", 6, 20, step=0.25)
    assert abs(0.5 * (lo + hi) - 6.27567) <= 1e-3


def test_absent_sign_change_is_none():
    assert A.sign_change_scan("b2_b4_balance", 6, 100) is None


def test_unknown_expression():
    with pytest.raises(DomainError):
        A.sign_change_scan("nope", 0, 1)
    with pytest.raises(DomainError):
        A.limit_eval("nope")


# --- limits ----------------------------------------------------------------

@pytest.mark.parametrize("eid", sorted(A.ANALYTIC_LIMITS))
def test_ladder_agrees_with_analytic_limit(eid):
    est = A.limit_eval(eid)
    assert est.converged, est.trace
    assert est.agrees


def test_quoted_limits():
    assert A.limit_eval("single_cut_at_6").value == pytest.approx(0.0389653, abs=1e-5)
    assert A.limit_eval("three_cut_split").value == pytest.approx(-0.0128606, abs=1e-5)
    assert A.limit_eval("five_b4_shared").value == pytest.approx(-0.00478432, abs=1e-5)


def test_short_ladder_reports_divergence():
    est = A.limit_eval("single_cut_at_6", exponents=range(3, 6))
    assert not est.converged


# --- constants -------------------------------------------------------------

def test_constant_table_all_pass():
    rows = A.constant_table()
    assert all(r.passed for r in rows), [r for r in rows if not r.passed]
    values = {r.paper_value for r in rows}
    for c in QUOTED_CONSTANTS:
        assert c in values
    for root in (31.3997, 242, 8.8, 6.27567, 170):
        assert root in values


def test_constants_csv_layout():
    text = A.constants_csv(A.constant_table())
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["id", "paper_value", "computed", "abs_error", "pass"]
    assert all(r[4] == "True" for r in rows[1:])


def test_relocate_threshold_as_reported():
    g = F.b1_b4_relocate_limit
    assert g(169) >= 0 > g(170)
    assert all(g(d) < 0 for d in range(170, 2000, 7))


# --- formulas --------------------------------------------------------------

def test_single_cut_supremum():
    assert F.single_cut(1e12, 6) == pytest.approx(F.SINGLE_CUT_SUP, abs=1e-9)
    assert F.SINGLE_CUT_SUP == pytest.approx(0.0389653, abs=1e-7)


def test_b1_b5_merge_at_six():
    assert F.b1_b5_merge(6, 6) == pytest.approx(-0.0331932, abs=1e-7)
    assert F.b1_b5_merge(1e9, 6) == pytest.approx(-0.0380048, abs=1e-6)


def test_b1_b5_merge_negative_from_hub_three():
    # at u = 2 every edge at the hub weighs 1/sqrt(2) and the change is exactly 0
    assert F.b1_b5_merge(2, 6) == 0.0
    for u in range(3, 400, 3):
        for v in range(6, 60):
            assert F.b1_b5_merge(u, v) < 0


def test_worst_cases_at_six():
    assert F.two_cut_shared_worst(6) == pytest.approx(-0.0291485, abs=1e-7)
    assert F.one_cut_worst(6) == pytest.approx(-0.0201971, abs=1e-7)


def test_five_b4_split_limit_matches_shared_limit():
    for x in (1, 2, 3, 4):
        assert F.five_b4_split_limit(x) == pytest.approx(-0.00478432, abs=1e-5)


@pytest.mark.parametrize("call", [
    lambda: F.b1_b5_merge(1, 6),
    lambda: F.three_cut_split(1),
    lambda: F.five_b4_split(6, 6, 5),
    lambda: F.b1_b4_relocate(2, 1),
    lambda: F.five_b4_shared(4),
])
def test_formula_domains(call):
    with pytest.raises(DomainError):
        call()
