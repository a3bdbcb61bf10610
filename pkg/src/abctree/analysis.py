"""Grid checks of the edge-weight inequalities and reproduction of the quoted constants."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import formulas as F
from .graph import DomainError, edge_weight as f

MARGIN = 1e-12  # monotonicity is checked non-strictly, up to this slack
CONSTANT_TOL = 1e-5


# ---------------------------------------------------------------------------
# The five inequality families
# ---------------------------------------------------------------------------

def grow_first(x: float, y: float) -> float:
    """-f(x, y) + f(x + 1, y)."""
    return -f(x, y) + f(x + 1, y)


def shrink_second(x: float, y: float) -> float:
    """-f(x, y) + f(x, y - 1)."""
    return -f(x, y) + f(x, y - 1)


def shift(x: float, y: float, dx: float, dy: float) -> float:
    """-f(x, y) + f(x + dx, y - dy)."""
    return -f(x, y) + f(x + dx, y - dy)


def shrink_first(x: float, y: float) -> float:
    """-f(x, y) + f(x - 1, y)."""
    return -f(x, y) + f(x - 1, y)


def shift_telescoped(x: float, y: float, dx: int, dy: int) -> float:
    """``shift`` rebuilt as unit steps: dx steps in the first argument, then
    dy steps down in the second."""
    total = math.fsum(grow_first(x + i, y) for i in range(dx))
    return total + math.fsum(shrink_second(x + dx, y - j) for j in range(dy))


@dataclass(frozen=True)
class PropFunction:
    id: str
    arity: int
    domain: str
    evaluate: Callable[..., float]
    increases_in: Optional[int]  # argument index, or None
    decreases_in: Optional[int]
    sign: int  # -1 non-positive, +1 non-negative, 0 no claim


PROP_FUNCTIONS: dict[str, PropFunction] = {
    "A020": PropFunction("A020", 2, "x, y >= 2", grow_first, 0, 1, -1),
    "A030": PropFunction("A030", 2, "x, y >= 2", shrink_second, 0, 1, +1),
    "A010": PropFunction("A010", 2, "x, y >= 2, dx >= 0, 0 <= dy < y",
                         shift, 0, 1, 0),
    "A040": PropFunction("A040", 2, "x, y >= 2", shrink_first, 1, 0, +1),
    "A050": PropFunction("A050", 2, "x >= 2, k >= 2", F.bump_sum, 0, None, 0),
}


@dataclass(frozen=True)
class Grid:
    lo: float = 2.0
    hi: float = 50.0
    step: float = 0.5
    shifts: tuple[int, ...] = (0, 1, 2, 3)
    ks: tuple[int, ...] = tuple(range(2, 11))

    def points(self) -> list[float]:
        count = int(round((self.hi - self.lo) / self.step))
        return [self.lo + i * self.step for i in range(count + 1)]


@dataclass
class ScanReport:
    function: str
    grid: dict
    points: int = 0
    violations: list[dict] = field(default_factory=list)
    roots: list[tuple[float, float]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        d = asdict(self)
        d["ok"] = self.ok
        return json.dumps(d, sort_keys=True)


def _scan_table(table: list[list[float]], xs: Sequence[float], ys: Sequence[float],
                fn: PropFunction, report: ScanReport, extra: dict,
                valid: Callable[[float, float], bool] = lambda x, y: True) -> None:
    """Check sign and neighbour differences on a table indexed [x][y]."""
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if not valid(x, y):
                continue
            g = table[i][j]
            report.points += 1
            if fn.sign < 0 and g > MARGIN:
                report.violations.append({"at": [x, y], **extra, "claim": "non-positive", "value": g})
            if fn.sign > 0 and g < -MARGIN:
                report.violations.append({"at": [x, y], **extra, "claim": "non-negative", "value": g})
            for axis, want in ((fn.increases_in, +1), (fn.decreases_in, -1)):
                if axis is None:
                    continue
                ni, nj = (i + 1, j) if axis == 0 else (i, j + 1)
                if ni >= len(xs) or nj >= len(ys) or not valid(xs[ni], ys[nj]):
                    continue
                diff = table[ni][nj] - g
                if want * diff < -MARGIN:
                    report.violations.append({"at": [x, y], **extra, "axis": axis,
                                              "claim": "increasing" if want > 0 else "decreasing",
                                              "difference": diff})


def monotonicity_scan(fid: str, grid: Grid = Grid()) -> ScanReport:
    """Check the sign and monotonicity claims of one inequality family on a grid."""
    if fid not in PROP_FUNCTIONS:
        raise DomainError(f"unknown function id {fid!r}")
    if grid.lo < 2 or grid.step <= 0 or grid.hi < grid.lo:
        raise DomainError("grid must lie in [2, inf) with a positive step")
    if any(s < 0 for s in grid.shifts) or any(k < 2 for k in grid.ks):
        raise DomainError("shifts must be >= 0 and k >= 2")
    fn = PROP_FUNCTIONS[fid]
    pts = grid.points()
    rep = ScanReport(fid, asdict(grid))
    if fid == "A010":
        for dx in grid.shifts:
            for dy in grid.shifts:
                def ok(x: float, y: float, dy: int = dy) -> bool:
                    return dy < y
                table = [[shift(x, y, dx, dy) if dy < y else math.nan for y in pts] for x in pts]
                _scan_table(table, pts, pts, fn, rep, {"dx": dx, "dy": dy}, ok)
    elif fid == "A050":
        table = [[F.bump_sum(x, k) for k in grid.ks] for x in pts]
        _scan_table(table, pts, list(grid.ks), fn, rep, {})
    else:
        table = [[fn.evaluate(x, y) for y in pts] for x in pts]
        _scan_table(table, pts, pts, fn, rep, {})
        if fid == "A020":
            # equality exactly on the y = 2 boundary, strict below it elsewhere
            for i, x in enumerate(pts):
                for j, y in enumerate(pts):
                    g = table[i][j]
                    if y == 2 and g != 0.0:
                        rep.violations.append({"at": [x, y], "claim": "zero at y=2", "value": g})
                    if y > 2 and not g < 0:
                        rep.violations.append({"at": [x, y], "claim": "negative for y>2", "value": g})
    return rep


def identity_checks(grid: Grid = Grid()) -> ScanReport:
    """Pointwise identities tying the families together."""
    rep = ScanReport("identities", asdict(grid))
    pts = grid.points()
    for x in pts:
        for y in pts:
            rep.points += 1
            d1 = shrink_second(x, y) + grow_first(y - 1, x)
            if abs(d1) > 1e-15:
                rep.violations.append({"at": [x, y], "claim": "A030 = -A020 swapped", "value": d1})
            d2 = shrink_first(x, y) - shrink_second(y, x)
            if abs(d2) > 1e-15:
                rep.violations.append({"at": [x, y], "claim": "A040 = A030 swapped", "value": d2})
            for dx in grid.shifts:
                for dy in grid.shifts:
                    if dy >= y:
                        continue
                    d3 = shift(x, y, dx, dy) - shift_telescoped(x, y, dx, dy)
                    if abs(d3) > 1e-12:
                        rep.violations.append({"at": [x, y], "dx": dx, "dy": dy,
                                               "claim": "A010 telescopes", "value": d3})
    return rep


# ---------------------------------------------------------------------------
# One-variable expressions: roots and limits
# ---------------------------------------------------------------------------

def _limit_split(x: int) -> Callable[[float], float]:
    return lambda u: F.five_b4_split(u, u, x)


EXPRESSIONS: dict[str, Callable[[float], float]] = {
    "b1_b5_merge_at_6": lambda u: F.b1_b5_merge(u, 6),
    "b1_b5_merge_derivative": F.b1_b5_merge_derivative,
    "single_cut_at_6": lambda u: F.single_cut(u, 6),
    "three_cut_split": F.three_cut_split,
    "three_cut_shared": F.three_cut_shared,
    "two_cut_split_worst": F.two_cut_split_worst,
    "two_cut_split_worst_derivative": F.two_cut_split_worst_derivative,
    "two_cut_shared_worst": F.two_cut_shared_worst,
    "two_cut_shared_worst_derivative": F.two_cut_shared_worst_derivative,
    "one_cut_worst": F.one_cut_worst,
    "one_cut_worst_derivative": F.one_cut_worst_derivative,
    "b1_b4_merge": F.b1_b4_merge,
    "b1_b4_merge_derivative": F.b1_b4_merge_derivative,
    "b1_b4_relocate_limit": F.b1_b4_relocate_limit,
    "b1_b4_relocate_limit_derivative": F.b1_b4_relocate_limit_derivative,
    "b2_b4_balance": F.b2_b4_balance,
    "five_b4_shared": F.five_b4_shared,
    "five_b4_shared_derivative": F.five_b4_shared_derivative,
    **{f"five_b4_split_x{x}": _limit_split(x) for x in (1, 2, 3, 4)},
}

_R = math.sqrt
_HALF_LIMIT = 0.5 - _R(0.2)  # -f(u, 5) + f(u, 4) as u -> inf

# closed-form limits as the hub degree grows without bound
ANALYTIC_LIMITS: dict[str, float] = {
    "b1_b5_merge_at_6": -_R(1 / 6) + 0.5 - F.HALF + _R(1 / 3),
    "single_cut_at_6": F.SINGLE_CUT_SUP,
    "three_cut_split": 3 * F.SINGLE_CUT_SUP - F.HALF + _R(1 / 3),
    "three_cut_shared": 3 * F.SINGLE_CUT_SUP - F.HALF + _R(1 / 3),
    "two_cut_shared_worst": 2 * F.SINGLE_CUT_SUP + 2 * _HALF_LIMIT + 0.5 - F.HALF,
    "one_cut_worst": F.SINGLE_CUT_SUP + 3 * _HALF_LIMIT + 0.5 - F.HALF,
    "five_b4_shared": 5 * _HALF_LIMIT + 0.5 - 2 * F.HALF + f(4, 3),
    **{f"five_b4_split_x{x}": 5 * _HALF_LIMIT + 0.5 - 2 * F.HALF + f(4, 3) for x in (1, 2, 3, 4)},
}


def _expr(eid: str) -> Callable[[float], float]:
    try:
        return EXPRESSIONS[eid]
    except KeyError:
        raise DomainError(f"unknown expression id {eid!r}") from None


def sign_change_scan(eid: str, lo: float, hi: float, step: float = 1.0,
                     width: float = 1e-4) -> Optional[tuple[float, float]]:
    """First sign change of an expression on [lo, hi], walking in ``step``
    increments and then bisecting to ``width``. ``None`` when absent.

    A grid point where the expression is exactly zero counts as the root and
    is returned as a degenerate bracket.
    """
    g = _expr(eid)
    if step <= 0 or hi <= lo:
        raise DomainError("need lo < hi and a positive step")
    a, ga = lo, g(lo)
    if ga == 0:
        return (a, a)
    n = int(math.ceil((hi - lo) / step))
    for i in range(1, n + 1):
        b = min(lo + i * step, hi)
        gb = g(b)
        if gb == 0:
            return (b, b)
        if (ga < 0) != (gb < 0):
            while b - a > width:
                m = 0.5 * (a + b)
                gm = g(m)
                if gm == 0:
                    return (m, m)
                if (gm < 0) == (ga < 0):
                    a, ga = m, gm
                else:
                    b = m
            return (a, b)
        a, ga = b, gb
    return None


@dataclass(frozen=True)
class LimitEstimate:
    expression: str
    value: float
    converged: bool
    trace: tuple[tuple[float, float], ...]
    analytic: Optional[float] = None

    @property
    def agrees(self) -> Optional[bool]:
        if self.analytic is None:
            return None
        return abs(self.value - self.analytic) < 1e-8


LADDER = range(3, 13)


def limit_eval(eid: str, exponents: Iterable[int] = LADDER, tol: float = 1e-9) -> LimitEstimate:
    """Evaluate at 10^k up the ladder until consecutive values differ by less than ``tol``.

    Most of these expressions approach their limit like 1/u, so the ladder
    runs to 10^12 for the step criterion to be met.
    """
    g = _expr(eid)
    trace: list[tuple[float, float]] = []
    prev = None
    converged = False
    for k in exponents:
        arg = 10.0 ** k
        val = g(arg)
        trace.append((arg, val))
        if prev is not None and abs(val - prev) < tol:
            converged = True
            break
        prev = val
    return LimitEstimate(eid, trace[-1][1], converged, tuple(trace), ANALYTIC_LIMITS.get(eid))


# ---------------------------------------------------------------------------
# Quoted constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantRecord:
    id: str
    paper_value: float
    computed: float
    tolerance: float
    provenance: str

    @property
    def abs_error(self) -> float:
        return abs(self.computed - self.paper_value)

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tolerance


def _lim(eid: str) -> float:
    est = limit_eval(eid)
    if not est.converged:
        raise ArithmeticError(f"limit of {eid} did not settle: {est.trace[-3:]}")
    return est.value


def _root(eid: str, lo: float, hi: float, step: float = 0.5) -> float:
    br = sign_change_scan(eid, lo, hi, step)
    return math.nan if br is None else 0.5 * (br[0] + br[1])


def _int_sign_flip(eid: str, lo: int, hi: int) -> float:
    """Smallest integer at which the expression is no longer negative."""
    g = _expr(eid)
    for d in range(lo, hi + 1):
        if g(d) >= 0:
            return float(d)
    return math.nan


def _first_negative(eid: str, lo: int, hi: int) -> float:
    """Smallest integer from which the expression stays negative up to ``hi``."""
    g = _expr(eid)
    first = math.nan
    for d in range(lo, hi + 1):
        if g(d) < 0:
            if math.isnan(first):
                first = float(d)
        else:
            first = math.nan
    return first


def constant_table() -> list[ConstantRecord]:
    T = CONSTANT_TOL
    g66 = F.b1_b5_merge(6, 6)
    b5_lim = _lim("b1_b5_merge_at_6")
    shared6 = F.two_cut_shared_worst(6)
    shared_lim = _lim("two_cut_shared_worst")
    one6 = F.one_cut_worst(6)
    one_lim = _lim("one_cut_worst")
    rows = [
        ConstantRecord("b1_b5_merge(6,6)", -0.0331932, g66, T, "b1_b5_merge"),
        ConstantRecord("b1_b5_merge(inf,6)", -0.0380048, b5_lim, T, "b1_b5_merge_at_6 limit"),
        ConstantRecord("b1_b5_merge_max", -0.0331932, max(g66, b5_lim), T, "max of the two above"),
        ConstantRecord("single_cut(inf,6)", 0.0389653, _lim("single_cut_at_6"), T, "single_cut limit"),
        ConstantRecord("three_cut_split(inf)", -0.0128606, _lim("three_cut_split"), T, "three_cut_split limit"),
        ConstantRecord("three_cut_shared(inf)", -0.0128606, _lim("three_cut_shared"), T, "three_cut_shared limit"),
        ConstantRecord("two_cut_split_worst(6)", -0.0108595, F.two_cut_split_worst(6), T, "two_cut_split_worst"),
        ConstantRecord("two_cut_shared_worst(6)", -0.0291485, shared6, T, "two_cut_shared_worst"),
        ConstantRecord("two_cut_shared_worst(inf)", -0.0236034, shared_lim, T, "two_cut_shared_worst limit"),
        ConstantRecord("two_cut_shared_max", -0.0236034, max(shared6, shared_lim), T, "max of the two above"),
        ConstantRecord("one_cut_worst(6)", -0.0201971, one6, T, "one_cut_worst"),
        ConstantRecord("one_cut_worst(inf)", -0.00978226, one_lim, T, "one_cut_worst limit"),
        ConstantRecord("one_cut_max", -0.00978226, max(one6, one_lim), T, "max of the two above"),
        ConstantRecord("five_b4_shared(inf)", -0.00478432, _lim("five_b4_shared"), T, "five_b4_shared limit"),
    ]
    rows += [ConstantRecord(f"five_b4_split(inf,inf,{x})", -0.00478432, _lim(f"five_b4_split_x{x}"), T,
                            f"five_b4_split_x{x} limit") for x in (1, 2, 3, 4)]
    rows += [
        ConstantRecord("single_cut_sup_minus_half", -0.668141, F.SINGLE_CUT_SUP - F.HALF, T,
                       "single_cut limit - sqrt(1/2)"),
        ConstantRecord("root:b1_b5_merge_derivative", 31.3997,
                       _root("b1_b5_merge_derivative", 6, 100), 1e-3, "sign change on [6, 100]"),
        ConstantRecord("root:b1_b4_merge", 242, _int_sign_flip("b1_b4_merge", 6, 400), 0.0,
                       "first integer with b1_b4_merge >= 0 on [6, 400]"),
        ConstantRecord("root:two_cut_shared_worst_derivative", 8.8,
                       _root("two_cut_shared_worst_derivative", 6, 20), 0.05, "sign change on [6, 20]"),
        ConstantRecord("root:one_cut_worst_derivative", 6.27567,
                       _root("one_cut_worst_derivative", 6, 20, 0.25), 1e-3, "sign change on [6, 20]"),
        ConstantRecord("threshold:b1_b4_relocate_limit", 170,
                       _first_negative("b1_b4_relocate_limit", 5, 1000), 0.0,
                       "first integer from which b1_b4_relocate_limit stays negative on [5, 1000]"),
    ]
    return rows


def constants_csv(rows: Sequence[ConstantRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "paper_value", "computed", "abs_error", "pass"])
    for r in rows:
        w.writerow([r.id, repr(r.paper_value), repr(r.computed), f"{r.abs_error:.3e}", r.passed])
    return buf.getvalue()
