"""Closed-form ABC changes of the branch rewrites, their worst cases and derivatives.

Arguments are vertex degrees and may be real. Differences of nearly equal
weights go through :func:`weight_change` so the functions stay accurate at
degrees around 1e9, where limits are evaluated.

Naming: ``u``/``h`` is the hub (a common parent), ``v`` a branch root that
loses pendant paths, ``w`` a branch root that gains one.
"""

from __future__ import annotations

import math

from .graph import DomainError, edge_weight as f, weight_change as dw

HALF = math.sqrt(0.5)  # f(2, k) for every k >= 1

# sup over hub degrees of -f(h, 6) + f(h, 5): the analytic limit sqrt(1/5) - sqrt(1/6)
SINGLE_CUT_SUP = math.sqrt(0.2) - math.sqrt(1 / 6)


def _need(cond: bool, what: str) -> None:
    if not cond:
        raise DomainError(what)


# --- B1 and B_{>=5} under one parent ---------------------------------------

def b1_b5_merge(u: float, v: float) -> float:
    """Two pendant 2-paths move from the large branch onto the B1 branch."""
    _need(u >= 2 and v >= 6, "need u >= 2 and v >= 6 (a B_k root with k >= 5)")
    return dw(u, v, u, v - 2) + dw(u, 2, u, 3)


def b1_b5_merge_derivative(u: float) -> float:
    """d/du of b1_b5_merge(u, 6)."""
    _need(u > 0, "need u > 0")
    num = 2 * math.sqrt(6) / math.sqrt(4 + u) - 3 / math.sqrt(2 + u) - math.sqrt(3) / math.sqrt(1 + u)
    return num / (6 * u ** 1.5)


# --- three large branches --------------------------------------------------

def single_cut(u: float, v: float) -> float:
    """Change on the parent edge when a branch root drops one child."""
    _need(u >= 1 and v >= 3, "need u >= 1 and v >= 3")
    return dw(u, v, u, v - 1)


def three_cut_split(h: float) -> float:
    """Bound for three large branches under two parents, star attached at degree ``h``."""
    _need(h >= 2, "need h >= 2")
    return SINGLE_CUT_SUP + 2 * dw(h, 6, h + 1, 5) - HALF + f(h + 1, 3)


def three_cut_shared(h: float) -> float:
    """Bound for three large branches under one parent of degree ``h``."""
    _need(h >= 3, "need h >= 3")
    return 3 * dw(h, 6, h + 1, 5) - HALF + f(h + 1, 3)


def bump_sum(x: float, k: float) -> float:
    """k(-f(x, 6) + f(x + 1, 5)) + f(x + 1, 3)."""
    _need(x >= 2 and k >= 0, "need x >= 2 and k >= 0")
    return k * dw(x, 6, x + 1, 5) + f(x + 1, 3)


# --- moving one pendant 2-path to a small sibling --------------------------

def move_to_small(u: float, v: float, w: float) -> float:
    """Pendant 2-path moves from child ``v`` to child ``w`` of ``u``."""
    _need(u >= 2 and v >= 3 and w >= 1, "need u >= 2, v >= 3, w >= 1")
    return dw(u, v, u, v - 1) + dw(u, w, u, w + 1)


def move_to_small_worst(u: float) -> float:
    """move_to_small at its maximizing degrees v = 6, w = 4."""
    return move_to_small(u, 6, 4)


# --- building a B3* branch -------------------------------------------------

def two_cut_split(u1: float, v1: float, u2: float, v2: float) -> float:
    """Large branches under different parents; B3* attached to ``u2``.

    The attachment edge is taken at the post-rewrite hub degree ``u2 + 1``.
    """
    _need(min(u1, u2) >= 2 and min(v1, v2) >= 3, "need hubs >= 2 and roots >= 3")
    return (dw(u1, v1, u1, v1 - 1) + dw(u2, v2, u2, v2 - 1)
            + 2 * dw(u2, 5, u2, 4) - HALF + f(u2 + 1, 4))


def two_cut_split_worst(h: float) -> float:
    """two_cut_split with u1 -> inf, v1 = v2 = 6, as a function of u2 = h
    (attachment at degree h, as displayed)."""
    _need(h >= 2, "need h >= 2")
    return (dw(h, 6, h, 5) + 2 * dw(h, 5, h, 4) + f(h, 4)
            - (HALF - SINGLE_CUT_SUP))


def two_cut_split_worst_derivative(h: float) -> float:
    _need(h > 0, "need h > 0")
    num = (-45 / math.sqrt((2 + h) / h) + 9 * math.sqrt(5) / math.sqrt((3 + h) / h)
           + 10 * math.sqrt(6) / math.sqrt((4 + h) / h))
    return num / (30 * h * h)


def two_cut_shared(u: float, v1: float, v2: float) -> float:
    """Both large branches under ``u``; B3* attached to ``u``."""
    _need(u >= 2 and min(v1, v2) >= 3, "need u >= 2 and roots >= 3")
    return (dw(u, v1, u, v1 - 1) + dw(u, v2, u, v2 - 1)
            + 2 * dw(u, 5, u, 4) + f(u, 4) - HALF)


def two_cut_shared_worst(h: float) -> float:
    return two_cut_shared(h, 6, 6)


def two_cut_shared_worst_derivative(h: float) -> float:
    _need(h > 0, "need h > 0")
    num = -9 / math.sqrt((2 + h) / h) + 4 * math.sqrt(6) / math.sqrt((4 + h) / h)
    return num / (6 * h * h)


def one_cut(u: float, v: float) -> float:
    """One large branch under ``u`` whose other children are B4 roots."""
    _need(u >= 2 and v >= 3, "need u >= 2 and v >= 3")
    return dw(u, v, u, v - 1) + 3 * dw(u, 5, u, 4) + f(u, 4) - HALF


def one_cut_worst(h: float) -> float:
    return one_cut(h, 6)


def one_cut_worst_derivative(h: float) -> float:
    _need(h > 0, "need h > 0")
    num = (-30 / math.sqrt((2 + h) / h) + 9 * math.sqrt(5) / math.sqrt((3 + h) / h)
           + 5 * math.sqrt(6) / math.sqrt((4 + h) / h))
    return num / (15 * h * h)


# --- B1/B2 next to B4 ------------------------------------------------------

def b1_b4_merge(u: float) -> float:
    """Two pendant 2-paths move from the B4 onto the B1 sibling."""
    _need(u >= 2, "need u >= 2")
    return dw(u, 5, u, 3) + dw(u, 2, u, 3)


def b1_b4_merge_derivative(u: float) -> float:
    _need(u > 0, "need u > 0")
    a = math.sqrt((1 + u) / u)
    b = math.sqrt((3 + u) / u)
    return (9 * math.sqrt(5) * a - 10 * math.sqrt(3) * b) / (30 * u * u * a * b)


def b1_b4_relocate(u: float, x: float) -> float:
    """Bound for hanging the B1 under the B4 root; ``x`` dominates the other
    neighbours of ``u``."""
    _need(u >= 3 and x >= 1, "need u >= 3 and x >= 1")
    return dw(u, 5, u - 1, 6) + (u - 2) * dw(u, x, u - 1, x)


def b1_b4_relocate_limit(u: float) -> float:
    """b1_b4_relocate as x -> inf, where f(u, x) -> sqrt(1/u)."""
    _need(u >= 3, "need u >= 3")
    gap = 1 / (u - 1) - 1 / u
    return dw(u, 5, u - 1, 6) + (u - 2) * gap / (math.sqrt(1 / (u - 1)) + math.sqrt(1 / u))


def b1_b4_relocate_limit_derivative(u: float) -> float:
    _need(u > 1, "need u > 1")
    return (15 * (1 / (u - 1)) ** 1.5 * u - 15 * (1 / u) ** 1.5 * (2 + u)
            - 10 * math.sqrt(6) / ((u - 1) ** 1.5 * math.sqrt(u + 3))
            + 9 * math.sqrt(5) / (u ** 1.5 * math.sqrt(u + 3))) / 30


def b2_b4_balance(u: float) -> float:
    """One pendant 2-path moves from the B4 to the B2 sibling."""
    _need(u >= 2, "need u >= 2")
    return dw(u, 5, u, 4) + dw(u, 3, u, 4)


# --- five B4 branches ------------------------------------------------------

def five_b4_split(u1: float, u2: float, x: int) -> float:
    """Bound for five B4 roots, ``x`` under ``u1`` and ``5 - x`` under ``u2``;
    B3** attached to ``u2``."""
    _need(1 <= x <= 4, "need 1 <= x <= 4")
    _need(u1 >= 2 and u2 >= 6 - x, "hub degrees too small")
    return (x * dw(u1, 5, u1, 4)
            + (5 - x) * dw(u2, 5, u2 + 1, 4)
            + (u2 + x - 6) * dw(u2, 4, u2 + 1, 4)
            + dw(u2, u2, u2 + 1, u2)
            - 2 * HALF + f(u2 + 1, 4) + f(4, 3))


def five_b4_split_limit(x: int, big: float = 1e9) -> float:
    return five_b4_split(big, big, x)


def five_b4_shared(u: float) -> float:
    """Bound for five B4 roots under one parent ``u``."""
    _need(u >= 5, "need u >= 5")
    return 5 * dw(u, 5, u + 1, 4) + f(u + 1, 4) - 2 * f(2, 1) + f(4, 3)


def five_b4_shared_derivative(u: float) -> float:
    _need(u > 0, "need u > 0")
    return (3 * math.sqrt(5) / (2 * u * u * math.sqrt((3 + u) / u))
            - 3 / ((1 + u) ** 2 * math.sqrt((3 + u) / (1 + u))))
