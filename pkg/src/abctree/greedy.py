"""Greedy trees, degree-sequence generation, and the degree-sequence search."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .enumeration import (
    SearchResult,
    WorkRange,
    _finalize,
    check_degree_sequence,
    iter_slice,
    labeled_trees_with_degrees,
)
from .graph import (
    ABC_TOL,
    MIN_ORDER_FOR_STRUCTURE,
    DomainError,
    Tree,
    abc_index,
    canonical_form,
    find_paths,
)

DS_SEARCH_CAP = 50


@dataclass(frozen=True)
class GreedyTree:
    tree: Tree  # rooted at vertex 0; vertex ids follow BFS order
    levels: tuple[int, ...]
    degrees: tuple[int, ...]  # the source sequence, non-increasing


def greedy_tree(ds: Sequence[int]) -> GreedyTree:
    """Build the greedy tree of a degree sequence.

    The root takes the largest degree; vertices are then expanded in BFS
    order and each one's children take the largest degrees still available.
    Because degrees are handed out non-increasingly along BFS order, "expand
    the labeled vertex of largest degree first, earliest discovered on ties"
    is exactly BFS order.
    """
    ds = check_degree_sequence(ds)
    n = len(ds)
    if n < 2:
        raise DomainError("greedy tree needs at least two vertices")
    edges = []
    levels = [0] * n
    nxt = 1
    for v in range(n):
        want = ds[v] if v == 0 else ds[v] - 1
        for _ in range(want):
            if nxt >= n:
                raise DomainError(f"degree sequence {list(ds)} is not realizable")
            edges.append((v, nxt))
            levels[nxt] = levels[v] + 1
            nxt += 1
    return GreedyTree(Tree(n, edges, root=0), tuple(levels), ds)


def is_greedy(t: Tree) -> bool:
    """True iff ``t`` is isomorphic to the greedy tree of its degree sequence."""
    if t.n < 2:
        return True
    return canonical_form(t) == canonical_form(greedy_tree(t.degree_sequence()).tree)


# ---------------------------------------------------------------------------
# Degree sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DSCandidate:
    degrees: tuple[int, ...]
    ones: int
    twos: int
    high: int  # vertices of degree >= 3


def _candidate(degrees: tuple[int, ...]) -> DSCandidate:
    ones = degrees.count(1)
    twos = degrees.count(2)
    return DSCandidate(degrees, ones, twos, len(degrees) - ones - twos)


def _partitions(total: int, parts: int, max_part: int, min_part: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` parts in
    [min_part, max_part], non-increasing, in reverse lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = min(max_part, total - min_part * (parts - 1))
    for first in range(hi, min_part - 1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first, min_part):
            yield (first,) + rest


def degree_sequences(n: int, prune: bool = False) -> Iterator[DSCandidate]:
    """Tree degree sequences of order ``n``.

    Unpruned: every partition of 2(n-1) into n positive parts. Pruned: only
    sequences whose degree-2 count equals the leaf count or exceeds it by one,
    all other degrees being >= 3 -- the shape forced when every leaf ends a
    pendant path of length 2 or 3, at most one has length 3, and there are
    no internal paths.
    """
    if n < 2:
        raise DomainError("degree sequences need n >= 2")
    if prune and n < MIN_ORDER_FOR_STRUCTURE:
        raise DomainError(f"pruned degree sequences need n >= {MIN_ORDER_FOR_STRUCTURE}")
    total = 2 * (n - 1)
    if not prune:
        for p in _partitions(total, n, n - 1, 1):
            yield _candidate(p)
        return
    # ones + twos + high = n, ones + 2*twos + S = 2n - 2, twos = ones + extra
    seqs = []
    for high in range(1, n):
        for extra in (0, 1):
            if (n - high - extra) % 2:
                continue
            ones = (n - high - extra) // 2
            twos = ones + extra
            s = total - ones - 2 * twos
            if ones < 2 or s < 3 * high:
                continue
            for p in _partitions(s, high, n - 1, 3):
                seqs.append(p + (2,) * twos + (1,) * ones)
    seqs.sort(reverse=True)
    for p in seqs:
        yield _candidate(p)


@dataclass
class GreedyCheck:
    """Outcome of comparing greedy trees with every labeled realization."""

    sequences: int = 0
    labeled: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_greedy_minimality(n_max: int = 10, n_min: int = 2, tol: float = ABC_TOL) -> GreedyCheck:
    """For each degree sequence of order n_min..n_max, check that the greedy
    tree scores no worse than any labeled tree with that sequence."""
    out = GreedyCheck()
    for n in range(n_min, n_max + 1):
        for cand in degree_sequences(n):
            out.sequences += 1
            g = abc_index(greedy_tree(cand.degrees).tree)
            best = math.inf
            for t in labeled_trees_with_degrees(cand.degrees):
                out.labeled += 1
                best = min(best, abc_index(t))
            if g > best + tol:
                out.violations.append({"degrees": list(cand.degrees), "greedy": g, "best": best})
    return out


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def neutral_relocations(t: Tree) -> list[Tree]:
    """Trees reached by moving the middle vertex of a length-3 pendant path
    to the end of another pendant path of length 2.

    Every edge touched has a degree-2 endpoint before and after, and
    f(x, 2) is constant, so these moves leave the ABC index unchanged.
    """
    paths = find_paths(t)
    threes = [p for p in paths.pendant if p.length == 3]
    twos = [p for p in paths.pendant if p.length == 2]
    out = []
    for p3 in threes:
        a, b, leaf = p3.vertices
        base = set(t.edges)
        base -= {(min(a, b), max(a, b)), (min(b, leaf), max(b, leaf))}
        base.add((min(a, leaf), max(a, leaf)))
        for p2 in twos:
            x, y = p2.vertices
            edges = set(base)
            edges.discard((min(x, y), max(x, y)))
            edges |= {(min(x, b), max(x, b)), (min(b, y), max(b, y))}
            out.append(Tree(t.n, edges))
    return out


def ds_search_min_abc(n: int, partition: Optional[WorkRange] = None,
                      cap: int = DS_SEARCH_CAP, force: bool = False,
                      expand_ties: bool = True,
                      tol: float = ABC_TOL) -> SearchResult:
    """Minimum of ABC(greedy_tree(ds)) over the pruned degree sequences.

    With ``expand_ties`` the argmin set is closed under the ABC-neutral
    relocation of the length-3 pendant path, so it lists every isomorphism
    class the greedy construction represents only once.
    """
    if n < MIN_ORDER_FOR_STRUCTURE:
        raise DomainError(f"degree-sequence search needs n >= {MIN_ORDER_FOR_STRUCTURE}")
    if n > cap and not force:
        raise DomainError(f"n={n} exceeds the degree-sequence cap {cap}; use force")
    t0 = time.perf_counter()
    examined = 0
    best = math.inf
    winners: list[tuple[float, Tree]] = []
    for cand in iter_slice(degree_sequences(n, prune=True), partition):
        examined += 1
        t = greedy_tree(cand.degrees).tree
        v = abc_index(t)
        if v <= best + tol:
            if v < best:
                best = v
                winners = [w for w in winners if w[0] <= best + tol]
            winners.append((v, t))
    scored: dict[tuple[int, ...], float] = {}
    for v, t in winners:
        scored[canonical_form(t)] = v
        if expand_ties:
            for alt in neutral_relocations(t):
                scored.setdefault(canonical_form(alt), abc_index(alt))
    return _finalize(n, scored, examined, time.perf_counter() - t0, "ds-greedy", tol)
