"""Exhaustive tree generators and the brute-force minimal-ABC search.

Free trees come from the Wright-Richmond-Odlyzko-McKay successor rule on
center-rooted level sequences, so the stream needs no memory and any index
range of it can be scanned independently. Labeled trees come from Prüfer
codes.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice
from typing import Iterator, Optional, Sequence

from .graph import (
    ABC_TOL,
    DomainError,
    Tree,
    abc_index,
    canonical_form,
    tree_from_levels,
)

BRUTE_FORCE_CAP = 20


# ---------------------------------------------------------------------------
# Free trees
# ---------------------------------------------------------------------------

def _next_rooted(seq: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    """Beyer-Hedetniemi successor of a canonical rooted level sequence."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    target = seq[p] - 1
    while seq[q] != target:
        q -= 1
    out = seq[:]
    shift = p - q
    for i in range(p, len(out)):
        out[i] = out[i - shift]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """First subtree of the root (re-based) and the tree without it."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    return [x - 1 for x in seq[1:m]], [0] + seq[m:]


def _next_free(seq: list[int]) -> list[int]:
    """Smallest sequence >= ``seq`` (in generation order) that is a valid free tree."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        h = max(new_left)
        nxt[len(nxt) - h - 1:] = range(1, h + 2)
    return nxt


class FreeTreeCursor:
    """Single-consumer cursor over the free trees of order ``n``.

    ``seq`` is the current level sequence (``None`` once exhausted) and
    ``index`` its position in the deterministic generation order.
    """

    def __init__(self, n: int, start: Optional[Sequence[int]] = None, index: int = 0):
        if n < 1:
            raise DomainError("order must be at least 1")
        self.n = n
        self.index = index
        if start is not None:
            self.seq: Optional[list[int]] = list(start)
        elif n <= 3:
            self.seq = [0, 1, 1][:n]
        else:
            first = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
            self.seq = _next_free(first)

    def advance(self) -> None:
        if self.seq is None:
            return
        self.index += 1
        if self.n <= 3:
            self.seq = None
            return
        nxt = _next_rooted(self.seq)
        self.seq = None if nxt is None else _next_free(nxt)

    def skip(self, k: int) -> None:
        for _ in range(k):
            if self.seq is None:
                break
            self.advance()

    def __iter__(self) -> Iterator[list[int]]:
        while self.seq is not None:
            yield self.seq
            self.advance()


def free_tree_sequences(n: int) -> Iterator[list[int]]:
    """Level sequences of all free trees of order ``n``."""
    return iter(FreeTreeCursor(n))


def free_trees(n: int) -> Iterator[Tree]:
    """One tree per isomorphism class of free trees on ``n`` vertices."""
    for seq in FreeTreeCursor(n):
        yield tree_from_levels(seq)


@lru_cache(maxsize=None)
def _rooted_counts(n: int) -> tuple[int, ...]:
    # a[k] = number of rooted unlabeled trees on k vertices
    a = [0, 1]
    for m in range(1, n):
        s = 0
        for k in range(1, m + 1):
            s += sum(d * a[d] for d in range(1, k + 1) if k % d == 0) * a[m - k + 1]
        a.append(s // m)
    return tuple(a)


def count_free_trees(n: int) -> int:
    """Otter's formula; used only to size work partitions."""
    if n < 1:
        raise DomainError("order must be at least 1")
    a = _rooted_counts(n)
    pairs = sum(a[k] * a[n - k] for k in range(1, n))
    if n % 2 == 0:
        pairs -= a[n // 2]
    total = a[n] - pairs // 2
    return total


# ---------------------------------------------------------------------------
# Prüfer codes
# ---------------------------------------------------------------------------

def prufer_encode(t: Tree) -> list[int]:
    """Prüfer code of a labeled tree (repeatedly strip the smallest leaf)."""
    n = t.n
    if n <= 2:
        return []
    deg = list(t.degrees)
    adj = [set(a) for a in t.adjacency]
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        code.append(nb)
        adj[nb].discard(leaf)
        deg[nb] -= 1
        if deg[nb] == 1:
            heapq.heappush(leaves, nb)
    return code


def prufer_decode(code: Sequence[int], n: Optional[int] = None) -> Tree:
    """Labeled tree on ``len(code) + 2`` vertices."""
    if n is None:
        n = len(code) + 2
    if len(code) != n - 2:
        raise DomainError(f"Prüfer code for n={n} must have length {n - 2}")
    if n == 1:
        return Tree(1, [])
    deg = [1] * n
    for v in code:
        if not 0 <= v < n:
            raise DomainError(f"label {v} out of range")
        deg[v] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Tree(n, edges)


def _multiset_permutations(items: list[int]) -> Iterator[list[int]]:
    """Distinct permutations in lexicographic order (next-permutation)."""
    a = sorted(items)
    m = len(a)
    while True:
        yield a[:]
        i = m - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = m - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def check_degree_sequence(ds: Sequence[int]) -> tuple[int, ...]:
    """Sorted non-increasing copy of ``ds``; raises if no tree realizes it."""
    out = tuple(sorted((int(d) for d in ds), reverse=True))
    n = len(out)
    if n == 0 or min(out) < (0 if n == 1 else 1):
        raise DomainError(f"degree sequence {list(ds)} has non-positive entries")
    if n == 1:
        if out != (0,):
            raise DomainError("a single vertex has degree 0")
        return out
    if sum(out) != 2 * (n - 1):
        raise DomainError(f"degree sum {sum(out)} != 2(n-1) = {2 * (n - 1)}")
    return out


def labeled_trees_with_degrees(ds: Sequence[int]) -> Iterator[Tree]:
    """All labeled trees in which vertex ``i`` has degree ``sorted(ds)[i]``.

    Every isomorphism class with this degree multiset occurs at least once.
    """
    ds = check_degree_sequence(ds)
    n = len(ds)
    if n == 1:
        yield Tree(1, [])
        return
    multiset = [v for v, d in enumerate(ds) for _ in range(d - 1)]
    for code in _multiset_permutations(multiset):
        yield prufer_decode(code, n)


# ---------------------------------------------------------------------------
# Brute-force search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WorkRange:
    """Half-open index range of the generation order.

    ``seed`` optionally carries the level sequence at ``start`` so a worker
    can resume there instead of regenerating the prefix.
    """

    start: int
    stop: Optional[int] = None
    seed: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class SearchResult:
    n: int
    abc_min: float
    trees: tuple[tuple[int, ...], ...]  # canonical level sequences, sorted
    examined: int
    seconds: float = 0.0
    method: str = "brute"
    values: tuple[float, ...] = field(default=(), repr=False, compare=False)

    def payload(self) -> dict:
        """Deterministic record content (no timing)."""
        return {
            "n": self.n,
            "method": self.method,
            "abc_min": self.abc_min,
            "trees": [list(s) for s in self.trees],
            "examined": self.examined,
        }

    def to_record(self) -> dict:
        rec = self.payload()
        rec["seconds"] = self.seconds
        return rec


def _finalize(n: int, scored: dict[tuple[int, ...], float], examined: int,
              seconds: float, method: str, tol: float = ABC_TOL) -> SearchResult:
    if not scored:
        return SearchResult(n, math.inf, (), examined, seconds, method, ())
    best = min(scored.values())
    keep = sorted(k for k, v in scored.items() if v <= best + tol)
    return SearchResult(n, best, tuple(keep), examined, seconds, method,
                        tuple(scored[k] for k in keep))


def merge_results(results: Sequence[SearchResult], tol: float = ABC_TOL) -> SearchResult:
    """Min-merge with tie union; associative and commutative."""
    if not results:
        raise ValueError("nothing to merge")
    n = results[0].n
    method = results[0].method
    scored: dict[tuple[int, ...], float] = {}
    for r in results:
        if r.n != n or r.method != method:
            raise ValueError("cannot merge results of different searches")
        scored.update(zip(r.trees, r.values))
    return _finalize(n, scored, sum(r.examined for r in results),
                     sum(r.seconds for r in results), method, tol)


def _weight_table(n: int) -> list[list[float]]:
    table = [[0.0] * (n + 1) for _ in range(n + 1)]
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            table[a][b] = math.sqrt((a + b - 2) / (a * b))
    return table


def score_levels(seq: Sequence[int], table: list[list[float]]) -> float:
    """Fast (non-fsum) ABC of the tree with level sequence ``seq``."""
    n = len(seq)
    deg = [1] * n
    deg[0] = 0
    last = [0] * (n + 1)
    par = [0] * n
    for i in range(1, n):
        d = seq[i]
        p = last[d - 1]
        par[i] = p
        deg[p] += 1
        last[d] = i
    s = 0.0
    for i in range(1, n):
        s += table[deg[i]][deg[par[i]]]
    return s


def scan_free_trees(n: int, partition: Optional[WorkRange] = None,
                    tol: float = ABC_TOL) -> SearchResult:
    """Minimum ABC over one slice (default: all) of the free-tree stream."""
    t0 = time.perf_counter()
    start = partition.start if partition else 0
    stop = partition.stop if partition else None
    if partition is not None and partition.seed is not None:
        cursor = FreeTreeCursor(n, partition.seed, start)
    else:
        cursor = FreeTreeCursor(n)
        cursor.skip(start)
    table = _weight_table(max(n, 2))
    best = math.inf
    # fast sums differ from fsum by far less than this slack
    slack = tol + 10 * ABC_TOL
    cands: list[tuple[float, tuple[int, ...]]] = []
    examined = 0
    while cursor.seq is not None and (stop is None or cursor.index < stop):
        seq = cursor.seq
        examined += 1
        if n == 1:
            cands.append((0.0, tuple(seq)))
        else:
            s = score_levels(seq, table)
            if s <= best + slack:
                if s < best:
                    best = s
                    cands = [c for c in cands if c[0] <= best + slack]
                cands.append((s, tuple(seq)))
        cursor.advance()
    scored = {}
    for s, seq in cands:
        if s <= best + slack:
            t = tree_from_levels(seq)
            scored[canonical_form(t)] = abc_index(t) if n > 1 else 0.0
    return _finalize(n, scored, examined, time.perf_counter() - t0, "brute", tol)


def brute_force_min_abc(n: int, partition: Optional[WorkRange] = None,
                        cap: int = BRUTE_FORCE_CAP, force: bool = False,
                        tol: float = ABC_TOL) -> SearchResult:
    """Global (or per-slice) minimum ABC over all free trees of order ``n``."""
    if n < 4:
        raise DomainError("brute-force search needs n >= 4")
    if n > cap and not force:
        raise DomainError(f"n={n} exceeds the brute-force cap {cap}; use force")
    return scan_free_trees(n, partition, tol)


def plan_partitions(n: int, parts: int) -> list[WorkRange]:
    """Split the free-tree stream into ``parts`` contiguous index ranges.

    One generation pass records the level sequence at every boundary so the
    workers can start where their range begins.
    """
    if parts < 1:
        raise ValueError("parts must be positive")
    total = count_free_trees(n)
    bounds = [total * i // parts for i in range(parts + 1)]
    cursor = FreeTreeCursor(n)
    out = []
    for a, b in zip(bounds, bounds[1:]):
        cursor.skip(a - cursor.index)
        seed = tuple(cursor.seq) if cursor.seq is not None else None
        out.append(WorkRange(a, b, seed))
    return out


def iter_slice(items: Iterator, partition: Optional[WorkRange]) -> Iterator:
    if partition is None:
        return items
    return islice(items, partition.start, partition.stop)
