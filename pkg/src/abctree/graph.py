"""Trees, simple graphs, the ABC objective and structural detectors.

Vertices are 0-based integers. Edges are stored as sorted ``(u, v)`` pairs
with ``u < v`` and the edge tuple itself is sorted, so two graphs built from
the same edge set in any order compare equal and score identically.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Iterable, Optional, Sequence

# Equality/strictness margin for comparing ABC values.
ABC_TOL = 1e-12

MIN_ORDER_FOR_STRUCTURE = 10


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ValueError):
    """A rewrite or query was invoked on an unsuitable configuration."""


# ---------------------------------------------------------------------------
# The edge weight
# ---------------------------------------------------------------------------

def edge_weight(x: float, y: float) -> float:
    """sqrt((x + y - 2) / (x y)); degrees may be real."""
    if not (x > 0 and y > 0):
        raise DomainError(f"degrees must be positive, got ({x}, {y})")
    num = x + y - 2
    if num < 0:
        raise DomainError(f"x + y - 2 must be non-negative, got ({x}, {y})")
    return math.sqrt(num / (x * y))


f = edge_weight
_int_weight = lru_cache(maxsize=1 << 16)(edge_weight)  # integer degree pairs recur constantly


def weight_change(x1: float, y1: float, x2: float, y2: float) -> float:
    """Return ``f(x2, y2) - f(x1, y1)`` without catastrophic cancellation.

    The squared weights are rationals, so their difference is formed exactly
    (floats convert to ``Fraction`` losslessly) and divided by ``f1 + f2``.
    Needed when the two weights agree to more digits than a double carries,
    e.g. ``d * (f(d + 1, 4) - f(d, 4))`` at ``d = 1e9``.
    """
    a = edge_weight(x1, y1)
    b = edge_weight(x2, y2)
    if a + b == 0.0:
        return 0.0
    fx1, fy1, fx2, fy2 = (Fraction(v) for v in (x1, y1, x2, y2))
    sq1 = (fx1 + fy1 - 2) / (fx1 * fy1)
    sq2 = (fx2 + fy2 - 2) / (fx2 * fy2)
    return float(sq2 - sq1) / (a + b)


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------

def _normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    out = [(u, v) if u < v else (v, u) for u, v in ((int(e[0]), int(e[1])) for e in edges)]
    out.sort()
    for u, v in out:
        if u == v:
            raise DomainError(f"self-loop at vertex {u}")
    if out and (out[0][0] < 0 or max(v for _, v in out) >= n):
        bad = next((u, v) for u, v in out if u < 0 or v >= n)
        raise DomainError(f"edge {bad} out of range for n={n}")
    for a, b in zip(out, out[1:]):
        if a == b:
            raise DomainError(f"duplicate edge {a}")
    return tuple(out)


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph; connectivity is not required."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise DomainError("a graph needs at least one vertex")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", _normalize_edges(n, edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        # edges are sorted pairs, so every list fills in increasing order
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(map(tuple, adj))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def is_connected(self) -> bool:
        adj = self.adjacency
        seen = bytearray(self.n)
        seen[0] = 1
        stack = [0]
        reached = 1
        while stack:
            for w in adj[stack.pop()]:
                if not seen[w]:
                    seen[w] = 1
                    reached += 1
                    stack.append(w)
        return reached == self.n

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges + ((u, v),))


@dataclass(frozen=True)
class Tree(SimpleGraph):
    """A tree on ``n`` vertices, optionally rooted."""

    root: Optional[int] = field(default=None)

    def __init__(self, n: int, edges: Iterable[Sequence[int]], root: Optional[int] = None):
        super().__init__(n, edges)
        if len(self.edges) != self.n - 1:
            raise DomainError(f"a tree on {self.n} vertices needs {self.n - 1} edges, got {len(self.edges)}")
        if not self.is_connected():
            raise DomainError("edges do not form a connected graph")
        if root is not None and not (0 <= root < n):
            raise DomainError(f"root {root} out of range")
        object.__setattr__(self, "root", root)

    def rooted(self, root: Optional[int]) -> "Tree":
        return Tree(self.n, self.edges, root)

    def parents(self, root: Optional[int] = None) -> list[int]:
        """Parent array for a BFS from ``root`` (default: own root, else center)."""
        r = root if root is not None else (self.root if self.root is not None else center_root(self))
        return bfs(self, r)[1]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))


def _component(adj: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def bfs(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """BFS order and parent array (``-1`` at the root); neighbours by id."""
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    q = deque([root])
    while q:
        u = q.popleft()
        for v in t.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
                q.append(v)
    return order, parent


def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    return Tree(n, [(0, i) for i in range(1, n)])


# ---------------------------------------------------------------------------
# ABC index
# ---------------------------------------------------------------------------

def abc_index(g: SimpleGraph) -> float:
    """Sum of edge weights over the (sorted) edge list.

    ``math.fsum`` returns the correctly rounded sum, so the value does not
    depend on summation order at all.
    """
    deg = g.degrees
    if min(deg) == 0:
        raise DomainError("graph has an isolated vertex")
    return math.fsum([_int_weight(deg[u], deg[v]) for u, v in g.edges])


def edge_addition_delta(g: SimpleGraph, u: int, v: int) -> float:
    """ABC(g + uv) - ABC(g)."""
    if u == v:
        raise DomainError("cannot add a loop")
    if g.has_edge(u, v):
        raise DomainError(f"edge ({u}, {v}) already present")
    if not g.is_connected():
        raise DomainError("graph must be connected")
    return abc_index(g.with_edge(u, v)) - abc_index(g)


# ---------------------------------------------------------------------------
# Centers and canonical level sequences
# ---------------------------------------------------------------------------

def tree_centers(t: Tree) -> list[int]:
    """One or two center vertices, found by peeling leaves."""
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = list(t.degrees)
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for u in layer:
            for w in t.adjacency[u]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_level_sequence(t: Tree, root: int) -> list[int]:
    """Canonical level sequence of ``t`` rooted at ``root``.

    Children are ordered by decreasing level sequence, which makes the whole
    sequence the lexicographically largest one for this rooting.
    """
    order, parent = bfs(t, root)
    children: list[list[int]] = [[] for _ in range(t.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    seqs: list[Optional[list[int]]] = [None] * t.n
    for v in reversed(order):
        subs = [seqs[c] for c in children[v]]
        subs.sort(reverse=True)
        s = [0]
        for sub in subs:
            s.extend(x + 1 for x in sub)
        seqs[v] = s
        for c in children[v]:
            seqs[c] = None
    return seqs[root]


def canonical_form(t: Tree) -> tuple[int, ...]:
    """Center-rooted canonical level sequence; equal iff isomorphic."""
    cs = tree_centers(t)
    return tuple(min(rooted_level_sequence(t, c) for c in cs))


def center_root(t: Tree) -> int:
    """The center whose rooting gives the canonical form (smaller id on ties)."""
    cs = tree_centers(t)
    if len(cs) == 1:
        return cs[0]
    a, b = (rooted_level_sequence(t, c) for c in cs)
    return cs[0] if a <= b else cs[1]


def validate_level_sequence(seq: Sequence[int]) -> None:
    if not seq or seq[0] != 0:
        raise DomainError("level sequence must start with 0")
    for i in range(1, len(seq)):
        if seq[i] < 1 or seq[i] > seq[i - 1] + 1:
            raise DomainError(f"invalid level {seq[i]} at position {i}")


def tree_from_levels(seq: Sequence[int], root: bool = False) -> Tree:
    """Tree whose vertex ``i`` sits at depth ``seq[i]`` of a preorder walk."""
    validate_level_sequence(seq)
    last = [0] * (len(seq) + 1)
    edges = []
    for i in range(1, len(seq)):
        d = seq[i]
        edges.append((last[d - 1], i))
        last[d] = i
    return Tree(len(seq), edges, 0 if root else None)


# ---------------------------------------------------------------------------
# Tree file format
# ---------------------------------------------------------------------------

class TreeFormatError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def format_tree(t: Tree) -> str:
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges]
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> Tree:
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TreeFormatError(1, "empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise TreeFormatError(1, f"expected vertex count, got {lines[0]!r}") from None
    if n < 1:
        raise TreeFormatError(1, "vertex count must be positive")
    if len(lines) - 1 != n - 1:
        raise TreeFormatError(len(lines), f"expected {n - 1} edge lines, got {len(lines) - 1}")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise TreeFormatError(i, f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise TreeFormatError(i, f"non-integer vertex id in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise TreeFormatError(i, f"vertex id out of range 0..{n - 1}")
        edges.append((u, v))
    try:
        return Tree(n, edges)
    except DomainError as exc:
        raise TreeFormatError(len(lines), str(exc)) from None


def format_levels(seq: Sequence[int]) -> str:
    return " ".join(str(x) for x in seq)


def parse_levels(text: str) -> tuple[int, ...]:
    seq = tuple(int(x) for x in text.split())
    validate_level_sequence(seq)
    return seq


# ---------------------------------------------------------------------------
# Pendant and internal paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PendantPath:
    start: int  # the vertex of degree > 2
    length: int  # number of edges, i.e. vertices after ``start``
    vertices: tuple[int, ...]  # excluding ``start``; ends at the leaf


@dataclass(frozen=True)
class InternalPath:
    ends: tuple[int, int]
    length: int  # number of edges; always >= 2
    interior: tuple[int, ...]


@dataclass(frozen=True)
class PathReport:
    pendant: tuple[PendantPath, ...]
    internal: tuple[InternalPath, ...]
    degenerate: bool  # the tree is itself a path

    def pendant_lengths(self) -> list[int]:
        return sorted(p.length for p in self.pendant)

    def internal_lengths(self) -> list[int]:
        return sorted(p.length for p in self.internal)


def find_paths(t: Tree) -> PathReport:
    """Walk every degree-2 chain hanging off a vertex of degree > 2.

    A chain ending in a leaf is a pendant path; one ending at another
    vertex of degree > 2 is an internal path. A direct edge between two
    high-degree vertices has no degree-2 interior and is not reported.
    """
    deg = t.degrees
    adj = t.adjacency
    if max(deg, default=0) <= 2:
        return PathReport((), (), True)
    pendant = []
    internal = {}
    for v0 in range(t.n):
        if deg[v0] <= 2:
            continue
        for nb in adj[v0]:
            prev, cur = v0, nb
            chain = [cur]
            while deg[cur] == 2:
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
                chain.append(cur)
            if deg[cur] == 1:
                pendant.append(PendantPath(v0, len(chain), tuple(chain)))
            elif len(chain) >= 2 and v0 < cur:
                internal[(v0, cur)] = InternalPath((v0, cur), len(chain), tuple(chain[:-1]))
    return PathReport(tuple(pendant), tuple(internal[k] for k in sorted(internal)), False)


# ---------------------------------------------------------------------------
# B_k branches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchProfile:
    """Per-vertex B_k classification plus the tree's path report.

    ``kind[v]`` is ``k`` when ``v`` roots a B_k-branch and ``0`` otherwise;
    ``parent[v]`` is the vertex the branch hangs from (``-1`` if none).
    """

    kind: tuple[int, ...]
    parent: tuple[int, ...]
    paths: PathReport

    def roots(self, k: Optional[int] = None, min_k: Optional[int] = None) -> list[int]:
        out = []
        for v, kv in enumerate(self.kind):
            if kv == 0:
                continue
            if k is not None and kv != k:
                continue
            if min_k is not None and kv < min_k:
                continue
            out.append(v)
        return out

    def count(self, k: int) -> int:
        return sum(1 for kv in self.kind if kv == k)


def p2_heads(t: Tree) -> list[bool]:
    """``v`` has degree 2 and one of its neighbours is a leaf."""
    deg = t.degrees
    return [deg[v] == 2 and any(deg[w] == 1 for w in t.adjacency[v]) for v in range(t.n)]


def detect_branches(t: Tree) -> BranchProfile:
    """Classify B_k roots.

    With the tree rooted (its own root, else the canonical center), a
    non-root vertex is a B_k root when it has exactly ``k >= 1`` children
    and each child heads a 2-vertex pendant path. The root itself counts as
    a B_k root when exactly ``deg - 1`` of its neighbours are such heads;
    the remaining neighbour plays the parent.
    """
    n = t.n
    kind = [0] * n
    par = [-1] * n
    if n < 3:
        return BranchProfile(tuple(kind), tuple(par), find_paths(t))
    root = t.root if t.root is not None else center_root(t)
    parent = bfs(t, root)[1]
    head = p2_heads(t)
    deg = t.degrees
    for v in range(n):
        if v == root:
            others = [w for w in t.adjacency[v] if not head[w]]
            if len(others) == 1 and deg[v] >= 2:
                kind[v] = deg[v] - 1
                par[v] = others[0]
            continue
        k = deg[v] - 1
        if k >= 1 and all(head[w] for w in t.adjacency[v] if w != parent[v]):
            kind[v] = k
            par[v] = parent[v]
    return BranchProfile(tuple(kind), tuple(par), find_paths(t))


# ---------------------------------------------------------------------------
# Structural checks for minimal-ABC trees
# ---------------------------------------------------------------------------

PROPERTY_CHECKS = (
    "no_internal_paths",
    "no_pendant_path_ge_4",
    "pendant_paths_2_or_3",
    "at_most_one_pendant_path_3",
    "high_degree_subgraph_is_tree",
    "no_B_ge_5",
    "at_most_four_B4",
    "no_B1_with_B_ge_5_sibling",
    "no_B1_with_B4_sibling",
    "no_B2_with_B4_sibling",
)


def _sibling_clash(prof: BranchProfile, pred_a, pred_b) -> bool:
    by_parent: dict[int, list[int]] = {}
    for v, k in enumerate(prof.kind):
        if k:
            by_parent.setdefault(prof.parent[v], []).append(k)
    for ks in by_parent.values():
        if any(pred_a(k) for k in ks) and any(pred_b(k) for k in ks):
            return True
    return False


def minimal_abc_properties(t: Tree, force: bool = False) -> dict[str, Optional[bool]]:
    """Run every structural check known to hold for minimal-ABC trees.

    Values are ``True``/``False`` for pass/fail and ``None`` (not
    applicable) for trees of order below 10 unless ``force`` is set.
    """
    if t.n < MIN_ORDER_FOR_STRUCTURE and not force:
        return {name: None for name in PROPERTY_CHECKS}
    prof = detect_branches(t)
    paths = prof.paths
    deg = t.degrees
    lengths = [p.length for p in paths.pendant]
    leaves = sum(1 for d in deg if d == 1)

    high = [v for v in range(t.n) if deg[v] > 2]
    if high:
        hs = set(high)
        sub_adj = {v: [w for w in t.adjacency[v] if w in hs] for v in high}
        n_edges = sum(len(a) for a in sub_adj.values()) // 2
        reached = _component(sub_adj, high[0])
        high_tree = len(reached) == len(high) and n_edges == len(high) - 1
    else:
        high_tree = False

    return {
        "no_internal_paths": not paths.internal,
        "no_pendant_path_ge_4": all(x < 4 for x in lengths) and not paths.degenerate,
        "pendant_paths_2_or_3": (
            not paths.degenerate and len(lengths) == leaves and all(2 <= x <= 3 for x in lengths)
        ),
        "at_most_one_pendant_path_3": sum(1 for x in lengths if x == 3) <= 1,
        "high_degree_subgraph_is_tree": high_tree,
        "no_B_ge_5": not prof.roots(min_k=5),
        "at_most_four_B4": prof.count(4) <= 4,
        "no_B1_with_B_ge_5_sibling": not _sibling_clash(prof, lambda k: k == 1, lambda k: k >= 5),
        "no_B1_with_B4_sibling": not _sibling_clash(prof, lambda k: k == 1, lambda k: k == 4),
        "no_B2_with_B4_sibling": not _sibling_clash(prof, lambda k: k == 2, lambda k: k == 4),
    }


def properties_hold(report: dict[str, Optional[bool]]) -> bool:
    """True when no applicable check failed."""
    return all(v is not False for v in report.values())


# ---------------------------------------------------------------------------
# Kragujevac trees
# ---------------------------------------------------------------------------

def build_kragujevac(branches: Sequence[int]) -> Tree:
    """A center joined to the root of one B_k-branch per entry of ``branches``."""
    if not branches:
        raise DomainError("need at least one branch")
    edges = []
    nxt = 1
    for k in branches:
        if k < 1:
            raise DomainError(f"branch size must be >= 1, got {k}")
        r = nxt
        edges.append((0, r))
        nxt += 1
        for _ in range(k):
            edges.append((r, nxt))
            edges.append((nxt, nxt + 1))
            nxt += 2
    return Tree(nxt, edges, root=0)
