"""Executable branch rewrites that lower the ABC index, with exact and closed-form deltas.

Every rewrite cuts pendant 2-paths (a degree-2 head plus its leaf) off
branch roots and re-hangs them elsewhere. The recomputed delta is compared
against the closed form of :mod:`abctree.formulas`: equal for the exact kinds,
dominated for the bound kinds.
"""

from __future__ import annotations

import enum
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from . import formulas as F
from .graph import (
    ABC_TOL,
    PreconditionError,
    Tree,
    abc_index,
    bfs,
    center_root,
    detect_branches,
    edge_weight,
    p2_heads,
)

# Split of the B1 + B4 case by hub degree: merge below, relocate at or above.
RELOCATE_FROM = 242


class TransformKind(enum.Enum):
    T_PRO05 = "T_PRO05"
    T11 = "T11"
    T12 = "T12"
    T13 = "T13"
    T211 = "T211"
    T212 = "T212"
    T221 = "T221"
    T222 = "T222"
    T31 = "T31"
    T32 = "T32"
    TA1 = "TA1"
    TA2 = "TA2"
    TB = "TB"
    T1_THM4 = "T1_THM4"
    T2_THM4 = "T2_THM4"


class BoundKind(enum.Enum):
    EXACT = "exact"
    UPPER = "upper-bound"


EXACT_KINDS = frozenset({
    TransformKind.T_PRO05, TransformKind.TA1, TransformKind.TB,
    TransformKind.T211, TransformKind.T221, TransformKind.T31,
})

# Largest delta the closed forms allow over all admissible degrees (hub >= 6).
SUPREMA: dict[TransformKind, float] = {
    TransformKind.T_PRO05: -0.0331932,
    TransformKind.T11: -0.0128606,
    TransformKind.T12: -0.0128606,
    TransformKind.T13: -0.0128606,
    TransformKind.T212: -0.0108595,
    TransformKind.T222: -0.0236034,
    TransformKind.T32: -0.00978226,
    TransformKind.T1_THM4: -0.00478432,
    TransformKind.T2_THM4: -0.00478432,
}


def bound_kind(kind: TransformKind) -> BoundKind:
    return BoundKind.EXACT if kind in EXACT_KINDS else BoundKind.UPPER


# ---------------------------------------------------------------------------
# Composite branches
# ---------------------------------------------------------------------------

class StarKind(enum.Enum):
    B2_STAR = "B2*"
    B3_STAR = "B3*"
    B3_DOUBLE_STAR = "B3**"


def _star_template(kind: StarKind) -> list[tuple[int, int]]:
    """Edges on 0..m-1 with the star's root at 0."""
    edges: list[tuple[int, int]] = []
    nxt = 1

    def path(hub: int, length: int) -> None:
        nonlocal nxt
        prev = hub
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1

    if kind is StarKind.B2_STAR:
        for length in (2, 3):
            path(0, length)
    elif kind is StarKind.B3_STAR:
        for length in (2, 2, 3):
            path(0, length)
    else:
        sub = nxt
        edges.append((0, sub))
        nxt += 1
        for length in (2, 2):
            path(0, length)
        for length in (2, 2):
            path(sub, length)
    return edges


STAR_SIZES = {StarKind.B2_STAR: 6, StarKind.B3_STAR: 8, StarKind.B3_DOUBLE_STAR: 10}


@dataclass(frozen=True)
class StarBranch:
    kind: StarKind
    tree: Tree  # rooted at 0, the attachment vertex

    @property
    def root_degree(self) -> int:
        """Degree of the root once the branch is attached."""
        return self.tree.degrees[0] + 1


def build_star(kind: StarKind) -> StarBranch:
    edges = _star_template(kind)
    return StarBranch(kind, Tree(STAR_SIZES[kind], edges, root=0))


def _lay_star(kind: StarKind, pool: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    if len(pool) != STAR_SIZES[kind]:
        raise PreconditionError(f"{kind.value} needs {STAR_SIZES[kind]} vertices, got {len(pool)}")
    return pool[0], [(pool[a], pool[b]) for a, b in _star_template(kind)]


# ---------------------------------------------------------------------------
# Locating configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Location:
    """Where a rewrite applies.

    ``hub`` is the common parent (for split configurations, the parent that
    receives the new branch), ``receiver`` the vertex that gains, and
    ``sources`` the branch roots that each give up a pendant 2-path (or, for
    TA2, the B4 root that adopts the B1).
    """

    kind: TransformKind
    hub: int
    receiver: int
    sources: tuple[int, ...]
    other_hub: Optional[int] = None  # the second parent in split configurations


@dataclass(frozen=True)
class _View:
    t: Tree
    root: int
    order: list[int]
    pos: list[int]
    parent: list[int]
    kind: tuple[int, ...]
    bparent: tuple[int, ...]

    def branch_children(self, u: int, pred) -> list[int]:
        out = [v for v in self.t.adjacency[u] if self.bparent[v] == u and pred(self.kind[v])]
        out.sort(key=self.pos.__getitem__)
        return out

    def last(self, vs: Sequence[int], k: int) -> list[int]:
        return sorted(vs, key=self.pos.__getitem__)[-k:]


def _view(t: Tree) -> _View:
    root = t.root if t.root is not None else center_root(t)
    order, parent = bfs(t, root)
    pos = [0] * t.n
    for i, v in enumerate(order):
        pos[v] = i
    prof = detect_branches(t)
    return _View(t, root, order, pos, parent, prof.kind, prof.parent)


def _by_parent(view: _View, roots: Sequence[int]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for v in roots:
        groups.setdefault(view.bparent[v], []).append(v)
    return groups


def _split_parents(view: _View, groups: dict[int, list[int]]) -> tuple[int, int]:
    """(larger, smaller) parent by degree; on ties the later one in BFS is smaller."""
    a, b = sorted(groups, key=lambda u: (-view.t.degrees[u], view.pos[u]))
    return a, b


def _is_small(k: int) -> bool:
    return k in (2, 3)


def find_configuration(t: Tree, kind: TransformKind) -> list[Location]:
    """All places where ``kind`` applies; empty when there are none.

    Rewrites aimed at large branches act on the last three (B_{>=5}) or last
    five (B4) branch roots in BFS order from the tree's root, or from its
    canonical center when unrooted.
    """
    view = _view(t)
    deg = t.degrees
    K = TransformKind
    out: list[Location] = []
    hubs = sorted({p for p in view.bparent if p >= 0}, key=view.pos.__getitem__)

    if kind in (K.T_PRO05, K.TA1, K.TA2, K.TB):
        want_w = 2 if kind is K.TB else 1
        for u in hubs:
            ws = view.branch_children(u, lambda k: k == want_w)
            if kind is K.T_PRO05:
                vs = view.branch_children(u, lambda k: k >= 5)
            else:
                vs = view.branch_children(u, lambda k: k == 4)
            if kind is K.TA1 and deg[u] >= RELOCATE_FROM:
                continue
            if kind is K.TA2 and deg[u] < RELOCATE_FROM:
                continue
            for w in ws:
                for v in vs:
                    if kind is K.TA2:
                        out.append(Location(kind, u, v, (w,)))
                    else:
                        out.append(Location(kind, u, w, (v,)))
        return out

    big = sorted((v for v, k in enumerate(view.kind) if k >= 5), key=view.pos.__getitem__)

    if kind in (K.T11, K.T12, K.T13):
        if len(big) < 3:
            return out
        trio = view.last(big, 3)
        groups = _by_parent(view, trio)
        if len(groups) == 1:
            if kind is K.T13:
                u = next(iter(groups))
                out.append(Location(kind, u, u, tuple(trio)))
        elif len(groups) == 2:
            pair = next(p for p, vs in groups.items() if len(vs) == 2)
            single = next(p for p, vs in groups.items() if len(vs) == 1)
            sub = K.T11 if deg[pair] <= deg[single] else K.T12
            if kind is sub:
                srcs = tuple(groups[single] + groups[pair])
                out.append(Location(kind, pair, pair, srcs, single))
        return out

    if kind in (K.T211, K.T212, K.T221, K.T222):
        if len(big) != 2:
            return out
        groups = _by_parent(view, big)
        if len(groups) == 1:
            if kind not in (K.T221, K.T222):
                return out
            u = next(iter(groups))
            v1, v2 = sorted(big, key=lambda v: (-deg[v], view.pos[v]))
            smalls = view.branch_children(u, _is_small)
            if kind is K.T221:
                out.extend(Location(kind, u, w, (v1,)) for w in smalls)
            elif not smalls:
                b4 = view.branch_children(u, lambda k: k == 4)
                if len(b4) >= 2:
                    out.append(Location(kind, u, u, (v1, v2, *view.last(b4, 2))))
            return out
        if kind not in (K.T211, K.T212):
            return out
        u1, u2 = _split_parents(view, groups)
        v1, v2 = groups[u1][0], groups[u2][0]
        smalls = view.branch_children(u2, _is_small)
        if kind is K.T211:
            out.extend(Location(kind, u2, w, (v2,), u1) for w in smalls)
        elif not smalls:
            b4 = view.branch_children(u2, lambda k: k == 4)
            if len(b4) >= 2:
                out.append(Location(kind, u2, u2, (v1, v2, *view.last(b4, 2)), u1))
        return out

    if kind in (K.T31, K.T32):
        if len(big) != 1:
            return out
        v1 = big[0]
        u = view.bparent[v1]
        smalls = view.branch_children(u, _is_small)
        if kind is K.T31:
            out.extend(Location(kind, u, w, (v1,)) for w in smalls)
        elif not smalls:
            b4 = view.branch_children(u, lambda k: k == 4)
            if len(b4) >= 3:
                out.append(Location(kind, u, u, (v1, *view.last(b4, 3))))
        return out

    if kind in (K.T1_THM4, K.T2_THM4):
        b4 = sorted((v for v, k in enumerate(view.kind) if k == 4), key=view.pos.__getitem__)
        if len(b4) < 5:
            return out
        five = view.last(b4, 5)
        groups = _by_parent(view, five)
        if len(groups) == 1 and kind is K.T2_THM4:
            u = next(iter(groups))
            out.append(Location(kind, u, u, tuple(five)))
        elif len(groups) == 2 and kind is K.T1_THM4:
            u1, u2 = _split_parents(view, groups)
            out.append(Location(kind, u2, u2, tuple(groups[u1] + groups[u2]), u1))
        return out

    raise ValueError(f"unknown transform kind {kind!r}")


# ---------------------------------------------------------------------------
# Applying rewrites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformOutcome:
    kind: TransformKind
    location: Location
    before: Tree
    after: Tree
    delta_exact: float
    delta_closed_form: float
    bound_kind: BoundKind
    params: Mapping[str, float] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        if self.bound_kind is BoundKind.EXACT:
            return abs(self.delta_exact - self.delta_closed_form) <= ABC_TOL
        return self.delta_exact <= self.delta_closed_form + ABC_TOL

    def to_record(self) -> dict:
        loc = self.location
        return {
            "kind": self.kind.value,
            "loc": {"hub": loc.hub, "receiver": loc.receiver, "sources": list(loc.sources)},
            "delta_exact": self.delta_exact,
            "delta_closed_form": self.delta_closed_form,
            "bound_kind": self.bound_kind.value,
            "params": dict(self.params),
        }


def abc_delta(before: Tree, after: Tree) -> float:
    """ABC(after) - ABC(before) summed over degree pairs whose counts differ."""
    def pairs(t: Tree) -> Counter:
        d = t.degrees
        return Counter((min(d[a], d[b]), max(d[a], d[b])) for a, b in t.edges)

    pb, pa = pairs(before), pairs(after)
    terms = [(pa[p] - pb[p]) * edge_weight(*p) for p in pb.keys() | pa.keys() if pa[p] != pb[p]]
    return math.fsum(terms)


def _cut_p2(t: Tree, v: int, parent: list[int], head: list[bool],
            taken: set[int]) -> tuple[int, int]:
    """Pick the last pendant 2-path hanging from ``v`` (by vertex id) not yet used."""
    deg = t.degrees
    for c in sorted(t.adjacency[v], reverse=True):
        if c == parent[v] or c in taken or not head[c]:
            continue
        leaf = next(x for x in t.adjacency[c] if x != v)
        if deg[leaf] == 1:
            taken.add(c)
            return c, leaf
    raise PreconditionError(f"vertex {v} has no pendant 2-path to give")


def _norm(e: tuple[int, int]) -> tuple[int, int]:
    return e if e[0] < e[1] else (e[1], e[0])


def _closed_form_params(t: Tree, loc: Location) -> dict[str, float]:
    d = t.degrees
    K = TransformKind
    k = loc.kind
    if k is K.T_PRO05:
        return {"u": d[loc.hub], "v": d[loc.sources[0]]}
    if k in (K.TA1, K.TB, K.T2_THM4):
        return {"u": d[loc.hub]}
    if k is K.TA2:
        v, w = loc.receiver, loc.sources[0]
        x = max(d[y] for y in t.adjacency[loc.hub] if y not in (v, w))
        return {"u": d[loc.hub], "x": x}
    if k in (K.T211, K.T221, K.T31):
        return {"u": d[loc.hub], "v": d[loc.sources[0]], "w": d[loc.receiver]}
    if k in (K.T11, K.T12, K.T13):
        return {"h": d[loc.receiver]}
    if k is K.T212:
        v1, v2 = loc.sources[:2]
        return {"u1": d[loc.other_hub], "v1": d[v1], "u2": d[loc.hub], "v2": d[v2]}
    if k is K.T222:
        v1, v2 = loc.sources[:2]
        return {"u": d[loc.hub], "v1": d[v1], "v2": d[v2]}
    if k is K.T32:
        return {"u": d[loc.hub], "v": d[loc.sources[0]]}
    if k is K.T1_THM4:
        x = sum(1 for v in loc.sources if v in t.adjacency[loc.other_hub])
        return {"u1": d[loc.other_hub], "u2": d[loc.hub], "x": x}
    raise ValueError(k)


def delta_closed_form(kind: TransformKind, params: Mapping[str, float]) -> tuple[float, BoundKind]:
    """Closed-form change (exact kinds) or upper bound (bound kinds) at the
    given degrees. Raises ``DomainError`` for degrees outside the formula's
    domain."""
    K = TransformKind
    p = params
    if kind is K.T_PRO05:
        val = F.b1_b5_merge(p["u"], p["v"])
    elif kind is K.TA1:
        val = F.b1_b4_merge(p["u"])
    elif kind is K.TA2:
        val = F.b1_b4_relocate(p["u"], p["x"])
    elif kind is K.TB:
        val = F.b2_b4_balance(p["u"])
    elif kind in (K.T211, K.T221, K.T31):
        val = F.move_to_small(p["u"], p["v"], p["w"])
    elif kind in (K.T11, K.T12):
        val = F.three_cut_split(p["h"])
    elif kind is K.T13:
        val = F.three_cut_shared(p["h"])
    elif kind is K.T212:
        val = F.two_cut_split(p["u1"], p["v1"], p["u2"], p["v2"])
    elif kind is K.T222:
        val = F.two_cut_shared(p["u"], p["v1"], p["v2"])
    elif kind is K.T32:
        val = F.one_cut(p["u"], p["v"])
    elif kind is K.T1_THM4:
        val = F.five_b4_split(p["u1"], p["u2"], int(p["x"]))
    elif kind is K.T2_THM4:
        val = F.five_b4_shared(p["u"])
    else:
        raise ValueError(f"unknown transform kind {kind!r}")
    return val, bound_kind(kind)


_STAR_FOR = {
    TransformKind.T11: StarKind.B2_STAR,
    TransformKind.T12: StarKind.B2_STAR,
    TransformKind.T13: StarKind.B2_STAR,
    TransformKind.T212: StarKind.B3_STAR,
    TransformKind.T222: StarKind.B3_STAR,
    TransformKind.T32: StarKind.B3_STAR,
    TransformKind.T1_THM4: StarKind.B3_DOUBLE_STAR,
    TransformKind.T2_THM4: StarKind.B3_DOUBLE_STAR,
}


def apply(t: Tree, kind: TransformKind, loc: Location) -> TransformOutcome:
    """Rewrite ``t`` at ``loc``; the result keeps ``t``'s vertex ids and root."""
    if loc.kind is not kind or loc not in find_configuration(t, kind):
        raise PreconditionError(f"{kind.value} does not apply at {loc}")
    view_root = t.root if t.root is not None else center_root(t)
    parent = bfs(t, view_root)[1]
    head = p2_heads(t)
    edges = set(t.edges)
    taken: set[int] = set()
    K = TransformKind

    def drop(a: int, b: int) -> None:
        edges.remove(_norm((a, b)))

    def add(a: int, b: int) -> None:
        edges.add(_norm((a, b)))

    if kind in (K.T_PRO05, K.TA1):
        w, v = loc.receiver, loc.sources[0]
        a = next(x for x in t.adjacency[w] if x != parent[w])
        b = next(x for x in t.adjacency[a] if x != w)
        pool = [a, b]
        drop(w, a)
        drop(a, b)
        for _ in range(2):
            c, leaf = _cut_p2(t, v, parent, head, taken)
            drop(v, c)
            drop(c, leaf)
            pool += [c, leaf]
        # w ends with two pendant paths of length 3
        for chain in (pool[:3], pool[3:]):
            add(w, chain[0])
            add(chain[0], chain[1])
            add(chain[1], chain[2])
    elif kind is K.TA2:
        drop(loc.hub, loc.sources[0])
        add(loc.receiver, loc.sources[0])
    elif kind in (K.TB, K.T211, K.T221, K.T31):
        v = loc.sources[0]
        c, _ = _cut_p2(t, v, parent, head, taken)
        drop(v, c)
        add(loc.receiver, c)
    else:
        pool: list[int] = []
        for v in loc.sources:
            c, leaf = _cut_p2(t, v, parent, head, taken)
            drop(v, c)
            drop(c, leaf)
            pool += [c, leaf]
        root, star = _lay_star(_STAR_FOR[kind], pool)
        for e in star:
            add(*e)
        add(loc.receiver, root)

    after = Tree(t.n, edges, root=t.root)
    params = _closed_form_params(t, loc)
    cf, bk = delta_closed_form(kind, params)
    return TransformOutcome(kind, loc, t, after, abc_delta(t, after), cf, bk, params)


# ---------------------------------------------------------------------------
# Instance generation and sweeps
# ---------------------------------------------------------------------------

HUB_GRID = (6, 7, 8, 9, 10, 12, 16, 24, 40, 64, 100, 150, 200, 250, 300)
BRANCH_SIZES = (5, 6, 7, 8, 9, 10)
SPLIT_PAIRS = ((6, 6), (7, 6), (12, 8), (24, 24), (64, 10), (100, 100),
               (150, 40), (300, 6), (300, 150), (300, 300))


class _Builder:
    def __init__(self) -> None:
        self.n = 1
        self.edges: list[tuple[int, int]] = []

    def child(self, p: int) -> int:
        v = self.n
        self.n += 1
        self.edges.append((p, v))
        return v

    def branch(self, p: int, k: int) -> int:
        """Hang a B_k root under ``p``; k = 1 gives a pendant path of length 3."""
        r = self.child(p)
        for _ in range(k):
            self.child(self.child(r))
        return r

    def fill(self, p: int, degree: int, current: int, k: int) -> None:
        for _ in range(degree - current):
            self.branch(p, k)

    def tree(self, rng: random.Random) -> Tree:
        # relabel all but the root so detection never leans on construction order
        perm = list(range(1, self.n))
        rng.shuffle(perm)
        m = [0] + perm
        return Tree(self.n, [(m[a], m[b]) for a, b in self.edges], root=0)


def _specs(kind: TransformKind) -> Iterator[dict]:
    K = TransformKind
    ks = BRANCH_SIZES
    if kind in (K.T_PRO05,):
        for h in HUB_GRID:
            for k in ks:
                yield {"h": h, "k": k}
    elif kind is K.TA1:
        for h in (6, 7, 8, 10, 16, 24, 40, 64, 100, 150, 200, 240, 241):
            yield {"h": h}
    elif kind is K.TA2:
        for h in (242, 243, 260, 300, 350, 400):
            yield {"h": h}
    elif kind in (K.TB, K.T2_THM4):
        for h in HUB_GRID:
            yield {"h": h}
    elif kind in (K.T13, K.T221, K.T222, K.T31, K.T32):
        for i, h in enumerate(HUB_GRID):
            for j in range(2):
                yield {"h": h, "k1": ks[(i + j) % 6], "k2": ks[(i + 2 * j + 1) % 6],
                       "k3": ks[(i + 3) % 6], "small": 2 + j}
    elif kind in (K.T11, K.T12, K.T211, K.T212):
        for i, (h1, h2) in enumerate(SPLIT_PAIRS):
            if kind is K.T12 and h1 == h2:
                h1 += 1
            for j in range(2):
                yield {"h1": h1, "h2": h2, "k1": ks[(i + j) % 6], "k2": ks[(i + 2 * j + 1) % 6],
                       "k3": ks[(i + 4) % 6], "small": 2 + j}
    elif kind is K.T1_THM4:
        for h1, h2 in SPLIT_PAIRS:
            for x in (1, 2, 3, 4):
                yield {"h1": h1, "h2": h2, "x": x}
    else:
        raise ValueError(kind)


def _build(kind: TransformKind, s: dict, rng: random.Random) -> Tree:
    K = TransformKind
    b = _Builder()
    r = 0
    if kind is K.T_PRO05:
        b.branch(r, 1)
        b.branch(r, s["k"])
        b.fill(r, s["h"], 2, 3)
    elif kind is K.TA1:
        b.branch(r, 1)
        b.branch(r, 4)
        b.fill(r, s["h"], 2, 3)
    elif kind is K.TA2:
        # u hangs below a small root so that it has a parent
        u = b.child(r)
        b.fill(r, 3, 1, 3)
        b.branch(u, 1)
        b.branch(u, 4)
        b.fill(u, s["h"], 3, 3)
    elif kind is K.TB:
        b.branch(r, 2)
        b.branch(r, 4)
        b.fill(r, s["h"], 2, 3)
    elif kind is K.T13:
        for key in ("k1", "k2", "k3"):
            b.branch(r, s[key])
        b.fill(r, s["h"], 3, 3)
    elif kind in (K.T221, K.T222):
        b.branch(r, s["k1"])
        b.branch(r, s["k2"])
        have = 2
        if kind is K.T221:
            b.branch(r, s["small"])
            have = 3
        b.fill(r, max(s["h"], 4), have, 4)
    elif kind in (K.T31, K.T32):
        b.branch(r, s["k1"])
        have = 1
        if kind is K.T31:
            b.branch(r, s["small"])
            have = 2
        b.fill(r, max(s["h"], 4), have, 4)
    elif kind is K.T11:
        # the single large branch sits at the root, the pair one level down
        b.branch(r, s["k1"])
        u2 = b.child(r)
        b.fill(r, s["h1"], 2, 3)
        b.branch(u2, s["k2"])
        b.branch(u2, s["k3"])
        b.fill(u2, s["h2"], 3, 3)
    elif kind is K.T12:
        b.branch(r, s["k1"])
        b.branch(r, s["k2"])
        u2 = b.child(r)
        b.fill(r, s["h1"], 3, 3)
        b.branch(u2, s["k3"])
        b.fill(u2, s["h2"], 2, 3)
    elif kind in (K.T211, K.T212):
        b.branch(r, s["k1"])
        u2 = b.child(r)
        b.fill(r, s["h1"], 2, 4)
        b.branch(u2, s["k2"])
        have = 2
        if kind is K.T211:
            b.branch(u2, s["small"])
            have = 3
        b.fill(u2, max(s["h2"], 4), have, 4)
    elif kind is K.T1_THM4:
        x = s["x"]
        for _ in range(x):
            b.branch(r, 4)
        u2 = b.child(r)
        b.fill(r, s["h1"], x + 1, 3)
        for _ in range(5 - x):
            b.branch(u2, 4)
        b.fill(u2, s["h2"], 6 - x, 3)
    elif kind is K.T2_THM4:
        for _ in range(5):
            b.branch(r, 4)
        b.fill(r, s["h"], 5, 3)
    return b.tree(rng)


def instances(kind: TransformKind, seed: int = 0) -> Iterator[tuple[dict, Tree]]:
    """Constructed trees holding ``kind``'s configuration; hub degrees sweep
    ``HUB_GRID`` (TA1/TA2 split it at the 242 threshold)."""
    rng = random.Random(f"{kind.value}:{seed}")
    for spec in _specs(kind):
        yield spec, _build(kind, spec, rng)


@dataclass
class DecreaseReport:
    kind: TransformKind
    seed: int
    instances: int = 0
    applied: int = 0
    max_delta: float = -math.inf
    max_gap: float = -math.inf  # exact: max |exact - closed|; bound: max (exact - closed)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and self.applied > 0

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value, "seed": self.seed, "instances": self.instances,
            "applied": self.applied, "max_delta": self.max_delta, "max_gap": self.max_gap,
            "violations": self.violations, "ok": self.ok,
        }


def verify_decrease(kind: TransformKind, seed: int = 0, max_per_instance: int = 2) -> DecreaseReport:
    """Apply ``kind`` across its generated instances and check that every
    rewrite strictly lowers ABC and agrees with its closed form."""
    rep = DecreaseReport(kind, seed)
    for spec, t in instances(kind, seed):
        rep.instances += 1
        locs = find_configuration(t, kind)
        if not locs:
            rep.violations.append({"spec": spec, "reason": "configuration not found"})
            continue
        if len(locs) > max_per_instance:
            locs = [locs[0], locs[-1]]
        for loc in locs:
            out = apply(t, kind, loc)
            rep.applied += 1
            gap = (abs(out.delta_exact - out.delta_closed_form)
                   if out.bound_kind is BoundKind.EXACT
                   else out.delta_exact - out.delta_closed_form)
            rep.max_delta = max(rep.max_delta, out.delta_exact)
            rep.max_gap = max(rep.max_gap, gap)
            reasons = []
            if not out.delta_exact < -ABC_TOL:
                reasons.append("no strict decrease")
            if not out.consistent:
                reasons.append("closed form mismatch")
            if out.after.n != t.n:
                reasons.append("vertex count changed")
            if reasons:
                rep.violations.append({"spec": spec, "reason": "; ".join(reasons),
                                       "delta_exact": out.delta_exact,
                                       "delta_closed_form": out.delta_closed_form})
    return rep
