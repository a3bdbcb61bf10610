from __future__ import annotations

import random

import pytest

from abctree.enumeration import brute_force_min_abc, labeled_trees_with_degrees, prufer_decode
from abctree.graph import Tree, canonical_form
from abctree.greedy import degree_sequences

_BRUTE: dict[int, object] = {}

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def brute(n: int):
    """Brute-force result for order ``n``, computed once per session."""
    if n not in _BRUTE:
        _BRUTE[n] = brute_force_min_abc(n)
    return _BRUTE[n]


@pytest.fixture(scope="session")
def brute_cache():
    return brute


def random_tree(n: int, rng: random.Random) -> Tree:
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def prufer_census_by_degrees(n: int) -> int:
    """Isomorphism classes among Prüfer-decoded labeled trees whose degrees
    are non-increasing in the label; every free tree has such a labeling, so
    no class is missed."""
    if n <= 2:
        return 1
    forms = set()
    for cand in degree_sequences(n):
        forms.update(canonical_form(t) for t in labeled_trees_with_degrees(cand.degrees))
    return len(forms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
