"""Shared fixtures and brute-force reference implementations."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from trifree_frac import families
from trifree_frac.graph import build_graph, from_rotation

# An 11-vertex plane graph (four pentagons, three quadrilaterals) with a safe
# pentagon (8, 5, 0, 10, 7); found by scanning seeded random graphs.
GADGET11_ROTATION = [[10, 5, 2], [3, 2, 6, 7], [4, 1, 0], [10, 1], [9, 6, 2], [8, 9, 0],
                     [4, 8, 1], [1, 8, 10], [7, 6, 5], [5, 4], [0, 3, 7]]


@pytest.fixture
def gadget11():
    return from_rotation(GADGET11_ROTATION, name="gadget11")


@pytest.fixture
def c5():
    return families.cycle(5)


@pytest.fixture
def dodeca():
    return families.dodecahedron()


def two_pentagons_sharing_edge():
    return build_graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 1)],
                       name="C5|C5")


def brute_mwis(g, w) -> Fraction:
    """Maximum weight of an independent set by scanning all 2^n subsets."""
    n = g.n
    if n == 0:
        return Fraction(0)
    w = [Fraction(x) for x in w]
    scale = math.lcm(*(x.denominator for x in w))
    iw = np.array([int(x * scale) for x in w], dtype=np.int64)
    best = 0
    chunk = 1 << min(n, 16)
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        bits = (masks[:, None] >> np.arange(n)) & 1
        ok = np.ones(chunk, dtype=bool)
        for u, v in g.edges:
            ok &= (bits[:, u] & bits[:, v]) == 0
        if ok.any():
            best = max(best, int((bits[ok] @ iw).max()))
    return Fraction(best, scale)


def brute_independent_sets(g):
    n = g.n
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            if all(not g.has_edge(a, b) for a, b in itertools.combinations(S, 2)):
                yield frozenset(S)


def independent_set_matrix(g) -> np.ndarray:
    """0/1 matrix whose rows are all independent sets of g (n <= 16)."""
    n = g.n
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    ok = np.ones(len(masks), dtype=bool)
    for u, v in g.edges:
        ok &= (bits[:, u] & bits[:, v]) == 0
    return bits[ok]
