"""Demand functions, (f, N)-colourings and exact 3-colouring search.

A demand function is any sequence of :class:`~fractions.Fraction` indexed by
vertex.  A :class:`SetColoring` assigns each vertex a subset of ``1..N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, MalformedInput, NoColoring, NotCommonDenominator, NotMonochromatic
from .graph import PlaneGraph

Demand = Sequence[Fraction]
Weights = Sequence[Fraction]

DEFAULT_COLOR_BUDGET = 10**7


def constant_demand(n: int, x) -> list[Fraction]:
    return [Fraction(x)] * n


def demand_denominator(f: Demand) -> int:
    return math.lcm(1, *(Fraction(x).denominator for x in f))


@dataclass(frozen=True)
class SetColoring:
    N: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.N < 1:
            raise MalformedInput("N must be a positive integer")
        for s in self.sets:
            if any(not 1 <= c <= self.N for c in s):
                raise MalformedInput(f"colour outside 1..{self.N}")

    @classmethod
    def of(cls, N: int, sets: Iterable[Iterable[int]]) -> "SetColoring":
        return cls(N, tuple(frozenset(s) for s in sets))

    def sizes(self) -> list[int]:
        return [len(s) for s in self.sets]

    def scaled(self, k: int) -> "SetColoring":
        """Blow every colour c up into ``(c-1)k+1 .. ck``; keeps tightness."""
        return SetColoring.of(self.N * k, ({(c - 1) * k + j for c in s for j in range(1, k + 1)}
                                           for s in self.sets))

    def permuted(self, perm: dict[int, int]) -> "SetColoring":
        return SetColoring.of(self.N, ({perm[c] for c in s} for s in self.sets))

    def class_of(self, color: int) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.sets) if color in s)

    def to_json(self) -> dict:
        return {"N": self.N, "sets": [sorted(s) for s in self.sets]}

    @classmethod
    def from_json(cls, data: dict) -> "SetColoring":
        return cls.of(int(data["N"]), data["sets"])


@dataclass(frozen=True)
class ColoringCheck:
    valid: bool
    tight: bool
    violation: Optional[str] = None

    def __bool__(self):
        return self.valid


def verify_set_coloring(g: PlaneGraph, f: Demand, c: SetColoring) -> ColoringCheck:
    """Check that ``c`` is an (f, N)-colouring of g; report the first violation."""
    if len(f) != g.n or len(c.sets) != g.n:
        raise MalformedInput("demand and colouring must cover every vertex")
    need = []
    for v, fv in enumerate(f):
        q = Fraction(fv) * c.N
        if q.denominator != 1:
            raise NotCommonDenominator(f"N={c.N} is not a common denominator (f({v})={fv})")
        need.append(int(q))
    for u, v in g.edges:
        common = c.sets[u] & c.sets[v]
        if common:
            return ColoringCheck(False, False, f"edge {u}-{v} shares colour {min(common)}")
    for v in range(g.n):
        if len(c.sets[v]) < need[v]:
            return ColoringCheck(False, False,
                                 f"vertex {v} has {len(c.sets[v])} colours, needs {need[v]}")
    tight = all(len(c.sets[v]) == need[v] for v in range(g.n))
    return ColoringCheck(True, tight)


def best_color_class(g: PlaneGraph, c: SetColoring, w: Weights) -> tuple[frozenset[int], Fraction]:
    """Heaviest colour class; ties go to the smallest colour.

    Averaging over the N classes shows the result weighs at least w(f)
    whenever ``c`` is a valid (f, N)-colouring.
    """
    w = [Fraction(x) for x in w]
    scale = math.lcm(1, *(x.denominator for x in w))
    iw = [int(x * scale) for x in w]
    totals = [0] * (c.N + 1)
    for v, s in enumerate(c.sets):
        for i in s:
            totals[i] += iw[v]
    i = max(range(1, c.N + 1), key=lambda i: (totals[i], -i))
    best = c.class_of(i)
    assert all(not (g.adjacency[v] & best) for v in best), "colour class is not independent"
    return best, Fraction(totals[i], scale)


# ------------------------------------------------------------ 3-colouring

class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _color_quotient(n: int, adj: list[set[int]], budget: int) -> Optional[list[int]]:
    """DSatur-style backtracking with forward checking over colours 1..3."""
    FULL = 0b111
    dom = [FULL] * n
    color = [0] * n
    nodes = 0

    def pick():
        best, key = -1, None
        for v in range(n):
            if color[v]:
                continue
            k = (bin(dom[v]).count("1"), -len(adj[v]))
            if key is None or k < key:
                best, key = v, k
        return best

    def solve(first: bool) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"3-colouring search exceeded {budget} nodes")
        v = pick()
        if v < 0:
            return True
        options = [1] if first else [c for c in (1, 2, 3) if dom[v] >> (c - 1) & 1]
        for c in options:
            bit = 1 << (c - 1)
            color[v] = c
            trail = []
            ok = True
            for u in adj[v]:
                if not color[u] and dom[u] & bit:
                    dom[u] &= ~bit
                    trail.append(u)
                    if not dom[u]:
                        ok = False
                        break
            if ok and solve(False):
                return True
            for u in trail:
                dom[u] |= bit
            color[v] = 0
        return False

    if n == 0:
        return []
    return color if solve(True) else None


def mono_neighborhood_coloring(g: PlaneGraph, X: Iterable[int] = (), mode: str = "per-vertex",
                               budget: int = DEFAULT_COLOR_BUDGET) -> list[int]:
    """Proper 3-colouring in which the neighbourhood of each x in X is monochromatic.

    ``mode="per-vertex"`` asks for one colour per neighbourhood;
    ``mode="global"`` asks for a single colour shared by all of them.
    Colours are 1, 2, 3.

    Raises
    ------
    NoColoring
        No such colouring exists.
    BudgetExceeded
        The search visited more than ``budget`` nodes.
    """
    if mode not in ("per-vertex", "global"):
        raise MalformedInput(f"unknown mode {mode!r}")
    X = list(X)
    uf = _UnionFind(g.n)
    anchor = None
    for x in X:
        nb = sorted(g.adjacency[x])
        if not nb:
            continue
        for y in nb[1:]:
            uf.union(nb[0], y)
        if mode == "global":
            if anchor is None:
                anchor = nb[0]
            uf.union(anchor, nb[0])
    roots = sorted({uf.find(v) for v in range(g.n)})
    idx = {r: i for i, r in enumerate(roots)}
    cls = [idx[uf.find(v)] for v in range(g.n)]
    qadj: list[set[int]] = [set() for _ in roots]
    for u, v in g.edges:
        a, b = cls[u], cls[v]
        if a == b:
            raise NoColoring(f"edge {u}-{v} lies inside a required monochromatic class")
        qadj[a].add(b)
        qadj[b].add(a)
    qcol = _color_quotient(len(roots), qadj, budget)
    if qcol is None:
        raise NoColoring("no 3-colouring satisfies the constraints")
    return [qcol[cls[v]] for v in range(g.n)]


def three_coloring(g: PlaneGraph, budget: int = DEFAULT_COLOR_BUDGET) -> list[int]:
    return mono_neighborhood_coloring(g, (), budget=budget)


def is_proper(g: PlaneGraph, colors: Sequence[int]) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


def lift_mono_coloring(g: PlaneGraph, X: Iterable[int],
                       colors: Sequence[int]) -> tuple[list[Fraction], SetColoring]:
    """Turn a mono-neighbourhood 3-colouring into a tight (f_X, 3)-colouring.

    f_X is 2/3 on X and 1/3 elsewhere; each x in X receives the two colours
    missing from its neighbourhood.
    """
    X = set(X)
    if not is_proper(g, colors):
        raise NotMonochromatic("input colouring is not proper")
    sets: list[set[int]] = [{colors[v]} for v in range(g.n)]
    for x in X:
        nb = g.adjacency[x]
        if nb & X:
            raise NotMonochromatic(f"X is not independent at {x}")
        seen = {colors[y] for y in nb}
        if len(seen) > 1:
            raise NotMonochromatic(f"neighbourhood of {x} uses colours {sorted(seen)}")
        drop = seen.pop() if seen else colors[x] % 3 + 1
        sets[x] = {1, 2, 3} - {drop}
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    f = [two_thirds if v in X else third for v in range(g.n)]
    return f, SetColoring.of(3, sets)
