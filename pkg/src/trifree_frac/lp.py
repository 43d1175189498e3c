"""Exact LP over independent sets.

The covering LP ``min sum(lam_S)  s.t.  sum_{S ni v} lam_S >= f(v)`` is
solved by column generation.  The restricted master is a revised simplex in
exact rationals under Bland's rule; pricing is an exact maximum-weight
independent set search on the simplex multipliers.  Its optimum ``t`` decides
everything else: ``t`` is the fractional chromatic number when ``f = 1``, and
``f`` admits an f-colouring iff ``t <= 1`` (the multipliers are then a
Farkas witness when it does not).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import networkx as nx

from .coloring import Demand, SetColoring, Weights, constant_demand
from .errors import BudgetExceeded, InfeasibleInput, MalformedInput
from .graph import PlaneGraph

DEFAULT_BNB_BUDGET = 10**6
DEFAULT_PIVOT_BUDGET = 10**4
FULL_POOL_LIMIT = 16


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


# ------------------------------------------------------------------ MWIS

def _grow_maximal(adj_masks: Sequence[int], chosen: int, n: int) -> int:
    blocked = 0
    for v in range(n):
        if chosen >> v & 1:
            blocked |= adj_masks[v] | (1 << v)
    for v in range(n):
        if not blocked >> v & 1:
            chosen |= 1 << v
            blocked |= adj_masks[v] | (1 << v)
    return chosen


def max_weight_independent_set(g: PlaneGraph, w: Weights,
                               budget: int = DEFAULT_BNB_BUDGET) -> tuple[frozenset[int], Fraction]:
    """Exact maximum-weight independent set by branch and bound.

    Branches on a maximum-degree candidate (take it, or drop it), bounding
    with a greedy clique cover.  Non-positive weights are never needed.
    """
    n = g.n
    if len(w) != n:
        raise MalformedInput("need one weight per vertex")
    w = [Fraction(x) for x in w]
    scale = math.lcm(1, *(x.denominator for x in w))
    iw = [int(x * scale) for x in w]
    adj = g.adj_masks
    cand0 = sum(1 << v for v in range(n) if iw[v] > 0)

    # greedy start: heaviest first
    order = sorted((v for v in range(n) if iw[v] > 0), key=lambda v: -iw[v])
    start, blocked = 0, 0
    for v in order:
        if not blocked >> v & 1:
            start |= 1 << v
            blocked |= adj[v]
    best_mask = start
    best_w = sum(iw[v] for v in range(n) if start >> v & 1)
    nodes = 0

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def cover_bound(P):
        # cliques built greedily in decreasing weight; each contributes its max
        total = 0
        cliques: list[int] = []
        for v in sorted(bits(P), key=lambda v: -iw[v]):
            for i, c in enumerate(cliques):
                if c & ~adj[v] == 0:
                    cliques[i] = c | (1 << v)
                    break
            else:
                cliques.append(1 << v)
                total += iw[v]
        return total

    def bb(P, cur, cur_w):
        nonlocal nodes, best_mask, best_w
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"independent-set search exceeded {budget} nodes")
        # vertices isolated inside P go in for free
        free = 0
        for v in bits(P):
            if not adj[v] & P:
                free |= 1 << v
        if free:
            cur |= free
            cur_w += sum(iw[v] for v in bits(free))
            P &= ~free
        if not P:
            if cur_w > best_w:
                best_mask, best_w = cur, cur_w
            return
        if cur_w + cover_bound(P) <= best_w:
            return
        v = max(bits(P), key=lambda u: (bin(adj[u] & P).count("1"), iw[u]))
        bb(P & ~adj[v] & ~(1 << v), cur | (1 << v), cur_w + iw[v])
        bb(P & ~(1 << v), cur, cur_w)

    if cand0:
        bb(cand0, 0, 0)
    best = frozenset(bits(best_mask))
    return best, Fraction(best_w, scale)


def maximal_independent_sets(g: PlaneGraph) -> list[frozenset[int]]:
    comp = nx.complement(g.to_networkx())
    return sorted((frozenset(c) for c in nx.find_cliques(comp)), key=lambda s: sorted(s))


def independence_number(g: PlaneGraph) -> int:
    return int(max_weight_independent_set(g, [Fraction(1)] * g.n)[1])


# ----------------------------------------------------------- LP engine

@dataclass
class CoverSolution:
    """Optimum of the covering LP for demand f."""

    value: Fraction
    primal: list[tuple[frozenset[int], Fraction]]
    dual: list[Fraction]
    pivots: int = 0
    columns: int = 0


class _Master:
    """Revised simplex for ``min c.x, A x - s = f, x, s >= 0`` with an explicit pool.

    Pool index order (used by Bland's rule): surplus columns first, then
    set columns in insertion order.
    """

    def __init__(self, n: int, f: Sequence[Fraction], pivot_budget: int):
        self.n = n
        self.f = list(f)
        self.sets: list[frozenset[int]] = []
        self.set_index: dict[frozenset[int], int] = {}
        self.pivot_budget = pivot_budget
        self.pivots = 0
        for v in range(n):
            self.add(frozenset([v]))
        # basis: row i holds the singleton column of vertex i
        self.basis = [n + v for v in range(n)]
        self.Binv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        self.xB = list(self.f)

    def add(self, s: frozenset[int]) -> bool:
        if s in self.set_index:
            return False
        self.set_index[s] = self.n + len(self.sets)
        self.sets.append(s)
        return True

    def column(self, j: int) -> dict[int, int]:
        if j < self.n:
            return {j: -1}
        return {v: 1 for v in self.sets[j - self.n]}

    def cost(self, j: int) -> int:
        return 0 if j < self.n else 1

    def duals(self) -> list[Fraction]:
        pi = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if self.cost(j):
                row = self.Binv[i]
                for k in range(self.n):
                    if row[k]:
                        pi[k] += row[k]
        return pi

    def solve(self) -> None:
        n = self.n
        while True:
            pi = self.duals()
            entering = None
            for j in range(n + len(self.sets)):
                d = self.cost(j) - sum(pi[v] * a for v, a in self.column(j).items())
                if d < 0:
                    entering = j
                    break
            if entering is None:
                return
            col = self.column(entering)
            alpha = [sum(self.Binv[i][v] * a for v, a in col.items()) for i in range(n)]
            leave, best = None, None
            for i in range(n):
                if alpha[i] > 0:
                    ratio = self.xB[i] / alpha[i]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                raise AssertionError("covering LP cannot be unbounded")
            self._pivot(leave, entering, alpha)

    def _pivot(self, r: int, j: int, alpha: list[Fraction]) -> None:
        self.pivots += 1
        if self.pivots > self.pivot_budget:
            raise BudgetExceeded(f"simplex exceeded {self.pivot_budget} pivots")
        n = self.n
        piv = alpha[r]
        rowr = [x / piv for x in self.Binv[r]]
        xr = self.xB[r] / piv
        for i in range(n):
            if i == r or not alpha[i]:
                continue
            a = alpha[i]
            row = self.Binv[i]
            self.Binv[i] = [row[k] - a * rowr[k] for k in range(n)]
            self.xB[i] -= a * xr
        self.Binv[r] = rowr
        self.xB[r] = xr
        self.basis[r] = j

    def solution(self) -> tuple[Fraction, list[tuple[frozenset[int], Fraction]]]:
        prim = []
        value = Fraction(0)
        for i, j in enumerate(self.basis):
            if j >= self.n and self.xB[i] > 0:
                prim.append((self.sets[j - self.n], self.xB[i]))
                value += self.xB[i]
        prim.sort(key=lambda p: sorted(p[0]))
        return value, prim


def solve_cover(g: PlaneGraph, f: Demand, bnb_budget: int = DEFAULT_BNB_BUDGET,
                pivot_budget: int = DEFAULT_PIVOT_BUDGET) -> CoverSolution:
    """Column generation for the covering LP with demand f."""
    n = g.n
    if len(f) != n:
        raise MalformedInput("need one demand per vertex")
    f = [Fraction(x) for x in f]
    if any(x < 0 for x in f):
        raise MalformedInput("demands must be non-negative")
    m = _Master(n, f, pivot_budget)
    if n <= FULL_POOL_LIMIT:
        for s in maximal_independent_sets(g):
            m.add(s)
    else:
        adj = g.adj_masks
        for v in range(n):
            mask = _grow_maximal(adj, 1 << v, n)
            m.add(frozenset(u for u in range(n) if mask >> u & 1))
    while True:
        m.solve()
        pi = m.duals()
        S, val = max_weight_independent_set(g, [max(p, Fraction(0)) for p in pi], bnb_budget)
        if val <= 1:
            break
        mask = _grow_maximal(g.adj_masks, sum(1 << v for v in S), n)
        grown = frozenset(u for u in range(n) if mask >> u & 1)
        if not m.add(grown) and not m.add(S):
            raise AssertionError("pricing returned a column already in the pool")
    value, primal = m.solution()
    pi = m.duals()
    assert value == sum(p * x for p, x in zip(pi, f)), "duality gap must be zero"
    return CoverSolution(value, primal, pi, m.pivots, len(m.sets))


# -------------------------------------------------------- public results

@dataclass
class FractionalResult:
    value: Fraction
    primal: list[tuple[frozenset[int], Fraction]]
    dual: list[Fraction]

    def check(self, g: PlaneGraph, f: Optional[Demand] = None) -> bool:
        """Exact certificate check: covering primal and matching dual bound."""
        f = [Fraction(1)] * g.n if f is None else [Fraction(x) for x in f]
        if sum(l for _, l in self.primal) != self.value:
            return False
        for S, l in self.primal:
            if l < 0 or any(g.adjacency[v] & S for v in S):
                return False
        for v in range(g.n):
            if sum(l for S, l in self.primal if v in S) < f[v]:
                return False
        if any(y < 0 for y in self.dual):
            return False
        if sum(y * x for y, x in zip(self.dual, f)) != self.value:
            return False
        _, best = max_weight_independent_set(g, self.dual)
        return best <= 1

    def to_json(self) -> dict:
        return {
            "value": frac_str(self.value),
            "primal": [{"set": sorted(S), "weight": frac_str(l)} for S, l in self.primal],
            "dual": [frac_str(y) for y in self.dual],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FractionalResult":
        return cls(Fraction(data["value"]),
                   [(frozenset(p["set"]), Fraction(p["weight"])) for p in data["primal"]],
                   [Fraction(y) for y in data["dual"]])


def chi_f(g: PlaneGraph, bnb_budget: int = DEFAULT_BNB_BUDGET,
          pivot_budget: int = DEFAULT_PIVOT_BUDGET) -> FractionalResult:
    """Exact fractional chromatic number with primal and dual certificates."""
    sol = solve_cover(g, [Fraction(1)] * g.n, bnb_budget, pivot_budget)
    return FractionalResult(sol.value, sol.primal, sol.dual)


@dataclass
class Feasibility:
    feasible: bool
    value: Fraction  # optimum of the covering LP; feasible iff <= 1
    primal: list[tuple[frozenset[int], Fraction]] = field(default_factory=list)
    witness: Optional[list[Fraction]] = None

    def __bool__(self):
        return self.feasible


def has_f_coloring(g: PlaneGraph, f: Demand, bnb_budget: int = DEFAULT_BNB_BUDGET,
                   pivot_budget: int = DEFAULT_PIVOT_BUDGET) -> Feasibility:
    """Decide whether g has an f-colouring.

    On success ``primal`` is a distribution over independent sets of total
    mass at most 1 covering every v at least f(v).  Otherwise ``witness`` is a
    non-negative weighting with ``w(f) > max_S w(S)``.
    """
    sol = solve_cover(g, f, bnb_budget, pivot_budget)
    if sol.value <= 1:
        return Feasibility(True, sol.value, sol.primal)
    return Feasibility(False, sol.value, [], sol.dual)


def to_set_coloring(g: PlaneGraph, f: Demand,
                    primal: Sequence[tuple[frozenset[int], Fraction]]) -> SetColoring:
    """Realise a rational distribution over independent sets as a tight (f, N)-colouring."""
    f = [Fraction(x) for x in f]
    total = Fraction(0)
    cover = [Fraction(0)] * g.n
    for S, lam in primal:
        lam = Fraction(lam)
        if lam < 0:
            raise InfeasibleInput("negative set weight")
        if any(g.adjacency[v] & S for v in S):
            raise InfeasibleInput(f"{sorted(S)} is not independent")
        total += lam
        for v in S:
            cover[v] += lam
    if total > 1:
        raise InfeasibleInput(f"distribution has mass {total} > 1")
    for v in range(g.n):
        if cover[v] < f[v]:
            raise InfeasibleInput(f"vertex {v} covered {cover[v]} < f(v) = {f[v]}")
    N = math.lcm(1, *(Fraction(l).denominator for _, l in primal), *(x.denominator for x in f))
    colours: list[list[int]] = [[] for _ in range(g.n)]
    nxt = 1
    for S, lam in primal:
        size = int(Fraction(lam) * N)
        block = range(nxt, nxt + size)
        nxt += size
        for v in S:
            colours[v].extend(block)
    sets = [sorted(colours[v])[: int(f[v] * N)] for v in range(g.n)]
    return SetColoring.of(N, sets)


def find_witness(g: PlaneGraph, x, bnb_budget: int = DEFAULT_BNB_BUDGET) -> Optional[list[Fraction]]:
    """Strictly positive integer weights w with ``max_S w(S) < x * w(V)``, if any.

    None means g has a c_x-colouring.
    """
    x = Fraction(x)
    feas = has_f_coloring(g, constant_demand(g.n, x), bnb_budget)
    if feas.feasible:
        return None
    t, n = feas.value, g.n
    eta = (t - 1) / (2 * n)
    w = [y + eta for y in feas.witness]
    scale = math.lcm(*(y.denominator for y in w))
    ints = [int(y * scale) for y in w]
    d = math.gcd(*ints)
    return [Fraction(i // d) for i in ints]
