"""Constructive replay of the minimal-counterexample argument.

The target demand for an n-vertex graph is ``b(n) = 1/3 + eps/n`` with
``eps = 1/9``.  :func:`proof_oracle` takes a weighting w and returns an
independent set X with ``w(X) >= b(n) w(V)``, choosing the same case the
structural argument would (cut vertex, non-pentagonal face, heavy
low-degree vertex, light degree-2 vertex, safe pentagon) and building the
required colouring of g from an exact colouring of the reduced graph.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import coloring as col
from .coloring import SetColoring, Weights, best_color_class, constant_demand, verify_set_coloring
from .errors import (
    BudgetExceeded,
    DemandMismatch,
    Disconnected,
    Infeasible,
    MalformedInput,
    MonoColoringFailed,
    NoColoring,
    NoRuleApplies,
    NoSafeFace,
    NotTight,
    SizeMismatch,
    WrongDenominator,
)
from .graph import INF, PlaneGraph, cut_vertices, is_triangle_free, odd_girth, power_graph, separating_four_cycles
from .lp import frac_str, has_f_coloring, to_set_coloring
from .reductions import (
    SafeFace,
    collapse_safe_face,
    delete_vertex,
    find_safe_faces,
    fold_face,
    split_at_cut_vertex,
)

EPSILON = Fraction(1, 9)
BASE_CASE_N = 9
DEFAULT_D = 4


def b(n: int) -> Fraction:
    if n < 1:
        raise MalformedInput("b(n) needs n >= 1")
    return Fraction(1, 3) + EPSILON / n


def bound_main(n: int) -> Fraction:
    val = 3 - 1 / (n + Fraction(1, 3))
    assert val * b(n) == 1
    return val


def bound_deg4(n: int) -> Fraction:
    return Fraction(3 * n, n + 1)


def delta0(D: int) -> Fraction:
    return Fraction(1, 3 * 4**D)


def delta_deg4_nosep(D: int) -> Fraction:
    if D < 4:
        raise MalformedInput("D must be at least 4")
    d0 = delta0(D)
    val = 9 * d0 / (3 * d0 + 1)
    assert val == Fraction(3, 4**D + 1)
    return val


def slack_identities() -> tuple[Fraction, Fraction]:
    """The two exact slacks used by the degree-2 and safe-face cases."""
    return EPSILON - 9 * EPSILON**2, 6 * EPSILON - 36 * EPSILON**2


@dataclass
class OracleCertificate:
    X: frozenset[int]
    weight: Fraction
    threshold: Fraction
    case: str  # HeavyVertex | ClassPartition | CutSplit | Fold | Deg2Extend | SafeFaceExtend | BaseLP
    n: int
    data: dict[str, Any] = field(default_factory=dict)
    sub: list[dict[str, Any]] = field(default_factory=list)

    def holds(self) -> bool:
        return self.weight >= self.threshold

    def validate(self, g: PlaneGraph, w: Weights) -> bool:
        independent = all(not (g.adjacency[v] & self.X) for v in self.X)
        weight = sum((Fraction(w[v]) for v in self.X), Fraction(0))
        return independent and weight == self.weight and self.holds()

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return frac_str(v)
            if isinstance(v, (set, frozenset)):
                return sorted(v)
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        return {
            "case": self.case,
            "n": self.n,
            "X": sorted(self.X),
            "weight": frac_str(self.weight),
            "threshold": frac_str(self.threshold),
            "holds": self.holds(),
            "data": enc(self.data),
            "sub": enc(self.sub),
        }


def _total(w: Weights) -> Fraction:
    return sum((Fraction(x) for x in w), Fraction(0))


def _check_weights(g: PlaneGraph, w: Weights) -> list[Fraction]:
    w = [Fraction(x) for x in w]
    if len(w) != g.n or any(x <= 0 for x in w):
        raise MalformedInput("weights must be positive, one per vertex")
    return w


# ------------------------------------------------------- heavy vertex

def heavy_vertex_oracle(g: PlaneGraph, w: Weights, vertex: Optional[int] = None,
                        budget: int = col.DEFAULT_COLOR_BUDGET) -> OracleCertificate:
    """Independent set of weight at least ``(w(V) + w(v)) / 3``.

    ``v`` defaults to the heaviest vertex (smallest index on ties), which
    requires maximum degree at most 4; the result then also clears
    ``(n+1)/(3n) w(V)``.
    """
    w = _check_weights(g, w)
    if vertex is None:
        if g.max_degree > 4:
            raise MalformedInput("heaviest-vertex oracle needs maximum degree <= 4")
        vertex = max(range(g.n), key=lambda v: (w[v], -v))
    if g.degree(vertex) > 4:
        raise MalformedInput(f"vertex {vertex} has degree {g.degree(vertex)} > 4")
    colors = col.mono_neighborhood_coloring(g, [vertex], budget=budget)
    f, psi = col.lift_mono_coloring(g, [vertex], colors)
    assert verify_set_coloring(g, f, psi).tight
    X, wx = best_color_class(g, psi, w)
    W = _total(w)
    cert = OracleCertificate(X, wx, (W + w[vertex]) / 3, "HeavyVertex", g.n,
                             {"vertex": vertex, "coloring": colors,
                              "deg4_threshold": Fraction(g.n + 1, 3 * g.n) * W})
    assert cert.holds()
    return cert


def greedy_coloring(adj: list[frozenset[int]]) -> list[int]:
    """First-fit colouring in vertex order; colours start at 0."""
    colors: list[int] = []
    for v in range(len(adj)):
        used = {colors[u] for u in adj[v] if u < v}
        c = 0
        while c in used:
            c += 1
        colors.append(c)
    return colors


def class_partition_oracle(g: PlaneGraph, w: Weights, D: int = DEFAULT_D,
                           budget: int = col.DEFAULT_COLOR_BUDGET) -> OracleCertificate:
    """Heaviest class of a distance-(D-1) colouring, made 2/3-demanding.

    Raises MonoColoringFailed when no 3-colouring makes every neighbourhood
    of the chosen class monochromatic (possible when D is too small).
    """
    w = _check_weights(g, w)
    if g.max_degree > 4:
        raise MalformedInput("class partition oracle needs maximum degree <= 4")
    if separating_four_cycles(g):
        raise MalformedInput("class partition oracle needs no separating 4-cycles")
    if D < 4:
        raise MalformedInput("D must be at least 4")
    pg = power_graph(g, D - 1)
    classes_of = greedy_coloring(pg)
    k = max(classes_of, default=-1) + 1
    assert k <= 4**D
    classes = [frozenset(v for v in range(g.n) if classes_of[v] == i) for i in range(k)]
    W = _total(w)
    cw = [sum(w[v] for v in c) for c in classes]
    # any class carrying a 1/4^D share of the weight will do; heaviest first
    order = sorted((i for i in range(k) if cw[i] * 4**D >= W), key=lambda i: (-cw[i], i))
    failures = []
    for i in order:
        C = classes[i]
        try:
            colors = col.mono_neighborhood_coloring(g, C, budget=budget)
            break
        except (NoColoring, BudgetExceeded) as exc:
            failures.append((i, len(C), type(exc).__name__))
    else:
        raise MonoColoringFailed(f"no qualifying class admits a mono-neighbourhood colouring "
                                 f"at D={D} (tried {failures})")
    f, psi = col.lift_mono_coloring(g, C, colors)
    assert verify_set_coloring(g, f, psi).tight
    X, wx = best_color_class(g, psi, w)
    cert = OracleCertificate(X, wx, (W + cw[i]) / 3, "ClassPartition", g.n,
                             {"D": D, "num_classes": k, "class": sorted(C), "failed_classes": failures,
                              "target": (Fraction(1, 3) + delta0(D)) * W})
    assert cert.holds() and wx >= cert.data["target"]
    return cert


# ------------------------------------------------- colouring extensions

def _require_tight(c: SetColoring, x: Fraction) -> int:
    q = x * c.N
    if q.denominator != 1:
        raise WrongDenominator(f"N={c.N} is not a multiple of the denominator of {x}")
    size = int(q)
    if any(len(s) != size for s in c.sets):
        raise NotTight(f"child colouring is not tight at demand {x}")
    return size


def extend_deg2(g: PlaneGraph, v: int, child: SetColoring) -> tuple[list[Fraction], SetColoring]:
    """Extend a tight ``(c_{b(n-1)}, N)``-colouring of ``g - v`` to g.

    The child is indexed as :func:`delete_vertex` relabels.  v receives
    ``N (1 - 2 b(n-1))`` colours avoiding both neighbours.
    """
    n = g.n
    if g.degree(v) != 2:
        raise MalformedInput(f"vertex {v} has degree {g.degree(v)}, not 2")
    x = b(n - 1)
    _require_tight(child, x)
    _, vmap = delete_vertex(g, v)
    N = child.N
    k = int((1 - 2 * x) * N)
    sets: list[frozenset[int]] = [child.sets[vmap[u]] if u != v else frozenset() for u in range(n)]
    blocked = set().union(*(sets[u] for u in g.adjacency[v]))
    avail = [c for c in range(1, N + 1) if c not in blocked]
    if len(avail) < k:
        raise Infeasible("not enough colours left for the degree-2 vertex")
    sets[v] = frozenset(avail[:k])
    f = [x] * n
    f[v] = 1 - 2 * x
    out = SetColoring(N, tuple(sets))
    if not verify_set_coloring(g, f, out).valid:
        raise Infeasible("extended colouring failed verification")
    return f, out


def extend_safe_face(g: PlaneGraph, sf: SafeFace, child: SetColoring,
                     details: Optional[dict] = None) -> tuple[list[Fraction], SetColoring]:
    """Extend a tight ``(c_{b(n-6)}, N)``-colouring of the collapsed graph to g.

    The four degree-3 vertices of the face get ``N (1 - 2 b(n-6))`` colours
    each, chosen in order v1, v2 and then v3, v4 from ``M3`` and ``M4``.
    If ``details`` is given, M3 and M4 are stored in it.
    """
    n = g.n
    x = b(n - 6)
    _require_tight(child, x)
    _, vmap = collapse_safe_face(g, sf)
    N = child.N
    k = int((1 - 2 * x) * N)
    v1, v2, v3, v4, v5 = sf.face
    x1, x2, x3, x4 = sf.x
    psi: dict[int, frozenset[int]] = {u: child.sets[vmap[u]] for u in range(n) if vmap[u] is not None}
    full = range(1, N + 1)

    def take(pool, size):
        # sets are taken smallest-first; lists keep their preference order
        pool = sorted(pool) if isinstance(pool, (set, frozenset)) else list(pool)
        if len(pool) < size:
            raise Infeasible(f"needed {size} colours, only {len(pool)} available")
        return frozenset(pool[:size])

    psi[v1] = take([c for c in full if c not in psi[x1] and c not in psi[v5]], k)
    psi[v2] = take([c for c in full if c not in psi[x2] and c not in psi[v1]], k)
    M3 = frozenset(c for c in full if c not in psi[v2] and c not in psi[x3])
    M4 = frozenset(c for c in full if c not in psi[v5] and c not in psi[x4])
    assert len(M3 | M4) == N - len(psi[x3]) == N * (1 - x)
    only3 = sorted(M3 - M4)
    both = sorted(M3 & M4)
    psi[v3] = take(only3 + both, k)
    psi[v4] = take(M4 - psi[v3], k)
    if details is not None:
        details.update({"M3": M3, "M4": M4})
    f = [x] * n
    for u in sf.inner:
        f[u] = 1 - 2 * x
    out = SetColoring(N, tuple(psi[u] for u in range(n)))
    if not verify_set_coloring(g, f, out).valid:
        raise Infeasible("safe-face extension failed verification")
    return f, out


def merge_cut_colorings(g: PlaneGraph, v: int, c1: SetColoring, c2: SetColoring,
                        x: Optional[Fraction] = None) -> SetColoring:
    """Glue colourings of the two sides of cut vertex v (as split_at_cut_vertex splits).

    c2's colours are permuted so that v gets the same set on both sides.
    """
    g1, g2, m1, m2 = split_at_cut_vertex(g, v)
    if c1.N != c2.N:
        raise DemandMismatch(f"N differs: {c1.N} vs {c2.N}")
    if x is not None:
        f1, f2 = constant_demand(g1.n, x), constant_demand(g2.n, x)
        if not (verify_set_coloring(g1, f1, c1).valid and verify_set_coloring(g2, f2, c2).valid):
            raise DemandMismatch(f"colourings are not both valid at demand {x}")
    s1, s2 = c1.sets[m1[v]], c2.sets[m2[v]]
    if len(s1) != len(s2):
        raise SizeMismatch(f"|psi1(v)| = {len(s1)} but |psi2(v)| = {len(s2)}")
    perm = dict(zip(sorted(s2), sorted(s1)))
    rest_src = [c for c in range(1, c1.N + 1) if c not in s2]
    rest_dst = [c for c in range(1, c1.N + 1) if c not in s1]
    perm.update(zip(rest_src, rest_dst))
    c2p = c2.permuted(perm)
    sets = []
    for u in range(g.n):
        if m1[u] is not None:
            sets.append(c1.sets[m1[u]])
        else:
            sets.append(c2p.sets[m2[u]])
    return SetColoring(c1.N, tuple(sets))


# ------------------------------------------------------------- LP colourings

_memo: dict[tuple, SetColoring] = {}
_memo_lock = threading.Lock()


def recursive_coloring(g: PlaneGraph, x, multiple: int = 1) -> SetColoring:
    """Tight (c_x, N)-colouring by exact LP, with N a multiple of ``multiple``.

    Any feasible level is accepted; levels up to b(n) always are.  Results
    are memoised per abstract graph and demand level.
    """
    x = Fraction(x)
    key = (g.key, x)
    base = _memo.get(key)
    if base is None:
        f = constant_demand(g.n, x)
        feas = has_f_coloring(g, f)
        if not feas.feasible:
            raise Infeasible(f"no c_{x}-colouring of {g!r}; the bound would be false")
        base = to_set_coloring(g, f, feas.primal)
        with _memo_lock:
            _memo.setdefault(key, base)
    need = math.lcm(base.N, multiple, x.denominator)
    return base.scaled(need // base.N) if need != base.N else base


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


# ------------------------------------------------------------ the oracle

def _lift(g: PlaneGraph, vmap, child: SetColoring) -> SetColoring:
    return SetColoring(child.N, tuple(child.sets[vmap[u]] for u in range(g.n)))


def _non_pentagonal_face(g: PlaneGraph):
    for i, fw in enumerate(g.faces):
        if fw.length != 5:
            return i, fw
    return None


def _fold_for_proof(g: PlaneGraph, face):
    g0 = odd_girth(g)
    if g0 != face.length and g0 != INF:
        return fold_face(g, face)
    return fold_face(g, face, min_odd_girth=5)


@functools.lru_cache(maxsize=4096)
def _plan(g: PlaneGraph, base_n: int, light: bool) -> tuple[str, list[Fraction], SetColoring, dict, list]:
    """The weight-independent part of the oracle: case, demand and colouring.

    With ``light=False`` only the cases decided before the heavy-vertex
    test are considered; ``("Heavy", ...)`` means none of them applies.
    """
    n = g.n
    if n <= base_n:
        psi = recursive_coloring(g, b(n))
        return "BaseLP", constant_demand(n, b(n)), psi, {"N": psi.N}, []

    cuts = cut_vertices(g)
    if cuts:
        v = cuts[0]
        g1, g2, _, _ = split_at_cut_vertex(g, v)
        c1 = recursive_coloring(g1, b(n))
        c2 = recursive_coloring(g2, b(n))
        N = math.lcm(c1.N, c2.N)
        c1, c2 = c1.scaled(N // c1.N), c2.scaled(N // c2.N)
        psi = merge_cut_colorings(g, v, c1, c2)
        return ("CutSplit", constant_demand(n, b(n)), psi, {"vertex": v, "N": N},
                [{"n": g1.n, "N": c1.N}, {"n": g2.n, "N": c2.N}])

    face = _non_pentagonal_face(g)
    if face is not None:
        idx, fw = face
        child, vmap, i = _fold_for_proof(g, fw)
        cc = recursive_coloring(child, b(n - 1))
        return ("Fold", constant_demand(n, b(n - 1)), _lift(g, vmap, cc),
                {"face": idx, "length": fw.length, "index": i}, [{"n": child.n, "N": cc.N}])

    if not light:
        return "Heavy", [], SetColoring(1, ()), {}, []

    for v in range(n):
        if g.degree(v) == 2:
            child, _ = delete_vertex(g, v)
            cc = recursive_coloring(child, b(n - 1))
            f, psi = extend_deg2(g, v, cc)
            return "Deg2Extend", f, psi, {"vertex": v, "N": cc.N}, [{"n": child.n, "N": cc.N}]

    safe = find_safe_faces(g)
    if not safe:
        raise NoSafeFace(f"{g!r} is 2-connected, min degree >= 3, all faces pentagons, "
                         "yet has no safe face")
    sf = safe[0]
    child, _ = collapse_safe_face(g, sf)
    cc = recursive_coloring(child, b(n - 6))
    details: dict = {}
    f, psi = extend_safe_face(g, sf, cc, details)
    return ("SafeFaceExtend", f, psi, {"face": sf.face, "x": sf.x, "N": cc.N, **details},
            [{"n": child.n, "N": cc.N}])


def proof_oracle(g: PlaneGraph, w: Weights, base_n: int = BASE_CASE_N) -> OracleCertificate:
    """Independent set X with ``w(X) >= b(n) w(V)`` via the proof's case analysis.

    Cases are tried in the order: base LP (n <= base_n), cut vertex,
    non-pentagonal face, heavy vertex of degree <= 3, light degree-2
    vertex, safe pentagon.
    """
    w = _check_weights(g, w)
    if not g.is_connected():
        raise Disconnected("proof oracle needs a connected graph")
    if not is_triangle_free(g):
        raise MalformedInput("proof oracle needs a triangle-free graph")
    n = g.n
    W = _total(w)
    target = b(n) * W

    case, f, psi, data, sub = _plan(g, base_n, False)
    if case == "Heavy":
        light_bar = 3 * EPSILON * W / n
        for v in range(n):
            if g.degree(v) <= 3 and w[v] >= light_bar:
                hv = heavy_vertex_oracle(g, w, vertex=v)
                cert = OracleCertificate(hv.X, hv.weight, target, "HeavyVertex", n,
                                         {"vertex": v, "lemma_threshold": hv.threshold})
                assert cert.holds()
                return cert
        case, f, psi, data, sub = _plan(g, base_n, True)
        if case == "Deg2Extend":
            assert w[data["vertex"]] < light_bar
        else:
            assert all(w[u] < light_bar for u in data["face"][:4])
    assert verify_set_coloring(g, f, psi).valid
    X, wx = best_color_class(g, psi, w)
    cert = OracleCertificate(X, wx, target, case, n, dict(data), list(sub))
    assert cert.holds(), f"{case}: {wx} < {target}"
    return cert


# ---------------------------------------------------------- rule report

@dataclass
class ReductionReport:
    rule: str
    applicable: list[str]
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.rule, "applicable": self.applicable,
                "detail": {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.detail.items()}}


def verify_no_minimal_counterexample(g: PlaneGraph) -> ReductionReport:
    """Name the structural rule that rules g out as a minimal counterexample.

    Rules, in order: TooSmall (n <= 2), Disconnected, CutVertex, Fold,
    Deg2 (minimum degree <= 2), SafeFace.
    """
    found: list[str] = []
    detail: dict[str, Any] = {}
    if g.n <= 2:
        found.append("TooSmall")
    if not g.is_connected():
        found.append("Disconnected")
    elif g.n > 2:
        cuts = cut_vertices(g)
        if cuts:
            found.append("CutVertex")
            detail["cut_vertex"] = cuts[0]
        face = _non_pentagonal_face(g)
        if face is not None and is_triangle_free(g):
            idx, fw = face
            _, _, i = _fold_for_proof(g, fw)
            found.append("Fold")
            detail.update(face=idx, face_length=fw.length, fold_index=i)
        if g.min_degree <= 2:
            found.append("Deg2")
            detail["low_vertex"] = min(range(g.n), key=lambda v: (g.degree(v), v))
        if g.min_degree >= 3 and face is None and not cuts:
            sfs = find_safe_faces(g)
            if sfs:
                found.append("SafeFace")
                detail["safe_face"] = sfs[0].face
                detail["safe_faces"] = len(sfs)
    if not found:
        raise NoRuleApplies(f"no reduction rule applies to {g!r}")
    return ReductionReport(found[0], found, detail)
