"""Graph surgery: vertex identification, folding, cut splitting, safe faces.

Every operation returns the child graph together with a vertex map: a list
indexed by parent vertex holding the child vertex id, or ``None`` for
vertices that were deleted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .errors import (
    AdjacentPair,
    FaceLengthEqualsGirth,
    InvalidRotation,
    NoCommonFace,
    NotCutVertex,
    NotSafe,
    NoValidIndex,
    TriangleCreated,
)
from .graph import INF, FacialWalk, PlaneGraph, _trace_faces, from_rotation, is_triangle_free, odd_girth

VertexMap = list[Optional[int]]


@dataclass(frozen=True)
class SafeFace:
    face: tuple[int, int, int, int, int]  # v1..v5
    x: tuple[int, int, int, int]  # x1..x4

    @property
    def inner(self) -> tuple[int, int, int, int]:
        return self.face[:4]

    def to_json(self) -> dict:
        return {"face": list(self.face), "x": list(self.x)}


@dataclass
class ReductionStep:
    kind: str  # Fold | CutSplit | DeleteDeg2 | SafeFaceCollapse
    maps: list[VertexMap]
    children: list[PlaneGraph]
    params: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "maps": self.maps,
            "children": [c.to_json() for c in self.children],
            "params": self.params,
        }


def compose_maps(first: VertexMap, second: VertexMap) -> VertexMap:
    return [None if a is None else second[a] for a in first]


class _Surgery:
    """Mutable rotation system in parent labels; ``finish`` relabels densely."""

    def __init__(self, g: PlaneGraph):
        self.n = g.n
        self.rot = [list(r) for r in g.rotation]
        self.alias: list[Optional[int]] = list(range(g.n))
        self.alive = [True] * g.n

    def delete(self, v: int) -> None:
        for u in self.rot[v]:
            self.rot[u].remove(v)
        self.rot[v] = []
        self.alive[v] = False
        self.alias = [None if a == v else a for a in self.alias]

    def faces(self) -> list[FacialWalk]:
        return _trace_faces(self.rot)

    def corners(self, u: int, v: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """Corner pairs ``((pred_u, succ_u), (pred_v, succ_v))`` on a shared face."""
        out = []
        for f in self.faces():
            w = f.vertices
            r = len(w)
            cu = [(w[i - 1], w[(i + 1) % r]) for i in range(r) if w[i] == u]
            cv = [(w[i - 1], w[(i + 1) % r]) for i in range(r) if w[i] == v]
            out.extend(itertools.product(cu, cv))
        return out

    def identify(self, u: int, v: int, corner_u: Optional[tuple[int, int]],
                 corner_v: Optional[tuple[int, int]]) -> None:
        """Merge v into u, splicing the rotations at the given corners."""
        if v in self.rot[u]:
            raise AdjacentPair(f"{u} and {v} are adjacent")
        ru, rv = self.rot[u], self.rot[v]
        if corner_u is not None:
            i = ru.index(corner_u[1])
            ru = ru[i:] + ru[:i]
        if corner_v is not None:
            i = rv.index(corner_v[1])
            rv = rv[i:] + rv[:i]
        common = set(ru) & set(rv)
        for y in rv:
            ry = self.rot[y]
            if y in common:
                ry.remove(v)
            else:
                ry[ry.index(v)] = u
        self.rot[u] = ru + [y for y in rv if y not in common]
        self.rot[v] = []
        self.alive[v] = False
        self.alias = [u if a == v else a for a in self.alias]

    def finish(self) -> tuple[PlaneGraph, VertexMap]:
        keep = [x for x in range(self.n) if self.alive[x]]
        new_id = {x: i for i, x in enumerate(keep)}
        rot = [[new_id[y] for y in self.rot[x]] for x in keep]
        child = from_rotation(rot)
        vmap = [None if a is None else new_id[a] for a in self.alias]
        return child, vmap


def _corner_at(g: PlaneGraph, face: FacialWalk, i: int) -> tuple[int, int]:
    w = face.vertices
    return (w[i - 1], w[(i + 1) % len(w)])


def identify_vertices(g: PlaneGraph, u: int, v: int,
                      face: FacialWalk | None = None) -> tuple[PlaneGraph, VertexMap]:
    """Identify non-adjacent u and v lying on a common face.

    Parallel edges from common neighbours are merged.  The merged vertex
    keeps u's slot in the relabelled child.

    Raises
    ------
    AdjacentPair
        The identification would create a loop.
    NoCommonFace
        No face (or not the given face) is incident with both vertices.
    """
    if u == v:
        raise AdjacentPair("cannot identify a vertex with itself")
    if g.has_edge(u, v):
        raise AdjacentPair(f"{u} and {v} are adjacent")
    s = _Surgery(g)
    if g.degree(u) == 0 or g.degree(v) == 0:
        s.identify(u, v, None, None)
        return s.finish()
    if face is not None:
        w = face.vertices
        r = len(w)
        cands = [((w[i - 1], w[(i + 1) % r]), (w[j - 1], w[(j + 1) % r]))
                 for i in range(r) if w[i] == u for j in range(r) if w[j] == v]
    else:
        cands = s.corners(u, v)
    if not cands:
        raise NoCommonFace(f"{u} and {v} share no face")
    cu, cv = cands[0]
    s.identify(u, v, cu, cv)
    return s.finish()


def fold_face(g: PlaneGraph, face: FacialWalk,
              min_odd_girth: int | None = None) -> tuple[PlaneGraph, VertexMap, int]:
    """Identify ``v_{i-1}`` and ``v_{i+1}`` along ``face`` keeping the odd girth.

    Indices are tried in order ``0..r-1`` and the first admissible one is
    returned as the third component.  By default the odd girth must be
    preserved exactly and the face length must differ from it.  With
    ``min_odd_girth`` set, any index leaving odd girth at least that value
    is accepted and the face-length check is skipped.
    """
    g0 = odd_girth(g)
    r = face.length
    if min_odd_girth is None:
        if r == g0:
            raise FaceLengthEqualsGirth(f"face length {r} equals the odd girth")
        target = g0
    else:
        target = min_odd_girth
    w = face.vertices
    for i in range(r):
        a, b = w[i - 1], w[(i + 1) % r]
        if a == b or g.has_edge(a, b):
            continue
        s = _Surgery(g)
        s.identify(a, b, _corner_at(g, face, (i - 1) % r), _corner_at(g, face, (i + 1) % r))
        child, vmap = s.finish()
        if odd_girth(child) >= target:
            return child, vmap, i
    raise NoValidIndex(f"no index of a length-{r} face preserves odd girth {target}")


def induced_subgraph(g: PlaneGraph, keep: Sequence[int]) -> tuple[PlaneGraph, VertexMap]:
    """Restrict to ``keep`` (child ids follow the sorted order of ``keep``)."""
    keep = sorted(set(keep))
    s = _Surgery(g)
    for v in set(range(g.n)) - set(keep):
        s.delete(v)
    return s.finish()


def delete_vertex(g: PlaneGraph, v: int) -> tuple[PlaneGraph, VertexMap]:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def split_at_cut_vertex(g: PlaneGraph, v: int):
    """Split g as G1 ∪ G2 meeting exactly in v.

    G1 is v plus the component of ``g - v`` holding the smallest vertex;
    G2 is v plus everything else.  Returns ``(g1, g2, map1, map2)``.
    """
    rest, rmap = delete_vertex(g, v)
    comps = rest.components
    if len(comps) < 2:
        raise NotCutVertex(f"{v} is not a cut vertex")
    back = {c: p for p, c in enumerate(rmap) if c is not None}
    first = {back[c] for c in comps[0]}
    others = set(range(g.n)) - first - {v}
    g1, m1 = induced_subgraph(g, first | {v})
    g2, m2 = induced_subgraph(g, others | {v})
    return g1, g2, m1, m2


# ------------------------------------------------------------- safe faces

def _has_path_of_length_three(g: PlaneGraph, a: int, b: int, removed: frozenset[int]) -> bool:
    adj = g.adjacency
    for p in adj[a] - removed:
        if p == b:
            continue
        for q in adj[p] - removed:
            if q in (a, b):
                continue
            if b in adj[q]:
                return True
    return False


def _bfs_within(g: PlaneGraph, src: int, removed: frozenset[int], limit: int) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    for d in range(1, limit + 1):
        nxt = []
        for u in frontier:
            for y in g.adjacency[u]:
                if y not in dist and y not in removed:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return dist


def check_safe(g: PlaneGraph, face: Sequence[int]) -> Optional[SafeFace]:
    """Return the SafeFace for roles ``face = (v1..v5)``, or None if unsafe."""
    v = tuple(face)
    if len(v) != 5 or len(set(v)) != 5:
        return None
    fset = set(v)
    xs = []
    for i in range(4):
        if g.degree(v[i]) != 3:
            return None
        outside = g.adjacency[v[i]] - fset
        if len(outside) != 1:
            return None
        xs.append(next(iter(outside)))
    if len(set(xs)) != 4:
        return None
    if any(g.has_edge(a, b) for a, b in itertools.combinations(xs, 2)):
        return None
    removed = frozenset(v[:4])
    near = _bfs_within(g, xs[1], removed, 3)
    if v[4] in near:
        return None
    if _has_path_of_length_three(g, xs[2], xs[3], removed):
        return None
    return SafeFace(v, tuple(xs))


def _symmetries(cyc: Sequence[int]):
    for seq in (list(cyc), list(reversed(cyc))):
        for i in range(len(seq)):
            yield tuple(seq[i:] + seq[:i])


def find_safe_faces(g: PlaneGraph) -> list[SafeFace]:
    """All role assignments of all 5-faces that satisfy the safety conditions."""
    seen = set()
    out = []
    for f in g.faces:
        if f.length != 5 or not f.is_cycle():
            continue
        for roles in _symmetries(f.vertices):
            if roles in seen:
                continue
            seen.add(roles)
            sf = check_safe(g, roles)
            if sf is not None:
                out.append(sf)
    return out


def collapse_safe_face(g: PlaneGraph, sf: SafeFace) -> tuple[PlaneGraph, VertexMap]:
    """Delete v1..v4, then identify x2 with v5 and x3 with x4.

    Returns the child on n - 6 vertices.  In the child, ``vmap[x2] ==
    vmap[v5]`` is the merged vertex u1 and ``vmap[x3] == vmap[x4]`` is u2.
    """
    if check_safe(g, sf.face) != sf:
        raise NotSafe(f"face {sf.face} fails the safety conditions")
    v1, v2, v3, v4, v5 = sf.face
    x1, x2, x3, x4 = sf.x
    base = _Surgery(g)
    for u in (v1, v2, v3, v4):
        base.delete(u)
    for cu, cv in base.corners(x2, v5):
        s = _Surgery.__new__(_Surgery)
        s.n, s.rot = base.n, [list(r) for r in base.rot]
        s.alias, s.alive = list(base.alias), list(base.alive)
        s.identify(x2, v5, cu, cv)
        pairs = s.corners(x3, x4)
        if not pairs:
            continue
        s.identify(x3, x4, *pairs[0])
        try:
            child, vmap = s.finish()
        except InvalidRotation:
            continue
        if not is_triangle_free(child):
            raise TriangleCreated(f"collapsing {sf.face} produced a triangle")
        return child, vmap
    raise NoCommonFace("safe-face identifications found no common face")


def fold_step(g: PlaneGraph, face_index: int, min_odd_girth: int | None = None) -> ReductionStep:
    face = g.faces[face_index]
    child, vmap, i = fold_face(g, face, min_odd_girth)
    return ReductionStep("Fold", [vmap], [child],
                         {"face": list(face.vertices), "index": i})


def collapse_step(g: PlaneGraph, sf: SafeFace) -> ReductionStep:
    child, vmap = collapse_safe_face(g, sf)
    return ReductionStep("SafeFaceCollapse", [vmap], [child], sf.to_json())


def cut_step(g: PlaneGraph, v: int) -> ReductionStep:
    g1, g2, m1, m2 = split_at_cut_vertex(g, v)
    return ReductionStep("CutSplit", [m1, m2], [g1, g2], {"vertex": v})


def delete_step(g: PlaneGraph, v: int) -> ReductionStep:
    child, vmap = delete_vertex(g, v)
    return ReductionStep("DeleteDeg2", [vmap], [child], {"vertex": v})


__all__ = [
    "SafeFace", "ReductionStep", "VertexMap", "compose_maps", "identify_vertices",
    "fold_face", "induced_subgraph", "delete_vertex", "split_at_cut_vertex",
    "check_safe", "find_safe_faces", "collapse_safe_face", "fold_step",
    "collapse_step", "cut_step", "delete_step", "INF",
]
