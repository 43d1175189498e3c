"""Plane graphs stored as rotation systems.

Vertices are the integers ``0..n-1``.  The embedding is a rotation system:
for every vertex the cyclic order of its neighbours.  Faces are traced with
the next-edge rule: the dart ``(u, v)`` is followed by ``(v, w)`` where ``w``
is the neighbour immediately after ``u`` in the rotation at ``v``.  Rotations
built from networkx follow its clockwise order; nothing here depends on that
choice beyond consistency.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .errors import Disconnected, InvalidRotation, MalformedInput, NonPlanar

INF = math.inf


@dataclass(frozen=True)
class FacialWalk:
    """A closed facial walk ``vertices[0] -> vertices[1] -> ... -> vertices[0]``."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def darts(self) -> list[tuple[int, int]]:
        r = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % r]) for i in range(r)]

    def is_cycle(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices) >= 3

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    n: int
    rotation: tuple[tuple[int, ...], ...]
    # provenance label only, ignored by equality
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.rotation) != self.n:
            raise MalformedInput("rotation must list one cyclic order per vertex")

    # equality on the abstract graph plus embedding
    def __eq__(self, other):
        return isinstance(other, PlaneGraph) and self.rotation == other.rotation

    def __hash__(self):
        return hash(self.rotation)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.rotation[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(r) for r in self.rotation), default=0)

    @cached_property
    def min_degree(self) -> int:
        return min((len(r) for r in self.rotation), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def key(self) -> tuple:
        """Hashable identity of the abstract (unembedded) graph."""
        return (self.n, self.edges)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nb) for nb in self.rotation)

    @cached_property
    def faces(self) -> tuple[FacialWalk, ...]:
        return tuple(_trace_faces(self.rotation))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for v in self.rotation[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges],
                "rotation": [list(r) for r in self.rotation]}

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<PlaneGraph{label} n={self.n} m={self.num_edges}>"


def _trace_faces(rotation: Sequence[Sequence[int]]) -> list[FacialWalk]:
    pos = [{u: i for i, u in enumerate(r)} for r in rotation]
    used: set[tuple[int, int]] = set()
    walks = []
    for s in range(len(rotation)):
        for t in rotation[s]:
            if (s, t) in used:
                continue
            walk = []
            u, v = s, t
            while (u, v) not in used:
                used.add((u, v))
                walk.append(u)
                rv = rotation[v]
                w = rv[(pos[v][u] + 1) % len(rv)]
                u, v = v, w
            walks.append(FacialWalk(tuple(walk)))
    return walks


def euler_ok(g: PlaneGraph) -> bool:
    """Check ``n - E + F = 1 + C`` on the traced faces.

    Each component is traced separately, so its outer face is counted once
    per component and an isolated vertex contributes no walk; both are
    corrected for before comparing.
    """
    comps = g.components
    isolated = sum(1 for c in comps if len(c) == 1)
    f = len(g.faces) + isolated - (len(comps) - 1)
    return g.n - g.num_edges + f == 1 + len(comps) or g.n == 0


def _validate_simple(n: int, edges: Iterable[Sequence[int]]) -> list[set[int]]:
    if not isinstance(n, int) or n < 0:
        raise MalformedInput(f"vertex count must be a non-negative integer, got {n!r}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise MalformedInput(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInput(f"edge {e!r} out of range for n={n}")
        if u == v:
            raise MalformedInput(f"loop at {u}")
        if v in adj[u]:
            raise MalformedInput(f"parallel edge {u}-{v}")
        adj[u].add(v)
        adj[v].add(u)
    return adj


def from_rotation(rotation: Sequence[Sequence[int]], name: str = "") -> PlaneGraph:
    """Wrap a rotation system, checking symmetry and the Euler formula."""
    n = len(rotation)
    rot = tuple(tuple(int(u) for u in r) for r in rotation)
    for v, r in enumerate(rot):
        if len(set(r)) != len(r):
            raise InvalidRotation(f"rotation at {v} repeats a neighbour")
        for u in r:
            if not 0 <= u < n or u == v:
                raise InvalidRotation(f"rotation at {v} names invalid neighbour {u}")
            if v not in rot[u]:
                raise InvalidRotation(f"rotation is not symmetric on edge {v}-{u}")
    g = PlaneGraph(n, rot, name)
    if not euler_ok(g):
        raise InvalidRotation("rotation system does not trace a planar embedding")
    return g


def build_graph(n: int, edges: Iterable[Sequence[int]],
                rotation: Sequence[Sequence[int]] | None = None,
                name: str = "") -> PlaneGraph:
    """Build a :class:`PlaneGraph`, computing an embedding if none is given.

    Raises
    ------
    MalformedInput
        Loops, parallel edges, or out-of-range vertices.
    InvalidRotation
        The supplied rotation does not match the edges or is not planar.
    NonPlanar
        No rotation supplied and the graph has no planar embedding.
    """
    edges = list(edges)
    adj = _validate_simple(n, edges)
    if rotation is not None:
        if len(rotation) != n:
            raise InvalidRotation("rotation must have one entry per vertex")
        for v in range(n):
            if sorted(rotation[v]) != sorted(adj[v]):
                raise InvalidRotation(f"rotation at {v} is not a permutation of its neighbours")
        return from_rotation(rotation, name)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from(tuple(map(int, e)) for e in edges)
    planar, emb = nx.check_planarity(nxg)
    if not planar:
        raise NonPlanar(f"graph with n={n}, m={len(edges)} is not planar")
    rot = [list(emb.neighbors_cw_order(v)) if v in emb else [] for v in range(n)]
    return from_rotation(rot, name)


def faces(g: PlaneGraph) -> list[FacialWalk]:
    return list(g.faces)


def _bfs(g: PlaneGraph, source: int, forbidden: frozenset[int] = frozenset()) -> list[float]:
    dist = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.rotation[u]:
            if dist[v] == INF and v not in forbidden:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance(g: PlaneGraph, u: int, v: int, forbidden: Iterable[int] = ()) -> float:
    """Shortest-path length from u to v in ``g - forbidden`` (``inf`` if none)."""
    forbidden = frozenset(forbidden)
    if u in forbidden or v in forbidden:
        raise MalformedInput("endpoints must not be forbidden")
    d = _bfs(g, u, forbidden)[v]
    return int(d) if d != INF else INF


def odd_girth(g: PlaneGraph) -> float:
    """Length of a shortest odd cycle, ``inf`` for bipartite graphs."""
    best = INF
    for r in range(g.n):
        dist = _bfs(g, r)
        for a, b in g.edges:
            if dist[a] == dist[b] != INF:
                best = min(best, 2 * dist[a] + 1)
        if best == 3:
            break
    return int(best) if best != INF else INF


def is_triangle_free(g: PlaneGraph) -> bool:
    adj = g.adjacency
    return all(not (adj[u] & adj[v]) for u, v in g.edges)


def cut_vertices(g: PlaneGraph) -> list[int]:
    """Articulation points, by an iterative low-point DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.rotation[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    disc[v] = low[v] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((v, u, iter(g.rotation[v])))
                    advanced = True
                    break
                if v != parent:
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[u])
                if parent != root and low[u] >= disc[parent]:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return sorted(cut)


def is_two_connected(g: PlaneGraph) -> bool:
    if not g.is_connected():
        raise Disconnected("2-connectivity is only defined here for connected graphs")
    return not cut_vertices(g)


def four_cycles(g: PlaneGraph) -> list[tuple[int, int, int, int]]:
    """All 4-cycles, each once, as ``(a, b, c, d)`` with ``a`` the minimum."""
    adj = g.adjacency
    out = []
    for a in range(g.n):
        for b in adj[a]:
            if b <= a:
                continue
            for d in adj[a]:
                if d <= b:
                    continue
                for c in (adj[b] & adj[d]) - {a}:
                    if c > a:
                        out.append((a, b, c, d))
    return out


def _cyclic_key(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical rotation/reflection representative of a cyclic sequence."""
    r = len(seq)
    cands = []
    for s in (list(seq), list(reversed(seq))):
        for i in range(r):
            cands.append(tuple(s[i:] + s[:i]))
    return min(cands)


def separating_four_cycles(g: PlaneGraph) -> list[tuple[int, int, int, int]]:
    facial = {_cyclic_key(f.vertices) for f in g.faces if f.length == 4}
    return [c for c in four_cycles(g) if _cyclic_key(c) not in facial]


def power_graph(g: PlaneGraph, radius: int) -> list[frozenset[int]]:
    """Abstract graph joining vertices at distance ``1..radius`` in g."""
    if radius < 1:
        raise MalformedInput("radius must be at least 1")
    out = []
    for v in range(g.n):
        dist = _bfs(g, v)
        out.append(frozenset(u for u in range(g.n) if 1 <= dist[u] <= radius))
    return out


# ---------------------------------------------------------------- file I/O

def graph_from_json(data: dict, name: str = "") -> PlaneGraph:
    try:
        n = data["n"]
        edges = data.get("edges", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"graph JSON needs 'n' and 'edges': {exc}") from None
    return build_graph(n, edges, data.get("rotation"), name=data.get("name", name))


def parse_edge_list(text: str, name: str = "") -> PlaneGraph:
    """Parse ``u v`` lines (``#`` comments allowed); n is one past the largest id.

    A line holding a single integer declares the vertex count explicitly.
    """
    edges, n_decl, top = [], None, -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise MalformedInput(f"line {lineno}: expected integers, got {line!r}") from None
        if len(nums) == 1:
            n_decl = nums[0]
        elif len(nums) == 2:
            edges.append(nums)
            top = max(top, *nums)
        else:
            raise MalformedInput(f"line {lineno}: expected 'u v'")
    n = n_decl if n_decl is not None else top + 1
    return build_graph(n, edges, name=name)


def load_graph(path: str | Path) -> PlaneGraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"{path}: {exc}") from None
        return graph_from_json(data, name=path.stem)
    return parse_edge_list(text, name=path.stem)


def save_graph(g: PlaneGraph, path: str | Path) -> None:
    data = g.to_json()
    if g.name:
        data["name"] = g.name
    Path(path).write_text(json.dumps(data))
