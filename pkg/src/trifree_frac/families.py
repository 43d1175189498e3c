"""Named graph families used as fixtures and corpus members."""

from __future__ import annotations

import networkx as nx

from .errors import ParamOutOfRange
from .graph import PlaneGraph, build_graph


def _from_nx(g: nx.Graph, name: str) -> PlaneGraph:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return build_graph(g.number_of_nodes(), list(g.edges()), name=name)


def cycle(k: int) -> PlaneGraph:
    if k < 3:
        raise ParamOutOfRange("cycle length must be at least 3")
    rot = [[(i - 1) % k, (i + 1) % k] for i in range(k)]
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)], rot, name=f"C{k}")


def path(k: int) -> PlaneGraph:
    """Path on k vertices."""
    if k < 1:
        raise ParamOutOfRange("path needs at least one vertex")
    return build_graph(k, [(i, i + 1) for i in range(k - 1)], name=f"P{k}")


def star(leaves: int) -> PlaneGraph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], name=f"K1,{leaves}")


def empty(n: int) -> PlaneGraph:
    return build_graph(n, [], name=f"E{n}")


def dodecahedron() -> PlaneGraph:
    return _from_nx(nx.dodecahedral_graph(), "dodecahedron")


def cube() -> PlaneGraph:
    return _from_nx(nx.hypercube_graph(3), "Q3")


def pentagonal_strip(k: int) -> PlaneGraph:
    """k pentagons in a row, consecutive ones sharing an edge.

    Rungs ``a_i b_i`` (i = 0..k) are the shared edges; pentagon i is
    ``a_{i-1} t_i a_i b_i b_{i-1}`` with its extra vertex ``t_i`` alternating
    between the top and bottom side.  n = 3k + 2.
    """
    if k < 1:
        raise ParamOutOfRange("pentagonal_strip needs k >= 1")
    a = list(range(k + 1))
    b = list(range(k + 1, 2 * k + 2))
    edges = [(a[i], b[i]) for i in range(k + 1)]
    nxt = 2 * k + 2
    for i in range(1, k + 1):
        t = nxt
        nxt += 1
        top, bot = (a, b) if i % 2 else (b, a)
        edges += [(top[i - 1], t), (t, top[i]), (bot[i - 1], bot[i])]
    return build_graph(nxt, edges, name=f"pentstrip{k}")


def hex_grid(rows: int, cols: int) -> PlaneGraph:
    if rows < 1 or cols < 1:
        raise ParamOutOfRange("hex_grid needs positive dimensions")
    return _from_nx(nx.hexagonal_lattice_graph(rows, cols), f"hex{rows}x{cols}")


def prism(k: int) -> PlaneGraph:
    return _from_nx(nx.circular_ladder_graph(k), f"prism{k}")


def subdivided_prism(k: int) -> PlaneGraph:
    """k-prism with one rung subdivided; odd girth 5 when k is even."""
    g = nx.circular_ladder_graph(k)
    g.remove_edge(0, k)
    s = 2 * k
    g.add_edges_from([(0, s), (s, k)])
    return _from_nx(g, f"prism{k}+sub")


def pentagons_at_vertex() -> PlaneGraph:
    """Two pentagons sharing exactly one vertex (vertex 0)."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)]
    return build_graph(9, edges, name="C5.C5")


def pentagon_chain(k: int) -> PlaneGraph:
    """k pentagons, consecutive ones sharing one vertex."""
    edges = []
    prev = 0
    nxt = 1
    for _ in range(k):
        ring = [prev] + list(range(nxt, nxt + 4))
        nxt += 4
        edges += [(ring[i], ring[(i + 1) % 5]) for i in range(5)]
        prev = ring[2]
    return build_graph(nxt, edges, name=f"C5chain{k}")


def dual(g: PlaneGraph, name: str = "") -> PlaneGraph:
    """Plane dual of a 2-connected plane graph whose dual is simple."""
    faces = g.faces
    owner = {}
    for i, f in enumerate(faces):
        for d in f.darts():
            owner[d] = i
    edges = {tuple(sorted((owner[(u, v)], owner[(v, u)]))) for u, v in g.edges}
    return build_graph(len(faces), sorted(edges), name=name or f"dual({g.name})")


def snub_antiprism(k: int) -> PlaneGraph:
    """5-regular plane graph on 4k vertices: two k-gons and 6k triangles.

    k = 3 is the icosahedron.  Layers: top k-gon t_i, zig-zag 2k-cycle
    m_j, bottom k-gon s_i; t_i sees m_{2i..2i+2}, s_i sees m_{2i+1..2i+3}.
    """
    if k < 3:
        raise ParamOutOfRange("snub_antiprism needs k >= 3")
    t = lambda i: i % k
    m = lambda j: k + j % (2 * k)
    s = lambda i: 3 * k + i % k
    edges = set()
    for i in range(k):
        edges |= {(t(i), t(i + 1)), (s(i), s(i + 1))}
        edges |= {(t(i), m(2 * i + d)) for d in range(3)}
        edges |= {(s(i), m(2 * i + 1 + d)) for d in range(3)}
    for j in range(2 * k):
        edges.add((m(j), m(j + 1)))
    return build_graph(4 * k, sorted({tuple(sorted(e)) for e in edges}), name=f"snub{k}")


def pentagonal_dual(k: int) -> PlaneGraph:
    """Dual of the snub k-antiprism: every face a pentagon, 6k + 2 vertices.

    Two vertices have degree k, the rest degree 3; k = 3 gives the
    dodecahedron.
    """
    return dual(snub_antiprism(k), name=f"pentdual{k}")


def collapsed_pentagonal_dual(k: int) -> PlaneGraph:
    """Pentagonal dual with its first safe face collapsed (6k - 4 vertices).

    All faces stay pentagons, and two degree-2 vertices appear next to the
    two degree-k hubs.
    """
    from .reductions import collapse_safe_face, find_safe_faces

    g = pentagonal_dual(k)
    child, _ = collapse_safe_face(g, find_safe_faces(g)[0])
    return PlaneGraph(child.n, child.rotation, f"pentdual{k}-collapsed")
