"""Graph corpora, the bound-verification report and the lemma suite."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional

import networkx as nx
import numpy as np

from . import coloring as col
from . import families
from . import lp
from . import proof
from . import reductions as red
from .errors import MonoColoringFailed, ParamOutOfRange, TrifreeError
from .graph import (
    INF,
    PlaneGraph,
    build_graph,
    euler_ok,
    graph_from_json,
    is_triangle_free,
    odd_girth,
    separating_four_cycles,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 8

FILTERS: dict[str, Callable[[PlaneGraph], bool]] = {
    "triangle-free": is_triangle_free,
    "connected": lambda g: g.is_connected(),
    "max-degree-4": lambda g: g.max_degree <= 4,
    "no-separating-4-cycles": lambda g: not separating_four_cycles(g),
    "all-faces-5": lambda g: all(f.length == 5 for f in g.faces),
}


@dataclass
class Member:
    graph: PlaneGraph
    tag: str  # generator + parameters + seed


@dataclass
class Corpus:
    name: str
    members: list[Member] = field(default_factory=list)
    filters: tuple[str, ...] = ("triangle-free",)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def graphs(self) -> list[PlaneGraph]:
        return [m.graph for m in self.members]

    def add(self, g: PlaneGraph, tag: str) -> bool:
        """Append g if it passes every filter; rejections are logged."""
        for f in self.filters:
            if not FILTERS[f](g):
                log.warning("corpus %s: rejected %s (%s) failing filter %s", self.name, g.name, tag, f)
                return False
        self.members.append(Member(g, tag))
        return True

    def extend(self, other: "Corpus") -> "Corpus":
        for m in other:
            self.add(m.graph, m.tag)
        return self

    def where(self, *filters: str) -> "Corpus":
        sub = Corpus(f"{self.name}[{','.join(filters)}]", [], tuple(self.filters) + filters)
        for m in self:
            if all(FILTERS[f](m.graph) for f in filters):
                sub.members.append(m)
        return sub

    def save(self, directory: str | Path) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        entries = []
        for i, m in enumerate(self.members):
            fname = f"g{i:04d}.json"
            data = m.graph.to_json()
            data["name"] = m.graph.name
            (d / fname).write_text(json.dumps(data))
            entries.append({"file": fname, "name": m.graph.name, "tag": m.tag})
        manifest = {"name": self.name, "filters": list(self.filters), "members": entries}
        (d / "manifest.json").write_text(json.dumps(manifest, indent=1))

    @classmethod
    def load(cls, directory: str | Path, filters: Optional[Iterable[str]] = None) -> "Corpus":
        d = Path(directory)
        mpath = d / "manifest.json"
        if mpath.exists():
            manifest = json.loads(mpath.read_text())
            entries = manifest["members"]
            name = manifest.get("name", d.name)
            flt = tuple(filters if filters is not None else manifest.get("filters", ["triangle-free"]))
        else:
            entries = [{"file": p.name, "name": p.stem, "tag": "file"} for p in sorted(d.glob("*.json"))]
            name, flt = d.name, tuple(filters or ("triangle-free",))
        corpus = cls(name, [], flt)
        for e in entries:
            data = json.loads((d / e["file"]).read_text())
            try:
                g = graph_from_json(data, name=e.get("name", ""))
            except TrifreeError as exc:
                log.warning("corpus %s: could not load %s: %s", name, e["file"], exc)
                continue
            corpus.add(g, e.get("tag", "file"))
        return corpus


# --------------------------------------------------------------- generators

def rng_for(seed: int) -> np.random.Generator:
    """PCG64 stream; the same seed gives the same corpus everywhere."""
    return np.random.Generator(np.random.PCG64(seed))


def random_tfp(n: int, seed: int, density: float = 1.0) -> PlaneGraph:
    """Random connected triangle-free planar graph.

    A random recursive tree is grown first; then every remaining pair is
    visited in random order and, with probability ``density``, added when it
    creates no triangle and keeps the graph planar.  ``density=1`` yields an
    edge-maximal triangle-free planar graph.
    """
    if n < 1 or not 0 <= density <= 1:
        raise ParamOutOfRange("random_tfp needs n >= 1 and 0 <= density <= 1")
    rng = rng_for(seed)
    perm = rng.permutation(n)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for i in range(1, n):
        j = int(rng.integers(0, i))
        g.add_edge(int(perm[i]), int(perm[j]))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    order = rng.permutation(len(pairs))
    coins = rng.random(len(pairs))
    for k in order:
        if coins[k] >= density:
            continue
        u, v = pairs[k]
        if set(g[u]) & set(g[v]):
            continue
        g.add_edge(u, v)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(u, v)
    return build_graph(n, list(g.edges()), name=f"rand{n}_s{seed}_d{density:g}")


def _bucket_key(g: nx.Graph):
    return (tuple(sorted(d for _, d in g.degree())), nx.weisfeiler_lehman_graph_hash(g, iterations=3))


def exhaustive(n_max: int) -> list[PlaneGraph]:
    """All connected triangle-free planar graphs on 1..n_max vertices, up to isomorphism.

    Every connected graph has a vertex whose removal leaves it connected,
    and the class is closed under vertex deletion, so each level is grown
    from the previous one by adding a vertex joined to a non-empty
    independent set.  Duplicates are removed with invariant buckets
    (degree sequence, WL hash) and an exact isomorphism test.
    """
    if not 1 <= n_max <= EXHAUSTIVE_MAX_N:
        raise ParamOutOfRange(f"exhaustive enumeration supports 1 <= n_max <= {EXHAUSTIVE_MAX_N}")
    level = [nx.empty_graph(1)]
    out = [level[0]]
    for n in range(2, n_max + 1):
        buckets: dict[tuple, list[nx.Graph]] = {}
        nxt = []
        for h in level:
            verts = list(range(n - 1))
            for mask in range(1, 1 << (n - 1)):
                S = [v for v in verts if mask >> v & 1]
                if any(h.has_edge(a, b) for i, a in enumerate(S) for b in S[i + 1:]):
                    continue
                cand = h.copy()
                cand.add_edges_from((n - 1, v) for v in S)
                if not nx.check_planarity(cand)[0]:
                    continue
                key = _bucket_key(cand)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(cand, o) for o in bucket):
                    continue
                bucket.append(cand)
                nxt.append(cand)
        level = nxt
        out.extend(level)
    graphs = []
    for i, h in enumerate(out):
        graphs.append(build_graph(h.number_of_nodes(), list(h.edges()),
                                  name=f"ex{h.number_of_nodes()}_{i}"))
    return graphs


def generate(family: str, **params) -> Corpus:
    """Build a corpus for one family.

    Families: ``cycle(k)``, ``dodecahedron``, ``pentagonal_strip(k)``,
    ``hex_grid(a, b)``, ``random_tfp(n, seed[, count, density])``,
    ``exhaustive(n_max)``.
    """
    c = Corpus(family)
    if family == "cycle":
        c.add(families.cycle(int(params["k"])), f"cycle(k={params['k']})")
    elif family == "dodecahedron":
        c.add(families.dodecahedron(), "dodecahedron")
    elif family == "pentagonal_strip":
        c.add(families.pentagonal_strip(int(params["k"])), f"pentagonal_strip(k={params['k']})")
    elif family == "hex_grid":
        a, bb = int(params["a"]), int(params["b"])
        c.add(families.hex_grid(a, bb), f"hex_grid({a},{bb})")
    elif family == "random_tfp":
        n, seed = int(params["n"]), int(params.get("seed", 0))
        count = int(params.get("count", 1))
        density = float(params.get("density", 1.0))
        for s in range(seed, seed + count):
            c.add(random_tfp(n, s, density), f"random_tfp(n={n},seed={s},density={density:g})")
    elif family == "exhaustive":
        n_max = int(params["n_max"])
        for g in exhaustive(n_max):
            c.add(g, f"exhaustive(n_max={n_max})")
    else:
        raise ParamOutOfRange(f"unknown family {family!r}")
    return c


def named_graphs() -> list[PlaneGraph]:
    gs = [families.cycle(k) for k in range(4, 13)]
    gs += [families.dodecahedron(), families.cube(), families.subdivided_prism(6),
           families.pentagons_at_vertex(), families.pentagon_chain(3),
           families.pentagonal_dual(4), families.pentagonal_dual(5),
           families.collapsed_pentagonal_dual(4), families.collapsed_pentagonal_dual(5)]
    gs += [families.pentagonal_strip(k) for k in range(1, 8)]
    gs += [families.hex_grid(1, 2), families.hex_grid(2, 2), families.hex_grid(2, 3)]
    return gs


def random_suite(count: int = 50, seed: int = 2024, n_lo: int = 9, n_hi: int = 25) -> list[tuple[PlaneGraph, str]]:
    """``count`` random graphs with sizes in ``n_lo..n_hi``; densities cycle through 1, 0.6, 0.3."""
    rng = rng_for(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        s = int(rng.integers(0, 2**31))
        density = (1.0, 0.6, 0.3)[i % 3]
        out.append((random_tfp(n, s, density), f"random_tfp(n={n},seed={s},density={density:g})"))
    return out


def default_corpus(exhaustive_n: int = EXHAUSTIVE_MAX_N, random_count: int = 50) -> Corpus:
    c = Corpus("default", [], ("triangle-free", "connected"))
    for g in exhaustive(exhaustive_n):
        c.add(g, f"exhaustive(n_max={exhaustive_n})")
    for g in named_graphs():
        c.add(g, f"named:{g.name}")
    for g, tag in random_suite(random_count):
        c.add(g, tag)
    return c


NAMED_CORPORA = {
    "default": lambda: default_corpus(),
    "small": lambda: default_corpus(exhaustive_n=6, random_count=10),
    "named": lambda: Corpus("named", [Member(g, f"named:{g.name}") for g in named_graphs()]),
    "exhaustive": lambda: generate("exhaustive", n_max=EXHAUSTIVE_MAX_N),
}


# ------------------------------------------------------------ bound report

@dataclass
class BoundRow:
    name: str
    n: int
    max_degree: int
    chi_f: Optional[Fraction]
    bound_main: Fraction
    bound_deg4: Optional[Fraction]
    alpha: Optional[int]
    holds_main: Optional[bool]
    holds_deg4: Optional[bool]
    alpha_tight: bool = False
    chi_tight: bool = False
    error: Optional[str] = None


@dataclass
class BoundReport:
    rows: list[BoundRow]

    def all_hold(self) -> bool:
        return all(r.error is None and r.holds_main and r.holds_deg4 is not False for r in self.rows)

    def tightness_witnesses(self) -> list[BoundRow]:
        return [r for r in self.rows if r.alpha_tight and r.chi_tight]

    def _records(self):
        for r in self.rows:
            d = asdict(r)
            for k, v in d.items():
                if isinstance(v, Fraction):
                    d[k] = lp.frac_str(v)
            yield d

    def to_json(self) -> list[dict]:
        return list(self._records())

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = list(BoundRow.__dataclass_fields__)
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for d in self._records():
            w.writerow(d)
        return buf.getvalue()


def bound_row(g: PlaneGraph, bnb_budget: int = lp.DEFAULT_BNB_BUDGET) -> BoundRow:
    n = g.n
    main = proof.bound_main(n)
    deg4 = proof.bound_deg4(n) if g.max_degree <= 4 else None
    try:
        chi = lp.chi_f(g, bnb_budget=bnb_budget).value
        alpha = lp.independence_number(g)
    except TrifreeError as exc:
        return BoundRow(g.name, n, g.max_degree, None, main, deg4, None, None, None, error=str(exc))
    return BoundRow(
        g.name, n, g.max_degree, chi, main, deg4, alpha,
        holds_main=chi <= main,
        holds_deg4=None if deg4 is None else chi <= deg4,
        alpha_tight=3 * alpha == n + 1,
        chi_tight=chi == proof.bound_deg4(n),
    )


def verify_bounds(corpus: Iterable, bnb_budget: int = lp.DEFAULT_BNB_BUDGET) -> BoundReport:
    graphs = [m.graph if isinstance(m, Member) else m for m in corpus]
    return BoundReport([bound_row(g, bnb_budget) for g in graphs])


# -------------------------------------------------------------- lemma suite

@dataclass
class SuiteRow:
    prop: str
    graph: str
    passed: bool
    detail: str = ""


def _random_weights(rng: np.random.Generator, n: int) -> list[Fraction]:
    return [Fraction(int(a), int(b)) for a, b in zip(rng.integers(1, 50, n), rng.integers(1, 8, n))]


def _lemma_rows(g: PlaneGraph, rng: np.random.Generator, weight_samples: int) -> Iterable[SuiteRow]:
    name = g.name

    def row(prop, ok, detail=""):
        return SuiteRow(prop, name, bool(ok), detail)

    yield row("euler", euler_ok(g))
    colors = col.three_coloring(g)
    yield row("proper-3-colouring", col.is_proper(g, colors))

    ok = True
    for v in range(g.n):
        if g.degree(v) <= 4:
            c = col.mono_neighborhood_coloring(g, [v])
            f, psi = col.lift_mono_coloring(g, [v], c)
            ok &= col.verify_set_coloring(g, f, psi).tight
    yield row("mono-neighbourhood (deg<=4)", ok)

    res = lp.chi_f(g)
    yield row("chi_f certificate", res.check(g), lp.frac_str(res.value))
    yield row("chi_f <= 3", res.value <= 3)

    g0 = odd_girth(g)
    if g0 == 5:
        folded = 0
        for fw in g.faces:
            if fw.length != 5:
                red.fold_face(g, fw)
                folded += 1
        yield row("folding preserves odd girth", True, f"{folded} faces")

    safe = red.find_safe_faces(g)
    if g.min_degree >= 3 and all(f.length == 5 for f in g.faces):
        yield row("safe face exists", bool(safe), f"{len(safe)} found")
    for sf in safe[:5]:
        child, _ = red.collapse_safe_face(g, sf)
        yield row("collapse triangle-free", is_triangle_free(child) and child.n == g.n - 6)
        if g.n > 6:
            cc = proof.recursive_coloring(child, proof.b(g.n - 6))
            f, psi = proof.extend_safe_face(g, sf, cc)
            yield row("extend_safe_face verifies", col.verify_set_coloring(g, f, psi).valid)

    deg2 = [v for v in range(g.n) if g.degree(v) == 2]
    if deg2 and g.n >= 2:
        v = deg2[0]
        child, _ = red.delete_vertex(g, v)
        cc = proof.recursive_coloring(child, proof.b(g.n - 1))
        f, psi = proof.extend_deg2(g, v, cc)
        yield row("extend_deg2 verifies", col.verify_set_coloring(g, f, psi).valid)

    rep = proof.verify_no_minimal_counterexample(g)
    yield row("reduction rule applies", True, rep.rule)

    if g.is_connected():
        worst = None
        for _ in range(weight_samples):
            w = _random_weights(rng, g.n)
            cert = proof.proof_oracle(g, w)
            if not cert.validate(g, w):
                worst = cert.case
            if g.max_degree <= 4:
                hv = proof.heavy_vertex_oracle(g, w)
                if not (hv.weight >= hv.data["deg4_threshold"]):
                    worst = "HeavyVertex"
        yield row("proof oracle certificates", worst is None, worst or "")


def run_lemma_suite(corpus: Iterable, seed: int = 0, weight_samples: int = 5) -> list[SuiteRow]:
    """Evaluate the executable lemmas on every graph; failures become rows."""
    rng = rng_for(seed)
    rows: list[SuiteRow] = []
    for m in corpus:
        g = m.graph if isinstance(m, Member) else m
        try:
            rows.extend(_lemma_rows(g, rng, weight_samples))
        except (TrifreeError, AssertionError) as exc:
            rows.append(SuiteRow("exception", g.name, False, f"{type(exc).__name__}: {exc}"))
    return rows
