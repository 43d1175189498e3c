from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trifree_frac import families
from trifree_frac.coloring import SetColoring, constant_demand, verify_set_coloring
from trifree_frac.corpus import random_tfp
from trifree_frac.errors import (
    DemandMismatch,
    Disconnected,
    MalformedInput,
    NotTight,
    SizeMismatch,
    WrongDenominator,
)
from trifree_frac.graph import build_graph
from trifree_frac.lp import independence_number
from trifree_frac.proof import (
    EPSILON,
    b,
    bound_deg4,
    bound_main,
    class_partition_oracle,
    delta0,
    delta_deg4_nosep,
    extend_deg2,
    extend_safe_face,
    heavy_vertex_oracle,
    merge_cut_colorings,
    proof_oracle,
    recursive_coloring,
    slack_identities,
    verify_no_minimal_counterexample,
)
from trifree_frac.reductions import collapse_safe_face, delete_vertex, find_safe_faces, split_at_cut_vertex

from conftest import brute_mwis

# ------------------------------------------------------------ arithmetic


def test_bound_examples():
    assert b(5) == Fraction(16, 45)
    assert bound_main(5) == Fraction(45, 16)
    assert bound_deg4(5) == Fraction(5, 2) == Fraction(15, 6)
    assert delta0(4) == Fraction(1, 768)
    assert delta_deg4_nosep(4) == Fraction(3, 257)
    assert b(14) == Fraction(43, 126) and 1 - 2 * b(14) == Fraction(40, 126)


def test_bound_identities():
    for n in range(1, 1001):
        assert bound_main(n) * b(n) == 1
        assert bound_main(n) == 3 - 1 / (n + Fraction(1, 3))
        assert b(n + 1) < b(n)


def test_delta_formula():
    for D in range(4, 9):
        d0 = delta0(D)
        assert delta_deg4_nosep(D) == 9 * d0 / (3 * d0 + 1) == Fraction(3, 4**D + 1)
    with pytest.raises(MalformedInput):
        delta_deg4_nosep(3)


def test_slack_identities():
    assert EPSILON == Fraction(1, 9)
    assert slack_identities() == (0, Fraction(2, 9))


# -------------------------------------------------------- heavy vertex

def test_heavy_vertex_c5_uniform(c5):
    cert = heavy_vertex_oracle(c5, [1] * 5)
    assert cert.weight == 2 and cert.validate(c5, [1] * 5)


def test_heavy_vertex_c5_skewed(c5):
    w = [10, 1, 1, 1, 1]
    cert = heavy_vertex_oracle(c5, w)
    assert 0 in cert.X and cert.weight >= 8
    assert cert.weight <= brute_mwis(c5, w) == 11


def test_heavy_vertex_k2():
    g = families.path(2)
    cert = heavy_vertex_oracle(g, [1, 1])
    assert cert.weight == 1 >= Fraction(3, 3)


def test_heavy_vertex_degree_guard():
    with pytest.raises(MalformedInput):
        heavy_vertex_oracle(families.star(5), [1] * 6)
    with pytest.raises(MalformedInput):
        heavy_vertex_oracle(families.cycle(5), [1, 1, 0, 1, 1])


@settings(max_examples=40, deadline=None)
@given(st.builds(random_tfp, st.integers(2, 20), st.integers(0, 10**6)), st.data())
def test_heavy_vertex_inequality(g, data):
    w = [Fraction(data.draw(st.integers(1, 50)), data.draw(st.integers(1, 7))) for _ in range(g.n)]
    low = [v for v in range(g.n) if g.degree(v) <= 4]
    v = data.draw(st.sampled_from(low))
    cert = heavy_vertex_oracle(g, w, vertex=v)
    assert cert.weight >= (sum(w) + w[v]) / 3
    assert cert.validate(g, w)


# ------------------------------------------------------ class partition

def test_class_partition_dodecahedron(dodeca):
    cert = class_partition_oracle(dodeca, [1] * 20, D=4)
    C = cert.data["class"]
    assert cert.weight >= Fraction(20 + len(C), 3)
    assert cert.weight >= (Fraction(1, 3) + delta0(4)) * 20
    assert cert.validate(dodeca, [1] * 20)


def test_class_partition_c5_singletons(c5):
    cert = class_partition_oracle(c5, [1] * 5, D=4)
    assert cert.data["num_classes"] == 5 and len(cert.data["class"]) == 1
    assert cert.weight == 2


def test_class_partition_cube():
    g = families.cube()
    cert = class_partition_oracle(g, [1] * 8, D=4)
    assert 3 <= cert.weight <= independence_number(g) == 4


def test_class_partition_guards():
    with pytest.raises(MalformedInput):
        class_partition_oracle(families.star(5), [1] * 6)
    k24 = build_graph(6, [(a, b) for a in (0, 2) for b in (1, 3, 4, 5)])
    with pytest.raises(MalformedInput):
        class_partition_oracle(k24, [1] * 6)
    with pytest.raises(MalformedInput):
        class_partition_oracle(families.cycle(5), [1] * 5, D=3)


# ---------------------------------------------------------- extensions

def test_extend_deg2_c6():
    g = families.cycle(6)
    child, _ = delete_vertex(g, 0)
    cc = recursive_coloring(child, b(5))
    assert cc.N == 45
    f, psi = extend_deg2(g, 0, cc)
    assert f[0] == Fraction(13, 45) and len(psi.sets[0]) == 13
    assert verify_set_coloring(g, f, psi).valid


def test_extend_deg2_path3():
    g = families.path(3)
    child, _ = delete_vertex(g, 1)
    cc = recursive_coloring(child, b(2))
    assert b(2) == Fraction(7, 18) and cc.N % 18 == 0
    f, psi = extend_deg2(g, 1, cc)
    assert f[1] == Fraction(4, 18) and verify_set_coloring(g, f, psi).valid


def test_extend_deg2_rejects_bad_child():
    g = families.cycle(6)
    child, _ = delete_vertex(g, 0)
    cc = recursive_coloring(child, b(5))
    loose = SetColoring(cc.N, (cc.sets[0] | {c for c in range(1, 46) if c not in cc.sets[0]
                                             and c not in cc.sets[1]},) + cc.sets[1:])
    with pytest.raises(NotTight):
        extend_deg2(g, 0, loose)
    with pytest.raises(WrongDenominator):
        extend_deg2(g, 0, SetColoring.of(2, [{1}, {2}, {1}, {2}, {1}]))


def test_extend_safe_face_dodecahedron(dodeca):
    sf = find_safe_faces(dodeca)[0]
    child, _ = collapse_safe_face(dodeca, sf)
    cc = recursive_coloring(child, b(14))
    details = {}
    f, psi = extend_safe_face(dodeca, sf, cc, details)
    assert verify_set_coloring(dodeca, f, psi).valid
    assert all(f[u] == Fraction(40, 126) for u in sf.inner)
    assert len(details["M3"] | details["M4"]) == cc.N * (1 - b(14))


def test_extend_safe_face_gadget(gadget11):
    sf = find_safe_faces(gadget11)[0]
    child, _ = collapse_safe_face(gadget11, sf)
    cc = recursive_coloring(child, b(5))
    f, psi = extend_safe_face(gadget11, sf, cc)
    assert verify_set_coloring(gadget11, f, psi).valid


def test_extend_safe_face_needs_tight_child(dodeca):
    sf = find_safe_faces(dodeca)[0]
    with pytest.raises(WrongDenominator):
        extend_safe_face(dodeca, sf, SetColoring.of(1, [{1}] * 14))


def test_merge_pentagons():
    g = families.pentagons_at_vertex()
    g1, g2, _, _ = split_at_cut_vertex(g, 0)
    x = Fraction(2, 5)
    c1, c2 = recursive_coloring(g1, x), recursive_coloring(g2, x)
    assert c1.N == c2.N == 5
    psi = merge_cut_colorings(g, 0, c1, c2, x)
    assert verify_set_coloring(g, constant_demand(9, x), psi).tight


def test_merge_two_edges():
    g = families.path(3)
    psi = merge_cut_colorings(g, 1, SetColoring.of(2, [{1}, {2}]), SetColoring.of(2, [{1}, {2}]),
                              Fraction(1, 2))
    assert verify_set_coloring(g, constant_demand(3, Fraction(1, 2)), psi).valid


def test_merge_errors():
    g = families.path(3)
    with pytest.raises(DemandMismatch):
        merge_cut_colorings(g, 1, SetColoring.of(2, [{1}, {2}]), SetColoring.of(4, [{1, 2}, {3, 4}]))
    with pytest.raises(SizeMismatch):
        merge_cut_colorings(g, 1, SetColoring.of(2, [{1}, {2}]), SetColoring.of(2, [{1, 2}, {}]))
    with pytest.raises(DemandMismatch):
        # child indices follow split_at_cut_vertex: v is vertex 0 of the second side
        merge_cut_colorings(g, 1, SetColoring.of(2, [{1}, {2}]), SetColoring.of(2, [{1}, {}]),
                            Fraction(1, 2))


# ---------------------------------------------------- recursive colouring

def test_recursive_coloring_examples(c5):
    psi = recursive_coloring(c5, b(5))
    assert psi.N == 45 and verify_set_coloring(c5, constant_demand(5, b(5)), psi).tight
    p5 = families.path(5)
    assert verify_set_coloring(p5, constant_demand(5, b(5)), recursive_coloring(p5, b(5))).tight
    k2 = recursive_coloring(families.path(2), Fraction(1, 2))
    assert k2.N == 2 and sorted(map(sorted, k2.sets)) == [[1], [2]]


def test_recursive_coloring_multiple(c5):
    psi = recursive_coloring(c5, b(5), multiple=4)
    assert psi.N % 180 == 0 and verify_set_coloring(c5, constant_demand(5, b(5)), psi).tight


def test_recursive_coloring_is_thread_safe():
    gs = [families.cycle(k) for k in range(4, 12)] * 4
    with ThreadPoolExecutor(8) as ex:
        got = list(ex.map(lambda g: recursive_coloring(g, b(g.n)), gs))
    for g, psi in zip(gs, got):
        assert verify_set_coloring(g, constant_demand(g.n, b(g.n)), psi).tight


# ---------------------------------------------------------------- oracle

def test_oracle_c5_uniform(c5):
    cert = proof_oracle(c5, [1] * 5)
    assert cert.weight == 2 and cert.threshold == Fraction(16, 9)
    assert cert.case == "BaseLP"


def test_oracle_dodecahedron_uniform(dodeca):
    cert = proof_oracle(dodeca, [1] * 20)
    assert cert.threshold == Fraction(61, 9)
    assert Fraction(61, 9) <= cert.weight <= 8
    assert cert.validate(dodeca, [1] * 20)


def test_oracle_pentagons_at_vertex_random_weights():
    g = families.pentagons_at_vertex()
    for seed in range(100):
        rng = np.random.default_rng(seed)
        w = [Fraction(int(a), int(q)) for a, q in zip(rng.integers(1, 100, 9), rng.integers(1, 9, 9))]
        cert = proof_oracle(g, w)
        assert cert.validate(g, w)
        assert cert.weight <= brute_mwis(g, w)


def _skewed(g):
    return [Fraction(1000) if g.degree(v) >= 4 else Fraction(1) for v in range(g.n)]


@pytest.mark.parametrize("g, w, case", [
    (families.cycle(5), None, "BaseLP"),
    (families.pentagon_chain(3), None, "CutSplit"),
    (families.cycle(12), None, "Fold"),
    (families.dodecahedron(), None, "HeavyVertex"),
    (families.collapsed_pentagonal_dual(4), "skew", "Deg2Extend"),
    (families.pentagonal_dual(4), "skew", "SafeFaceExtend"),
], ids=lambda x: x if isinstance(x, str) else None)
def test_oracle_reaches_every_case(g, w, case):
    w = _skewed(g) if w == "skew" else [1] * g.n
    cert = proof_oracle(g, w)
    assert cert.case == case and cert.validate(g, w)
    assert cert.to_json()["case"] == case


def test_oracle_preconditions():
    with pytest.raises(Disconnected):
        proof_oracle(families.empty(2), [1, 1])
    with pytest.raises(MalformedInput):
        proof_oracle(families.cycle(3), [1, 1, 1])


def test_reduction_report_examples(c5, dodeca):
    assert verify_no_minimal_counterexample(c5).rule == "Deg2"
    assert verify_no_minimal_counterexample(dodeca).rule == "SafeFace"
    assert verify_no_minimal_counterexample(families.cycle(4)).rule == "Fold"
    assert verify_no_minimal_counterexample(families.pentagons_at_vertex()).rule == "CutVertex"
    rep = verify_no_minimal_counterexample(dodeca)
    assert rep.to_json()["detail"]["safe_faces"] > 0
