"""Command-line front end.

Every rational is printed as ``p/q``.  ``--json`` switches the human
summary to a JSON document on stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus as corp
from . import lp, proof
from . import reductions as red
from .errors import TrifreeError
from .graph import PlaneGraph, load_graph, save_graph

log = logging.getLogger("trifree_frac")


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        print(text)


def _load_weights(path: str, n: int) -> list[Fraction]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data["weights"]
    if len(data) != n:
        raise SystemExit(f"weights file has {len(data)} entries, graph has {n} vertices")
    return [lp.parse_frac(x) for x in data]


def _face_arg(g: PlaneGraph, i: int):
    if not 0 <= i < len(g.faces):
        raise SystemExit(f"face index {i} out of range (graph has {len(g.faces)} faces)")
    return g.faces[i]


def _write_child(args, child: PlaneGraph) -> None:
    if args.out:
        save_graph(child, args.out)


# ------------------------------------------------------------- commands

def cmd_chi_f(args) -> int:
    g = load_graph(args.file)
    res = lp.chi_f(g, bnb_budget=args.budget)
    assert res.check(g)
    lines = [f"chi_f {lp.frac_str(res.value)}", "primal"]
    lines += [f"  {lp.frac_str(l)} {sorted(S)}" for S, l in res.primal]
    lines.append("dual " + " ".join(lp.frac_str(y) for y in res.dual))
    _emit(args, res.to_json(), "\n".join(lines))
    return 0


def _corpus_from_args(args) -> corp.Corpus:
    if args.file:
        c = corp.Corpus("files", [], ("triangle-free",))
        for f in args.file:
            c.add(load_graph(f), f"file:{f}")
        return c
    if Path(args.corpus).is_dir():
        return corp.Corpus.load(args.corpus)
    if args.corpus not in corp.NAMED_CORPORA:
        raise SystemExit(f"unknown corpus {args.corpus!r}; choose from {sorted(corp.NAMED_CORPORA)} or a directory")
    return corp.NAMED_CORPORA[args.corpus]()


def cmd_verify_bound(args) -> int:
    report = corp.verify_bounds(_corpus_from_args(args), bnb_budget=args.budget)
    if args.json:
        print(json.dumps(report.to_json(), indent=1))
    else:
        sys.stdout.write(report.to_csv())
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return 0 if report.all_hold() else 1


def cmd_fold(args) -> int:
    g = load_graph(args.file)
    step = red.fold_step(g, args.face)
    child = step.children[0]
    _write_child(args, child)
    _emit(args, step.to_json(),
          f"folded face {args.face} at index {step.params['index']}: n {g.n} -> {child.n}")
    return 0


def cmd_safe_faces(args) -> int:
    g = load_graph(args.file)
    sfs = red.find_safe_faces(g)
    text = "\n".join(f"{i}: face {list(s.face)} x {list(s.x)}" for i, s in enumerate(sfs)) or "no safe faces"
    _emit(args, [s.to_json() for s in sfs], text)
    return 0


def cmd_collapse(args) -> int:
    g = load_graph(args.file)
    sfs = red.find_safe_faces(g)
    if not 0 <= args.face < len(sfs):
        raise SystemExit(f"safe face index {args.face} out of range ({len(sfs)} safe faces)")
    step = red.collapse_step(g, sfs[args.face])
    child = step.children[0]
    _write_child(args, child)
    _emit(args, step.to_json(), f"collapsed safe face {list(sfs[args.face].face)}: n {g.n} -> {child.n}")
    return 0


def cmd_oracle(args) -> int:
    g = load_graph(args.file)
    w = _load_weights(args.weights, g.n)
    cert = proof.proof_oracle(g, w)
    ok = cert.validate(g, w)
    trace = {"graph": g.to_json(), "weights": [lp.frac_str(x) for x in w], "certificate": cert.to_json()}
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace, indent=1))
    _emit(args, cert.to_json(),
          f"case {cert.case}\nX {sorted(cert.X)}\nw(X) {lp.frac_str(cert.weight)} >= "
          f"{lp.frac_str(cert.threshold)}: {ok}")
    return 0 if ok else 1


def cmd_replay(args) -> int:
    """Re-run a stored oracle trace and compare the outcome."""
    from .graph import graph_from_json

    trace = json.loads(Path(args.trace).read_text())
    g = graph_from_json(trace["graph"])
    w = [lp.parse_frac(x) for x in trace["weights"]]
    old = trace["certificate"]
    cert = proof.proof_oracle(g, w)
    same = sorted(cert.X) == old["X"] and cert.case == old["case"]
    ok = same and cert.validate(g, w)
    _emit(args, {"reproduced": same, "valid": ok, "certificate": cert.to_json()},
          f"replayed case {cert.case}: {'identical' if same else 'DIFFERENT'}, valid={ok}")
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    g = load_graph(args.file)
    rep = proof.verify_no_minimal_counterexample(g)
    _emit(args, rep.to_json(), f"rule {rep.rule} (applicable: {', '.join(rep.applicable)})")
    return 0


def _family_params(items: list[str]) -> dict:
    out = {}
    for it in items:
        k, _, v = it.partition("=")
        if not _:
            raise SystemExit(f"parameter {it!r} must look like key=value")
        out[k] = v
    return out


def cmd_corpus_generate(args) -> int:
    params = _family_params(args.param)
    if args.family == "random_tfp":
        params.setdefault("seed", args.seed)
    c = corp.generate(args.family, **params)
    c.save(args.out)
    _emit(args, {"family": args.family, "count": len(c), "out": args.out},
          f"wrote {len(c)} graphs to {args.out}")
    return 0


def cmd_lemma_suite(args) -> int:
    c = corp.Corpus.load(args.corpus)
    rows = corp.run_lemma_suite(c, seed=args.seed, weight_samples=args.weights)
    failed = [r for r in rows if not r.passed]
    if args.json:
        print(json.dumps([r.__dict__ for r in rows], indent=1))
    else:
        for r in rows:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.prop} [{r.graph}] {r.detail}".rstrip())
        print(f"{len(rows) - len(failed)}/{len(rows)} rows passed")
    return 1 if failed else 0


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--budget", type=int, default=lp.DEFAULT_BNB_BUDGET,
                        help="branch-and-bound node limit per independent-set search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="trifree-frac", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chi-f", parents=[common], help="exact fractional chromatic number")
    s.add_argument("file")
    s.set_defaults(func=cmd_chi_f)

    s = sub.add_parser("verify-bound", parents=[common], help="compare chi_f with the bounds")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--corpus", default="default", help="corpus name or directory")
    grp.add_argument("--file", action="append", help="graph file (repeatable)")
    s.add_argument("--csv", help="also write the CSV report here")
    s.set_defaults(func=cmd_verify_bound)

    s = sub.add_parser("fold", parents=[common], help="fold a face")
    s.add_argument("file")
    s.add_argument("--face", type=int, required=True, help="index into the face list")
    s.add_argument("--out", help="write the folded graph here")
    s.set_defaults(func=cmd_fold)

    s = sub.add_parser("safe-faces", parents=[common], help="list safe pentagons")
    s.add_argument("file")
    s.set_defaults(func=cmd_safe_faces)

    s = sub.add_parser("collapse", parents=[common], help="collapse a safe face")
    s.add_argument("file")
    s.add_argument("--face", type=int, required=True, help="index into the safe-face list")
    s.add_argument("--out", help="write the collapsed graph here")
    s.set_defaults(func=cmd_collapse)

    s = sub.add_parser("oracle", parents=[common], help="certified heavy independent set")
    s.add_argument("file")
    s.add_argument("--weights", required=True, help="JSON list of positive rationals")
    s.add_argument("--trace", help="write a replayable trace here")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("replay", parents=[common], help="re-run an oracle trace")
    s.add_argument("trace")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("reduce", parents=[common], help="which reduction rule applies")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("corpus", help="corpus management")
    csub = s.add_subparsers(dest="corpus_command", required=True)
    g = csub.add_parser("generate", parents=[common], help="generate a graph family")
    g.add_argument("--family", required=True,
                   choices=["cycle", "dodecahedron", "pentagonal_strip", "hex_grid", "random_tfp", "exhaustive"])
    g.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="family parameter, e.g. k=5, n=20, count=10, n_max=6")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_corpus_generate)

    s = sub.add_parser("lemma-suite", parents=[common], help="run the property suite on a corpus")
    s.add_argument("--corpus", required=True, help="corpus directory")
    s.add_argument("--weights", type=int, default=5, help="random weightings per graph")
    s.set_defaults(func=cmd_lemma_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TrifreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
