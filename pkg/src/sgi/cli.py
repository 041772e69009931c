"""``sgi`` command line.

Exit codes: 0 success, 1 domain error (bad input, failed check), 2 usage error.
Graph sources are ``.sg`` files, ``-`` for stdin, or ``family:NAME[:n]``
(e.g. ``family:Mobius:5``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import catalog as cat
from . import epsilon as ep
from . import families as fam
from . import invariants as inv
from . import moves as mv
from .diagram import load_diagram, parse_diagram, serialize_diagram
from .graph import GraphError, ParseError, parse_graph
from .linking import dump_matrix, linking_module, rank_formula


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_graph(src: str):
    if src.startswith("family:"):
        parts = src.split(":")[1:]
        try:
            params = [int(p) for p in parts[1:]]
        except ValueError:
            raise CliError(f"bad family parameters in {src!r}") from None
        return fam.build_family(parts[0], *params)
    text = _read(src)
    # a diagram file is accepted too; its graph is used
    if any(line.split()[:1] in (["crossing"], ["use"]) for line in text.splitlines()):
        base = None if src == "-" else os.path.dirname(os.path.abspath(src))
        return parse_diagram(text, base).graph
    return parse_graph(text)


def resolve_epsilon(source: str, g):
    """A builtin name or an ``.eps.txt`` path."""
    if os.path.exists(source):
        return ep.parse_epsilon(_read(source), g)
    return ep.builtin_for_graph(source, g)


def _emit(args, text: str, data=None):
    if args.json and data is not None:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


# -- verbs ---------------------------------------------------------------------

def cmd_module(args) -> int:
    g = load_graph(args.graph)
    m = linking_module(g)
    tors = " ".join(map(str, m.torsion)) if m.torsion else "none"
    data = {"graph": g.name, "pairs": len(g.pairs), "generators": sum(1 for _ in m.generators),
            "rank": m.rank, "torsion": list(m.torsion)}
    if args.formula:
        data["rank_formula"] = rank_formula(g)
    text = f"rank {m.rank}, torsion {tors}"
    if args.formula:
        text += f"\nrank formula {data['rank_formula']}"
    _emit(args, text, data)
    if args.dump_matrix:
        sys.stdout.write(dump_matrix(g))
    return 0


def cmd_invariant(args) -> int:
    d = load_diagram(args.diagram)
    t = resolve_epsilon(args.epsilon, d.graph)
    print(json.dumps(inv.report(d, t, with_certificate=not args.no_certificate), indent=2, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    if args.graph:
        g = load_graph(args.graph)
        t = resolve_epsilon(args.epsilon, g)
    else:
        name, *params = args.epsilon.split(":")
        t = ep.builtin_epsilon(name, *[int(p) for p in params])
    res = ep.verify_homomorphism(t)
    data = {"epsilon": t.name, "graph": t.graph.name, "homomorphism": res.ok,
            "witness": None if res.ok else {"edge": res.witness[0], "vertex": res.witness[1], "sum": res.value}}
    if res.ok:
        _emit(args, f"pass: {t.name} is a homomorphism on {t.graph.name}", data)
        return 0
    _emit(args, f"fail: delta(V[{res.witness[0]},{res.witness[1]}]) evaluates to {res.value}", data)
    return 1


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    pins = []
    for a, b, v in args.pin or []:
        try:
            pins.append(((a, b), int(v)))
        except ValueError:
            raise CliError(f"pin value {v!r} is not an integer") from None
    for (a, b), _ in pins:
        if a not in g.index or b not in g.index:
            raise GraphError(f"unknown edge in pin ({a}, {b})")
    sol = ep.solve_epsilon(g, pins, "solved")
    if not sol.consistent:
        _emit(args, "no integer solution: pins are inconsistent", {"consistent": False})
        return 1
    data = {"consistent": True, "solution_rank": sol.rank,
            "particular": {f"{a} {b}": v for (a, b), v in sol.particular.items() if v}}
    text = f"# solution space rank {sol.rank}\n" + ep.format_epsilon(sol.particular).rstrip("\n")
    _emit(args, text, data)
    return 0


def cmd_bound(args) -> int:
    d = load_diagram(args.diagram)
    t = resolve_epsilon(args.epsilon, d.graph)
    b = inv.crossing_lower_bound(d, t)
    v = inv.reduced_invariant(d, t)
    _emit(args, f"crossing number >= {b} (value {v}, m_eps {t.m_eps}, diagram has {len(d)} crossings)",
          {"bound": b, "reduced_value": v, "m_epsilon": t.m_eps, "crossings": len(d)})
    return 0


def cmd_fuzz(args) -> int:
    d = load_diagram(args.diagram)
    t = resolve_epsilon(args.epsilon, d.graph)
    before = inv.reduced_invariant(d, t)
    wu0 = inv.wu_invariant(d).coordinates
    out, log = mv.random_walk(d, args.steps, args.seed)
    after = inv.reduced_invariant(out, t)
    wu1 = inv.wu_invariant(out).coordinates
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(mv.format_log(log))
    data = {"steps": args.steps, "seed": args.seed, "moves_applied": len(log), "before": before,
            "after": after, "wu_constant": wu0 == wu1, "final_crossings": len(out)}
    if before == after and wu0 == wu1:
        _emit(args, f"invariant constant: {before}", data)
        return 0
    _emit(args, f"invariant changed: {before} -> {after}", data)
    return 1


def cmd_replay(args) -> int:
    d = load_diagram(args.diagram)
    moves = mv.parse_log(_read(args.log))
    out = mv.replay(d, moves)
    text = serialize_diagram(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_catalog(args) -> int:
    if args.list or not args.name:
        for e in cat.CATALOG.values():
            print(f"{e.name}({', '.join(e.params)})")
        return 0
    d = cat.build(args.name, *args.params)
    text = serialize_diagram(d)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_decompose(args) -> int:
    which = args.example.lower()
    if which == "k7":
        terms, groups = ep.k7_family_terms()
        target = ep.builtin_epsilon("K7")
    elif which == "k6":
        terms = ep.k6_k5_terms()
        groups = ["K5"] * len(terms)
        target = ep.builtin_epsilon(args.epsilon or "K6-sec5")
    else:
        raise CliError(f"unknown decomposition example {args.example!r} (k6 or k7)")
    if args.ungrouped:
        groups = None
    res = ep.decompose_epsilon(target, terms, groups)
    if not res.decomposable:
        _emit(args, f"{target.name}: not decomposable over the given subgraphs", {"decomposable": False})
        return 1
    if groups is None:
        coeffs = [(t.embedding.name, t.coefficient) for t in res.terms]
    else:
        coeffs = list(res.groups)
    text = f"m = {res.m}\n" + "\n".join(f"{n} {c}" for n, c in coeffs)
    _emit(args, text, {"epsilon": target.name, "m": res.m, "coefficients": dict(coeffs)})
    return 0


def cmd_certify(args) -> int:
    d = load_diagram(args.diagram)
    c = inv.chirality_certificate(d, args.context)
    data = {"verdict": c.verdict, "evidence": list(c.evidence), "limitation": c.limitation or None}
    text = "\n".join([f"verdict: {c.verdict}"] + [f"  {e}" for e in c.evidence] +
                     ([f"note: {c.limitation}"] if c.limitation else []))
    _emit(args, text, data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgi", description="Wu and generalised Simon invariants of spatial graph diagrams")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("module", help="rank and torsion of the linking module")
    s.add_argument("graph")
    s.add_argument("--dump-matrix", action="store_true")
    s.add_argument("--formula", action="store_true", help="also evaluate the 3-connected rank formula")
    s.set_defaults(fn=cmd_module)

    s = sub.add_parser("invariant", help="JSON report for a diagram")
    s.add_argument("diagram")
    s.add_argument("--epsilon", required=True)
    s.add_argument("--no-certificate", action="store_true")
    s.set_defaults(fn=cmd_invariant)

    s = sub.add_parser("verify-epsilon", help="check that a table is a homomorphism")
    s.add_argument("--epsilon", required=True, help="builtin name (Mobius:5 style) or .eps.txt file")
    s.add_argument("--graph")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("solve-epsilon", help="solve for tables from pinned values")
    s.add_argument("graph")
    s.add_argument("--pin", nargs=3, action="append", metavar=("EDGE", "EDGE", "VALUE"))
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("bound", help="crossing number lower bound")
    s.add_argument("diagram")
    s.add_argument("--epsilon", required=True)
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("fuzz", help="seeded random Reidemeister walk")
    s.add_argument("diagram")
    s.add_argument("--epsilon", required=True)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--log", help="write the move log here")
    s.set_defaults(fn=cmd_fuzz)

    s = sub.add_parser("replay", help="apply a move log to a diagram")
    s.add_argument("diagram")
    s.add_argument("log")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("catalog", help="write a catalog diagram")
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--out")
    s.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("decompose", help="subgraph decomposition of a table (k6 or k7)")
    s.add_argument("example")
    s.add_argument("--epsilon", help="K6 table to decompose (default K6-sec5)")
    s.add_argument("--ungrouped", action="store_true", help="one coefficient per subgraph")
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("certify", help="chirality certificate")
    s.add_argument("diagram")
    s.add_argument("--context", help="K7, Mobius, Heawood or Mobius-even (default: from the graph)")
    s.set_defaults(fn=cmd_certify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 0) is not None and getattr(args, "steps", 0) < 0:
        parser.error("--steps must be non-negative")
    try:
        return args.fn(args)
    except (GraphError, ParseError, CliError) as exc:
        print(f"sgi: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"sgi: error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
