"""Command-line front end.

Exit codes: 0 success or true, 1 false predicate, 2 usage error,
3 domain error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .collection import (
    WSCollection,
    complete_to_maximal,
    enumerate_maximal,
    enumerate_maximal_symmetric,
)
from .config import load_budget
from .cyclic import CyclicSet, bar, handedness, is_admissible, is_weakly_separated
from .errors import BudgetError, DomainError
from .plabic import PlabicGraph, dual_graph, face_labels, trip_permutation, trips
from .positroid import (
    DecoratedPermutation,
    GrassmannNecklace,
    Positroid,
    necklace_from_perm,
    perm_from_necklace,
)
from .tiling import build_tiling, render_svg
from .verify import SUITES, format_json, format_text, run_suite

OK, FALSE, USAGE, DOMAIN, BUDGET = 0, 1, 2, 3, 4


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _flag(value: bool) -> int:
    print("true" if value else "false")
    return OK if value else FALSE


# -- handlers -------------------------------------------------------------------------

def cmd_ws_check(a, budget):
    I, J = CyclicSet.parse(a.I, a.m), CyclicSet.parse(a.J, a.m)
    return _flag(is_weakly_separated(I, J))


def cmd_bar(a, budget):
    print(bar(CyclicSet.parse(a.I, a.m)))
    return OK


def cmd_admissible(a, budget):
    I = CyclicSet.parse(a.I, a.m)
    ok = is_admissible(I)
    code = _flag(ok)
    if ok and a.verbose:
        print(handedness(I).value)
    return code


def cmd_necklace(a, budget):
    N = necklace_from_perm(DecoratedPermutation.from_json(_read_json(a.perm)))
    if a.json:
        _emit(N.to_json())
    else:
        for i, e in enumerate(N, 1):
            print(f"I_{i} = {e}")
    return OK


def cmd_perm(a, budget):
    f = perm_from_necklace(GrassmannNecklace.from_json(_read_json(a.necklace)))
    _emit(f.to_json())
    return OK


def cmd_members(a, budget):
    M = Positroid.from_perm(DecoratedPermutation.from_json(_read_json(a.perm)), budget)
    for I in M.members():
        print(I)
    return OK


def cmd_complete(a, budget):
    C = WSCollection.from_json(_read_json(a.collection), budget)
    _emit(complete_to_maximal(C, symmetric=a.symmetric).to_json())
    return OK


def cmd_enumerate(a, budget):
    M = Positroid.from_perm(DecoratedPermutation.from_json(_read_json(a.perm)), budget)
    found = enumerate_maximal_symmetric(M, budget) if a.symmetric else enumerate_maximal(M, budget)
    if a.json:
        _emit([C.to_json() for C in found])
    else:
        for C in found:
            print(C)
        print(f"# {len(found)} collections", file=sys.stderr)
    return OK


def cmd_tiling(a, budget):
    T = build_tiling(WSCollection.from_json(_read_json(a.collection), budget))
    Path(a.svg).write_bytes(render_svg(T))
    if a.json:
        Path(a.json).write_text(T.dumps() + "\n")
    if a.png:
        from .report import save_tiling
        save_tiling(T, Path(a.png))
    return OK


def cmd_dual(a, budget):
    G = dual_graph(build_tiling(WSCollection.from_json(_read_json(a.collection), budget)))
    Path(a.dot).write_text(G.to_dot())
    if a.json:
        obj = G.to_json()
        labels = face_labels(G).labels
        obj["faces"] = [{"face": f, "label": list(labels[f].members)} for f in sorted(labels)]
        Path(a.json).write_text(json.dumps(obj, indent=1) + "\n")
    return OK


def cmd_trips(a, budget):
    G = PlabicGraph.from_json(_read_json(a.graph))
    for t in trips(G):
        print(f"{t.start} -> {t.end}  ({len(t.steps)} steps)")
    f = trip_permutation(G)
    print(f"permutation {f}")
    if a.json:
        _emit(f.to_json())
    return OK


def cmd_verify(a, budget):
    reports = run_suite(a.suite, a.n, budget)
    sys.stdout.write(format_json(reports) + "\n" if a.format == "json" else format_text(reports))
    if a.out:
        from .report import write_report
        for p in write_report(reports, a.out, a.n):
            print(f"wrote {p}", file=sys.stderr)
    return OK if all(r.passed for r in reports) else FALSE


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML file with a [budget] table")
    common.add_argument("--max-members", type=int, help="cap on positroid size")
    common.add_argument("--max-collections", type=int, help="cap on enumerated collections")
    common.add_argument("--long", action="store_true", default=None, help="allow n = 4 verification runs")

    p = argparse.ArgumentParser(prog="symsep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("ws-check", cmd_ws_check, "are two sets weakly separated")
    sp.add_argument("I")
    sp.add_argument("J")
    sp.add_argument("--m", type=int, required=True)

    sp = add("bar", cmd_bar, "the bar image of a set")
    sp.add_argument("I")
    sp.add_argument("--m", type=int, required=True)

    sp = add("admissible", cmd_admissible, "is a set weakly separated from its bar image")
    sp.add_argument("I")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("-v", "--verbose", action="store_true", help="also print handedness")

    sp = add("necklace", cmd_necklace, "Grassmann necklace of a decorated permutation")
    sp.add_argument("--perm", required=True)
    sp.add_argument("--json", action="store_true")

    sp = add("perm", cmd_perm, "decorated permutation of a necklace")
    sp.add_argument("--necklace", required=True)

    sp = add("members", cmd_members, "list the positroid of a decorated permutation")
    sp.add_argument("--perm", required=True)

    sp = add("complete", cmd_complete, "greedily extend a collection to a maximal one")
    sp.add_argument("--collection", required=True)
    sp.add_argument("--symmetric", action="store_true")

    sp = add("enumerate", cmd_enumerate, "all maximal collections of a positroid")
    sp.add_argument("--perm", required=True)
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = add("tiling", cmd_tiling, "render the plabic tiling of a maximal collection")
    sp.add_argument("--collection", required=True)
    sp.add_argument("--svg", required=True)
    sp.add_argument("--json")
    sp.add_argument("--png")

    sp = add("dual", cmd_dual, "plabic graph dual to the tiling")
    sp.add_argument("--collection", required=True)
    sp.add_argument("--dot", required=True)
    sp.add_argument("--json")

    sp = add("trips", cmd_trips, "trips and trip permutation of a plabic graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--json", action="store_true")

    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", help="directory for TSV/JSON tables and PNG figures")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        budget = load_budget(a.config, max_members=a.max_members,
                             max_collections=a.max_collections, allow_long=a.long)
        return a.func(a, budget)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (DomainError, ValueError, KeyError, TypeError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return DOMAIN


if __name__ == "__main__":
    sys.exit(main())
