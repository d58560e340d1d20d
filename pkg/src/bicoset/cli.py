"""Command line front end.

Exit codes: 0 success, 1 property failure, 2 validation error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from .constructions import build_bicoset_labeled
from .digraph import to_dot, to_json_dict, twin_partition
from .errors import BicosetError
from .groups import subgroup_generated
from .instance import instance_to_dict, load_instance
from .perm import fmt_perm
from .recognition import HypothesisWarning, natural_aut_group, recognize
from .search import DEFAULT_AUT_CAP, brute_force_aut
from .verify import random_instances, run_suite


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, payload: dict) -> None:
    text = _dump(payload)
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    return load_instance(args.file, close=True if args.close else None)


def construct_payload(inst) -> tuple:
    lb = build_bicoset_labeled(inst)
    return lb, to_json_dict(lb.digraph, lb.parts)


def cmd_construct(args) -> int:
    inst = _load(args)
    lb, payload = construct_payload(inst)
    if args.dot:
        Path(args.dot).write_text(to_dot(lb.digraph, lb.parts, twin_partition(lb.digraph), name="bicoset"))
    _emit(args, payload)
    return 0


def _natural_summary(decomp, cap) -> dict:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        nat = natural_aut_group(decomp, cap=cap)
    return nat, {
        "order_formula": nat.order_formula,
        "complete": nat.complete,
        "aut_quotient_order": nat.aut_quotient_order,
        "compatible_quotient_order": nat.compatible_quotient_order,
        "hypotheses": nat.hypotheses,
        "verified": nat.verified,
        "warnings": [str(w.message) for w in caught],
    }


def recognize_report(inst, K=None, cap: int = DEFAULT_AUT_CAP) -> dict:
    decomp = recognize(inst, *(K or (None, None)))
    _, natural = _natural_summary(decomp, cap)
    q = decomp.quotient
    return {
        "instance": instance_to_dict(inst),
        "K0": sorted(decomp.K[0].elements),
        "K1": sorted(decomp.K[1].elements),
        "cell_sizes": list(decomp.cell_sizes),
        "wreath": decomp.is_wreath,
        "m": decomp.cell_sizes[0] if decomp.is_wreath else None,
        "trivial_join": decomp.trivial_join,
        "maximal": decomp.maximal,
        "irreducible": decomp.irreducible,
        "quotient": to_json_dict(q.digraph, q.parts),
        "cells": [list(c) for c in decomp.cells.cells],
        "cell_map": list(decomp.cells.cell_of),
        "natural": natural,
        "verification": {
            "exact_reconstruction": True,
            "twin_partition_is_join_partition": twin_partition(decomp.digraph) == decomp.cells,
        },
    }


def cmd_recognize(args) -> int:
    inst = _load(args)
    K = None
    if args.k0 is not None or args.k1 is not None:
        K = (subgroup_generated(inst.G, args.k0 or []), subgroup_generated(inst.G, args.k1 or []))
    _emit(args, recognize_report(inst, K, cap=args.cap))
    return 0


def aut_report(inst, oracle: bool, cap: int = DEFAULT_AUT_CAP) -> dict:
    decomp = recognize(inst)
    nat, natural = _natural_summary(decomp, cap)
    report = {
        "instance": instance_to_dict(inst),
        "natural_order": nat.order_formula,
        "natural_generators": [fmt_perm(g) for g in nat.total.generators],
        "complete": nat.complete,
        "hypotheses": natural["hypotheses"],
        "warnings": natural["warnings"],
    }
    if oracle:
        aut = brute_force_aut(decomp.digraph, cap=cap)
        report["oracle_order"] = aut.order()
        report["oracle_generators"] = [fmt_perm(g) for g in aut.generators]
        report["agree"] = aut.order() == nat.order_formula
    return report


def cmd_aut(args) -> int:
    inst = _load(args)
    report = aut_report(inst, args.oracle, cap=args.cap)
    _emit(args, report)
    return 1 if args.oracle and not report["agree"] else 0


def cmd_verify(args) -> int:
    if args.random is not None:
        seed, count = args.random
        instances = random_instances(seed, count)
        source = {"random": {"seed": seed, "count": count}}
    elif args.file:
        instances = [_load(args)]
        seed = 0
        source = {"file": str(args.file)}
    else:
        raise BicosetError("verify needs an instance file or --random SEED COUNT")
    outcomes = run_suite(instances, seed=seed, inject_fault=args.inject_fault, cap=args.cap)
    ok = all(o.ok for o in outcomes)
    _emit(args, {"source": source, "ok": ok, "checks": [o.as_dict() for o in outcomes]})
    for o in outcomes:
        status = "PASS" if o.ok else "FAIL"
        print(f"{status} {o.name} ({o.lemma}): {o.passed} passed, {o.failed} failed, {o.skipped} skipped",
              file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicoset", description="Bicoset digraphs: construction, join recognition, automorphisms.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file_required=True):
        if file_required:
            p.add_argument("file", help="instance JSON file")
        else:
            p.add_argument("file", nargs="?", help="instance JSON file")
        p.add_argument("--close", action="store_true", help="double-coset-close S_0, S_1 before building")
        p.add_argument("--json", metavar="PATH", help="write the JSON output here instead of stdout")
        p.add_argument("--cap", type=int, default=DEFAULT_AUT_CAP, help="vertex cap for brute-force searches")

    p = sub.add_parser("construct", help="build the bicoset digraph")
    common(p)
    p.add_argument("--dot", metavar="PATH", help="also write Graphviz DOT")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("recognize", help="X-join decomposition report")
    common(p)
    p.add_argument("--k0", type=int, nargs="*", help="generators of K_0 (default: maximal)")
    p.add_argument("--k1", type=int, nargs="*", help="generators of K_1 (default: maximal)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("aut", help="natural automorphism group")
    common(p)
    p.add_argument("--oracle", action="store_true", help="compare with brute-force Aut")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("verify", help="run the lemma property suite")
    common(p, file_required=False)
    p.add_argument("--random", type=int, nargs=2, metavar=("SEED", "COUNT"))
    p.add_argument("--inject-fault", action="store_true", help="corrupt one arc of the first instance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BicosetError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
