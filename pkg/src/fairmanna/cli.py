"""``fairmanna`` command line.

Exit codes: 0 success, 1 the checked property (or search) came out negative,
2 the input could not be processed.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io as _io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from fairmanna import paperlab
from fairmanna.axioms import Property, check
from fairmanna.core import (
    Allocation,
    Instance,
    classify_item_additive,
    detect_problem_class,
    item_class_in_allocation,
    normalise,
)
from fairmanna.errors import FairMannaError
from fairmanna.io import (
    allocation_from_json,
    dumps,
    instance_to_json,
    load_instance,
    rational_json,
)
from fairmanna.reductions import X3CInstance, reduce_x3c_jf1, reduce_x3c_jf1po_binary
from fairmanna.solvers import (
    assign_one_each,
    exists_allocation,
    jf1zero_rounds,
    leximin_pp_search,
    leximin_search,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _instance(args) -> Instance:
    if args.fixture:
        return paperlab.fixture(args.fixture).instance
    if not args.instance:
        raise InputError("one of --instance or --fixture is required")
    return load_instance(args.instance)


def _allocation(inst: Instance, text: str) -> Allocation:
    text = text.strip()
    if not text.startswith("{"):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise InputError(f"cannot read allocation {text}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"allocation is not valid JSON ({exc.msg})") from None
    return allocation_from_json(inst, obj)


def _csv(rows: list[list[Any]]) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _alloc_json(inst: Instance, alloc: Allocation) -> dict[str, Any]:
    return {
        "bundles": alloc.labelled(inst),
        "utilities": [rational_json(u) for u in alloc.utilities(inst)],
        "index": alloc.index,
    }


# --------------------------------------------------------------------------
# commands


def cmd_classify(args, out) -> int:
    inst = _instance(args)
    if args.allocation:
        alloc = _allocation(inst, args.allocation)
        items = [(o, item_class_in_allocation(inst, alloc, o).value) for o in inst.items]
    elif inst.is_additive:
        items = [(o, classify_item_additive(inst, o).value) for o in inst.items]
    else:
        items = []
    problem = detect_problem_class(inst).value
    if args.csv:
        out.write(_csv([["item", "class"], *items]))
    else:
        out.write(dumps({"problem_class": problem, "items": [{"item": o, "class": c} for o, c in items]}))
    return OK


def cmd_check(args, out) -> int:
    inst = _instance(args)
    alloc = _allocation(inst, args.allocation)
    verdict = check(inst, alloc, Property.parse(args.property))
    if args.csv:
        rows = [["property", "agent_a", "agent_b", "witness_item", "detail"]]
        for v in verdict.violations:
            rows.append([v.property.value, v.agent_a, v.agent_b, v.witness_item or "", v.detail])
        out.write(_csv(rows))
    else:
        out.write(dumps(verdict.to_json(inst)))
    return OK if verdict.holds else NEGATIVE


def cmd_solve(args, out) -> int:
    inst = _instance(args)
    result: dict[str, Any] = {"method": args.method}
    if args.method in ("leximin", "leximinpp"):
        res = (leximin_search if args.method == "leximin" else leximin_pp_search)(inst)
        result.update(_alloc_json(inst, res.allocation))
        result["explored"] = res.explored
    elif args.method == "jf1zero":
        owners = [0] * inst.m
        rounds = []
        for t, agent in jf1zero_rounds(inst):
            owners[t] = agent
            rounds.append({"item": inst.items[t], "agent": agent})
        result.update(_alloc_json(inst, Allocation(tuple(owners), inst.n)))
        result["rounds"] = rounds
    else:
        result.update(_alloc_json(inst, assign_one_each(inst)))
    out.write(dumps(result))
    return OK


def cmd_exists(args, out) -> int:
    inst = _instance(args)
    props = [Property.parse(p) for p in args.properties.split(",") if p.strip()]
    if not props:
        raise InputError("--properties needs at least one property")
    rep = exists_allocation(inst, props)
    result: dict[str, Any] = {
        "properties": [p.value for p in rep.properties],
        "found": rep.found is not None,
        "explored": rep.explored,
        "exhaustive": rep.exhaustive,
    }
    if rep.found is not None:
        result["allocation"] = _alloc_json(inst, rep.found)
    out.write(dumps(result))
    return OK if rep.found is not None else NEGATIVE


def cmd_normalise(args, out) -> int:
    inst = normalise(_instance(args), args.target)
    out.write(dumps(instance_to_json(inst)))
    return OK


def cmd_reduce(args, out) -> int:
    try:
        obj = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.input}: invalid JSON ({exc.msg})") from None
    x3c = X3CInstance.from_json(obj)
    if args.variant == "jf1":
        red = reduce_x3c_jf1(x3c, args.M)
    else:
        if args.M is not None:
            raise InputError("--M only applies to the jf1 variant")
        red = reduce_x3c_jf1po_binary(x3c)
    out.write(dumps(red.to_json()))
    return OK


def cmd_verify(args, out) -> int:
    reports = paperlab.verify_paper_claims()
    out.write(paperlab.claims_json(reports) if args.json else paperlab.claims_csv(reports))
    return OK if all(r.passed for r in reports) else NEGATIVE


def cmd_gen(args, out) -> int:
    lo, hi = paperlab.parse_value_range(args.range)
    cfg = paperlab.GenConfig(
        n=args.agents, m=args.items, utility_class=args.utility_class,
        low=lo, high=hi, normalise=args.normalise, model=args.model, seed=args.seed,
    )
    out.write(dumps(instance_to_json(paperlab.gen_random_instance(cfg))))
    return OK


# --------------------------------------------------------------------------
# parser


def _add_instance(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="instance file (.json or .csv)")
    p.add_argument("--fixture", choices=paperlab.FIXTURE_IDS, help="built-in instance instead of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairmanna", description="Fair division of mixed manna with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="item and problem classes")
    _add_instance(p)
    p.add_argument("--allocation", help="classify items by marginals in this allocation (JSON or file)")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="check one property of an allocation")
    _add_instance(p)
    p.add_argument("--property", required=True, help=", ".join(x.value for x in Property))
    p.add_argument("--allocation", required=True, help='inline JSON such as {"bundles": [["a"], ["b"]]} or a file')
    p.add_argument("--csv", action="store_true", help="violations as CSV")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="compute an allocation")
    _add_instance(p)
    p.add_argument("--method", required=True, choices=("leximin", "leximinpp", "jf1zero", "one-each"))
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exists", help="search for an allocation with all given properties")
    _add_instance(p)
    p.add_argument("--properties", required=True, help="comma-separated, e.g. JF1,PO")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("normalise", help="rescale every agent to a common total")
    _add_instance(p)
    p.add_argument("--target", default=None, help="common total (default 1 or -1)")
    p.set_defaults(func=cmd_normalise)

    p = sub.add_parser("reduce-x3c", help="build a reduced instance from an X3C instance")
    p.add_argument("--variant", required=True, choices=("jf1", "jf1po"))
    p.add_argument("--in", dest="input", required=True, help="X3C JSON with ground_set and collection")
    p.add_argument("--M", type=int, default=None, help="big-M value (jf1 variant)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-paper", help="re-derive every stored claim")
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="random instance")
    p.add_argument("--agents", type=int, default=2)
    p.add_argument("--items", type=int, default=4)
    p.add_argument("--class", dest="utility_class", default="goods-and-bads", choices=paperlab.UTILITY_CLASSES)
    p.add_argument("--range", default="-5:5", help="integer value range lo:hi with lo < 0 < hi")
    p.add_argument("--model", default="additive", choices=("additive", "general"))
    p.add_argument("--normalise", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (FairMannaError, InputError, ValueError) as exc:
        err.write(f"fairmanna {args.command}: {exc}\n")
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())
