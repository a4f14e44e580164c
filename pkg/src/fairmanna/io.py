"""JSON and CSV formats for instances and allocations.

Instance JSON::

    {"agents": 2, "items": ["a", "b"],
     "utilities": {"type": "additive", "matrix": [[1, "-1/2"], [0, 3]]}}

or ``{"type": "general", "tables": [[...2^m values...], ...]}`` where entry
``mask`` of a table is the bundle whose item t is present iff bit t is set.
Rationals are written as integers or ``"p/q"`` strings.
"""
from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from fairmanna.core import Additive, Allocation, General, Instance, allocation_from_labels
from fairmanna.errors import InvalidAllocation, InvalidInstance


def rational_json(q: Fraction) -> int | str:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def instance_to_json(inst: Instance) -> dict[str, Any]:
    if isinstance(inst.utilities, Additive):
        util = {"type": "additive", "matrix": [[rational_json(v) for v in row] for row in inst.utilities.matrix]}
    else:
        util = {"type": "general", "tables": [[rational_json(v) for v in t] for t in inst.utilities.tables]}
    return {"agents": inst.n, "items": list(inst.items), "utilities": util}


def instance_from_json(obj: Any) -> Instance:
    try:
        n = obj["agents"]
        items = obj["items"]
        util = obj["utilities"]
        kind = util["type"]
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"instance JSON missing field: {exc}") from None
    if not isinstance(n, int) or not isinstance(items, list):
        raise InvalidInstance("'agents' must be an int and 'items' a list")
    items = [str(x) for x in items]
    if kind == "additive":
        inst = Instance.additive(util.get("matrix") or [], items)
    elif kind == "general":
        inst = Instance.general(util.get("tables") or [], items)
    else:
        raise InvalidInstance(f"unknown utility type {kind!r}")
    if inst.n != n:
        raise InvalidInstance(f"'agents' is {n} but utilities describe {inst.n} agents")
    return inst


def instance_from_csv(text: str) -> Instance:
    """Additive matrix; header row holds item labels, one row per agent.

    A leading column is treated as agent names when the header's first cell
    is empty or ``agent``.
    """
    rows = [r for r in csv.reader(_io.StringIO(text)) if r and any(cell.strip() for cell in r)]
    if len(rows) < 2:
        raise InvalidInstance("CSV needs a header and at least one agent row")
    header = [c.strip() for c in rows[0]]
    body = rows[1:]
    if header[0].lower() in ("", "agent", "agents"):
        header = header[1:]
        body = [r[1:] for r in body]
    return Instance.additive([[c.strip() for c in r] for r in body], header)


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInstance(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".csv":
        return instance_from_csv(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}: invalid JSON ({exc.msg})") from None
    return instance_from_json(obj)


def allocation_to_json(inst: Instance, alloc: Allocation) -> dict[str, Any]:
    return {"bundles": alloc.labelled(inst)}


def allocation_from_json(inst: Instance, obj: Any) -> Allocation:
    try:
        bundles = obj["bundles"]
    except (KeyError, TypeError):
        raise InvalidAllocation("allocation JSON needs a 'bundles' list") from None
    if not isinstance(bundles, list) or not all(isinstance(b, list) for b in bundles):
        raise InvalidAllocation("'bundles' must be a list of lists")
    return allocation_from_labels(inst, [[str(o) for o in b] for b in bundles])


def dumps(obj: Any) -> str:
    """Canonical JSON text used by the CLI (stable key order, two-space indent)."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
