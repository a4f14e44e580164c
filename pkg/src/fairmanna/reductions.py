"""Instance generators for the exact-cover-by-3-sets reductions.

``reduce_x3c_jf1`` builds the mixed-manna instance in which a jealousy-free
up to one item allocation exists iff the X3C instance has an exact cover.
``reduce_x3c_jf1po_binary`` derives the 0/1 goods instance used for
JF1 together with PO. Only the forward direction (cover -> allocation) and
the structural formulas are checkable at desk scale; the smallest legal
reduction already has 8^25 allocations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from fairmanna.core import Allocation, Instance, check_cap
from fairmanna.errors import BadParameters, InvalidCover, InvalidInstance

X3C_SUBSET_CAP = 10**6


@dataclass(frozen=True)
class X3CInstance:
    ground_set: tuple[str, ...]
    collection: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        if len(self.ground_set) % 3:
            raise InvalidInstance(f"ground set size {len(self.ground_set)} is not a multiple of 3")
        if len(set(self.ground_set)) != len(self.ground_set):
            raise InvalidInstance("ground set labels must be unique")
        ground = set(self.ground_set)
        for c in self.collection:
            if len(c) != 3 or len(set(c)) != 3:
                raise InvalidInstance(f"{c} is not a 3-set")
            if not set(c) <= ground:
                raise InvalidInstance(f"{c} is not a subset of the ground set")

    @classmethod
    def build(cls, ground_set: Sequence[Any], collection: Sequence[Sequence[Any]]) -> "X3CInstance":
        ground = tuple(str(x) for x in ground_set)
        order = {x: i for i, x in enumerate(ground)}
        sets = []
        for c in collection:
            labels = [str(x) for x in c]
            sets.append(tuple(sorted(labels, key=lambda x: order.get(x, len(order)))))
        return cls(ground, tuple(sets))  # type: ignore[arg-type]

    @property
    def q(self) -> int:
        return len(self.ground_set) // 3

    @property
    def Q(self) -> int:
        return len(self.collection)

    def to_json(self) -> dict[str, Any]:
        return {"q": self.q, "ground_set": list(self.ground_set), "collection": [list(c) for c in self.collection]}

    @classmethod
    def from_json(cls, obj: Any) -> "X3CInstance":
        try:
            inst = cls.build(obj["ground_set"], obj["collection"])
        except (KeyError, TypeError) as exc:
            raise InvalidInstance(f"X3C JSON missing field: {exc}") from None
        if "q" in obj and obj["q"] != inst.q:
            raise InvalidInstance(f"'q' is {obj['q']} but the ground set has {len(inst.ground_set)} elements")
        return inst


def is_exact_cover(x3c: X3CInstance, cover: Sequence[int]) -> bool:
    if len(cover) != x3c.q or len(set(cover)) != len(cover):
        return False
    if any(not 0 <= i < x3c.Q for i in cover):
        return False
    covered = [x for i in cover for x in x3c.collection[i]]
    return len(covered) == len(set(covered)) == len(x3c.ground_set)


def x3c_solve_bruteforce(x3c: X3CInstance, cap: int | None = None) -> tuple[int, ...] | None:
    """Exact cover as collection indices (first q-subset in lexicographic order), or None."""
    check_cap("q-subsets of the collection", math.comb(x3c.Q, x3c.q), X3C_SUBSET_CAP if cap is None else cap)
    for combo in itertools.combinations(range(x3c.Q), x3c.q):
        if is_exact_cover(x3c, combo):
            return combo
    return None


@dataclass(frozen=True)
class ReducedInstance:
    instance: Instance
    item_roles: dict[str, str]
    M: Fraction
    source: X3CInstance
    variant: str  # "jf1" or "jf1po"

    def to_json(self) -> dict[str, Any]:
        from fairmanna.io import instance_to_json, rational_json

        out = instance_to_json(self.instance)
        out["item_roles"] = dict(self.item_roles)
        out["M"] = rational_json(self.M)
        out["variant"] = self.variant
        return out


def min_big_m(q: int, Q: int) -> int:
    return 3 * Q - 3 * q + 7


def _check_params(x3c: X3CInstance) -> None:
    if x3c.q < 2:
        raise BadParameters(f"need q >= 2, got q={x3c.q}")
    if x3c.Q <= 3 * x3c.q:
        raise BadParameters(f"need more than 3q={3 * x3c.q} sets, got {x3c.Q}")


def _x_label(i: int) -> str:
    return f"x{i + 1}"


def _y_label(k: int, j: int) -> str:
    return f"y{k}_{j}"


def reduce_x3c_jf1(x3c: X3CInstance, M: int | Fraction | None = None) -> ReducedInstance:
    """Agents 1..Q stand for the 3-sets, agent Q+1 is the extra agent.

    Items are x_1..x_3q (the ground set, in order), y^j_k for k = 1..Q-q+1 and
    j = 1..3, and z.
    """
    _check_params(x3c)
    q, Q = x3c.q, x3c.Q
    bound = min_big_m(q, Q)
    big = Fraction(bound if M is None else M)
    if big < bound:
        raise BadParameters(f"M={big} is below 3Q-3q+7={bound}")
    triples = Q - q + 1
    roles: dict[str, str] = {}
    items = []
    for i in range(3 * q):
        items.append(_x_label(i))
        roles[_x_label(i)] = f"x:{x3c.ground_set[i]}"
    for k in range(1, triples + 1):
        for j in range(1, 4):
            items.append(_y_label(k, j))
            roles[_y_label(k, j)] = f"y:{k}:{j}"
    items.append("z")
    roles["z"] = "z"

    rows = []
    for c in x3c.collection:
        members = set(c)
        row = [Fraction(1) if x in members else -big for x in x3c.ground_set]
        row += [Fraction(1)] * (3 * triples)
        row.append(Fraction(0))
        rows.append(row)
    extra = [Fraction(0)] * (3 * q) + [Fraction(1)] * (3 * triples) + [-(3 * q - 3) * big + 3]
    rows.append(extra)
    return ReducedInstance(Instance.additive(rows, items), roles, big, x3c, "jf1")


def reduce_x3c_jf1po_binary(x3c: X3CInstance) -> ReducedInstance:
    """Drop agent Q+1, the last y-triple and z; every -M becomes 0."""
    _check_params(x3c)
    q, Q = x3c.q, x3c.Q
    triples = Q - q
    roles: dict[str, str] = {}
    items = []
    for i in range(3 * q):
        items.append(_x_label(i))
        roles[_x_label(i)] = f"x:{x3c.ground_set[i]}"
    for k in range(1, triples + 1):
        for j in range(1, 4):
            items.append(_y_label(k, j))
            roles[_y_label(k, j)] = f"y:{k}:{j}"
    rows = []
    for c in x3c.collection:
        members = set(c)
        rows.append([1 if x in members else 0 for x in x3c.ground_set] + [1] * (3 * triples))
    return ReducedInstance(Instance.additive(rows, items), roles, Fraction(0), x3c, "jf1po")


def cover_to_allocation(red: ReducedInstance, cover: Sequence[int]) -> Allocation:
    """Cover agents take their 3-sets, the others take y-triples in order, z goes to the first cover agent."""
    x3c = red.source
    if not is_exact_cover(x3c, cover):
        raise InvalidCover(f"{list(cover)} is not an exact cover")
    inst = red.instance
    cover = sorted(cover)
    owners = [-1] * inst.m
    ground_pos = {x: i for i, x in enumerate(x3c.ground_set)}
    for agent in cover:
        for x in x3c.collection[agent]:
            owners[inst.item_index(_x_label(ground_pos[x]))] = agent
    others = [a for a in range(inst.n) if a not in set(cover)]
    for k, agent in enumerate(others, start=1):
        for j in range(1, 4):
            owners[inst.item_index(_y_label(k, j))] = agent
    if "z" in red.item_roles:
        owners[inst.item_index("z")] = cover[0]
    return Allocation(tuple(owners), inst.n)


def allocation_to_cover(red: ReducedInstance, alloc: Allocation) -> tuple[int, ...] | None:
    """The exact cover read off a utility-3-everywhere allocation, else None."""
    inst = red.instance
    x3c = red.source
    if alloc.n != inst.n or alloc.m != inst.m:
        return None
    three = 3 * inst.scale
    if any(inst.u(a, mk) != three for a, mk in enumerate(alloc.masks)):
        return None
    x_items = {inst.item_index(_x_label(i)): x for i, x in enumerate(x3c.ground_set)}
    held: dict[int, set[str]] = {}
    for t, x in x_items.items():
        held.setdefault(alloc.owners[t], set()).add(x)
    holders = sorted(held)
    if any(a >= x3c.Q or held[a] != set(x3c.collection[a]) for a in holders):
        return None
    cover = tuple(holders)
    return cover if is_exact_cover(x3c, cover) else None
