"""Decision procedures for the "up to one item" axioms, equitability and PO.

Every qualifier ("o is a bad for a", "o is a good for b") is read off
bundle marginals such as ``u_a(A_a - o) > u_a(A_a)``, never off item
columns, so additive and general utilities share one code path.

Agents and items are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from fairmanna.core import (
    Allocation,
    Instance,
    check_cap,
    iter_masks,
    iter_owners,
    masks_from_owners,
    validate_allocation,
)
from fairmanna.errors import SameAgent


class Property(str, Enum):
    JF1 = "JF1"
    JF1_0 = "JF1_0"
    JFX = "JFX"
    JFX_0 = "JFX_0"
    EF1 = "EF1"
    EFX = "EFX"
    EFX_0 = "EFX_0"
    PO = "PO"
    EQUITABLE = "EQUITABLE"

    @classmethod
    def parse(cls, text: "str | Property") -> "Property":
        if isinstance(text, Property):
            return text
        key = text.strip().upper().replace("₀", "_0").replace("-", "_")
        if key in ("JF10", "JFX0", "EFX0"):
            key = key[:-1] + "_0"
        if key in ("EQ", "EQUITABILITY"):
            key = "EQUITABLE"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown property {text!r}; expected one of {[p.value for p in cls]}") from None

    def __str__(self) -> str:
        return self.value


JF_VARIANTS = (Property.JF1, Property.JF1_0, Property.JFX, Property.JFX_0)
EF_VARIANTS = (Property.EF1, Property.EFX, Property.EFX_0)


@dataclass(frozen=True)
class Term:
    """``u_agent(bundle)``; one side of a failed inequality."""

    agent: int
    mask: int

    def value(self, inst: Instance) -> Fraction:
        return inst.value(self.agent, self.mask)

    def render(self, inst: Instance) -> str:
        return f"u{self.agent}({{{','.join(inst.labels_of(self.mask))}}})"


@dataclass(frozen=True)
class Violation:
    """A failed requirement, witnessed by the strict inequality ``lhs < rhs``."""

    property: Property
    agent_a: int | None
    agent_b: int | None
    witness_item: str | None
    lhs: Term
    rhs: Term
    detail: str = ""

    def recheck(self, inst: Instance) -> bool:
        """True when the recorded inequality still fails on ``inst``."""
        return self.lhs.value(inst) < self.rhs.value(inst)

    def to_json(self, inst: Instance) -> dict:
        from fairmanna.io import rational_json

        return {
            "property": self.property.value,
            "agent_a": self.agent_a,
            "agent_b": self.agent_b,
            "witness_item": self.witness_item,
            "lhs": {"agent": self.lhs.agent, "bundle": inst.labels_of(self.lhs.mask), "value": rational_json(self.lhs.value(inst))},
            "rhs": {"agent": self.rhs.agent, "bundle": inst.labels_of(self.rhs.mask), "value": rational_json(self.rhs.value(inst))},
            "detail": self.detail,
        }


@dataclass
class Verdict:
    property: Property
    holds: bool
    violations: list[Violation] = field(default_factory=list)
    witness: Allocation | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, inst: Instance) -> dict:
        return {
            "property": self.property.value,
            "holds": self.holds,
            "violations": [v.to_json(inst) for v in self.violations],
        }


def _violation(inst: Instance, prop: Property, a: int, b: int | None, item: int | None, lhs: Term, rhs: Term, why: str) -> Violation:
    detail = (
        f"{lhs.render(inst)} = {lhs.value(inst)} < {rhs.value(inst)} = {rhs.render(inst)}"
        + (f" ({why})" if why else "")
    )
    label = inst.items[item] if item is not None else None
    return Violation(prop, a, b, label, lhs, rhs, detail)


# --------------------------------------------------------------------------
# jealousy


def is_jealous(inst: Instance, alloc: Allocation, a: int, b: int) -> bool:
    """True iff agent a's utility for A_a is below agent b's utility for A_b."""
    if a == b:
        raise SameAgent(f"agent {a} compared with itself")
    validate_allocation(inst, alloc)
    masks = alloc.masks
    return inst.u(a, masks[a]) < inst.u(b, masks[b])


def _jf_pair(inst: Instance, masks: Sequence[int], a: int, b: int, prop: Property) -> Iterator[Violation]:
    u = inst.u
    A, B = masks[a], masks[b]
    ua, ub = u(a, A), u(b, B)

    if prop in (Property.JF1, Property.JF1_0):
        if ua >= ub:
            return
        strict = prop is Property.JF1
        for o in iter_masks(A):
            bit = 1 << o
            if strict and not ua < u(a, A ^ bit):
                continue
            if ua >= u(b, B | bit):
                return
        for o in iter_masks(B):
            bit = 1 << o
            if strict and not ub > u(b, B ^ bit):
                continue
            if ua >= u(b, B ^ bit):
                return
        yield _violation(inst, prop, a, b, None, Term(a, A), Term(b, B), "jealous and no single item restores it")
        return

    weak = prop is Property.JFX_0
    for o in iter_masks(A):
        bit = 1 << o
        without = u(a, A ^ bit)
        if ua < without or (weak and ua == without):
            target = u(b, B | bit)
            if ua < target:
                yield _violation(inst, prop, a, b, o, Term(a, A), Term(b, B | bit), "bad moved to the other bundle")
    for o in iter_masks(B):
        bit = 1 << o
        without = u(b, B ^ bit)
        if ub > without or (weak and ub == without):
            if ua < without:
                yield _violation(inst, prop, a, b, o, Term(a, A), Term(b, B ^ bit), "good removed from the other bundle")


def _ef_pair(inst: Instance, masks: Sequence[int], a: int, b: int, prop: Property) -> Iterator[Violation]:
    u = inst.u
    A, B = masks[a], masks[b]
    own, other = u(a, A), u(a, B)

    if prop is Property.EF1:
        if own >= other:
            return
        for o in iter_masks(A | B):
            bit = 1 << o
            if u(a, A & ~bit) >= u(a, B & ~bit):
                return
        yield _violation(inst, prop, a, b, None, Term(a, A), Term(a, B), "envy survives removing any single item")
        return

    weak = prop is Property.EFX_0
    for o in iter_masks(A):
        bit = 1 << o
        without = u(a, A ^ bit)
        if own < without or (weak and own == without):
            if without < other:
                yield _violation(inst, prop, a, b, o, Term(a, A ^ bit), Term(a, B), "bad removed from own bundle")
    for o in iter_masks(B):
        bit = 1 << o
        without = u(a, B ^ bit)
        if other > without or (weak and other == without):
            if own < without:
                yield _violation(inst, prop, a, b, o, Term(a, A), Term(a, B ^ bit), "good removed from the other bundle")


def _pairwise(inst: Instance, masks: Sequence[int], prop: Property) -> Iterator[Violation]:
    pair = _jf_pair if prop in JF_VARIANTS else _ef_pair
    for a in range(inst.n):
        for b in range(inst.n):
            if a != b:
                yield from pair(inst, masks, a, b, prop)


def check_jf(inst: Instance, alloc: Allocation, variant: Property | str) -> tuple[bool, list[Violation]]:
    prop = Property.parse(variant)
    if prop not in JF_VARIANTS:
        raise ValueError(f"{prop} is not a jealousy-freeness variant")
    validate_allocation(inst, alloc)
    violations = list(_pairwise(inst, alloc.masks, prop))
    return not violations, violations


def check_ef(inst: Instance, alloc: Allocation, variant: Property | str) -> tuple[bool, list[Violation]]:
    prop = Property.parse(variant)
    if prop not in EF_VARIANTS:
        raise ValueError(f"{prop} is not an envy-freeness variant")
    validate_allocation(inst, alloc)
    violations = list(_pairwise(inst, alloc.masks, prop))
    return not violations, violations


# --------------------------------------------------------------------------
# efficiency and equitability


def utility_vectors(inst: Instance, cap: int | None = None) -> list[tuple[int, ...]]:
    """Scaled utility vector of every allocation, by canonical index.

    Cached on the instance: PO checks and leximin searches over the same
    instance share one enumeration.
    """
    cached = inst.__dict__.get("_vectors")
    if cached is not None:
        return cached
    check_cap("allocations", inst.allocation_count, cap)
    n, u = inst.n, inst.u
    vectors = []
    for owners in iter_owners(n, inst.m):
        masks = masks_from_owners(owners, n)
        vectors.append(tuple(u(a, mk) for a, mk in enumerate(masks)))
    inst.__dict__["_vectors"] = vectors
    return vectors


def _dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    return x != y and all(p >= q for p, q in zip(x, y))


def is_po(inst: Instance, alloc: Allocation, cap: int | None = None) -> tuple[bool, Allocation | None]:
    """Exhaustive Pareto-optimality check.

    Returns ``(True, None)`` or ``(False, B)`` where B is the Pareto
    improvement with the smallest canonical index.
    """
    validate_allocation(inst, alloc)
    vectors = utility_vectors(inst, cap)
    mine = vectors[alloc.index]
    for idx, vec in enumerate(vectors):
        if _dominates(vec, mine):
            return False, Allocation.from_index(idx, inst.n, inst.m)
    return True, None


def pareto_flags(inst: Instance, cap: int | None = None) -> list[bool]:
    """PO verdict for every allocation, by canonical index."""
    vectors = utility_vectors(inst, cap)
    # only the maximal distinct vectors can dominate anything
    frontier: list[tuple[int, ...]] = []
    for vec in sorted(set(vectors), reverse=True):
        if not any(_dominates(f, vec) for f in frontier):
            frontier.append(vec)
    front = set(frontier)
    return [vec in front for vec in vectors]


def is_equitable(inst: Instance, alloc: Allocation) -> bool:
    validate_allocation(inst, alloc)
    return len({inst.u(a, mk) for a, mk in enumerate(alloc.masks)}) == 1


# --------------------------------------------------------------------------
# one entry point for every property


def check(inst: Instance, alloc: Allocation, prop: Property | str, cap: int | None = None) -> Verdict:
    prop = Property.parse(prop)
    validate_allocation(inst, alloc)
    if prop in JF_VARIANTS or prop in EF_VARIANTS:
        violations = list(_pairwise(inst, alloc.masks, prop))
        return Verdict(prop, not violations, violations)
    if prop is Property.PO:
        ok, better = is_po(inst, alloc, cap)
        if ok:
            return Verdict(prop, True)
        assert better is not None
        a = next(i for i in range(inst.n) if inst.u(i, better.masks[i]) > inst.u(i, alloc.masks[i]))
        v = _violation(
            inst, prop, a, None, None, Term(a, alloc.masks[a]), Term(a, better.masks[a]),
            f"allocation #{better.index} {better.labelled(inst)} Pareto-improves",
        )
        return Verdict(prop, False, [v], witness=better)
    masks = alloc.masks
    lo = min(range(inst.n), key=lambda i: inst.u(i, masks[i]))
    hi = max(range(inst.n), key=lambda i: inst.u(i, masks[i]))
    if inst.u(lo, masks[lo]) == inst.u(hi, masks[hi]):
        return Verdict(prop, True)
    return Verdict(prop, False, [_violation(inst, prop, lo, hi, None, Term(lo, masks[lo]), Term(hi, masks[hi]), "unequal utilities")])


def satisfies(inst: Instance, alloc: Allocation, prop: Property | str, cap: int | None = None) -> bool:
    """Boolean verdict; stops at the first violation."""
    prop = Property.parse(prop)
    if prop in JF_VARIANTS or prop in EF_VARIANTS:
        validate_allocation(inst, alloc)
        return next(_pairwise(inst, alloc.masks, prop), None) is None
    if prop is Property.PO:
        return is_po(inst, alloc, cap)[0]
    return is_equitable(inst, alloc)
