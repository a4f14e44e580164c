"""Instances, allocations and the item/problem taxonomy for mixed manna.

Utilities are exact rationals (:class:`fractions.Fraction`). Internally every
instance also keeps an integer copy of its utilities, scaled by one common
positive factor (the lcm of all denominators). A common positive factor
preserves every comparison the fairness axioms make, including comparisons
across agents, so checkers and solvers work on plain ints.

Bundles are bitmasks over the item order: bit ``t`` stands for item ``t``.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from fairmanna.errors import (
    GeneralModelError,
    InvalidAllocation,
    InvalidInstance,
    ItemInBundle,
    SignMismatch,
    TooLarge,
    ZeroTotal,
)

DEFAULT_ENUM_CAP = 10**7
ENUM_CAP_ENV = "FAIRMANNA_ENUM_CAP"

# additive instances up to this many items get a full 2^m lookup table
TABLE_ITEM_LIMIT = 16

Number = Union[int, str, Fraction, float]
ItemRef = Union[int, str]


def enum_cap(cap: int | None = None) -> int:
    """Return the effective enumeration cap (argument, then env var, then default)."""
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENUM_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_ENUM_CAP


def check_cap(what: str, size: int, cap: int | None = None) -> None:
    limit = enum_cap(cap)
    if size > limit:
        raise TooLarge(what, size, limit)


def to_rational(x: Number) -> Fraction:
    """Parse an int, a Fraction, a ``"p/q"`` / decimal string or a float exactly."""
    if isinstance(x, bool):
        raise InvalidInstance(f"not a number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # the shortest repr is what the user wrote, e.g. 1.5 or 0.1
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInstance(f"not a rational: {x!r}") from None
    raise InvalidInstance(f"not a number: {x!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def iter_masks(mask: int) -> Iterator[int]:
    """Yield the item indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --------------------------------------------------------------------------
# utility models


@dataclass(frozen=True)
class Additive:
    """``matrix[a][o]`` is agent a's utility for item o."""

    matrix: tuple[tuple[Fraction, ...], ...]

    kind = "additive"


@dataclass(frozen=True)
class General:
    """``tables[a][mask]`` is agent a's utility for the bundle encoded by ``mask``."""

    tables: tuple[tuple[Fraction, ...], ...]

    kind = "general"


UtilityModel = Union[Additive, General]


@dataclass(frozen=True)
class Instance:
    n: int
    items: tuple[str, ...]
    utilities: UtilityModel

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInstance(f"need at least 2 agents, got {self.n}")
        if len(self.items) < 1:
            raise InvalidInstance("need at least 1 item")
        if any(not isinstance(label, str) for label in self.items):
            raise InvalidInstance("item labels must be strings")
        if len(set(self.items)) != len(self.items):
            raise InvalidInstance("item labels must be unique")
        m = len(self.items)
        if isinstance(self.utilities, Additive):
            rows = self.utilities.matrix
            if len(rows) != self.n or any(len(r) != m for r in rows):
                raise InvalidInstance(f"additive matrix must be {self.n}x{m}")
        elif isinstance(self.utilities, General):
            tables = self.utilities.tables
            if len(tables) != self.n or any(len(t) != 1 << m for t in tables):
                raise InvalidInstance(f"general tables must be {self.n} lists of {1 << m} values")
        else:
            raise InvalidInstance(f"unknown utility model {self.utilities!r}")

    @classmethod
    def additive(cls, matrix: Sequence[Sequence[Number]], items: Sequence[str] | None = None) -> "Instance":
        rows = tuple(tuple(to_rational(v) for v in row) for row in matrix)
        if not rows:
            raise InvalidInstance("empty utility matrix")
        if items is None:
            items = default_labels(len(rows[0]))
        return cls(len(rows), tuple(items), Additive(rows))

    @classmethod
    def general(cls, tables: Sequence[Sequence[Number]], items: Sequence[str] | None = None) -> "Instance":
        rows = tuple(tuple(to_rational(v) for v in t) for t in tables)
        if not rows:
            raise InvalidInstance("empty utility tables")
        if items is None:
            m = len(rows[0]).bit_length() - 1
            items = default_labels(m)
        return cls(len(rows), tuple(items), General(rows))

    @property
    def m(self) -> int:
        return len(self.items)

    @property
    def is_additive(self) -> bool:
        return isinstance(self.utilities, Additive)

    @property
    def grand_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def allocation_count(self) -> int:
        return self.n**self.m

    # -- fast integer access -------------------------------------------

    @cached_property
    def scale(self) -> int:
        """Common denominator of every utility value."""
        if isinstance(self.utilities, Additive):
            values = itertools.chain.from_iterable(self.utilities.matrix)
        else:
            values = itertools.chain.from_iterable(self.utilities.tables)
        den = 1
        for v in values:
            den = math.lcm(den, v.denominator)
        return den

    @cached_property
    def int_rows(self) -> tuple[tuple[int, ...], ...]:
        if not isinstance(self.utilities, Additive):
            raise GeneralModelError("general utilities have no item columns")
        s = self.scale
        return tuple(tuple(int(v * s) for v in row) for row in self.utilities.matrix)

    @cached_property
    def int_tables(self) -> tuple[tuple[int, ...], ...] | None:
        s = self.scale
        if isinstance(self.utilities, General):
            return tuple(tuple(int(v * s) for v in t) for t in self.utilities.tables)
        if self.m > TABLE_ITEM_LIMIT:
            return None
        tables = []
        for row in self.int_rows:
            t = [0] * (1 << self.m)
            for mask in range(1, 1 << self.m):
                low = mask & -mask
                t[mask] = t[mask ^ low] + row[low.bit_length() - 1]
            tables.append(tuple(t))
        return tuple(tables)

    def u(self, agent: int, mask: int) -> int:
        """Scaled integer utility of ``agent`` for the bundle ``mask``."""
        tables = self.int_tables
        if tables is not None:
            return tables[agent][mask]
        row = self.int_rows[agent]
        return sum(row[t] for t in iter_masks(mask))

    def value(self, agent: int, mask: int) -> Fraction:
        return Fraction(self.u(agent, mask), self.scale)

    # -- item bookkeeping ------------------------------------------------

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {label: t for t, label in enumerate(self.items)}

    def item_index(self, item: ItemRef) -> int:
        if isinstance(item, str):
            try:
                return self._label_index[item]
            except KeyError:
                raise InvalidAllocation(f"unknown item {item!r}") from None
        if isinstance(item, int) and not isinstance(item, bool) and 0 <= item < self.m:
            return item
        raise InvalidAllocation(f"bad item reference {item!r}")

    def mask_of(self, bundle: Iterable[ItemRef] | int) -> int:
        if isinstance(bundle, int) and not isinstance(bundle, bool):
            if bundle < 0 or bundle > self.grand_mask:
                raise InvalidAllocation(f"bundle mask {bundle} out of range")
            return bundle
        mask = 0
        for item in bundle:
            mask |= 1 << self.item_index(item)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.items[t] for t in iter_masks(mask)]

    def restrict(self, t: int) -> "Instance":
        """The instance on the first ``t`` items only (general tables keep the low 2^t entries)."""
        if not 1 <= t <= self.m:
            raise InvalidInstance(f"cannot restrict to {t} items")
        if isinstance(self.utilities, Additive):
            model = Additive(tuple(row[:t] for row in self.utilities.matrix))
        else:
            model = General(tuple(tab[: 1 << t] for tab in self.utilities.tables))
        return Instance(self.n, self.items[:t], model)


def default_labels(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple(chr(ord("a") + t) for t in range(m))
    return tuple(f"o{t + 1}" for t in range(m))


# --------------------------------------------------------------------------
# allocations


def masks_from_owners(owners: Sequence[int], n: int) -> tuple[int, ...]:
    masks = [0] * n
    for t, a in enumerate(owners):
        masks[a] |= 1 << t
    return tuple(masks)


def iter_owners(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All item->agent maps in ascending canonical index (item 0 is the most significant digit)."""
    return itertools.product(range(n), repeat=m)


@dataclass(frozen=True)
class Allocation:
    """A complete allocation, stored as the agent holding each item.

    The canonical index reads ``owners`` as a base-n number whose most
    significant digit is item 0, so ascending index order is the
    lexicographic order of ``owners``.
    """

    owners: tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.n < 1 or any(not 0 <= a < self.n for a in self.owners):
            raise InvalidAllocation(f"owners {self.owners} not all in range({self.n})")

    @classmethod
    def from_bundles(cls, bundles: Sequence[Iterable[int]], m: int) -> "Allocation":
        owners: list[int | None] = [None] * m
        for a, bundle in enumerate(bundles):
            for t in bundle:
                if not 0 <= t < m:
                    raise InvalidAllocation(f"item index {t} out of range")
                if owners[t] is not None:
                    raise InvalidAllocation(f"item {t} allocated twice")
                owners[t] = a
        missing = [t for t, a in enumerate(owners) if a is None]
        if missing:
            raise InvalidAllocation(f"items {missing} not allocated")
        return cls(tuple(owners), len(bundles))  # type: ignore[arg-type]

    @classmethod
    def from_masks(cls, masks: Sequence[int], m: int) -> "Allocation":
        return cls.from_bundles([list(iter_masks(mk)) for mk in masks], m)

    @classmethod
    def from_index(cls, index: int, n: int, m: int) -> "Allocation":
        if not 0 <= index < n**m:
            raise InvalidAllocation(f"index {index} out of range for n={n}, m={m}")
        owners = []
        for _ in range(m):
            index, digit = divmod(index, n)
            owners.append(digit)
        return cls(tuple(reversed(owners)), n)

    @property
    def m(self) -> int:
        return len(self.owners)

    @cached_property
    def index(self) -> int:
        idx = 0
        for a in self.owners:
            idx = idx * self.n + a
        return idx

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return masks_from_owners(self.owners, self.n)

    @property
    def bundles(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(iter_masks(mk)) for mk in self.masks)

    def labelled(self, inst: Instance) -> list[list[str]]:
        return [inst.labels_of(mk) for mk in self.masks]

    def utilities(self, inst: Instance) -> tuple[Fraction, ...]:
        return tuple(inst.value(a, mk) for a, mk in enumerate(self.masks))


def allocation_from_labels(inst: Instance, bundles: Sequence[Iterable[ItemRef]]) -> Allocation:
    if len(bundles) != inst.n:
        raise InvalidAllocation(f"expected {inst.n} bundles, got {len(bundles)}")
    return Allocation.from_bundles([[inst.item_index(o) for o in b] for b in bundles], inst.m)


def validate_allocation(inst: Instance, alloc: Allocation) -> None:
    if alloc.n != inst.n or alloc.m != inst.m:
        raise InvalidAllocation(
            f"allocation shape ({alloc.n} agents, {alloc.m} items) does not match instance ({inst.n}, {inst.m})"
        )


def bundle_utility(inst: Instance, agent: int, bundle: Iterable[ItemRef] | int) -> Fraction:
    if not 0 <= agent < inst.n:
        raise InvalidInstance(f"agent {agent} out of range")
    return inst.value(agent, inst.mask_of(bundle))


# --------------------------------------------------------------------------
# item and problem taxonomy


class ItemClass(str, Enum):
    MIXED = "mixed"
    GOOD = "good"
    PURE_GOOD = "pure_good"
    BAD = "bad"
    PURE_BAD = "pure_bad"
    NEUTRAL = "neutral"

    @property
    def is_good(self) -> bool:
        return self in (ItemClass.GOOD, ItemClass.PURE_GOOD)

    @property
    def is_bad(self) -> bool:
        return self in (ItemClass.BAD, ItemClass.PURE_BAD)


class ProblemClass(str, Enum):
    WITH_MIXED_ITEMS = "with_mixed_items"
    WITHOUT_MIXED_ITEMS = "without_mixed_items"
    PURE_GOODS_AND_BADS = "pure_goods_and_bads"

    @property
    def without_mixed_items(self) -> bool:
        return self is not ProblemClass.WITH_MIXED_ITEMS


def class_of_values(values: Iterable) -> ItemClass:
    """Classify an item from the utilities (or marginals) all agents have for it."""
    pos = neg = zero = False
    for v in values:
        if v > 0:
            pos = True
        elif v < 0:
            neg = True
        else:
            zero = True
    if pos and neg:
        return ItemClass.MIXED
    if pos:
        return ItemClass.GOOD if zero else ItemClass.PURE_GOOD
    if neg:
        return ItemClass.BAD if zero else ItemClass.PURE_BAD
    return ItemClass.NEUTRAL


def _sign_class(value) -> ItemClass:
    if value > 0:
        return ItemClass.PURE_GOOD
    if value < 0:
        return ItemClass.PURE_BAD
    return ItemClass.NEUTRAL


def classify_item_additive(inst: Instance, item: ItemRef) -> ItemClass:
    if not isinstance(inst.utilities, Additive):
        raise GeneralModelError("item classes by cardinal column need additive utilities")
    t = inst.item_index(item)
    return class_of_values(row[t] for row in inst.utilities.matrix)


def marginal(inst: Instance, agent: int, item: ItemRef, bundle: Iterable[ItemRef] | int) -> Fraction:
    """u_agent(bundle + item) - u_agent(bundle), for an item outside the bundle."""
    t = inst.item_index(item)
    mask = inst.mask_of(bundle)
    if mask >> t & 1:
        raise ItemInBundle(f"item {inst.items[t]!r} is already in the bundle")
    return Fraction(inst.u(agent, mask | 1 << t) - inst.u(agent, mask), inst.scale)


def classify_marginal(inst: Instance, agent: int, item: ItemRef, bundle: Iterable[ItemRef] | int) -> ItemClass:
    """PURE_GOOD, NEUTRAL or PURE_BAD by the sign of the item's marginal for ``agent``."""
    return _sign_class(marginal(inst, agent, item, bundle))


def _alloc_marginals(inst: Instance, masks: Sequence[int], t: int) -> list[int]:
    bit = 1 << t
    return [inst.u(c, mk | bit) - inst.u(c, mk & ~bit) for c, mk in enumerate(masks)]


def item_class_in_allocation(inst: Instance, alloc: Allocation, item: ItemRef) -> ItemClass:
    """Classify an item by every agent's marginal for it in ``alloc``.

    The holder's marginal is measured by removal, everyone else's by addition.
    """
    validate_allocation(inst, alloc)
    return class_of_values(_alloc_marginals(inst, alloc.masks, inst.item_index(item)))


def detect_problem_class(inst: Instance, cap: int | None = None) -> ProblemClass:
    if isinstance(inst.utilities, Additive):
        classes = [class_of_values(col) for col in zip(*inst.int_rows)]
        if ItemClass.MIXED in classes:
            return ProblemClass.WITH_MIXED_ITEMS
        if all(c is ItemClass.PURE_GOOD or c.is_bad or c is ItemClass.NEUTRAL for c in classes):
            return ProblemClass.PURE_GOODS_AND_BADS
        return ProblemClass.WITHOUT_MIXED_ITEMS

    check_cap("allocations", inst.allocation_count, cap)
    pure = True
    for owners in iter_owners(inst.n, inst.m):
        masks = masks_from_owners(owners, inst.n)
        for t in range(inst.m):
            margs = _alloc_marginals(inst, masks, t)
            if max(margs) > 0 and min(margs) < 0:
                return ProblemClass.WITH_MIXED_ITEMS
            if pure and not (min(margs) > 0 or max(margs) <= 0):
                pure = False
    return ProblemClass.PURE_GOODS_AND_BADS if pure else ProblemClass.WITHOUT_MIXED_ITEMS


# --------------------------------------------------------------------------
# normalisation


def totals(inst: Instance) -> tuple[Fraction, ...]:
    return tuple(inst.value(a, inst.grand_mask) for a in range(inst.n))


def is_normalised(inst: Instance) -> bool:
    empty = [inst.u(a, 0) for a in range(inst.n)]
    full = [inst.u(a, inst.grand_mask) for a in range(inst.n)]
    return all(e == 0 for e in empty) and len(set(full)) == 1


def normalise(inst: Instance, target: Number | None = None) -> Instance:
    """Scale each agent's utilities so that every agent values all items at ``target``.

    The default target is 1 when every total is positive and -1 when every
    total is negative. Scale factors are always positive.
    """
    tot = totals(inst)
    for a, s in enumerate(tot):
        if s == 0:
            raise ZeroTotal(f"agent {a} values the grand bundle at 0")
    if target is None:
        if all(s > 0 for s in tot):
            c = Fraction(1)
        elif all(s < 0 for s in tot):
            c = Fraction(-1)
        else:
            raise SignMismatch("agents' totals have different signs; no positive scaling reaches a common target")
    else:
        c = to_rational(target)
        for a, s in enumerate(tot):
            if (s > 0) != (c > 0) or c == 0:
                raise SignMismatch(f"agent {a} total {s} cannot be scaled positively to {c}")
    factors = [c / s for s in tot]
    if all(f == 1 for f in factors):
        return inst
    if isinstance(inst.utilities, Additive):
        rows = tuple(tuple(v * f for v in row) for row, f in zip(inst.utilities.matrix, factors))
        return Instance(inst.n, inst.items, Additive(rows))
    tables = tuple(tuple(v * f for v in tab) for tab, f in zip(inst.utilities.tables, factors))
    return Instance(inst.n, inst.items, General(tables))
