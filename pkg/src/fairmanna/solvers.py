"""Exhaustive and greedy allocation procedures.

All exhaustive searches walk allocations in ascending canonical index and
resolve ties toward the smallest index, so results do not depend on how the
search is run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from fairmanna.axioms import Property, pareto_flags, satisfies, utility_vectors
from fairmanna.core import (
    Additive,
    Allocation,
    Instance,
    check_cap,
    iter_owners,
)
from fairmanna.errors import GeneralModelError, MixedItemEncountered, TooManyItems


def enumerate_allocations(inst: Instance, cap: int | None = None) -> Iterator[Allocation]:
    check_cap("allocations", inst.allocation_count, cap)
    n = inst.n
    for owners in iter_owners(n, inst.m):
        yield Allocation(owners, n)


# --------------------------------------------------------------------------
# leximin and leximin++


def leximin_key(vector: Sequence) -> tuple:
    return tuple(sorted(vector))


def leximin_pp_key(vector: Sequence, sizes: Sequence[int]) -> tuple:
    """Agents' (utility, bundle size) pairs in ascending order.

    Comparing these keys lexicographically maximises the minimum utility,
    then the bundle size of the agent holding it, then the second minimum
    utility, and so on. Agents tied on utility are ordered by size.
    """
    return tuple(sorted(zip(vector, sizes)))


@dataclass
class SolveResult:
    allocation: Allocation
    explored: int
    exhaustive: bool
    key: tuple = ()


def _best(inst: Instance, plus: bool, cap: int | None) -> SolveResult:
    vectors = utility_vectors(inst, cap)
    n = inst.n
    best_key = None
    best_idx = 0
    for idx, (owners, vec) in enumerate(zip(iter_owners(n, inst.m), vectors)):
        if plus:
            sizes = [0] * n
            for a in owners:
                sizes[a] += 1
            key = leximin_pp_key(vec, sizes)
        else:
            key = leximin_key(vec)
        if best_key is None or key > best_key:
            best_key, best_idx = key, idx
    alloc = Allocation.from_index(best_idx, n, inst.m)
    scale = inst.scale
    if plus:
        key = tuple((Fraction(u, scale), s) for u, s in best_key)
    else:
        key = tuple(Fraction(u, scale) for u in best_key)
    return SolveResult(alloc, len(vectors), True, key)


def leximin_search(inst: Instance, cap: int | None = None) -> SolveResult:
    return _best(inst, plus=False, cap=cap)


def leximin_pp_search(inst: Instance, cap: int | None = None) -> SolveResult:
    return _best(inst, plus=True, cap=cap)


def solve_leximin(inst: Instance, cap: int | None = None) -> Allocation:
    return leximin_search(inst, cap).allocation


def solve_leximin_pp(inst: Instance, cap: int | None = None) -> Allocation:
    return leximin_pp_search(inst, cap).allocation


# --------------------------------------------------------------------------
# greedy JF1_0


def jf1zero_rounds(inst: Instance) -> Iterator[tuple[int, int]]:
    """Run the greedy rule item by item, yielding ``(item, receiving agent)``.

    A round looks only at the current bundles and the current item.
    Ties go to the lowest agent index.
    """
    n = inst.n
    masks = [0] * n
    for t in range(inst.m):
        bit = 1 << t
        current = [inst.u(c, masks[c]) for c in range(n)]
        added = [inst.u(c, masks[c] | bit) for c in range(n)]
        if all(x > y for x, y in zip(added, current)):
            agent = min(range(n), key=lambda c: (current[c], c))
        elif all(x < y for x, y in zip(added, current)):
            agent = min(range(n), key=lambda c: (-added[c], c))
        else:
            zero = [c for c in range(n) if added[c] == current[c]]
            if not zero:
                raise MixedItemEncountered(t + 1, inst.items[t])
            agent = zero[0]
        masks[agent] |= bit
        yield t, agent


def jf1zero_greedy(inst: Instance) -> Allocation:
    owners = [0] * inst.m
    for t, agent in jf1zero_rounds(inst):
        owners[t] = agent
    return Allocation(tuple(owners), inst.n)


# --------------------------------------------------------------------------
# existence search


@dataclass
class SearchReport:
    found: Allocation | None
    explored: int
    properties: list[Property] = field(default_factory=list)
    exhaustive: bool = False


def exists_allocation(inst: Instance, required: Iterable[Property | str], cap: int | None = None) -> SearchReport:
    """First allocation (by canonical index) satisfying every required property."""
    props = sorted({Property.parse(p) for p in required}, key=list(Property).index)
    check_cap("allocations", inst.allocation_count, cap)
    cheap = [p for p in props if p is not Property.PO]
    po = None
    if Property.PO in props:
        po = pareto_flags(inst, cap)
    explored = 0
    for idx, alloc in enumerate(enumerate_allocations(inst, cap)):
        explored += 1
        if po is not None and not po[idx]:
            continue
        if all(satisfies(inst, alloc, p) for p in cheap):
            return SearchReport(alloc, explored, props, exhaustive=False)
    return SearchReport(None, explored, props, exhaustive=True)


def all_satisfying(inst: Instance, required: Iterable[Property | str], cap: int | None = None) -> list[Allocation]:
    props = [Property.parse(p) for p in required]
    check_cap("allocations", inst.allocation_count, cap)
    po = pareto_flags(inst, cap) if Property.PO in props else None
    cheap = [p for p in props if p is not Property.PO]
    out = []
    for idx, alloc in enumerate(enumerate_allocations(inst, cap)):
        if po is not None and not po[idx]:
            continue
        if all(satisfies(inst, alloc, p) for p in cheap):
            out.append(alloc)
    return out


# --------------------------------------------------------------------------
# one item per agent


def _hungarian_max(weights: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Maximum-weight assignment of every row to a distinct column (rows <= cols).

    Shortest augmenting path version of the Hungarian method with
    potentials; exact on integers. Returns (total, column of each row).
    """
    rows = len(weights)
    if rows == 0:
        return 0, []
    cols = len(weights[0])
    cost = [[-w for w in r] for r in weights]
    INF = float("inf")
    u = [0] * (rows + 1)
    v = [0] * (cols + 1)
    match = [0] * (cols + 1)  # match[j] = row (1-based) assigned to column j
    way = [0] * (cols + 1)
    for i in range(1, rows + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (cols + 1)
        used = [False] * (cols + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = INF
            j1 = 0
            for j in range(1, cols + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(cols + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    assign = [0] * rows
    for j in range(1, cols + 1):
        if match[j]:
            assign[match[j] - 1] = j - 1
    total = sum(weights[r][assign[r]] for r in range(rows))
    return total, assign


def assign_one_each(inst: Instance) -> Allocation:
    """Give each item to a different agent, maximising the utility sum.

    Among optimal assignments the one with the smallest canonical index is
    returned: items are fixed in order, each to the lowest agent that still
    admits an optimal completion.
    """
    if not isinstance(inst.utilities, Additive):
        raise GeneralModelError("assign_one_each needs additive utilities")
    n, m = inst.n, inst.m
    if m > n:
        raise TooManyItems(f"{m} items cannot go to {n} agents one each")
    rows = inst.int_rows
    weights = [[rows[a][t] for a in range(n)] for t in range(m)]
    best, _ = _hungarian_max(weights)
    owners: list[int] = []
    for t in range(m):
        used = set(owners)
        for a in range(n):
            if a in used:
                continue
            free_agents = [c for c in range(n) if c not in used and c != a]
            rest = [[weights[r][c] for c in free_agents] for r in range(t + 1, m)]
            fixed = sum(weights[r][owners[r]] for r in range(t)) + weights[t][a]
            tail, _ = _hungarian_max(rest)
            if fixed + tail == best:
                owners.append(a)
                break
    return Allocation(tuple(owners), n)

