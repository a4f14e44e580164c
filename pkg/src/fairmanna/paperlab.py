"""Finite fixtures, claim re-verification and randomized theorem suites.

Every claim is re-derived by exhaustive enumeration with the checkers in
:mod:`fairmanna.axioms`; nothing here trusts a hand-computed verdict.
"""
from __future__ import annotations

import csv
import io as _io
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator

from fairmanna.axioms import (
    Property,
    check_jf,
    is_po,
    satisfies,
)
from fairmanna.core import (
    Allocation,
    Instance,
    ItemClass,
    ProblemClass,
    allocation_from_labels,
    classify_marginal,
    detect_problem_class,
    item_class_in_allocation,
    normalise,
    to_rational,
)
from fairmanna.errors import (
    ChainViolation,
    RejectionCapExceeded,
    SignMismatch,
    UnknownFixture,
    ZeroTotal,
)
from fairmanna.reductions import (
    X3CInstance,
    allocation_to_cover,
    cover_to_allocation,
    min_big_m,
    reduce_x3c_jf1,
    reduce_x3c_jf1po_binary,
    x3c_solve_bruteforce,
)
from fairmanna.solvers import (
    all_satisfying,
    exists_allocation,
    jf1zero_greedy,
    solve_leximin,
    solve_leximin_pp,
)

P = Property

# --------------------------------------------------------------------------
# fixtures

PROP6_EPSILON = Fraction(1, 5)


@dataclass(frozen=True)
class Fixture:
    id: str
    instance: Instance
    notes: str
    params: dict = field(default_factory=dict)


def _example1() -> Instance:
    # both agents share the quoted table; bundles it does not quote are 0
    quoted = {
        "b": 1, "ab": 2, "bd": 2, "abd": Fraction(3, 2),
        "c": 3, "ac": 2, "cd": 2, "acd": 4,
    }
    items = "abcd"
    table = [Fraction(0)] * 16
    for bundle, value in quoted.items():
        mask = sum(1 << items.index(o) for o in bundle)
        table[mask] = Fraction(value)
    return Instance.general([table, table], list(items))


def _prop6(m: int = 4, eps: Fraction = PROP6_EPSILON) -> Instance:
    full = (1 << m) - 1
    first = [Fraction(bin(mask).count("1")) for mask in range(1 << m)]
    second = [eps * bin(mask).count("1") for mask in range(1 << m)]
    second[full] = Fraction(m)
    return Instance.general([first, second], [chr(ord("a") + t) for t in range(m)])


_FIXTURES: dict[str, Callable[[], Fixture]] = {
    "example1": lambda: Fixture(
        "example1", _example1(),
        "2 agents, 4 items, general utilities; item a is a pure good in one allocation and a pure bad in another",
    ),
    "example2": lambda: Fixture(
        "example2", Instance.additive([[-1, -2, -3], [-1, -2, -3]], "abc"),
        "2 agents, 3 pure bads with identical utilities",
    ),
    "example3": lambda: Fixture(
        "example3", Instance.additive([[1, 1, 1, 1], [1, 0, 0, 0]], "abcd"),
        "4 goods, 2 agents, non-normalised utilities",
    ),
    "example4": lambda: Fixture(
        "example4", Instance.additive([[1, 1, 1, 1], [0, 0, 0, 0]], "abcd"),
        "4 goods, 2 agents with 0/1 utilities; agent 2 values nothing",
    ),
    "prop1": lambda: Fixture(
        "prop1", Instance.additive([[1, 1, -4], [-1, -1, 0]], "abc"),
        "2 mixed items and 1 bad, normalised; no JF1 allocation",
    ),
    "prop2": lambda: Fixture(
        "prop2", Instance.additive([[2, -1, 0], [2, 0, -1]], "abc"),
        "1 pure good and 2 bads, normalised; no JFX_0 and no EFX_0 allocation",
    ),
    "prop3": lambda: Fixture(
        "prop3", Instance.additive([[1, 1, -5, 0], [0, 0, 0, -3]], "abcd"),
        "2 goods and 2 bads, normalised; no PO allocation is JF1",
    ),
    "prop5": lambda: Fixture(
        "prop5", Instance.additive([[-1, -1], [-3, -3]], "ab"),
        "2 pure bads, non-normalised; no JF1 allocation is EF1",
    ),
    "prop6_eps": lambda: Fixture(
        "prop6_eps", _prop6(),
        "4 pure goods, normalised general utilities u1(S)=|S|, u2(S)=eps|S| below the grand bundle, u2([m])=m",
        {"epsilon": PROP6_EPSILON, "m": 4},
    ),
    "prop7": lambda: Fixture(
        "prop7", Instance.additive([[-28, -1, -1], [-24, -3, -3], [-16, -7, -7]], "abc"),
        "3 agents, 3 pure bads, every agent's total is -30; no JF1 allocation is EF1",
    ),
}

FIXTURE_IDS = tuple(_FIXTURES)


def fixture(fixture_id: str) -> Fixture:
    try:
        return _FIXTURES[fixture_id]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {fixture_id!r}; known: {', '.join(FIXTURE_IDS)}") from None


def x3c_demo() -> X3CInstance:
    """q=2 with seven 3-sets (Q=7 > 3q), three of which pair up into exact covers."""
    return X3CInstance.build(
        range(1, 7),
        [(1, 2, 3), (4, 5, 6), (1, 4, 5), (2, 3, 6), (1, 2, 4), (3, 5, 6), (2, 4, 6)],
    )


# --------------------------------------------------------------------------
# claims


@dataclass
class ClaimReport:
    claim_id: str
    expected: str
    computed: str
    explored: int
    millis: float

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "expected": self.expected,
            "computed": self.computed,
            "explored": self.explored,
            "millis": round(self.millis, 3),
            "passed": self.passed,
        }


def _flags(inst: Instance, alloc: Allocation, props) -> str:
    return ", ".join(p.value if satisfies(inst, alloc, p) else f"not {p.value}" for p in props)


def _search(inst: Instance, props) -> tuple[str, int]:
    rep = exists_allocation(inst, props)
    if rep.found is None:
        return "absent", rep.explored
    return f"found {rep.found.labelled(inst)}", rep.explored


def _claim_example1() -> tuple[str, int]:
    inst = fixture("example1").instance
    a_alloc = allocation_from_labels(inst, [["a", "b"], ["c", "d"]])
    b_alloc = allocation_from_labels(inst, [["a", "c"], ["b", "d"]])
    in_a = item_class_in_allocation(inst, a_alloc, "a")
    in_b = item_class_in_allocation(inst, b_alloc, "a")
    own_a = classify_marginal(inst, 0, "a", ["b"])
    own_b = classify_marginal(inst, 0, "a", ["c"])
    return f"{in_a.value}/{in_b.value} (agent 1: {own_a.value}/{own_b.value})", 2


def _claim_example2() -> tuple[str, int]:
    inst = fixture("example2").instance
    alloc = allocation_from_labels(inst, [["a", "c"], ["b"]])
    return _flags(inst, alloc, [P.JF1, P.JF1_0, P.JFX, P.JFX_0]), 1


def _claim_example3_flip() -> tuple[str, int]:
    raw = fixture("example3").instance
    alloc = allocation_from_labels(raw, [["b", "c", "d"], ["a"]])
    before = satisfies(raw, alloc, P.JF1)
    after = satisfies(normalise(raw), alloc, P.JF1)
    return f"JF1 {before} -> {after}", 2


def _claim_example3_unique() -> tuple[str, int]:
    inst = normalise(fixture("example3").instance)
    hits = all_satisfying(inst, [P.JF1, P.PO])
    return "; ".join(str(a.labelled(inst)) for a in hits), inst.allocation_count


def _claim_example4() -> tuple[str, int]:
    inst = fixture("example4").instance
    all_to_one = allocation_from_labels(inst, [["a", "b", "c", "d"], []])
    one_three = allocation_from_labels(inst, [["a"], ["b", "c", "d"]])
    props = [P.EF1, P.PO, P.JF1]
    return f"{_flags(inst, all_to_one, props)} | {_flags(inst, one_three, props)}", inst.allocation_count


def _claim_prop3_unique_po() -> tuple[str, int]:
    inst = fixture("prop3").instance
    hits = all_satisfying(inst, [P.PO])
    parts = [f"{a.labelled(inst)} u={[str(x) for x in a.utilities(inst)]}" for a in hits]
    return "; ".join(parts), inst.allocation_count


def _claim_thm2_forward() -> tuple[str, int]:
    x3c = x3c_demo()
    red = reduce_x3c_jf1(x3c)
    inst = red.instance
    cover = x3c_solve_bruteforce(x3c)
    totals = {inst.value(a, inst.grand_mask) for a in range(inst.n)}
    alloc = cover_to_allocation(red, cover)
    utils = set(alloc.utilities(inst))
    jf1 = check_jf(inst, alloc, P.JF1)[0]
    back = allocation_to_cover(red, alloc)
    q, Q = x3c.q, x3c.Q
    formula = -(3 * q - 3) * red.M + 3 + 3 * (Q - q + 1)
    return (
        f"agents={inst.n} items={inst.m} M={red.M} totals_equal={totals == {formula}} "
        f"utilities={sorted(str(u) for u in utils)} JF1={jf1} roundtrip={back == tuple(cover)}"
    ), 1


def _claim_thm4_forward() -> tuple[str, int]:
    x3c = x3c_demo()
    red = reduce_x3c_jf1po_binary(x3c)
    inst = red.instance
    cover = x3c_solve_bruteforce(x3c)
    alloc = cover_to_allocation(red, cover)
    binary = all(v in (0, 1) for row in inst.utilities.matrix for v in row)
    totals = {inst.value(a, inst.grand_mask) for a in range(inst.n)}
    utils = set(alloc.utilities(inst))
    jf1 = check_jf(inst, alloc, P.JF1)[0]
    # every item sits with an agent valuing it 1, so welfare is maximal and no Pareto improvement exists
    max_welfare = sum(alloc.utilities(inst)) == inst.m
    back = allocation_to_cover(red, alloc)
    return (
        f"agents={inst.n} items={inst.m} binary={binary} equal_totals={len(totals) == 1} "
        f"utilities={sorted(str(u) for u in utils)} JF1={jf1} welfare_max_PO={max_welfare} "
        f"roundtrip={back == tuple(cover)}"
    ), 1


def _claims() -> list[tuple[str, str, Callable[[], tuple[str, int]]]]:
    def search(fid, props):
        return lambda: _search(fixture(fid).instance, props)

    x3c = x3c_demo()
    M = min_big_m(x3c.q, x3c.Q)
    return [
        ("example1", "pure_good/pure_bad (agent 1: pure_good/pure_bad)", _claim_example1),
        ("example2", "JF1, JF1_0, not JFX, not JFX_0", _claim_example2),
        ("example3_flip", "JF1 False -> True", _claim_example3_flip),
        ("example3_unique", "[['b', 'c', 'd'], ['a']]", _claim_example3_unique),
        ("example4", "EF1, PO, not JF1 | not EF1, not PO, JF1", _claim_example4),
        ("prop1", "absent", search("prop1", [P.JF1])),
        ("prop2_jfx0", "absent", search("prop2", [P.JFX_0])),
        ("prop2_efx0", "absent", search("prop2", [P.EFX_0])),
        ("prop3_jf1_po", "absent", search("prop3", [P.JF1, P.PO])),
        ("prop3_unique_po", "[['a', 'b', 'd'], ['c']] u=['2', '0']", _claim_prop3_unique_po),
        ("prop5", "absent", search("prop5", [P.JF1, P.EF1])),
        ("prop6", "absent", search("prop6_eps", [P.JF1, P.EF1])),
        ("prop7", "absent", search("prop7", [P.JF1, P.EF1])),
        (
            "thm2_forward",
            f"agents=8 items=25 M={M} totals_equal=True utilities=['3'] JF1=True roundtrip=True",
            _claim_thm2_forward,
        ),
        (
            "thm4_forward",
            "agents=7 items=21 binary=True equal_totals=True utilities=['3'] JF1=True "
            "welfare_max_PO=True roundtrip=True",
            _claim_thm4_forward,
        ),
    ]


CLAIM_IDS = tuple(c[0] for c in _claims())


def verify_paper_claims() -> list[ClaimReport]:
    reports = []
    for claim_id, expected, run in _claims():
        start = time.perf_counter()
        computed, explored = run()
        millis = (time.perf_counter() - start) * 1000
        reports.append(ClaimReport(claim_id, expected, computed, explored, millis))
    return reports


def claims_csv(reports: list[ClaimReport]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim_id", "expected", "computed", "explored", "millis"])
    for r in reports:
        w.writerow([r.claim_id, r.expected, r.computed, r.explored, f"{r.millis:.3f}"])
    return buf.getvalue()


def claims_json(reports: list[ClaimReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2) + "\n"


# --------------------------------------------------------------------------
# random instances

UTILITY_CLASSES = ("goods", "bads", "mixed", "pure-goods-and-bads", "goods-and-bads")


@dataclass(frozen=True)
class GenConfig:
    n: int = 2
    m: int = 4
    utility_class: str = "goods-and-bads"
    low: int = -5
    high: int = 5
    normalise: bool = False
    model: str = "additive"
    seed: int = 0
    max_tries: int = 10_000

    def __post_init__(self):
        if self.utility_class not in UTILITY_CLASSES:
            raise ValueError(f"utility class must be one of {UTILITY_CLASSES}")
        if self.model not in ("additive", "general"):
            raise ValueError("model must be 'additive' or 'general'")
        if not self.low < 0 < self.high:
            raise ValueError("value range must satisfy low < 0 < high")


def _column(rng: random.Random, n: int, kind: str, low: int, high: int) -> list[int]:
    while True:
        if kind == "pure-good":
            return [rng.randint(1, high) for _ in range(n)]
        if kind == "good":
            col = [rng.randint(0, high) for _ in range(n)]
            if max(col) > 0:
                return col
        elif kind == "bad":
            col = [rng.randint(low, 0) for _ in range(n)]
            if min(col) < 0:
                return col
        else:
            return [rng.randint(low, high) for _ in range(n)]


def _sample_signs(rng: random.Random, cfg: GenConfig) -> list[list[int]]:
    kinds = {
        "goods": lambda: "good",
        "bads": lambda: "bad",
        "mixed": lambda: "any",
        "pure-goods-and-bads": lambda: rng.choice(("pure-good", "bad")),
        "goods-and-bads": lambda: rng.choice(("good", "bad")),
    }[cfg.utility_class]
    cols = [_column(rng, cfg.n, kinds(), cfg.low, cfg.high) for _ in range(cfg.m)]
    return [[cols[t][a] for t in range(cfg.m)] for a in range(cfg.n)]


def _increasing(rng: random.Random, top: int) -> list[int]:
    out = [0]
    for _ in range(top):
        out.append(out[-1] + rng.randint(1, 3))
    return out


def _general_from_signs(rng: random.Random, matrix: list[list[int]]) -> list[list[int]]:
    """u_a(S) = f_a(positive mass of S) - g_a(negative mass of S) with f, g strictly increasing.

    Each marginal keeps the sign of the item's value, so the problem class
    matches the sign matrix while the utilities are far from additive.
    """
    m = len(matrix[0])
    tables = []
    for row in matrix:
        pos_total = sum(v for v in row if v > 0)
        neg_total = -sum(v for v in row if v < 0)
        f = _increasing(rng, pos_total)
        g = _increasing(rng, neg_total)
        table = []
        for mask in range(1 << m):
            pos = sum(row[t] for t in range(m) if mask >> t & 1 and row[t] > 0)
            neg = -sum(row[t] for t in range(m) if mask >> t & 1 and row[t] < 0)
            table.append(f[pos] - g[neg])
        tables.append(table)
    return tables


def _class_ok(cls: ProblemClass, wanted: str) -> bool:
    if wanted == "mixed":
        return cls is ProblemClass.WITH_MIXED_ITEMS
    if wanted == "pure-goods-and-bads":
        return cls is ProblemClass.PURE_GOODS_AND_BADS
    return cls.without_mixed_items


def gen_random_instance(cfg: GenConfig) -> Instance:
    """Deterministic (per seed) random instance of the requested class."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_tries):
        matrix = _sample_signs(rng, cfg)
        if cfg.model == "additive":
            inst = Instance.additive(matrix)
        else:
            inst = Instance.general(_general_from_signs(rng, matrix))
        if not _class_ok(detect_problem_class(inst), cfg.utility_class):
            continue
        if cfg.normalise:
            try:
                inst = normalise(inst)
            except (ZeroTotal, SignMismatch):
                continue
        return inst
    raise RejectionCapExceeded(f"no {cfg.utility_class} instance after {cfg.max_tries} tries")


# --------------------------------------------------------------------------
# implication audit

STATED_JF_CHAIN = (P.JFX_0, P.JFX, P.JF1_0, P.JF1)
STATED_EF_CHAIN = (P.EFX_0, P.EFX, P.EF1)


def _links(chain) -> list[tuple[Property, Property]]:
    return list(zip(chain, chain[1:]))


def proven_links(inst: Instance) -> list[tuple[Property, Property]]:
    """Implications that follow from the implemented definitions on ``inst``.

    Weakening a qualifier enlarges a "for all" and shrinks nothing, so the
    _0 variants imply their strict versions. JF1's witnesses are a subset of
    JF1_0's. With additive utilities a jealous (envious) agent always has a
    qualifying item, so JFX implies JF1 and EFX implies EF1.
    """
    links = [(P.JFX_0, P.JFX), (P.JF1, P.JF1_0), (P.EFX_0, P.EFX)]
    if inst.is_additive:
        links += [(P.JFX, P.JF1), (P.EFX, P.EF1)]
    return links


@dataclass
class AuditTable:
    verdicts: dict[Property, bool]
    stated_breaks: list[tuple[Property, Property]]

    def __getitem__(self, prop: Property | str) -> bool:
        return self.verdicts[Property.parse(prop)]


def implication_audit(inst: Instance, alloc: Allocation, with_po: bool = True) -> AuditTable:
    """All nine verdicts plus the stated-chain links that fail.

    Raises ChainViolation when a link from :func:`proven_links` fails.
    """
    verdicts = {}
    for prop in Property:
        if prop is P.PO and not with_po:
            continue
        verdicts[prop] = satisfies(inst, alloc, prop)
    for x, y in proven_links(inst):
        if verdicts[x] and not verdicts[y]:
            raise ChainViolation(f"{x} holds but {y} fails for {alloc.owners}")
    breaks = [(x, y) for x, y in _links(STATED_JF_CHAIN) + _links(STATED_EF_CHAIN) if verdicts[x] and not verdicts[y]]
    return AuditTable(verdicts, breaks)


# --------------------------------------------------------------------------
# theorem suites

NO_MIXED = ("goods", "bads", "goods-and-bads", "pure-goods-and-bads")
ANY_CLASS = UTILITY_CLASSES


@dataclass
class SuiteReport:
    name: str
    instances: int
    checks: int
    failures: list[str]
    millis: float

    @property
    def passed(self) -> bool:
        return not self.failures


def _draw(rng: random.Random, classes, *, n_max=3, m_max=7, general=True, two_agents=False, norm=False) -> Instance:
    """One random instance: additive n<=3, m<=7 or general n=2, m<=4."""
    use_general = general and rng.random() < 0.3
    n = 2 if (two_agents or use_general) else rng.randint(2, n_max)
    utility_class = rng.choice(classes)
    # one mixed item alone cannot give every agent a total of the same sign
    m = rng.randint(2 if norm and utility_class == "mixed" else 1, 4 if use_general else m_max)
    cfg = GenConfig(
        n=n, m=m, utility_class=utility_class,
        low=-6, high=6, normalise=norm,
        model="general" if use_general else "additive",
        seed=rng.getrandbits(32),
    )
    return gen_random_instance(cfg)


def _remark1(inst):
    return {"leximin PO": is_po(inst, solve_leximin(inst))[0]}


def _theorem3(inst):
    return {"leximin++ JFX": satisfies(inst, solve_leximin_pp(inst), P.JFX)}


def _theorem5(inst):
    alloc = jf1zero_greedy(inst)
    out = {"greedy JF1_0": satisfies(inst, alloc, P.JF1_0)}
    prefixes = all(
        satisfies(inst.restrict(t), Allocation(alloc.owners[:t], inst.n), P.JF1_0)
        for t in range(1, inst.m + 1)
    )
    out["every prefix JF1_0"] = prefixes
    return out


def _theorem6(inst):
    alloc = solve_leximin(inst)
    return {"leximin EFX": satisfies(inst, alloc, P.EFX), "leximin PO": is_po(inst, alloc)[0]}


def _theorem7(inst):
    alloc = solve_leximin_pp(inst)
    return {"leximin++ JFX": satisfies(inst, alloc, P.JFX), "leximin++ EFX": satisfies(inst, alloc, P.EFX)}


def _corollary1(inst):
    alloc = solve_leximin(inst)
    return {"leximin JFX": satisfies(inst, alloc, P.JFX), "leximin PO": is_po(inst, alloc)[0]}


def _corollary2(inst):
    alloc = solve_leximin(inst)
    return {
        "leximin JFX": satisfies(inst, alloc, P.JFX),
        "leximin EFX": satisfies(inst, alloc, P.EFX),
        "leximin PO": is_po(inst, alloc)[0],
    }


SUITES: dict[str, tuple[Callable, dict]] = {
    "remark1": (_remark1, dict(classes=ANY_CLASS)),
    "theorem3": (_theorem3, dict(classes=NO_MIXED)),
    "theorem5": (_theorem5, dict(classes=NO_MIXED)),
    "theorem6": (_theorem6, dict(classes=ANY_CLASS, general=False, two_agents=True, norm=True)),
    "theorem7": (_theorem7, dict(classes=NO_MIXED, general=False, two_agents=True, norm=True)),
    "corollary1": (_corollary1, dict(classes=("pure-goods-and-bads",))),
    "corollary2": (_corollary2, dict(classes=("pure-goods-and-bads",), general=False, two_agents=True, norm=True)),
}


def suite_instances(name: str, count: int = 200, seed: int = 0) -> Iterator[Instance]:
    _, opts = SUITES[name]
    rng = random.Random(f"{name}:{seed}")
    for _ in range(count):
        yield _draw(rng, **opts)


def run_suite(name: str, count: int = 200, seed: int = 0) -> SuiteReport:
    check, _ = SUITES[name]
    start = time.perf_counter()
    failures = []
    checks = 0
    for i, inst in enumerate(suite_instances(name, count, seed)):
        for label, ok in check(inst).items():
            checks += 1
            if not ok:
                failures.append(f"instance {i}: {label} failed")
    return SuiteReport(name, count, checks, failures, (time.perf_counter() - start) * 1000)


@dataclass
class ChainReport:
    pairs: int
    stated_breaks: dict[str, int]
    proven_breaks: list[str]
    example: tuple[Instance, Allocation] | None = None

    @property
    def passed(self) -> bool:
        return not self.proven_breaks and not any(self.stated_breaks.values())


def run_chain_suite(count: int = 400, per_instance: int = 100, seed: int = 0) -> ChainReport:
    """Audit both stated chains on sampled (instance, allocation) pairs."""
    rng = random.Random(f"chains:{seed}")
    stated = {f"{x}->{y}": 0 for x, y in _links(STATED_JF_CHAIN) + _links(STATED_EF_CHAIN)}
    proven: list[str] = []
    example = None
    pairs = 0
    for i in range(count):
        inst = _draw(rng, ANY_CLASS)
        total = inst.allocation_count
        if total <= per_instance:
            indices = range(total)
        else:
            indices = sorted(rng.sample(range(total), per_instance))
        for idx in indices:
            alloc = Allocation.from_index(idx, inst.n, inst.m)
            pairs += 1
            try:
                table = implication_audit(inst, alloc, with_po=False)
            except ChainViolation as exc:
                proven.append(f"instance {i}: {exc}")
                continue
            for x, y in table.stated_breaks:
                stated[f"{x}->{y}"] += 1
                if example is None:
                    example = (inst, alloc)
    return ChainReport(pairs, stated, proven, example)


def find_leximin_pp_not_po(count: int = 200, seed: int = 0) -> tuple[Instance, Allocation] | None:
    """Look for an instance whose leximin++ allocation is not PO (none is guaranteed)."""
    rng = random.Random(f"lexpp-po:{seed}")
    for _ in range(count):
        inst = _draw(rng, NO_MIXED, general=False)
        alloc = solve_leximin_pp(inst)
        if not is_po(inst, alloc)[0]:
            return inst, alloc
    return None


def parse_value_range(text: str) -> tuple[int, int]:
    lo, hi = (int(to_rational(x)) for x in text.split(":"))
    return lo, hi
