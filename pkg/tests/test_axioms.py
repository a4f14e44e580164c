import json
from fractions import Fraction

import pytest

import oracles
from fairmanna.axioms import Property, check, check_ef, check_jf, is_equitable, is_jealous, is_po, satisfies
from fairmanna.core import Allocation, Instance, allocation_from_labels
from fairmanna.errors import SameAgent, TooLarge
from fairmanna.paperlab import fixture


def alloc(fid, *bundles):
    inst = fixture(fid).instance
    return inst, allocation_from_labels(inst, [list(b) for b in bundles])


@pytest.mark.parametrize("text", ["JF1_0", "jf10", "JF1₀", "jf1-0"])
def test_property_parse_spellings(text):
    assert Property.parse(text) is Property.JF1_0


def test_property_round_trip():
    for p in Property:
        assert Property.parse(str(p)) is p
    with pytest.raises(ValueError):
        Property.parse("EF2")


def test_jealousy():
    inst, a = alloc("example2", "ac", "b")
    assert is_jealous(inst, a, 0, 1)
    assert not is_jealous(inst, a, 1, 0)
    inst, a = alloc("prop3", "abd", "c")
    assert is_jealous(inst, a, 1, 0)
    with pytest.raises(SameAgent):
        is_jealous(inst, a, 1, 1)


def test_example2_jf_profile():
    inst, a = alloc("example2", "ac", "b")
    assert check_jf(inst, a, "JF1")[0]
    assert check_jf(inst, a, "JF1_0")[0]
    ok, violations = check_jf(inst, a, "JFX")
    assert not ok and violations
    assert not check_jf(inst, a, "JFX_0")[0]


def test_prop5_all_to_agent_one_is_jf1():
    inst, a = alloc("prop5", "ab", "")
    assert check_jf(inst, a, "JF1")[0]


def test_prop2_jfx0_violation_values():
    inst, a = alloc("prop2", "ab", "c")
    ok, violations = check_jf(inst, a, "JFX_0")
    assert not ok
    assert len(violations) == 1
    v = violations[0]
    assert (v.agent_a, v.agent_b, v.witness_item) == (1, 0, "c")
    assert (v.lhs.value(inst), v.rhs.value(inst)) == (-1, 1)


@pytest.mark.parametrize(
    "bundles, count",
    [(("ab", "c"), 1), (("ac", "b"), 2), (("bc", "a"), 3), (("abc", ""), 1)],
)
def test_prop2_jfx0_violation_counts(bundles, count):
    inst, a = alloc("prop2", *bundles)
    assert len(check_jf(inst, a, "JFX_0")[1]) == count


def test_prop2_bc_a_violations():
    # moving b or c to agent 2 fails, and so does taking a away from agent 2
    inst, a = alloc("prop2", "bc", "a")
    found = {(v.witness_item, v.lhs.value(inst), v.rhs.value(inst)) for v in check_jf(inst, a, "JFX_0")[1]}
    assert found == {("b", -1, 2), ("c", -1, 1), ("a", -1, 0)}


def test_prop2_efx0_violation():
    inst, a = alloc("prop2", "ab", "c")
    ok, violations = check_ef(inst, a, "EFX_0")
    assert not ok
    v = next(v for v in violations if v.agent_a == 1)
    assert (v.lhs.value(inst), v.rhs.value(inst)) == (0, 2)


def test_example2_efx_and_equitability():
    inst, b = alloc("example2", "ab", "c")
    assert check_ef(inst, b, "EFX")[0]
    assert is_equitable(inst, b)
    inst, a = alloc("example2", "ac", "b")
    assert not is_equitable(inst, a)


def test_equal_utilities_satisfy_everything():
    inst = Instance.additive([[1, 2], [2, 1]])
    a = Allocation((1, 0), 2)
    for p in ("JF1", "JF1_0", "JFX", "JFX_0", "EF1", "EFX", "EFX_0"):
        assert satisfies(inst, a, p)


def test_zero_utilities_are_equitable():
    inst = Instance.additive([[0, 0, 0]] * 3)
    assert all(is_equitable(inst, Allocation.from_index(i, 3, 3)) for i in range(27))


def test_po_examples():
    inst, a = alloc("prop3", "abd", "c")
    assert is_po(inst, a) == (True, None)
    inst, a = alloc("prop3", "abcd", "")
    ok, witness = is_po(inst, a)
    assert not ok
    assert witness.labelled(inst) == [["a", "b", "d"], ["c"]]
    tiny = Instance.additive([[1], [0]])
    assert is_po(tiny, Allocation((0,), 2))[0]


def test_po_witness_is_smallest_index():
    inst = fixture("example4").instance
    a = allocation_from_labels(inst, [["a"], ["b", "c", "d"]])
    ok, witness = is_po(inst, a)
    mine = a.utilities(inst)
    better = [
        i for i in range(inst.allocation_count)
        if all(x >= y for x, y in zip(Allocation.from_index(i, 2, 4).utilities(inst), mine))
        and Allocation.from_index(i, 2, 4).utilities(inst) != mine
    ]
    assert not ok and witness.index == min(better)


def test_po_respects_cap():
    inst = Instance.additive([[1] * 5, [1] * 5])
    with pytest.raises(TooLarge):
        is_po(inst, Allocation((0,) * 5, 2), cap=10)


def test_example4_profiles():
    inst, all_one = alloc("example4", "abcd", "")
    assert satisfies(inst, all_one, "EF1") and satisfies(inst, all_one, "PO")
    assert not satisfies(inst, all_one, "JF1")
    inst, split = alloc("example4", "a", "bcd")
    assert satisfies(inst, split, "JF1")
    assert not satisfies(inst, split, "EF1") and not satisfies(inst, split, "PO")


def test_example3_jf1_depends_on_normalisation():
    from fairmanna.core import normalise

    inst, a = alloc("example3", "bcd", "a")
    assert not satisfies(inst, a, "JF1")
    assert satisfies(normalise(inst), a, "JF1")


def test_verdict_json_shape():
    inst, a = alloc("example2", "ac", "b")
    out = check(inst, a, "JFX").to_json(inst)
    assert set(out) == {"property", "holds", "violations"}
    assert out["holds"] is False
    json.dumps(out)


def test_po_verdict_carries_a_rechecked_violation():
    inst, a = alloc("prop3", "abcd", "")
    verdict = check(inst, a, Property.PO)
    assert not verdict.holds and verdict.witness is not None
    assert all(v.recheck(inst) for v in verdict.violations)
    assert verdict.violations[0].agent_b is None


def test_general_fixture_matches_oracle():
    inst = fixture("example1").instance
    for idx in range(inst.allocation_count):
        a = Allocation.from_index(idx, inst.n, inst.m)
        bundles = a.bundles
        for p in Property:
            assert satisfies(inst, a, p) == oracles.holds(inst, bundles, p.value), (idx, p)


def test_rational_utilities():
    inst = Instance.additive([[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 2), Fraction(1, 2)]])
    a = Allocation((0, 1), 2)
    assert a.utilities(inst) == (Fraction(1, 3), Fraction(1, 2))
    assert is_jealous(inst, a, 0, 1)
