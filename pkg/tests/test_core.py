from fractions import Fraction

import pytest

from fairmanna.core import (
    Allocation,
    Instance,
    ItemClass,
    ProblemClass,
    allocation_from_labels,
    classify_item_additive,
    classify_marginal,
    detect_problem_class,
    enum_cap,
    is_normalised,
    item_class_in_allocation,
    marginal,
    normalise,
    to_rational,
    totals,
)
from fairmanna.errors import (
    GeneralModelError,
    InvalidAllocation,
    InvalidInstance,
    ItemInBundle,
    SignMismatch,
    TooLarge,
    ZeroTotal,
)
from fairmanna.paperlab import fixture


def test_rationals_parse_exactly():
    assert to_rational("-1/2") == Fraction(-1, 2)
    assert to_rational("0.1") == Fraction(1, 10)
    assert to_rational(3) == Fraction(3)
    assert to_rational(0.1) == Fraction(1, 10)  # read as written, not as the binary double
    for bad in ("x", "1/0", True, None):
        with pytest.raises(InvalidInstance):
            to_rational(bad)


def test_instance_validation():
    with pytest.raises(InvalidInstance):
        Instance.additive([[1, 2], [3]])
    with pytest.raises(InvalidInstance):
        Instance.additive([[1, 2]])  # one agent
    with pytest.raises(InvalidInstance):
        Instance.additive([[1], [2]], ["a", "a"])
    with pytest.raises(InvalidInstance):
        Instance.general([[0, 1, 2], [0, 1, 2]])


def test_general_tables_index_by_bitmask():
    inst = fixture("example1").instance
    assert inst.value(0, inst.mask_of(["a", "c", "d"])) == 4
    assert inst.value(1, inst.mask_of(["a", "b", "d"])) == Fraction(3, 2)
    assert inst.value(0, inst.mask_of(["a"])) == 0


def test_canonical_index_is_big_endian():
    assert Allocation.from_index(0, 2, 3).owners == (0, 0, 0)
    assert Allocation.from_index(1, 2, 3).owners == (0, 0, 1)
    assert Allocation.from_index(4, 2, 3).owners == (1, 0, 0)
    for idx in range(27):
        assert Allocation.from_index(idx, 3, 3).index == idx


def test_allocation_from_labels_rejects_bad_input():
    inst = fixture("example2").instance
    with pytest.raises(InvalidAllocation):
        allocation_from_labels(inst, [["a", "b"], ["b", "c"]])
    with pytest.raises(InvalidAllocation):
        allocation_from_labels(inst, [["a"], ["b"]])
    with pytest.raises(InvalidAllocation):
        allocation_from_labels(inst, [["a"], ["b"], ["c"]])


def test_example1_item_a_changes_class_with_the_bundle():
    inst = fixture("example1").instance
    assert classify_marginal(inst, 0, "a", ["b"]) is ItemClass.PURE_GOOD
    assert classify_marginal(inst, 0, "a", ["c"]) is ItemClass.PURE_BAD
    assert marginal(inst, 0, "a", ["b"]) == 1
    assert marginal(inst, 0, "a", ["c"]) == -1
    ab_cd = allocation_from_labels(inst, [["a", "b"], ["c", "d"]])
    ac_bd = allocation_from_labels(inst, [["a", "c"], ["b", "d"]])
    assert item_class_in_allocation(inst, ab_cd, "a") is ItemClass.PURE_GOOD
    assert item_class_in_allocation(inst, ac_bd, "a") is ItemClass.PURE_BAD
    with pytest.raises(ItemInBundle):
        marginal(inst, 0, "a", ["a", "b"])


def test_additive_item_classes():
    prop1 = fixture("prop1").instance
    assert [classify_item_additive(prop1, o) for o in "abc"] == [ItemClass.MIXED, ItemClass.MIXED, ItemClass.BAD]
    prop2 = fixture("prop2").instance
    assert [classify_item_additive(prop2, o) for o in "abc"] == [ItemClass.PURE_GOOD, ItemClass.BAD, ItemClass.BAD]
    with pytest.raises(GeneralModelError):
        classify_item_additive(fixture("example1").instance, "a")


@pytest.mark.parametrize(
    "fid, expected",
    [
        ("prop1", ProblemClass.WITH_MIXED_ITEMS),
        ("prop2", ProblemClass.PURE_GOODS_AND_BADS),
        ("prop3", ProblemClass.WITHOUT_MIXED_ITEMS),
        ("example2", ProblemClass.PURE_GOODS_AND_BADS),
        ("example4", ProblemClass.WITHOUT_MIXED_ITEMS),
        ("prop6_eps", ProblemClass.PURE_GOODS_AND_BADS),
        ("example1", ProblemClass.WITH_MIXED_ITEMS),
    ],
)
def test_problem_classes(fid, expected):
    assert detect_problem_class(fixture(fid).instance) is expected


def test_normalise_example3():
    inst = fixture("example3").instance
    assert not is_normalised(inst)
    norm = normalise(inst)
    assert is_normalised(norm)
    assert norm.utilities.matrix[0] == (Fraction(1, 4),) * 4
    assert totals(normalise(inst, 4)) == (4, 4)


def test_normalise_errors():
    with pytest.raises(ZeroTotal):
        normalise(Instance.additive([[1, -1], [1, 1]]))
    with pytest.raises(SignMismatch):
        normalise(Instance.additive([[1, 1], [-1, -1]]))
    with pytest.raises(SignMismatch):
        normalise(Instance.additive([[1, 1], [2, 2]]), -1)


def test_normalise_is_identity_on_normalised_input():
    inst = fixture("prop3").instance
    assert normalise(inst, -3) is inst


def test_enum_cap_reads_environment(monkeypatch):
    monkeypatch.setenv("FAIRMANNA_ENUM_CAP", "100")
    assert enum_cap() == 100
    inst = Instance.additive([[1] * 7, [1] * 7])
    from fairmanna.solvers import enumerate_allocations

    with pytest.raises(TooLarge) as exc:
        next(enumerate_allocations(inst))
    assert "100" in str(exc.value)


def test_restrict_keeps_prefix_items():
    inst = fixture("prop3").instance
    sub = inst.restrict(2)
    assert sub.items == ("a", "b")
    assert sub.utilities.matrix == ((1, 1), (0, 0))
    general = fixture("example1").instance.restrict(2)
    assert general.value(0, general.mask_of(["a", "b"])) == 2
