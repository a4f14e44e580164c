import itertools

import pytest

import oracles
from fairmanna.axioms import Property, satisfies
from fairmanna.core import Allocation, Instance, allocation_from_labels
from fairmanna.errors import GeneralModelError, MixedItemEncountered, TooLarge, TooManyItems
from fairmanna.paperlab import fixture
from fairmanna.solvers import (
    all_satisfying,
    assign_one_each,
    enumerate_allocations,
    exists_allocation,
    jf1zero_greedy,
    jf1zero_rounds,
    leximin_pp_search,
    leximin_search,
    solve_leximin,
    solve_leximin_pp,
)


def labels(inst, a):
    return a.labelled(inst)


@pytest.mark.parametrize("n, m, count", [(2, 3, 8), (3, 3, 27), (2, 1, 2)])
def test_enumeration_counts_and_order(n, m, count):
    inst = Instance.additive([[0] * m] * n)
    got = [a.owners for a in enumerate_allocations(inst)]
    assert len(got) == count
    assert got == list(itertools.product(range(n), repeat=m))
    assert [a.index for a in enumerate_allocations(inst)] == list(range(count))


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        list(enumerate_allocations(Instance.additive([[1] * 4] * 2), cap=15))


def test_leximin_prop3():
    inst = fixture("prop3").instance
    a = solve_leximin(inst)
    assert labels(inst, a) == [["a", "b", "d"], ["c"]]
    assert a.utilities(inst) == (2, 0)


def test_leximin_single_item_goes_to_higher_value():
    inst = Instance.additive([[5], [1]])
    assert solve_leximin(inst).owners == (0,)


def test_leximin_ties_go_to_index_zero():
    inst = Instance.additive([[0, 0, 0], [0, 0, 0]])
    assert solve_leximin(inst).index == 0
    # leximin++ still separates them by size: the first 2/1 split wins
    assert solve_leximin_pp(inst).owners == (0, 0, 1)


def test_leximin_pp_example2():
    inst = fixture("example2").instance
    a = solve_leximin_pp(inst)
    assert a.utilities(inst) == (-3, -3)
    assert labels(inst, a) == [["a", "b"], ["c"]]


def test_leximin_pp_prop3_prefers_larger_worst_bundle():
    inst = fixture("prop3").instance
    res = leximin_pp_search(inst)
    assert labels(inst, res.allocation) == [["a", "d"], ["b", "c"]]
    assert res.key == ((0, 2), (1, 2))
    assert labels(inst, solve_leximin(inst)) == [["a", "b", "d"], ["c"]]
    assert not satisfies(inst, res.allocation, Property.PO)


def test_leximin_pp_equals_leximin_when_sizes_never_matter():
    inst = Instance.additive([[3, 1], [1, 3]])
    assert solve_leximin_pp(inst) == solve_leximin(inst)


@pytest.mark.parametrize("fid", ["example2", "example3", "example4", "prop1", "prop2", "prop3", "prop5", "prop6_eps", "prop7", "example1"])
def test_solvers_match_oracles(fid):
    inst = fixture(fid).instance
    assert solve_leximin(inst).bundles == oracles.leximin(inst)
    assert solve_leximin_pp(inst).bundles == oracles.leximin_pp(inst)


def test_leximin_key_dominates_every_allocation():
    inst = fixture("prop7").instance
    res = leximin_search(inst)
    best = tuple(sorted(res.allocation.utilities(inst)))
    assert res.key == best
    for a in enumerate_allocations(inst):
        assert tuple(sorted(a.utilities(inst))) <= best


def test_greedy_example2_trace():
    inst = fixture("example2").instance
    assert list(jf1zero_rounds(inst)) == [(0, 0), (1, 1), (2, 0)]
    a = jf1zero_greedy(inst)
    assert labels(inst, a) == [["a", "c"], ["b"]]
    assert a.utilities(inst) == (-4, -2)
    assert satisfies(inst, a, "JF1_0")


def test_greedy_zero_marginal_branch():
    inst = Instance.additive([[1, 1], [2, 0]])
    assert labels(inst, jf1zero_greedy(inst)) == [["a"], ["b"]]


def test_greedy_rejects_mixed_items():
    with pytest.raises(MixedItemEncountered) as exc:
        jf1zero_greedy(fixture("prop1").instance)
    assert exc.value.round == 1 and exc.value.item == "a"


def test_greedy_is_online():
    # later items cannot change earlier decisions
    inst = fixture("prop7").instance
    full = jf1zero_greedy(inst)
    for t in range(1, inst.m + 1):
        assert jf1zero_greedy(inst.restrict(t)).owners == full.owners[:t]


def test_exists_examples():
    rep = exists_allocation(fixture("prop1").instance, ["JF1"])
    assert rep.found is None and rep.explored == 8 and rep.exhaustive
    rep = exists_allocation(fixture("prop3").instance, ["JF1", "PO"])
    assert rep.found is None and rep.explored == 16
    inst = fixture("prop3").instance
    rep = exists_allocation(inst, ["PO"])
    assert labels(inst, rep.found) == [["a", "b", "d"], ["c"]]
    assert not rep.exhaustive
    rep = exists_allocation(inst, [])
    assert rep.found.index == 0 and rep.explored == 1


def test_exists_matches_all_satisfying():
    inst = fixture("example3").instance
    for props in (["JF1"], ["EF1", "PO"], ["JFX_0"], ["EQUITABLE"]):
        hits = all_satisfying(inst, props)
        rep = exists_allocation(inst, props)
        assert (rep.found is None) == (not hits)
        if hits:
            assert rep.found == hits[0] and rep.explored == hits[0].index + 1


def test_one_each_examples():
    assert assign_one_each(Instance.additive([[3], [5]])).owners == (1,)
    eye = Instance.additive([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert assign_one_each(eye).owners == (0, 1, 2)
    bads = Instance.additive([[-1, -2]] * 3)
    assert assign_one_each(bads).owners == (0, 1)


def test_one_each_errors():
    with pytest.raises(TooManyItems):
        assign_one_each(Instance.additive([[1, 1, 1], [1, 1, 1]]))
    with pytest.raises(GeneralModelError):
        assign_one_each(fixture("example1").instance)


def test_one_each_on_pure_goods_is_fair_and_efficient():
    inst = Instance.additive([[4, 1, 2], [3, 3, 1], [1, 2, 5]])
    a = assign_one_each(inst)
    assert a.owners == oracles.best_one_each(inst)
    for p in ("JFX", "EFX", "PO"):
        assert satisfies(inst, a, p)


def test_greedy_on_general_goods():
    inst = fixture("prop6_eps").instance
    a = jf1zero_greedy(inst)
    assert a.bundles == oracles.greedy_jf1zero(inst)
    assert satisfies(inst, a, "JF1_0")


def test_allocation_equality_is_structural():
    inst = fixture("example2").instance
    assert allocation_from_labels(inst, [["a", "c"], ["b"]]) == Allocation((0, 1, 0), 2)
