"""Fairness axioms, exhaustive solvers and hardness reductions for mixed manna."""
from fairmanna.axioms import Property, Verdict, Violation, check, check_ef, check_jf, is_equitable, is_jealous, is_po, satisfies
from fairmanna.core import (
    Allocation,
    Instance,
    ItemClass,
    ProblemClass,
    allocation_from_labels,
    classify_item_additive,
    classify_marginal,
    detect_problem_class,
    item_class_in_allocation,
    normalise,
)
from fairmanna.errors import FairMannaError
from fairmanna.solvers import (
    all_satisfying,
    assign_one_each,
    exists_allocation,
    jf1zero_greedy,
    solve_leximin,
    solve_leximin_pp,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "FairMannaError",
    "Instance",
    "ItemClass",
    "ProblemClass",
    "Property",
    "Verdict",
    "Violation",
    "all_satisfying",
    "allocation_from_labels",
    "assign_one_each",
    "check",
    "check_ef",
    "check_jf",
    "classify_item_additive",
    "classify_marginal",
    "detect_problem_class",
    "exists_allocation",
    "is_equitable",
    "is_jealous",
    "is_po",
    "item_class_in_allocation",
    "jf1zero_greedy",
    "normalise",
    "satisfies",
    "solve_leximin",
    "solve_leximin_pp",
]
