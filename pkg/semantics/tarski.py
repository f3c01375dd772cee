"""Single-assignment (Tarski) semantics for first-order formulas."""

from typing import Mapping

from structures.structure import Structure
from structures.team import Team
from syntax.analysis import is_first_order
from syntax.formula import ATOM_TYPES, Conj, Disj, Exists, Forall, Formula, Literal


class NotFirstOrderError(ValueError):
    pass


def literal_holds(structure: Structure, assignment: Mapping[str, int], literal: Literal) -> bool:
    values = tuple(assignment[v] for v in literal.args)
    if literal.is_equality:
        truth = values[0] == values[1]
    else:
        truth = structure.holds(literal.predicate, values)
    return truth == literal.positive


def holds(structure: Structure, assignment: Mapping[str, int], formula: Formula) -> bool:
    """
    Truth of a first-order formula under one assignment.

    Raises:
        NotFirstOrderError: If a dependence, independence or inclusion atom is reached
    """
    if isinstance(formula, Literal):
        return literal_holds(structure, assignment, formula)
    if isinstance(formula, Conj):
        return holds(structure, assignment, formula.left) and holds(structure, assignment, formula.right)
    if isinstance(formula, Disj):
        return holds(structure, assignment, formula.left) or holds(structure, assignment, formula.right)
    if isinstance(formula, Exists):
        return any(
            holds(structure, {**assignment, formula.variable: value}, formula.body)
            for value in structure.domain
        )
    if isinstance(formula, Forall):
        return all(
            holds(structure, {**assignment, formula.variable: value}, formula.body)
            for value in structure.domain
        )
    if isinstance(formula, ATOM_TYPES):
        raise NotFirstOrderError(f"Tarski semantics does not apply to {type(formula).__name__}")
    raise TypeError(f"Not a formula: {formula!r}")


def check_flatness_shortcut(structure: Structure, team: Team, formula: Formula) -> bool:
    """
    Evaluate a first-order formula on a team assignment by assignment.

    Raises:
        NotFirstOrderError: If the formula contains a dependence, independence or inclusion atom
    """
    if not is_first_order(formula):
        raise NotFirstOrderError("The flatness shortcut only applies to first-order formulas")
    return all(holds(structure, assignment, formula) for assignment in team.assignments())
