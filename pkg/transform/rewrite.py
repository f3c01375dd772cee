"""
Equivalence-preserving rewrites of formulas: variable renaming,
relativization of atoms, independence contraction and the rewriting of
dependence atoms as independence atoms.
"""

from typing import Callable, Dict, Iterable, Set

from syntax.analysis import all_variables, free_variables, fresh_variable
from syntax.formula import (
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    Formula,
    IncAtom,
    IndAtom,
    Literal,
)


class VariableCaptureError(ValueError):
    pass


def map_atoms(formula: Formula, rewrite: Callable[[Formula], Formula]) -> Formula:
    """Rebuild a formula with every literal and atom replaced by rewrite(atom)."""
    if isinstance(formula, Conj):
        return Conj(map_atoms(formula.left, rewrite), map_atoms(formula.right, rewrite))
    if isinstance(formula, Disj):
        return Disj(map_atoms(formula.left, rewrite), map_atoms(formula.right, rewrite))
    if isinstance(formula, (Exists, Forall)):
        return type(formula)(formula.variable, map_atoms(formula.body, rewrite))
    return rewrite(formula)


def substitute(formula: Formula, mapping: Dict[str, str]) -> Formula:
    """Replace variable names everywhere, including quantified positions. No capture checks."""
    def rename(name: str) -> str:
        return mapping.get(name, name)

    def names(variables):
        return tuple(rename(v) for v in variables)

    if isinstance(formula, Literal):
        return Literal(formula.positive, formula.predicate, names(formula.args))
    if isinstance(formula, DepAtom):
        return DepAtom(names(formula.condition), rename(formula.determined))
    if isinstance(formula, IndAtom):
        return IndAtom(names(formula.condition), names(formula.left), names(formula.right))
    if isinstance(formula, IncAtom):
        return IncAtom(names(formula.left), names(formula.right))
    if isinstance(formula, Conj):
        return Conj(substitute(formula.left, mapping), substitute(formula.right, mapping))
    if isinstance(formula, Disj):
        return Disj(substitute(formula.left, mapping), substitute(formula.right, mapping))
    if isinstance(formula, (Exists, Forall)):
        return type(formula)(rename(formula.variable), substitute(formula.body, mapping))
    raise TypeError(f"Not a formula: {formula!r}")


def rename_variable(formula: Formula, old: str, new: str) -> Formula:
    """
    Replace every occurrence of old by new.

    Raises:
        VariableCaptureError: If new already occurs in the formula
    """
    if old == new:
        return formula
    if new in all_variables(formula):
        raise VariableCaptureError(f"Cannot rename {old} to {new}: {new} already occurs in the formula")
    return substitute(formula, {old: new})


def relativize(variables: Iterable[str], formula: Formula) -> Formula:
    """
    Prefix the conditions of every atom by the given variables, so each atom
    is evaluated separately on every selection of the team by their values.
    First-order literals are left untouched.
    """
    prefix = tuple(variables)

    def rewrite(atom: Formula) -> Formula:
        if isinstance(atom, DepAtom):
            return DepAtom(prefix + atom.condition, atom.determined)
        if isinstance(atom, IndAtom):
            return IndAtom(prefix + atom.condition, atom.left, atom.right)
        if isinstance(atom, IncAtom):
            return IncAtom(prefix + atom.left, prefix + atom.right)
        return atom

    return map_atoms(formula, rewrite)


def swap_independence(atom: IndAtom) -> IndAtom:
    """Symmetry: left ⊥ right given the condition iff right ⊥ left."""
    return IndAtom(atom.condition, atom.right, atom.left)


def _contract_left(atom: IndAtom) -> list:
    if len(atom.left) <= 1:
        return [atom]
    *rest, last = atom.left
    return (
        _contract_left(IndAtom(atom.condition + (last,), tuple(rest), atom.right))
        + [IndAtom(atom.condition, (last,), atom.right)]
    )


def contract_atom(atom: IndAtom, both_sides: bool = True) -> list:
    """
    Split an independence atom into atoms with a single variable on the left
    (and on the right when both_sides is set), using
    ȳv ⊥_x̄ z̄  ≡  ȳ ⊥_x̄v z̄  ∧  v ⊥_x̄ z̄.
    """
    contracted = _contract_left(atom)
    if not both_sides:
        return contracted
    result = []
    for unit in contracted:
        result.extend(swap_independence(part) for part in _contract_left(swap_independence(unit)))
    return result


def contract_independence(formula: Formula, both_sides: bool = True) -> Formula:
    def rewrite(atom: Formula) -> Formula:
        if isinstance(atom, IndAtom):
            parts = contract_atom(atom, both_sides)
            result = parts[0]
            for part in parts[1:]:
                result = Conj(result, part)
            return result
        return atom

    return map_atoms(formula, rewrite)


def dep_to_independence(formula: Formula) -> Formula:
    """dep(x̄; y) becomes ind(x̄; y; y)."""
    def rewrite(atom: Formula) -> Formula:
        if isinstance(atom, DepAtom):
            return IndAtom(atom.condition, (atom.determined,), (atom.determined,))
        return atom

    return map_atoms(formula, rewrite)


def normalize_bound_variables(formula: Formula) -> Formula:
    """
    Rename quantified variables so that every variable is quantified exactly
    once and no quantified name also occurs free.
    """
    used: Set[str] = set(all_variables(formula))
    free = free_variables(formula)
    seen: Set[str] = set()

    def walk(node: Formula, env: Dict[str, str]) -> Formula:
        if isinstance(node, (Conj, Disj)):
            return type(node)(walk(node.left, env), walk(node.right, env))
        if isinstance(node, (Exists, Forall)):
            name = node.variable
            if name in seen or name in free:
                name = fresh_variable(used, base=node.variable)
                used.add(name)
            seen.add(node.variable)
            seen.add(name)
            return type(node)(name, walk(node.body, {**env, node.variable: name}))
        return substitute(node, env)

    return walk(formula, {})
