"""
Syntactic analyses: variables, subformula occurrences, scopes and fragment
classification.
"""

import re
from collections import Counter
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

from syntax.formula import (
    ATOM_TYPES,
    BODY,
    LEFT,
    RIGHT,
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    Formula,
    IncAtom,
    IndAtom,
    InvalidPathError,
    Literal,
    NotAnAtomError,
    SubformulaPath,
)


def children(formula: Formula) -> List[Tuple[str, Formula]]:
    if isinstance(formula, (Conj, Disj)):
        return [(LEFT, formula.left), (RIGHT, formula.right)]
    if isinstance(formula, (Exists, Forall)):
        return [(BODY, formula.body)]
    return []


def iter_subformulas(formula: Formula, path: SubformulaPath = ()) -> Iterator[Tuple[SubformulaPath, Formula]]:
    """Yield (path, subformula) for every occurrence, in pre-order."""
    yield path, formula
    for selector, child in children(formula):
        yield from iter_subformulas(child, path + (selector,))


def subformula_at(formula: Formula, path: SubformulaPath) -> Formula:
    current = formula
    for depth, selector in enumerate(path):
        for name, child in children(current):
            if name == selector:
                current = child
                break
        else:
            raise InvalidPathError(
                f"Invalid subformula path {'/'.join(path)}: no '{selector}' child at depth {depth}"
            )
    return current


def subformula_scope_list(formula: Formula, path: SubformulaPath) -> Tuple[str, ...]:
    """Quantified variables in whose scope the occurrence at path lies, outermost first."""
    scope = []
    current = formula
    for depth, selector in enumerate(path):
        if isinstance(current, (Exists, Forall)) and selector == BODY:
            scope.append(current.variable)
        for name, child in children(current):
            if name == selector:
                current = child
                break
        else:
            raise InvalidPathError(
                f"Invalid subformula path {'/'.join(path)}: no '{selector}' child at depth {depth}"
            )
    return tuple(scope)


def subformula_scope(formula: Formula, path: SubformulaPath) -> FrozenSet[str]:
    """
    The set of variables the occurrence at path is evaluated over when the
    whole formula is evaluated as a sentence: empty at the root, unchanged
    through connectives, extended by the bound variable through quantifiers.
    """
    return frozenset(subformula_scope_list(formula, path))


def atom_variables(formula: Formula) -> Tuple[str, ...]:
    """Variables listed in a literal or atom, in order of appearance (with repeats)."""
    if isinstance(formula, Literal):
        return formula.args
    if isinstance(formula, DepAtom):
        return formula.condition + (formula.determined,)
    if isinstance(formula, IndAtom):
        return formula.condition + formula.left + formula.right
    if isinstance(formula, IncAtom):
        return formula.left + formula.right
    raise NotAnAtomError(f"Not an atomic formula: {formula!r}")


@lru_cache(maxsize=65536)
def free_variables(formula: Formula) -> FrozenSet[str]:
    if isinstance(formula, (Literal,) + ATOM_TYPES):
        return frozenset(atom_variables(formula))
    if isinstance(formula, (Conj, Disj)):
        return free_variables(formula.left) | free_variables(formula.right)
    if isinstance(formula, (Exists, Forall)):
        return free_variables(formula.body) - {formula.variable}
    raise TypeError(f"Not a formula: {formula!r}")


def bound_variables(formula: Formula) -> List[str]:
    """Quantified variables in pre-order, with repeats when a name is bound twice."""
    return [sub.variable for _, sub in iter_subformulas(formula) if isinstance(sub, (Exists, Forall))]


def all_variables(formula: Formula) -> FrozenSet[str]:
    names = set(bound_variables(formula))
    for _, sub in iter_subformulas(formula):
        if isinstance(sub, (Literal,) + ATOM_TYPES):
            names.update(atom_variables(sub))
    return frozenset(names)


def atoms(formula: Formula) -> List[Formula]:
    """Dependence, independence and inclusion atoms, in pre-order."""
    return [sub for _, sub in iter_subformulas(formula) if isinstance(sub, ATOM_TYPES)]


@lru_cache(maxsize=65536)
def is_first_order(formula: Formula) -> bool:
    if isinstance(formula, Literal):
        return True
    if isinstance(formula, ATOM_TYPES):
        return False
    return all(is_first_order(child) for _, child in children(formula))


def is_quantifier_free(formula: Formula) -> bool:
    return not any(isinstance(sub, (Exists, Forall)) for _, sub in iter_subformulas(formula))


def universal_count(formula: Formula) -> int:
    return sum(1 for _, sub in iter_subformulas(formula) if isinstance(sub, Forall))


def predicates(formulas: Iterable[Formula]) -> Dict[str, int]:
    """Relation symbols used by the formulas, with their arities."""
    found = {}
    for formula in formulas:
        for _, sub in iter_subformulas(formula):
            if isinstance(sub, Literal) and not sub.is_equality:
                arity = found.setdefault(sub.predicate, len(sub.args))
                if arity != len(sub.args):
                    raise ValueError(
                        f"Predicate {sub.predicate} used with arities {arity} and {len(sub.args)}"
                    )
    return found


def nonconditional_variables(atom: Formula) -> FrozenSet[str]:
    """
    Variables whose constancy on a team suffices for the atom to hold.

    Raises:
        NotAnAtomError: If the formula is not a dependence, independence or inclusion atom
    """
    if isinstance(atom, DepAtom):
        return frozenset([atom.determined])
    if isinstance(atom, IndAtom):
        return frozenset(atom.left + atom.right)
    if isinstance(atom, IncAtom):
        return frozenset(atom.left + atom.right)
    raise NotAnAtomError(f"Not a dependence, independence or inclusion atom: {atom!r}")


@dataclass(frozen=True)
class FragmentProfile:
    universal_count: int
    max_dep_condition_arity: int
    max_ind_distinct_vars: int
    max_inc_width: int
    quantified_exactly_once: bool
    is_sentence: bool

    def in_fragment(self, kind: str, k: int) -> bool:
        """
        Membership in one of the k-dep, k-ind, k-inc or k-forall fragments.

        The k-forall fragment also requires a sentence in which every variable
        is quantified exactly once.
        """
        if kind == 'dep':
            return self.is_sentence and self.max_dep_condition_arity <= k
        if kind == 'ind':
            return self.is_sentence and self.max_ind_distinct_vars <= k
        if kind == 'inc':
            return self.is_sentence and self.max_inc_width <= k
        if kind == 'forall':
            return self.is_sentence and self.quantified_exactly_once and self.universal_count <= k
        raise ValueError(f"Unknown fragment kind: {kind}")

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


def classify_fragment(formula: Formula) -> FragmentProfile:
    dep_arity = ind_vars = inc_width = 0
    for atom in atoms(formula):
        if isinstance(atom, DepAtom):
            dep_arity = max(dep_arity, len(atom.condition))
        elif isinstance(atom, IndAtom):
            ind_vars = max(ind_vars, len(set(atom_variables(atom))) - 1)
        else:
            inc_width = max(inc_width, len(atom.left))

    bound = bound_variables(formula)
    free = free_variables(formula)
    once = max(Counter(bound).values(), default=1) == 1 and not (set(bound) & free)
    return FragmentProfile(
        universal_count=universal_count(formula),
        max_dep_condition_arity=dep_arity,
        max_ind_distinct_vars=ind_vars,
        max_inc_width=inc_width,
        quantified_exactly_once=once,
        is_sentence=not free,
    )


def fresh_variable(avoid: Iterable[str], base: str = 'x') -> str:
    """The first of base_0, base_1, ... that is not in avoid."""
    avoid = set(avoid)
    stem = re.sub(r"_\d+$", '', base) or 'x'
    counter = 0
    while f"{stem}_{counter}" in avoid:
        counter += 1
    return f"{stem}_{counter}"
