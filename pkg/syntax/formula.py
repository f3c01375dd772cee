"""
Abstract syntax of first-order logic with dependence, conditional
independence and inclusion atoms.

Formulas are kept in negation normal form: negation only occurs on
first-order literals. Every node is an immutable dataclass, so formulas are
hashable and can be used as memoization keys.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Tuple, Union

Variables = Tuple[str, ...]

EQUALITY = '='


class FormulaSyntaxError(ValueError):
    """Raised when formula text does not follow the grammar."""

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class InclusionWidthError(FormulaSyntaxError):
    """Raised when the two sides of an inclusion atom differ in length."""


class InvalidPathError(ValueError):
    pass


class NotAnAtomError(ValueError):
    pass


def _variables(values: Iterable[str]) -> Variables:
    return tuple(values)


@dataclass(frozen=True)
class Literal:
    """A possibly negated relational atom, or an (in)equality when predicate is '='."""
    positive: bool
    predicate: str
    args: Variables

    def __post_init__(self):
        object.__setattr__(self, 'args', _variables(self.args))
        if self.predicate == EQUALITY and len(self.args) != 2:
            raise ValueError("Equality literals take exactly two variables")
        if not self.args:
            raise ValueError(f"Literal {self.predicate} needs at least one variable")

    @property
    def is_equality(self) -> bool:
        return self.predicate == EQUALITY


@dataclass(frozen=True)
class DepAtom:
    """dep(condition; determined): the condition functionally determines a variable."""
    condition: Variables
    determined: str

    def __post_init__(self):
        object.__setattr__(self, 'condition', _variables(self.condition))


@dataclass(frozen=True)
class IndAtom:
    """ind(condition; left; right): left is independent of right given condition."""
    condition: Variables
    left: Variables
    right: Variables

    def __post_init__(self):
        object.__setattr__(self, 'condition', _variables(self.condition))
        object.__setattr__(self, 'left', _variables(self.left))
        object.__setattr__(self, 'right', _variables(self.right))
        if not self.left or not self.right:
            raise ValueError("Independence atoms need nonempty left and right tuples")


@dataclass(frozen=True)
class IncAtom:
    """inc(left; right): the values of left are included in the values of right."""
    left: Variables
    right: Variables

    def __post_init__(self):
        object.__setattr__(self, 'left', _variables(self.left))
        object.__setattr__(self, 'right', _variables(self.right))
        if not self.left:
            raise InclusionWidthError("Inclusion atoms need at least one variable per side")
        if len(self.left) != len(self.right):
            raise InclusionWidthError(
                f"Inclusion atom sides differ in width: {len(self.left)} vs {len(self.right)}"
            )


@dataclass(frozen=True)
class Conj:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Disj:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Exists:
    variable: str
    body: 'Formula'


@dataclass(frozen=True)
class Forall:
    variable: str
    body: 'Formula'


Atom = Union[DepAtom, IndAtom, IncAtom]
Formula = Union[Literal, DepAtom, IndAtom, IncAtom, Conj, Disj, Exists, Forall]

ATOM_TYPES = (DepAtom, IndAtom, IncAtom)
QUANTIFIER_TYPES = (Exists, Forall)
CONNECTIVE_TYPES = (Conj, Disj)

# Child selectors used in subformula paths.
LEFT = 'left'
RIGHT = 'right'
BODY = 'body'

SubformulaPath = Tuple[str, ...]


def is_atom(formula: Formula) -> bool:
    return isinstance(formula, ATOM_TYPES)


def equals(x: str, y: str) -> Literal:
    return Literal(True, EQUALITY, (x, y))


def differs(x: str, y: str) -> Literal:
    return Literal(False, EQUALITY, (x, y))


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty sequence of formulas."""
    formulas = list(formulas)
    if not formulas:
        raise ValueError("Cannot conjoin an empty sequence of formulas")
    return reduce(Conj, formulas)


def disjoin(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    if not formulas:
        raise ValueError("Cannot disjoin an empty sequence of formulas")
    return reduce(Disj, formulas)


def quantify(prefix: Iterable[Tuple[type, str]], body: Formula) -> Formula:
    """Wrap body in a quantifier prefix given as (Exists|Forall, variable) pairs, outermost first."""
    for quantifier, variable in reversed(list(prefix)):
        body = quantifier(variable, body)
    return body
