"""
Existential second-order sentences in Skolem normal form:

    ∃f1..∃fn ∃S1..∃Sm ∀x1..∀xr ψ

with ψ a quantifier-free classical formula whose terms are variables and
applications of the quantified function symbols.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Tuple, Union

EQUALITY = '='


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    function: str
    args: Tuple['Term', ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))

    @property
    def is_flat(self) -> bool:
        """Every argument is a variable."""
        return all(isinstance(arg, Var) for arg in self.args)


Term = Union[Var, Apply]


@dataclass(frozen=True)
class Atom:
    """R(t1..tn), or t1 = t2 when predicate is '='."""
    predicate: str
    args: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))
        if self.predicate == EQUALITY and len(self.args) != 2:
            raise ValueError("Equality atoms take exactly two terms")

    @property
    def is_equality(self) -> bool:
        return self.predicate == EQUALITY


@dataclass(frozen=True)
class Not:
    body: 'Matrix'


@dataclass(frozen=True)
class And:
    left: 'Matrix'
    right: 'Matrix'


@dataclass(frozen=True)
class Or:
    left: 'Matrix'
    right: 'Matrix'


@dataclass(frozen=True)
class Implies:
    left: 'Matrix'
    right: 'Matrix'


Matrix = Union[Atom, Not, And, Or, Implies]


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class EsoSentence:
    functions: Tuple[Symbol, ...]
    relations: Tuple[Symbol, ...]
    universals: Tuple[str, ...]
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, 'functions', tuple(self.functions))
        object.__setattr__(self, 'relations', tuple(self.relations))
        object.__setattr__(self, 'universals', tuple(self.universals))
        self._validate()

    @property
    def rank(self) -> int:
        """Number of universally quantified first-order variables."""
        return len(self.universals)

    @property
    def function_arities(self) -> Dict[str, int]:
        return {symbol.name: symbol.arity for symbol in self.functions}

    @property
    def relation_arities(self) -> Dict[str, int]:
        return {symbol.name: symbol.arity for symbol in self.relations}

    def _validate(self):
        names = [s.name for s in self.functions] + [s.name for s in self.relations]
        if len(names) != len(set(names)):
            raise ValueError(f"Quantified symbols declared twice: {', '.join(names)}")
        if len(self.universals) != len(set(self.universals)):
            raise ValueError("Universal variables declared twice")

        functions = self.function_arities
        relations = self.relation_arities
        universals = set(self.universals)
        for term in iter_terms(self.matrix):
            if isinstance(term, Var):
                if term.name not in universals:
                    raise ValueError(f"Variable {term.name} is not universally quantified")
            elif functions.get(term.function) != len(term.args):
                raise ValueError(
                    f"Function {term.function}/{len(term.args)} is not declared with that arity"
                )
        for atom in matrix_atoms(self.matrix):
            if atom.predicate in relations and relations[atom.predicate] != len(atom.args):
                raise ValueError(
                    f"Relation {atom.predicate} declared with arity {relations[atom.predicate]}"
                    f" but used with {len(atom.args)} arguments"
                )


def matrix_atoms(matrix: Matrix) -> Iterator[Atom]:
    if isinstance(matrix, Atom):
        yield matrix
    elif isinstance(matrix, Not):
        yield from matrix_atoms(matrix.body)
    else:
        yield from matrix_atoms(matrix.left)
        yield from matrix_atoms(matrix.right)


def subterms(term: Term) -> Iterator[Term]:
    """The term and all of its subterms, outermost first."""
    yield term
    if isinstance(term, Apply):
        for arg in term.args:
            yield from subterms(arg)


def iter_terms(matrix: Matrix) -> Iterator[Term]:
    for atom in matrix_atoms(matrix):
        for arg in atom.args:
            yield from subterms(arg)


def polarities(matrix: Matrix, positive: bool = True) -> Iterator[Tuple[Atom, bool]]:
    """Each atom occurrence with True when it occurs positively, False when negatively."""
    if isinstance(matrix, Atom):
        yield matrix, positive
    elif isinstance(matrix, Not):
        yield from polarities(matrix.body, not positive)
    elif isinstance(matrix, Implies):
        yield from polarities(matrix.left, not positive)
        yield from polarities(matrix.right, positive)
    else:
        yield from polarities(matrix.left, positive)
        yield from polarities(matrix.right, positive)


def variables(*names: str) -> Tuple[Var, ...]:
    return tuple(Var(name) for name in names)


def apply(function: str, *args: Term) -> Apply:
    return Apply(function, args)


def term_equals(left: Term, right: Term) -> Atom:
    return Atom(EQUALITY, (left, right))


def conjunction(parts) -> Matrix:
    parts = list(parts)
    if not parts:
        raise ValueError("Cannot build an empty conjunction")
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def disjunction(parts) -> Matrix:
    parts = list(parts)
    if not parts:
        raise ValueError("Cannot build an empty disjunction")
    result = parts[0]
    for part in parts[1:]:
        result = Or(result, part)
    return result
