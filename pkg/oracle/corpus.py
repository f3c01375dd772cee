"""
Seeded random formulas for the equivalence oracle and the harness.

Generated sentences quantify every variable exactly once. The same spec and
seed always give the same corpus.
"""

import random
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from structures.vocabulary import Vocabulary
from syntax.formula import (
    EQUALITY,
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    Formula,
    IncAtom,
    IndAtom,
    Literal,
    conjoin,
    quantify,
)

LITERAL = 'literal'
ATOM_KINDS = (LITERAL, 'dep', 'ind', 'inc')


@dataclass(frozen=True)
class CorpusSpec:
    vocabulary: Vocabulary
    max_depth: int = 3
    atom_kinds: Tuple[str, ...] = ATOM_KINDS
    max_universals: int = 2
    seed: int = 0
    count: int = 10
    # Variables left free; an empty tuple generates sentences.
    free_variables: Tuple[str, ...] = ()
    forall_exists_form: bool = False
    max_existentials: int = 2

    def __post_init__(self):
        unknown = set(self.atom_kinds) - set(ATOM_KINDS)
        if unknown:
            raise ValueError(f"Unknown atom kinds: {', '.join(sorted(unknown))}")
        if not self.atom_kinds:
            raise ValueError("At least one atom kind is needed")
        if self.max_depth < 1 and not self.free_variables:
            raise ValueError("Sentences need a depth of at least 1")


def formula_depth(formula: Formula) -> int:
    if isinstance(formula, (Conj, Disj)):
        return 1 + max(formula_depth(formula.left), formula_depth(formula.right))
    if isinstance(formula, (Exists, Forall)):
        return 1 + formula_depth(formula.body)
    return 0


@dataclass
class _Generator:
    spec: CorpusSpec
    rng: random.Random
    counter: int = 0
    universals: int = 0
    taken: set = field(default_factory=set)

    def fresh(self) -> str:
        while f"x{self.counter}" in self.taken:
            self.counter += 1
        name = f"x{self.counter}"
        self.counter += 1
        return name

    def pick(self, scope: Sequence[str], low: int, high: int) -> Tuple[str, ...]:
        return tuple(self.rng.choice(scope) for _ in range(self.rng.randint(low, high)))

    def leaf(self, scope: Sequence[str], kinds: Sequence[str] = None) -> Formula:
        kind = self.rng.choice(list(kinds or self.spec.atom_kinds))
        if kind == 'dep':
            condition = tuple(self.rng.sample(list(scope), self.rng.randint(0, min(2, len(scope)))))
            return DepAtom(condition, self.rng.choice(scope))
        if kind == 'ind':
            condition = tuple(self.rng.sample(list(scope), self.rng.randint(0, min(1, len(scope)))))
            return IndAtom(condition, self.pick(scope, 1, 2), self.pick(scope, 1, 2))
        if kind == 'inc':
            width = self.rng.randint(1, min(2, len(scope)))
            return IncAtom(self.pick(scope, width, width), self.pick(scope, width, width))
        return self.literal(scope)

    def literal(self, scope: Sequence[str]) -> Literal:
        choices = [(EQUALITY, 2)] + list(self.spec.vocabulary.relations)
        predicate, arity = self.rng.choice(choices)
        return Literal(self.rng.random() < 0.7, predicate, self.pick(scope, arity, arity))

    def quantifier(self, depth: int, scope: Tuple[str, ...]) -> Formula:
        variable = self.fresh()
        universal = self.universals < self.spec.max_universals and self.rng.random() < 0.5
        if universal:
            self.universals += 1
        body = self.formula(depth - 1, scope + (variable,))
        return (Forall if universal else Exists)(variable, body)

    def formula(self, depth: int, scope: Tuple[str, ...]) -> Formula:
        if not scope:
            return self.quantifier(depth, scope)
        if depth <= 0:
            return self.leaf(scope)
        choice = self.rng.choice(['leaf', 'and', 'or', 'quantifier', 'quantifier'])
        if choice == 'leaf':
            return self.leaf(scope)
        if choice == 'quantifier':
            return self.quantifier(depth, scope)
        left = self.formula(depth - 1, scope)
        right = self.formula(depth - 1, scope)
        return Conj(left, right) if choice == 'and' else Disj(left, right)

    def quantifier_free(self, depth: int, scope: Tuple[str, ...]) -> Formula:
        if depth <= 0 or self.rng.random() < 0.3:
            return self.leaf(scope)
        left, right = self.quantifier_free(depth - 1, scope), self.quantifier_free(depth - 1, scope)
        return Conj(left, right) if self.rng.random() < 0.6 else Disj(left, right)

    def forall_exists(self) -> Formula:
        universals = tuple(self.fresh() for _ in range(self.rng.randint(0, self.spec.max_universals)))
        existentials = tuple(self.fresh() for _ in range(self.rng.randint(1, self.spec.max_existentials)))
        matrix = self.quantifier_free(self.spec.max_depth, universals + existentials)
        prefix = [(Forall, x) for x in universals] + [(Exists, y) for y in existentials]
        return quantify(prefix, matrix)


def generate_corpus(spec: CorpusSpec) -> Iterator[Formula]:
    """
    Yield spec.count formulas. Formulas are sentences unless spec.free_variables
    is set, in which case those variables may occur free.
    """
    rng = random.Random(spec.seed)
    for _ in range(spec.count):
        generator = _Generator(spec, rng, taken=set(spec.free_variables))
        if spec.forall_exists_form:
            yield generator.forall_exists()
        else:
            yield generator.formula(spec.max_depth, tuple(spec.free_variables))


def atom_conjunctions(
    vocabulary: Vocabulary,
    variables: Sequence[str],
    atom_kinds: Sequence[str],
    count: int,
    seed: int = 0,
    max_atoms: int = 2,
    fo_depth: int = 2,
) -> Iterator[Formula]:
    """Formulas χ ∧ θ with χ a conjunction of atoms and θ quantifier-free first-order."""
    rng = random.Random(seed)
    spec = CorpusSpec(vocabulary, max_depth=fo_depth, atom_kinds=(LITERAL,), free_variables=tuple(variables))
    kinds = [kind for kind in atom_kinds if kind != LITERAL]
    for _ in range(count):
        generator = _Generator(spec, rng, taken=set(variables))
        chi: List[Formula] = [generator.leaf(variables, kinds) for _ in range(rng.randint(1, max_atoms))]
        theta = generator.quantifier_free(fo_depth, tuple(variables))
        yield conjoin(chi + [theta])


def quantifier_free_corpus(
    vocabulary: Vocabulary,
    variables: Sequence[str],
    atom_kinds: Sequence[str],
    count: int,
    seed: int = 0,
    max_depth: int = 2,
) -> List[Formula]:
    rng = random.Random(seed)
    spec = CorpusSpec(vocabulary, max_depth=max_depth, atom_kinds=tuple(atom_kinds), free_variables=tuple(variables))
    return [
        _Generator(spec, rng, taken=set(variables)).quantifier_free(max_depth, tuple(variables))
        for _ in range(count)
    ]


def first_order_corpus(vocabulary: Vocabulary, variables: Sequence[str], count: int, seed: int = 0, max_depth: int = 3) -> List[Formula]:
    spec = CorpusSpec(
        vocabulary, max_depth=max_depth, atom_kinds=(LITERAL,), max_universals=max_depth,
        seed=seed, count=count, free_variables=tuple(variables),
    )
    return list(generate_corpus(spec))


def dependence_corpus(vocabulary: Vocabulary, variables: Sequence[str], count: int, seed: int = 0, max_depth: int = 3) -> List[Formula]:
    spec = CorpusSpec(
        vocabulary, max_depth=max_depth, atom_kinds=(LITERAL, 'dep'), max_universals=max_depth,
        seed=seed, count=count, free_variables=tuple(variables),
    )
    return list(generate_corpus(spec))
