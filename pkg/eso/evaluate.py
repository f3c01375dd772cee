"""
Truth of ESO sentences on finite structures by enumerating interpretations
of the quantified symbols.

Interpretations are enumerated lexicographically over value tables, symbols
in declaration order, so the first model found is reproducible.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

from eso.terms import (
    And,
    Atom,
    EsoSentence,
    Implies,
    Matrix,
    Not,
    Or,
    Symbol,
    Term,
    Var,
    polarities,
)
from semantics.limits import EvalLimits, LimitExceeded
from structures.structure import Structure

logger = logging.getLogger(__name__)

FunctionTable = Dict[Tuple[int, ...], int]
RelationTable = FrozenSet[Tuple[int, ...]]

FULL = 'full'
EMPTY = 'empty'


@dataclass(frozen=True)
class EsoModel:
    functions: Mapping[str, FunctionTable]
    relations: Mapping[str, RelationTable]

    def to_lines(self) -> List[str]:
        lines = []
        for name, table in self.functions.items():
            entries = ', '.join(
                f"{'(' + ' '.join(map(str, args)) + ')' if args else '()'}->{value}"
                for args, value in sorted(table.items())
            )
            lines.append(f"{name}: {entries}")
        for name, tuples in self.relations.items():
            lines.append(f"{name}: {sorted(tuples)}")
        return lines


def fixed_relations(sentence: EsoSentence) -> Dict[str, str]:
    """
    Quantified relations whose interpretation can be fixed without loss.

    A relation that occurs only positively may as well be full, one that
    occurs only negatively (or not at all) may as well be empty. A top-level
    conjunct R(x1..xk) over distinct universal variables forces R to be full.
    """
    quantified = sentence.relation_arities
    signs: Dict[str, set] = {name: set() for name in quantified}
    for atom, positive in polarities(sentence.matrix):
        if atom.predicate in signs:
            signs[atom.predicate].add(positive)

    fixed = {}
    for name, seen in signs.items():
        if seen == {True}:
            fixed[name] = FULL
        elif not seen or seen == {False}:
            fixed[name] = EMPTY

    universals = set(sentence.universals)
    for conjunct in _top_conjuncts(sentence.matrix):
        if isinstance(conjunct, Atom) and conjunct.predicate in quantified:
            names = [arg.name for arg in conjunct.args if isinstance(arg, Var)]
            if (
                len(names) == len(conjunct.args)
                and len(set(names)) == len(names)
                and set(names) <= universals
            ):
                fixed[conjunct.predicate] = FULL
    return fixed


def _top_conjuncts(matrix: Matrix) -> Iterator[Matrix]:
    if isinstance(matrix, And):
        yield from _top_conjuncts(matrix.left)
        yield from _top_conjuncts(matrix.right)
    else:
        yield matrix


def _function_tables(size: int, arity: int) -> List[FunctionTable]:
    keys = list(product(range(size), repeat=arity))
    return [dict(zip(keys, values)) for values in product(range(size), repeat=len(keys))]


def _relation_tables(size: int, arity: int) -> List[RelationTable]:
    keys = list(product(range(size), repeat=arity))
    return [
        frozenset(key for key, member in zip(keys, members) if member)
        for members in product((False, True), repeat=len(keys))
    ]


class EsoEvaluator:
    def __init__(self, structure: Structure, sentence: EsoSentence, limits: EvalLimits = None):
        self.structure = structure
        self.sentence = sentence
        self.limits = limits or EvalLimits.from_settings()
        self.explored = 0
        if structure.size < 2:
            logger.warning(
                "Evaluating an ESO sentence over a structure with %d element", structure.size
            )

    def _candidates(self) -> Tuple[List[Symbol], List[List], List[Symbol], List[List]]:
        size = self.structure.size
        allowed = self.limits.max_witness_functions
        full_keys = {
            symbol.name: frozenset(product(range(size), repeat=symbol.arity))
            for symbol in self.sentence.relations
        }

        function_choices = []
        for symbol in self.sentence.functions:
            count = size ** (size ** symbol.arity)
            if allowed is not None and count > allowed:
                raise LimitExceeded('max_witness_functions', count, allowed)
            function_choices.append(_function_tables(size, symbol.arity))

        fixed = fixed_relations(self.sentence)
        relation_choices = []
        for symbol in self.sentence.relations:
            if fixed.get(symbol.name) == FULL:
                relation_choices.append([full_keys[symbol.name]])
            elif fixed.get(symbol.name) == EMPTY:
                relation_choices.append([frozenset()])
            else:
                count = 2 ** (size ** symbol.arity)
                if allowed is not None and count > allowed:
                    raise LimitExceeded('max_witness_functions', count, allowed)
                relation_choices.append(_relation_tables(size, symbol.arity))

        total = 1
        for choices in function_choices + relation_choices:
            total *= len(choices)
        logger.debug(
            "ESO search over %d interpretations (%d relations fixed)", total, len(fixed)
        )
        return list(self.sentence.functions), function_choices, list(self.sentence.relations), relation_choices

    def find_model(self) -> Optional[EsoModel]:
        """
        Raises:
            LimitExceeded: If more interpretations than max_witness_functions
                would have to be tried before reaching a verdict
        """
        functions, function_choices, relations, relation_choices = self._candidates()
        assignments = [
            dict(zip(self.sentence.universals, values))
            for values in product(self.structure.domain, repeat=self.sentence.rank)
        ]
        self.explored = 0
        for function_tables in product(*function_choices):
            for relation_tables in product(*relation_choices):
                self.explored += 1
                self.limits.check('max_witness_functions', self.explored)
                model = EsoModel(
                    {symbol.name: table for symbol, table in zip(functions, function_tables)},
                    {symbol.name: table for symbol, table in zip(relations, relation_tables)},
                )
                if all(self.matrix_holds(model, assignment) for assignment in assignments):
                    return model
        return None

    def term_value(self, model: EsoModel, assignment: Mapping[str, int], term: Term) -> int:
        if isinstance(term, Var):
            return assignment[term.name]
        args = tuple(self.term_value(model, assignment, arg) for arg in term.args)
        return model.functions[term.function][args]

    def matrix_holds(self, model: EsoModel, assignment: Mapping[str, int], matrix: Matrix = None) -> bool:
        matrix = self.sentence.matrix if matrix is None else matrix
        if isinstance(matrix, Atom):
            values = tuple(self.term_value(model, assignment, arg) for arg in matrix.args)
            if matrix.is_equality:
                return values[0] == values[1]
            if matrix.predicate in model.relations:
                return values in model.relations[matrix.predicate]
            return self.structure.holds(matrix.predicate, values)
        if isinstance(matrix, Not):
            return not self.matrix_holds(model, assignment, matrix.body)
        if isinstance(matrix, And):
            return self.matrix_holds(model, assignment, matrix.left) and self.matrix_holds(model, assignment, matrix.right)
        if isinstance(matrix, Or):
            return self.matrix_holds(model, assignment, matrix.left) or self.matrix_holds(model, assignment, matrix.right)
        if isinstance(matrix, Implies):
            return not self.matrix_holds(model, assignment, matrix.left) or self.matrix_holds(model, assignment, matrix.right)
        raise TypeError(f"Not an ESO matrix: {matrix!r}")


def find_eso_model(structure: Structure, sentence: EsoSentence, limits: EvalLimits = None) -> Optional[EsoModel]:
    """The first interpretation, in enumeration order, that makes the sentence true."""
    return EsoEvaluator(structure, sentence, limits).find_model()


def evaluate_eso(structure: Structure, sentence: EsoSentence, limits: EvalLimits = None) -> bool:
    """
    Decide M ⊨ φ for an ESO sentence.

    Raises:
        LimitExceeded: If the interpretation search is larger than the limits allow
    """
    return find_eso_model(structure, sentence, limits) is not None
