"""
Exhaustive and sampled enumeration of structures and teams, in a fixed order
so that oracle runs are reproducible.
"""

import logging
import random
from itertools import combinations, product
from math import comb
from typing import Iterator, Optional, Sequence

from semantics.limits import EvalLimits, LimitExceeded
from structures.structure import Relation, Structure
from structures.team import Team
from structures.vocabulary import Vocabulary

logger = logging.getLogger(__name__)


def _subsets(universe):
    for mask in range(2 ** len(universe)):
        yield frozenset(item for bit, item in enumerate(universe) if mask >> bit & 1)


def enumerate_structures(vocabulary: Vocabulary, max_size: int, min_size: int = 2) -> Iterator[Structure]:
    """
    Every structure over the vocabulary with domain size min_size..max_size.

    Order: by size, then relation interpretations as bitmasks over the
    lexicographically ordered tuples (first relation varies slowest), then
    constant values.
    """
    if max_size < min_size:
        raise ValueError(f"max_size {max_size} is smaller than min_size {min_size}")
    for size in range(min_size, max_size + 1):
        interpretations = []
        for name, arity in vocabulary.relations:
            universe = list(product(range(size), repeat=arity))
            interpretations.append([Relation(name, arity, tuples) for tuples in _subsets(universe)])
        constant_values = product(range(size), repeat=len(vocabulary.constants))
        constant_choices = [tuple(zip(vocabulary.constants, values)) for values in constant_values]
        for relations in product(*interpretations):
            for constants in constant_choices:
                yield Structure(size, tuple(relations), constants)


def count_structures(vocabulary: Vocabulary, max_size: int, min_size: int = 2) -> int:
    total = 0
    for size in range(min_size, max_size + 1):
        count = size ** len(vocabulary.constants)
        for _, arity in vocabulary.relations:
            count *= 2 ** (size ** arity)
        total += count
    return total


def count_teams(structure: Structure, variables: Sequence[str], max_rows: Optional[int] = None) -> int:
    assignments = structure.size ** len(variables)
    cap = assignments if max_rows is None else min(max_rows, assignments)
    return sum(comb(assignments, rows) for rows in range(cap + 1))


def enumerate_teams(
    structure: Structure,
    variables: Sequence[str],
    max_rows: Optional[int] = None,
    limits: EvalLimits = None,
) -> Iterator[Team]:
    """
    Every team over the variables with values in the structure's domain,
    optionally capped by row count, from the empty team upwards by size.

    Raises:
        LimitExceeded: If the number of teams is above limits.max_teams
    """
    limits = limits or EvalLimits.from_settings()
    variables = tuple(sorted(set(variables)))
    limits.check('max_teams', count_teams(structure, variables, max_rows))

    assignments = list(product(structure.domain, repeat=len(variables)))
    cap = len(assignments) if max_rows is None else min(max_rows, len(assignments))
    for size in range(cap + 1):
        for rows in combinations(assignments, size):
            yield Team(variables, frozenset(rows))


def sample_teams(
    structure: Structure,
    variables: Sequence[str],
    max_rows: int,
    count: int,
    rng: random.Random,
) -> Iterator[Team]:
    """Reproducible random teams of 0..max_rows rows, drawn without repeating rows."""
    variables = tuple(sorted(set(variables)))
    assignments = list(product(structure.domain, repeat=len(variables)))
    cap = min(max_rows, len(assignments))
    for _ in range(count):
        rows = rng.sample(assignments, rng.randint(0, cap))
        yield Team(variables, frozenset(rows))


def teams_for(
    structure: Structure,
    variables: Sequence[str],
    max_rows: Optional[int],
    samples: int,
    rng: random.Random,
    limits: EvalLimits = None,
) -> Iterator[Team]:
    """All teams when they fit limits.max_teams, a sample of them otherwise."""
    try:
        teams = list(enumerate_teams(structure, variables, max_rows, limits))
    except LimitExceeded as exc:
        logger.debug("Sampling %d teams instead of enumerating: %s", samples, exc)
        teams = sample_teams(structure, variables, max_rows or structure.size ** len(variables), samples, rng)
    yield from teams
