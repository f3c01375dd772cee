"""
Teams: finite sets of assignments over a shared set of variables.

A team stores its variables as a sorted tuple and each assignment as a row,
a tuple of elements aligned with those variables. Rows form a frozenset, so
duplicate assignments collapse as in set semantics.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    Mapping,
    Sequence,
    Tuple,
    Union,
)

from structures.structure import Structure

Row = Tuple[int, ...]
Assignment = Dict[str, int]

# A witness function is either keyed by row, or a callable on assignments.
Witness = Union[Mapping[Row, int], Callable[[Assignment], int]]
SetWitness = Union[Mapping[Row, Iterable[int]], Callable[[Assignment], Iterable[int]]]


class TeamError(ValueError):
    pass


@dataclass(frozen=True)
class Team:
    variables: Tuple[str, ...]
    rows: FrozenSet[Row]

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise TeamError(f"Team variables must be distinct: {variables}")
        if list(variables) != sorted(variables):
            order = sorted(range(len(variables)), key=lambda i: variables[i])
            rows = frozenset(tuple(row[i] for i in order) for row in self.rows)
            variables = tuple(variables[i] for i in order)
        else:
            rows = frozenset(tuple(row) for row in self.rows)
        for row in rows:
            if len(row) != len(variables):
                raise TeamError(f"Row {row} does not match team variables {variables}")
        object.__setattr__(self, 'variables', variables)
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def unit(cls) -> 'Team':
        """The team {∅} containing only the empty assignment."""
        return cls((), frozenset({()}))

    @classmethod
    def empty(cls, variables: Iterable[str] = ()) -> 'Team':
        return cls(tuple(variables), frozenset())

    @classmethod
    def from_assignments(cls, variables: Sequence[str], assignments: Iterable[Mapping[str, int]]) -> 'Team':
        variables = tuple(sorted(variables))
        rows = []
        for assignment in assignments:
            if set(assignment) != set(variables):
                raise TeamError(f"Assignment {dict(assignment)} is not over variables {variables}")
            rows.append(tuple(assignment[v] for v in variables))
        return cls(variables, frozenset(rows))

    @cached_property
    def index(self) -> Dict[str, int]:
        return {variable: i for i, variable in enumerate(self.variables)}

    @cached_property
    def sorted_rows(self) -> Tuple[Row, ...]:
        return tuple(sorted(self.rows))

    def __len__(self):
        return len(self.rows)

    def __iter__(self) -> Iterator[Row]:
        return iter(self.sorted_rows)

    def __bool__(self):
        return bool(self.rows)

    def positions(self, variables: Sequence[str]) -> Tuple[int, ...]:
        try:
            return tuple(self.index[v] for v in variables)
        except KeyError as exc:
            raise TeamError(f"Variable {exc.args[0]} is not in the team domain {self.variables}") from None

    def assignment(self, row: Row) -> Assignment:
        return dict(zip(self.variables, row))

    def assignments(self) -> Iterator[Assignment]:
        for row in self.sorted_rows:
            yield self.assignment(row)

    def values(self, row: Row, variables: Sequence[str]) -> Tuple[int, ...]:
        return tuple(row[i] for i in self.positions(variables))

    def with_column(self, variable: str, extension: Iterable[Tuple[Row, int]]) -> 'Team':
        """Add a column: each (row, value) pair becomes one row of the result."""
        if variable in self.index:
            raise TeamError(f"Variable {variable} is already in the team domain {self.variables}")
        variables = tuple(sorted(self.variables + (variable,)))
        at = variables.index(variable)
        rows = frozenset(row[:at] + (value,) + row[at:] for row, value in extension)
        return Team(variables, rows)

    def rename(self, old: str, new: str) -> 'Team':
        """Relabel a column, keeping every assignment's values."""
        if new in self.index:
            raise TeamError(f"Variable {new} is already in the team domain {self.variables}")
        at = self.positions([old])[0]
        variables = self.variables[:at] + (new,) + self.variables[at + 1:]
        return Team(variables, self.rows)

    def __str__(self):
        header = ' '.join(self.variables) or '(no variables)'
        body = '; '.join(' '.join(map(str, row)) for row in self.sorted_rows)
        return f"[{header}] {{{body}}}"


def _apply(function, team: Team, row: Row):
    if callable(function):
        return function(team.assignment(row))
    return function[row]


def universal_extension(team: Team, variable: str, structure: Structure) -> Team:
    """X[M/v]: every assignment extended by every element of the domain."""
    return team.with_column(variable, product(team.sorted_rows, structure.domain))


def strict_extension(team: Team, variable: str, witness: Witness) -> Team:
    """X[F/v]: every assignment s extended by the single element F(s)."""
    return team.with_column(variable, ((row, _apply(witness, team, row)) for row in team.sorted_rows))


def lax_extension(team: Team, variable: str, witness: SetWitness) -> Team:
    """X[H/v]: every assignment s extended by each element of the nonempty set H(s)."""
    extension = []
    for row in team.sorted_rows:
        values = sorted(set(_apply(witness, team, row)))
        if not values:
            raise TeamError(f"Lax witness for {variable} is empty on assignment {team.assignment(row)}")
        extension.extend((row, value) for value in values)
    return team.with_column(variable, extension)


def restrict(team: Team, variables: Iterable[str]) -> Team:
    """X restricted to a set of variables; rows that become equal collapse."""
    variables = tuple(sorted(set(variables)))
    positions = team.positions(variables)
    return Team(variables, frozenset(tuple(row[i] for i in positions) for row in team.rows))


def select(team: Team, variables: Sequence[str], values: Sequence[int]) -> Team:
    """X(x̄ = ā): the assignments taking the values ā on x̄."""
    if len(variables) != len(values):
        raise TeamError(f"Cannot select {len(values)} values for {len(variables)} variables")
    positions = team.positions(variables)
    wanted = tuple(values)
    return Team(
        team.variables,
        frozenset(row for row in team.rows if tuple(row[i] for i in positions) == wanted),
    )


def project(team: Team, variables: Sequence[str]) -> FrozenSet[Tuple[int, ...]]:
    """X(v̄): the relation of value tuples the team gives to v̄."""
    positions = team.positions(variables)
    return frozenset(tuple(row[i] for i in positions) for row in team.rows)
