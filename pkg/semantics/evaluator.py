"""
Team semantics by exhaustive witness search.

Strict semantics splits a team into disjoint parts at a disjunction and picks
one value per assignment at an existential. Lax semantics allows overlapping
parts and nonempty sets of values.
"""

import logging
from enum import Enum
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

from semantics.atoms import evaluate_atom
from semantics.limits import EvalLimits
from semantics.tarski import check_flatness_shortcut, holds, literal_holds
from semantics.trace import EvalTrace, TraceStep
from structures.structure import Structure
from structures.team import (
    Row,
    Team,
    TeamError,
    lax_extension,
    strict_extension,
    universal_extension,
)
from syntax.analysis import bound_variables, free_variables, is_first_order
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
    Literal,
    SubformulaPath,
)

logger = logging.getLogger(__name__)

Steps = Dict[SubformulaPath, TraceStep]


class SemanticsMode(str, Enum):
    STRICT = 'strict'
    LAX = 'lax'

    def __str__(self):
        return self.value


class FreeVariableError(ValueError):
    pass


class Evaluator:
    """
    Decides M ⊨_X φ for one structure.

    Args:
        structure: The structure formulas are evaluated in
        mode: strict or lax
        limits: Bounds on the searches; defaults come from settings
        flat_shortcut: Evaluate first-order subformulas assignment by assignment
        block_search: Under strict semantics, solve a block of existentials as a
            single tuple-valued witness, pruned by the first-order and
            dependence conjuncts of its body
        trace: Record the splits and witnesses of the first successful derivation
    """

    def __init__(
        self,
        structure: Structure,
        mode: SemanticsMode = SemanticsMode.STRICT,
        limits: EvalLimits = None,
        flat_shortcut: bool = False,
        block_search: bool = True,
        trace: bool = False,
    ):
        self.structure = structure
        self.mode = SemanticsMode(mode)
        self.limits = limits or EvalLimits.from_settings()
        self.flat_shortcut = flat_shortcut
        self.block_search = block_search and self.mode is SemanticsMode.STRICT
        self.trace = trace
        self.search_nodes = 0
        self._memo: Dict[Tuple[SubformulaPath, Team], Optional[Steps]] = {}
        if structure.size < 2:
            logger.warning(
                "Evaluating over a structure with %d element; results assume at least two",
                structure.size,
            )

    def evaluate(self, team: Team, formula: Formula) -> bool:
        return self.explain(team, formula)[0]

    def explain(self, team: Team, formula: Formula) -> Tuple[bool, Optional[EvalTrace]]:
        """
        Evaluate and return the witness trace of a successful derivation.

        Raises:
            FreeVariableError: If a free variable is neither in the team nor a constant
            TeamError: If the formula quantifies a variable of the team
            LimitExceeded: If a search is larger than the limits allow
        """
        team = self.prepare(team, formula)
        self._memo.clear()
        self.search_nodes = 0
        steps = self._eval((), formula, team)
        if steps is None:
            return False, None
        return True, EvalTrace(formula, team, steps) if self.trace else None

    def prepare(self, team: Team, formula: Formula) -> Team:
        """Bind structure constants that occur free in the formula, then validate."""
        for name, value in self.structure.constants:
            if name in free_variables(formula) and name not in team.index:
                team = team.with_column(name, ((row, value) for row in team.sorted_rows))
        missing = free_variables(formula) - set(team.variables)
        if missing:
            raise FreeVariableError(
                f"Free variables {sorted(missing)} are not in the team domain {team.variables}"
            )
        requantified = sorted(set(bound_variables(formula)) & set(team.variables))
        if requantified:
            raise TeamError(
                f"Variables {requantified} are quantified in the formula but already in the team domain "
                f"{team.variables}; rename the bound occurrences"
            )
        for row in team.rows:
            if any(not 0 <= value < self.structure.size for value in row):
                raise TeamError(f"Team row {row} has values outside a domain of size {self.structure.size}")
        return team

    def _eval(self, path: SubformulaPath, formula: Formula, team: Team) -> Optional[Steps]:
        key = (path, team)
        if key in self._memo:
            return self._memo[key]
        self._visit()
        self.limits.check('max_team_rows', len(team))

        if isinstance(formula, Literal):
            result = {} if all(literal_holds(self.structure, s, formula) for s in team.assignments()) else None
        elif isinstance(formula, ATOM_TYPES):
            result = {} if evaluate_atom(self.structure, team, formula) else None
        elif self.flat_shortcut and is_first_order(formula):
            result = {} if check_flatness_shortcut(self.structure, team, formula) else None
        elif isinstance(formula, Conj):
            result = self._conjunction(path, formula, team)
        elif isinstance(formula, Disj):
            if self.mode is SemanticsMode.STRICT:
                result = self._strict_disjunction(path, formula, team)
            else:
                result = self._lax_disjunction(path, formula, team)
        elif isinstance(formula, Forall):
            extended = universal_extension(team, formula.variable, self.structure)
            result = self._eval(path + (BODY,), formula.body, extended)
        elif isinstance(formula, Exists):
            if self.mode is SemanticsMode.LAX:
                result = self._lax_exists(path, formula, team)
            elif self.block_search:
                result = self._existential_block(path, formula, team)
            else:
                result = self._strict_exists(path, formula, team)
        else:
            raise TypeError(f"Not a formula: {formula!r}")

        self._memo[key] = result
        return result

    def _visit(self):
        self.search_nodes += 1
        self.limits.check('max_search_nodes', self.search_nodes)

    def _merge(self, *parts: Steps) -> Steps:
        if not self.trace:
            return {}
        merged = {}
        for part in parts:
            merged.update(part)
        return merged

    def _conjunction(self, path, formula: Conj, team: Team) -> Optional[Steps]:
        left = self._eval(path + (LEFT,), formula.left, team)
        if left is None:
            return None
        right = self._eval(path + (RIGHT,), formula.right, team)
        if right is None:
            return None
        return self._merge(left, right)

    def _try_split(self, path, formula: Disj, team: Team, left: Team, right: Team) -> Optional[Steps]:
        left_steps = self._eval(path + (LEFT,), formula.left, left)
        if left_steps is None:
            return None
        right_steps = self._eval(path + (RIGHT,), formula.right, right)
        if right_steps is None:
            return None
        return self._merge({path: TraceStep.split(team, left, right)}, left_steps, right_steps)

    def _strict_disjunction(self, path, formula: Disj, team: Team) -> Optional[Steps]:
        rows = team.sorted_rows
        candidates = 2 ** len(rows)
        self.limits.check('max_split_candidates', candidates)
        logger.debug("Strict split at %s: %d candidates", '/'.join(path), candidates)
        for mask in range(candidates):
            chosen = frozenset(row for bit, row in enumerate(rows) if mask >> bit & 1)
            left = Team(team.variables, chosen)
            right = Team(team.variables, team.rows - chosen)
            steps = self._try_split(path, formula, team, left, right)
            if steps is not None:
                return steps
        return None

    def _lax_disjunction(self, path, formula: Disj, team: Team) -> Optional[Steps]:
        rows = team.sorted_rows
        candidates = 3 ** len(rows)
        self.limits.check('max_split_candidates', candidates)
        logger.debug("Lax split at %s: %d candidates", '/'.join(path), candidates)
        for sides in product((0, 1, 2), repeat=len(rows)):
            # 0: left only, 1: right only, 2: both
            left = Team(team.variables, frozenset(r for r, side in zip(rows, sides) if side != 1))
            right = Team(team.variables, frozenset(r for r, side in zip(rows, sides) if side != 0))
            steps = self._try_split(path, formula, team, left, right)
            if steps is not None:
                return steps
        return None

    def _strict_exists(self, path, formula: Exists, team: Team) -> Optional[Steps]:
        rows = team.sorted_rows
        candidates = self.structure.size ** len(rows)
        self.limits.check('max_witness_functions', candidates)
        logger.debug("Strict witness search at %s: %d functions", '/'.join(path), candidates)
        for values in product(self.structure.domain, repeat=len(rows)):
            witness = dict(zip(rows, values))
            extended = strict_extension(team, formula.variable, witness)
            steps = self._eval(path + (BODY,), formula.body, extended)
            if steps is not None:
                return self._merge({path: TraceStep.choice(team, witness)}, steps)
        return None

    def _value_sets(self) -> List[frozenset]:
        domain = list(self.structure.domain)
        return [
            frozenset(subset)
            for size in range(1, len(domain) + 1)
            for subset in combinations(domain, size)
        ]

    def _lax_exists(self, path, formula: Exists, team: Team) -> Optional[Steps]:
        rows = team.sorted_rows
        value_sets = self._value_sets()
        candidates = len(value_sets) ** len(rows)
        self.limits.check('max_witness_functions', candidates)
        logger.debug("Lax witness search at %s: %d functions", '/'.join(path), candidates)
        for choice in product(value_sets, repeat=len(rows)):
            witness = dict(zip(rows, choice))
            extended = lax_extension(team, formula.variable, witness)
            steps = self._eval(path + (BODY,), formula.body, extended)
            if steps is not None:
                return self._merge({path: TraceStep.choice(team, witness)}, steps)
        return None

    def _existential_block(self, path, formula: Exists, team: Team) -> Optional[Steps]:
        """
        Strict ∃y1...∃yn ψ as a search for one value tuple per assignment.

        First-order conjuncts of ψ are flat, so they filter the tuples of each
        assignment on their own. Dependence conjuncts are downward closed and
        are checked as assignments are completed. The remaining conjuncts are
        evaluated on each completed team.
        """
        variables, paths = [], []
        body, body_path = formula, path
        while isinstance(body, Exists):
            variables.append(body.variable)
            paths.append(body_path)
            body_path = body_path + (BODY,)
            body = body.body

        flat, dependencies, rest = [], [], []
        for conjunct_path, conjunct in _conjuncts(body_path, body):
            if is_first_order(conjunct):
                flat.append(conjunct)
            elif isinstance(conjunct, DepAtom):
                dependencies.append(conjunct)
            else:
                rest.append((conjunct_path, conjunct))

        rows = team.sorted_rows
        tuples = list(product(self.structure.domain, repeat=len(variables)))
        candidates: List[List[Tuple[int, ...]]] = []
        for row in rows:
            assignment = team.assignment(row)
            allowed = [
                values for values in tuples
                if all(holds(self.structure, {**assignment, **dict(zip(variables, values))}, f) for f in flat)
            ]
            if not allowed:
                return None
            candidates.append(allowed)
        logger.debug(
            "Block search at %s over %s: %d rows, %d candidate tuples",
            '/'.join(path), variables, len(rows), sum(len(c) for c in candidates),
        )

        domain = tuple(team.variables) + tuple(variables)
        tables = [dict() for _ in dependencies]
        chosen: List[Tuple[int, ...]] = []
        explored = [0]

        def dependency_keys(row, values):
            full = dict(zip(domain, row + values))
            return [(tuple(full[v] for v in dep.condition), full[dep.determined]) for dep in dependencies]

        def search(index: int) -> Optional[Steps]:
            if index == len(rows):
                return self._finish_block(paths, body_path, variables, team, chosen, rest)
            row = rows[index]
            for values in candidates[index]:
                self._visit()
                explored[0] += 1
                self.limits.check('max_witness_functions', explored[0])
                keys = dependency_keys(row, values)
                added = []
                consistent = True
                for table, (key, value) in zip(tables, keys):
                    known = table.get(key)
                    if known is None:
                        table[key] = value
                        added.append((table, key))
                    elif known != value:
                        consistent = False
                        break
                if consistent:
                    chosen.append(values)
                    steps = search(index + 1)
                    chosen.pop()
                    if steps is not None:
                        return steps
                for table, key in added:
                    del table[key]
            return None

        return search(0)

    def _finish_block(self, paths, body_path, variables, team, chosen, rest) -> Optional[Steps]:
        rows = team.sorted_rows
        witness_steps = {}
        current = team
        for position, variable in enumerate(variables):
            witness = {}
            for row, values in zip(rows, chosen):
                extended_row = _extend_row(team, current, row, variables[:position], values)
                witness[extended_row] = values[position]
            if self.trace:
                witness_steps[paths[position]] = TraceStep.choice(current, witness)
            current = strict_extension(current, variable, witness)

        parts = [witness_steps]
        for conjunct_path, conjunct in rest:
            steps = self._eval(conjunct_path, conjunct, current)
            if steps is None:
                return None
            parts.append(steps)
        return self._merge(*parts)


def _extend_row(team: Team, current: Team, row: Row, added, values) -> Row:
    """The row of current that extends row of team by the first values for added."""
    full = dict(zip(team.variables, row))
    full.update(zip(added, values))
    return tuple(full[v] for v in current.variables)


def _conjuncts(path: SubformulaPath, formula: Formula):
    if isinstance(formula, Conj):
        yield from _conjuncts(path + (LEFT,), formula.left)
        yield from _conjuncts(path + (RIGHT,), formula.right)
    else:
        yield path, formula


def evaluate(
    structure: Structure,
    team: Team,
    formula: Formula,
    mode: SemanticsMode = SemanticsMode.STRICT,
    limits: EvalLimits = None,
    **options,
) -> bool:
    """M ⊨_X φ under the given semantics."""
    return Evaluator(structure, mode, limits, **options).evaluate(team, formula)


def explain(
    structure: Structure,
    team: Team,
    formula: Formula,
    mode: SemanticsMode = SemanticsMode.STRICT,
    limits: EvalLimits = None,
    **options,
) -> Tuple[bool, Optional[EvalTrace]]:
    options['trace'] = True
    return Evaluator(structure, mode, limits, **options).explain(team, formula)


def satisfies_sentence(
    structure: Structure,
    formula: Formula,
    mode: SemanticsMode = SemanticsMode.STRICT,
    limits: EvalLimits = None,
    **options,
) -> bool:
    """M ⊨ φ, i.e. truth on the team {∅}."""
    return evaluate(structure, Team.unit(), formula, mode, limits, **options)
