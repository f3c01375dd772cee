"""
Witness traces of successful evaluations, and their replay.

In a successful derivation every subformula occurrence is evaluated on
exactly one team, so a trace maps subformula paths to the choice made there:
the split of a disjunction or the witness function of an existential.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from semantics.atoms import evaluate_atom
from semantics.tarski import check_flatness_shortcut, literal_holds
from structures.structure import Structure
from structures.team import (
    Row,
    Team,
    TeamError,
    lax_extension,
    strict_extension,
    universal_extension,
)
from syntax.analysis import is_first_order, subformula_at
from syntax.formula import (
    ATOM_TYPES,
    BODY,
    LEFT,
    RIGHT,
    Conj,
    Disj,
    Exists,
    Forall,
    Formula,
    Literal,
    SubformulaPath,
)
from syntax.grammar import format_formula

SPLIT = 'split'
WITNESS = 'witness'


@dataclass(frozen=True)
class TraceStep:
    kind: str
    team: Team
    left: Optional[Team] = None
    right: Optional[Team] = None
    # (row, value) for strict witnesses, (row, frozenset of values) for lax ones.
    witness: Tuple[Tuple[Row, object], ...] = ()

    @classmethod
    def split(cls, team: Team, left: Team, right: Team) -> 'TraceStep':
        return cls(SPLIT, team, left=left, right=right)

    @classmethod
    def choice(cls, team: Team, witness: Dict[Row, object]) -> 'TraceStep':
        return cls(WITNESS, team, witness=tuple(sorted(witness.items())))

    def witness_map(self) -> Dict[Row, object]:
        return dict(self.witness)


@dataclass
class EvalTrace:
    formula: Formula
    team: Team
    steps: Dict[SubformulaPath, TraceStep] = field(default_factory=dict)

    def __len__(self):
        return len(self.steps)

    def to_lines(self) -> List[str]:
        lines = [f"team: {self.team}"]
        for path in sorted(self.steps, key=lambda p: (len(p), p)):
            step = self.steps[path]
            where = '/'.join(path) or '(root)'
            subformula = format_formula(subformula_at(self.formula, path))
            if step.kind == SPLIT:
                lines.append(f"{where}: split {subformula}")
                lines.append(f"    left  {step.left}")
                lines.append(f"    right {step.right}")
            else:
                lines.append(f"{where}: witness for {subformula}")
                for row, value in step.witness:
                    shown = sorted(value) if isinstance(value, frozenset) else value
                    lines.append(f"    {step.team.assignment(row)} -> {shown}")
        return lines

    def to_text(self) -> str:
        return '\n'.join(self.to_lines())


def replay(structure: Structure, team: Team, formula: Formula, trace: EvalTrace, mode: str = 'strict') -> bool:
    """
    Re-derive truth from the recorded splits and witnesses, without search.

    First-order subformulas without a recorded step are checked assignment by
    assignment. A missing step anywhere else makes the replay fail.
    """
    return _replay(structure, team, formula, (), trace.steps, str(mode) == 'lax')


def _replay(structure, team, formula, path, steps, lax) -> bool:
    step = steps.get(path)
    if isinstance(formula, Literal):
        return all(literal_holds(structure, s, formula) for s in team.assignments())
    if isinstance(formula, ATOM_TYPES):
        return evaluate_atom(structure, team, formula)
    if isinstance(formula, Conj):
        return (
            _replay(structure, team, formula.left, path + (LEFT,), steps, lax)
            and _replay(structure, team, formula.right, path + (RIGHT,), steps, lax)
        )
    if isinstance(formula, Forall):
        extended = universal_extension(team, formula.variable, structure)
        return _replay(structure, extended, formula.body, path + (BODY,), steps, lax)
    if step is None:
        return is_first_order(formula) and check_flatness_shortcut(structure, team, formula)
    if isinstance(formula, Disj):
        if step.kind != SPLIT or step.left.rows | step.right.rows != team.rows:
            return False
        if not lax and step.left.rows & step.right.rows:
            return False
        return (
            _replay(structure, step.left, formula.left, path + (LEFT,), steps, lax)
            and _replay(structure, step.right, formula.right, path + (RIGHT,), steps, lax)
        )
    if isinstance(formula, Exists):
        witness = step.witness_map()
        if step.kind != WITNESS or set(witness) != team.rows:
            return False
        try:
            if lax:
                extended = lax_extension(team, formula.variable, witness)
            else:
                extended = strict_extension(team, formula.variable, witness)
        except TeamError:
            return False
        return _replay(structure, extended, formula.body, path + (BODY,), steps, lax)
    raise TypeError(f"Not a formula: {formula!r}")
