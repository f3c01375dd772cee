"""
Bounded equivalence checking: two formulas are compared on every structure
up to a size bound, and for open formulas on every team (or a seeded sample
of teams when there are too many).
"""

import logging
import random
import time
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from semantics.evaluator import FreeVariableError, SemanticsMode, evaluate, satisfies_sentence
from semantics.limits import EvalLimits, LimitExceeded
from structures.enumerate import enumerate_structures, teams_for
from structures.files import format_structure, format_team
from structures.structure import Structure
from structures.team import Team, TeamError
from structures.vocabulary import Vocabulary, infer_vocabulary
from syntax.analysis import free_variables
from syntax.formula import Formula
from syntax.grammar import format_formula

logger = logging.getLogger(__name__)

EQUIVALENT = 'equivalent-up-to-bound'
COUNTEREXAMPLE = 'counterexample'
LIMIT_EXCEEDED = 'limit-exceeded'
INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class Counterexample:
    structure: Structure
    team: Optional[Team]
    # None when the formula cannot be evaluated on the team.
    left_verdict: Optional[bool]
    right_verdict: Optional[bool]

    def replay(self, left: Formula, right: Formula, mode=SemanticsMode.STRICT, limits: EvalLimits = None) -> Tuple[bool, bool]:
        """Re-evaluate both formulas on the stored structure and team."""
        team = self.team if self.team is not None else Team.unit()
        return (
            evaluate(self.structure, team, left, mode, limits),
            evaluate(self.structure, team, right, mode, limits),
        )


@dataclass
class EquivalenceReport:
    verdict: str
    left: Formula
    right: Formula
    mode: str
    structures: int = 0
    teams: int = 0
    skipped: int = 0
    seconds: float = 0.0
    counterexample: Optional[Counterexample] = None
    reason: str = ''

    @property
    def equivalent(self) -> bool:
        return self.verdict == EQUIVALENT

    def to_text(self) -> str:
        lines = [
            f"verdict: {self.verdict}",
            f"semantics: {self.mode}",
            f"left: {format_formula(self.left)}",
            f"right: {format_formula(self.right)}",
            f"structures tested: {self.structures}",
        ]
        if self.teams:
            lines.append(f"teams tested: {self.teams}")
        if self.skipped:
            lines.append(f"teams skipped: {self.skipped}")
        if self.reason:
            lines.append(f"stopped: {self.reason}")
        if self.counterexample:
            example = self.counterexample
            lines.append("counterexample structure:")
            lines.extend(f"    {line}" for line in format_structure(example.structure).splitlines())
            if example.team is not None:
                lines.append("counterexample team:")
                lines.extend(f"    {line}" for line in format_team(example.team).splitlines())
            lines.append(f"left is {_shown(example.left_verdict)}, right is {_shown(example.right_verdict)}")
        lines.append(f"time: {self.seconds:.3f}s")
        return '\n'.join(lines)

    def to_summary(self) -> Dict[str, str]:
        summary = {
            'verdict': self.verdict,
            'structures': str(self.structures),
            'teams': str(self.teams),
            'skipped': str(self.skipped),
            'seconds': f"{self.seconds:.3f}",
            'left': format_formula(self.left),
            'right': format_formula(self.right),
        }
        if self.counterexample:
            summary['counterexample_structure'] = str(self.counterexample.structure)
            if self.counterexample.team is not None:
                summary['counterexample_team'] = str(self.counterexample.team)
        return summary

    def summary_text(self) -> str:
        return ''.join(f"{key}={value}\n" for key, value in self.to_summary().items())


def _shown(verdict: Optional[bool]) -> str:
    return 'not evaluable' if verdict is None else str(verdict).lower()


def _vocabulary(formulas: Iterable[Formula], vocabulary: Optional[Vocabulary]) -> Vocabulary:
    inferred = infer_vocabulary(formulas)
    return inferred if vocabulary is None else vocabulary.merge(inferred)


def check_sentence_equivalence(
    left: Formula,
    right: Formula,
    vocabulary: Vocabulary = None,
    max_size: int = 3,
    mode: SemanticsMode = SemanticsMode.STRICT,
    limits: EvalLimits = None,
    min_size: int = 2,
) -> EquivalenceReport:
    """
    Compare the truth of two sentences on every structure of size
    min_size..max_size, stopping at the first structure where they differ.
    A limit error stops the run with a partial report.
    """
    limits = limits or EvalLimits.from_settings()
    vocabulary = _vocabulary([left, right], vocabulary)
    report = EquivalenceReport(EQUIVALENT, left, right, str(mode))
    started = time.monotonic()
    try:
        for structure in enumerate_structures(vocabulary, max_size, min_size):
            report.structures += 1
            left_verdict = satisfies_sentence(structure, left, mode, limits)
            right_verdict = satisfies_sentence(structure, right, mode, limits)
            if left_verdict != right_verdict:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = Counterexample(structure, None, left_verdict, right_verdict)
                break
    except LimitExceeded as exc:
        report.verdict = LIMIT_EXCEEDED
        report.reason = str(exc)
    report.seconds = time.monotonic() - started
    logger.info(
        "Sentence equivalence: %s after %d structures in %.3fs",
        report.verdict, report.structures, report.seconds,
    )
    return report


def check_open_equivalence(
    left: Formula,
    right: Formula,
    variables: Sequence[str],
    vocabulary: Vocabulary = None,
    max_size: int = 2,
    mode: SemanticsMode = SemanticsMode.STRICT,
    limits: EvalLimits = None,
    max_rows: Optional[int] = None,
    samples: int = 200,
    seed: int = 0,
    min_size: int = 2,
) -> EquivalenceReport:
    """
    Compare two formulas on every structure and every team over the given
    variables. When the teams of a structure do not fit limits.max_teams, a
    seeded sample of them is used instead. A team on which only one formula
    can be evaluated (the other quantifies a team variable) is a
    counterexample; a team on which neither can is skipped, and a run where
    every team was skipped is inconclusive.

    Raises:
        ValueError: If a free variable of either formula is not among the variables
    """
    variables = tuple(sorted(set(variables)))
    missing = (free_variables(left) | free_variables(right)) - set(variables)
    if missing:
        raise ValueError(f"Free variables {', '.join(sorted(missing))} are not among {', '.join(variables)}")

    limits = limits or EvalLimits.from_settings()
    vocabulary = _vocabulary([left, right], vocabulary)
    rng = random.Random(seed)
    report = EquivalenceReport(EQUIVALENT, left, right, str(mode))
    started = time.monotonic()
    try:
        for structure in enumerate_structures(vocabulary, max_size, min_size):
            report.structures += 1
            for team in teams_for(structure, variables, max_rows, samples, rng, limits):
                left_verdict = _evaluate_on(structure, team, left, mode, limits)
                right_verdict = _evaluate_on(structure, team, right, mode, limits)
                if left_verdict is None and right_verdict is None:
                    report.skipped += 1
                    continue
                report.teams += 1
                if left_verdict != right_verdict:
                    report.verdict = COUNTEREXAMPLE
                    report.counterexample = Counterexample(structure, team, left_verdict, right_verdict)
                    break
            if report.counterexample:
                break
        if report.verdict == EQUIVALENT and report.skipped and not report.teams:
            report.verdict = INCONCLUSIVE
            report.reason = f"neither formula can be evaluated on the {report.skipped} teams tried"
    except LimitExceeded as exc:
        report.verdict = LIMIT_EXCEEDED
        report.reason = str(exc)
    report.seconds = time.monotonic() - started
    logger.info(
        "Open equivalence: %s after %d structures and %d teams in %.3fs",
        report.verdict, report.structures, report.teams, report.seconds,
    )
    return report


def _evaluate_on(structure, team, formula, mode, limits) -> Optional[bool]:
    try:
        return evaluate(structure, team, formula, mode, limits)
    except (TeamError, FreeVariableError) as exc:
        logger.debug("Cannot evaluate %s on %s: %s", format_formula(formula), team, exc)
        return None
