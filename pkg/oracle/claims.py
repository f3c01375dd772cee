"""
Executable checks of the semantic facts the workbench relies on.

Every check is registered under a claim name with @claim and receives the
scale parameters from settings.TEAMLOGIC['HARNESS_SCALES'], a seed and
evaluation limits. A check counts the cases it decided and the cases it had
to skip because a search did not fit the limits, and records the first few
failures.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional

from eso.normal_form import validate_durand_form
from eso.evaluate import evaluate_eso
from eso.grammar import parse_eso
from eso.translate import eso_rank, eso_to_inclusion, translate_to_eso, witness_uniqueness
from oracle.corpus import (
    ATOM_KINDS,
    CorpusSpec,
    atom_conjunctions,
    dependence_corpus,
    first_order_corpus,
    generate_corpus,
    quantifier_free_corpus,
)
from oracle.equivalence import EQUIVALENT, LIMIT_EXCEEDED, check_open_equivalence, check_sentence_equivalence
from semantics.evaluator import SemanticsMode, evaluate, satisfies_sentence
from semantics.limits import EvalLimits, LimitExceeded
from semantics.tarski import check_flatness_shortcut
from structures.enumerate import enumerate_structures, teams_for
from structures.structure import Structure
from structures.team import Team, restrict, select, universal_extension
from structures.vocabulary import Vocabulary, parse_vocabulary
from syntax.analysis import atoms, classify_fragment, universal_count
from syntax.formula import IncAtom, IndAtom
from syntax.grammar import format_formula, parse_formula
from transform.prenex import to_prenex_normal_form
from transform.rewrite import contract_independence, dep_to_independence, relativize, rename_variable

logger = logging.getLogger(__name__)

STRICT, LAX = SemanticsMode.STRICT, SemanticsMode.LAX
VOCABULARY = parse_vocabulary("P/1,E/2")
FREE = ('u', 'v')

# Three elements and a three-row team over u, v, w on which strict and lax disjunction differ.
EXAMPLE_STRUCTURE = Structure(3)
EXAMPLE_TEAM = Team(('u', 'v', 'w'), frozenset([(0, 1, 2), (1, 0, 1), (2, 1, 0)]))
EXAMPLE_DISJUNCTION = parse_formula("inc(u; v) | inc(w; v)")

# Sentences in function-only normal form, with the vocabulary they are evaluated over.
INCLUSION_SUITE = (
    "exists f/1 . forall x . P(f(x))",
    "exists f/1 g/1 . forall x . P(f(x)) & g(f(x)) = x & Q(g(x))",
    "exists f/1 . forall x . f(x) != x",
    "exists f/1 . forall x . E(x f(x))",
    "exists f/1 g/1 . forall x . g(x) = x | P(f(x))",
    "exists f/2 . forall x y . E(x y) -> f(x y) = y",
    "exists f/1 g/1 . forall x . g(f(x)) = x & g(x) != f(x)",
    "exists f/1 g/1 . forall x . P(x) -> (P(f(x)) & g(f(x)) != x) | Q(g(x))",
    "exists f/1 . forall x . E(f(x) x) & !E(x x)",
    "exists f/2 . forall x y . E(x y) | P(f(x y))",
    "exists f/1 g/1 . forall x . Q(g(x)) & g(f(x)) = f(x) & P(f(x))",
    "exists f/2 g/2 . forall x y . g(f(x y) f(x y)) = x & P(g(x y))",
)
INCLUSION_VOCABULARY = parse_vocabulary("P/1,Q/1,E/2")

INVALID_NORMAL_FORMS = (
    "exists f/1 . forall x . f(f(x)) = x",
    "exists f/2 . forall x . P(f(x x))",
    "exists f/1 g/1 . forall x . P(g(f(x)))",
    "exists f/1 rel S/1 . forall x . S(f(x))",
)


@dataclass
class ClaimResult:
    name: str
    checked: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        if len(self.failures) < 5:
            self.failures.append(message)
        else:
            logger.debug("Further failure in %s: %s", self.name, message)

    def expect(self, condition: bool, message: str):
        self.checked += 1
        if not condition:
            self.fail(message)

    @property
    def detail(self) -> str:
        if self.failures:
            return '; '.join(self.failures)
        return f"{self.checked} checked, {self.skipped} skipped"


@dataclass(frozen=True)
class Claim:
    name: str
    description: str
    check: Callable[[dict, int, EvalLimits], ClaimResult]


CLAIMS: Dict[str, Claim] = {}


def claim(name: str, description: str):
    def register(function):
        CLAIMS[name] = Claim(name, description, function)
        return function
    return register


def _structures(vocabulary: Vocabulary, params: dict, rng: random.Random) -> List[Structure]:
    structures = list(enumerate_structures(vocabulary, params.get('max_size', 2)))
    samples = params.get('structure_samples')
    if samples and len(structures) > samples:
        structures = [structures[i] for i in sorted(rng.sample(range(len(structures)), samples))]
    return structures


def _teams(structure, variables, params, rng, limits) -> List[Team]:
    samples = params.get('team_samples')
    teams = list(teams_for(structure, variables, params.get('max_rows'), samples or 10, rng, limits))
    if samples and len(teams) > samples:
        teams = [teams[i] for i in sorted(rng.sample(range(len(teams)), samples))]
    return teams


def _label(formula, structure, team=None) -> str:
    where = f" on {structure}" if team is None else f" on {structure} with {team}"
    return f"{format_formula(formula)}{where}"


@claim('strict-disjunction-example', "Strict disjunction breaks the lax prenex rule on the three-row team")
def check_strict_disjunction_example(params, seed, limits) -> ClaimResult:
    result = ClaimResult('strict-disjunction-example')
    structure, team, psi = EXAMPLE_STRUCTURE, EXAMPLE_TEAM, EXAMPLE_DISJUNCTION
    inside = parse_formula("A x. (inc(w; x) & (inc(u; v) | inc(w; v)))")
    outside = parse_formula("(A x. inc(w; x)) & (inc(u; v) | inc(w; v))")
    result.expect(not evaluate(structure, team, psi, STRICT, limits), "strict disjunction should be false")
    result.expect(evaluate(structure, team, inside, STRICT, limits), "strict ∀x(inc(w;x) & ψ) should be true")
    result.expect(not evaluate(structure, team, outside, STRICT, limits), "strict (∀x inc(w;x)) & ψ should be false")
    result.expect(evaluate(structure, team, psi, LAX, limits), "lax disjunction should be true")
    return result


@claim('flatness', "First-order formulas hold on a team iff they hold on each assignment")
def check_flatness(params, seed, limits) -> ClaimResult:
    result = ClaimResult('flatness')
    rng = random.Random(seed)
    corpus = first_order_corpus(VOCABULARY, FREE, params['formulas'], seed, params.get('max_depth', 3))
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, FREE, params, rng, limits):
                try:
                    pointwise = check_flatness_shortcut(structure, team, formula)
                    strict = evaluate(structure, team, formula, STRICT, limits)
                    lax = evaluate(structure, team, formula, LAX, limits)
                except LimitExceeded:
                    result.skipped += 1
                    continue
                result.expect(strict == pointwise == lax, _label(formula, structure, team))
    return result


def _open_corpus(params, seed, kinds=ATOM_KINDS):
    spec = CorpusSpec(
        VOCABULARY, max_depth=params.get('max_depth', 3), atom_kinds=kinds,
        max_universals=params.get('max_depth', 3), seed=seed, count=params['formulas'],
        free_variables=FREE,
    )
    return list(generate_corpus(spec))


@claim('strict-implies-lax', "Truth under strict semantics implies truth under lax semantics")
def check_strict_implies_lax(params, seed, limits) -> ClaimResult:
    result = ClaimResult('strict-implies-lax')
    rng = random.Random(seed)
    corpus = _open_corpus(params, seed)
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, FREE, params, rng, limits):
                try:
                    if not evaluate(structure, team, formula, STRICT, limits):
                        continue
                    lax = evaluate(structure, team, formula, LAX, limits)
                except LimitExceeded:
                    result.skipped += 1
                    continue
                result.expect(lax, _label(formula, structure, team))
    return result


@claim('empty-team', "Every formula holds on the empty team")
def check_empty_team(params, seed, limits) -> ClaimResult:
    result = ClaimResult('empty-team')
    corpus = _open_corpus(params, seed)
    empty = Team.empty(FREE)
    for structure in _structures(VOCABULARY, params, random.Random(seed)):
        for formula in corpus:
            for mode in (STRICT, LAX):
                result.expect(evaluate(structure, empty, formula, mode, limits), f"{mode}: {_label(formula, structure)}")
    return result


@claim('downward-closure', "Dependence logic formulas stay true on subteams")
def check_downward_closure(params, seed, limits) -> ClaimResult:
    result = ClaimResult('downward-closure')
    rng = random.Random(seed)
    corpus = dependence_corpus(VOCABULARY, FREE, params['formulas'], seed, params.get('max_depth', 3))
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, FREE, params, rng, limits):
                try:
                    if not evaluate(structure, team, formula, STRICT, limits):
                        continue
                    for size in range(len(team)):
                        for rows in combinations(team.sorted_rows, size):
                            subteam = Team(team.variables, frozenset(rows))
                            result.expect(
                                evaluate(structure, subteam, formula, STRICT, limits),
                                _label(formula, structure, subteam),
                            )
                except LimitExceeded:
                    result.skipped += 1
    return result


@claim('dependence-strict-lax', "Strict and lax semantics agree on dependence logic")
def check_dependence_strict_lax(params, seed, limits) -> ClaimResult:
    result = ClaimResult('dependence-strict-lax')
    rng = random.Random(seed)
    corpus = dependence_corpus(VOCABULARY, FREE, params['formulas'], seed, params.get('max_depth', 3))
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, FREE, params, rng, limits):
                try:
                    strict = evaluate(structure, team, formula, STRICT, limits)
                    lax = evaluate(structure, team, formula, LAX, limits)
                except LimitExceeded:
                    result.skipped += 1
                    continue
                result.expect(strict == lax, _label(formula, structure, team))
    return result


@claim('lax-locality', "Under lax semantics only the values of free variables matter")
def check_lax_locality(params, seed, limits) -> ClaimResult:
    result = ClaimResult('lax-locality')
    rng = random.Random(seed)
    corpus = _open_corpus(params, seed)
    wide = FREE + ('w',)
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, wide, params, rng, limits):
                try:
                    full = evaluate(structure, team, formula, LAX, limits)
                    narrow = evaluate(structure, restrict(team, FREE), formula, LAX, limits)
                except LimitExceeded:
                    result.skipped += 1
                    continue
                result.expect(full == narrow, _label(formula, structure, team))
    return result


@claim('strict-locality-failure', "Under strict semantics an unused column can change the verdict")
def check_strict_locality_failure(params, seed, limits) -> ClaimResult:
    result = ClaimResult('strict-locality-failure')
    structure, psi = EXAMPLE_STRUCTURE, EXAMPLE_DISJUNCTION
    extended = universal_extension(EXAMPLE_TEAM, 'x', structure)
    result.expect(evaluate(structure, extended, psi, STRICT, limits), "ψ should hold with the extra column x")
    result.expect(
        not evaluate(structure, restrict(extended, EXAMPLE_TEAM.variables), psi, STRICT, limits),
        "ψ should fail once x is dropped",
    )
    result.expect(
        evaluate(structure, extended, psi, LAX, limits)
        == evaluate(structure, restrict(extended, EXAMPLE_TEAM.variables), psi, LAX, limits),
        "lax verdicts should not depend on x",
    )
    return result


@claim('restricted-locality', "Conjunctions of atoms with a first-order part are local under strict semantics")
def check_restricted_locality(params, seed, limits) -> ClaimResult:
    result = ClaimResult('restricted-locality')
    rng = random.Random(seed)
    corpus = list(atom_conjunctions(VOCABULARY, FREE, ATOM_KINDS, params['formulas'], seed))
    wide = FREE + ('w',)
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            for team in _teams(structure, wide, params, rng, limits):
                try:
                    full = evaluate(structure, team, formula, STRICT, limits)
                    narrow = evaluate(structure, restrict(team, FREE), formula, STRICT, limits)
                except LimitExceeded:
                    result.skipped += 1
                    continue
                result.expect(full == narrow, _label(formula, structure, team))
    return result


@claim('lemma-renaming', "Renaming a variable together with its team column preserves truth")
def check_renaming(params, seed, limits) -> ClaimResult:
    result = ClaimResult('lemma-renaming')
    rng = random.Random(seed)
    corpus = quantifier_free_corpus(VOCABULARY, FREE, ATOM_KINDS, params['formulas'], seed)
    for structure in _structures(VOCABULARY, params, rng):
        for formula in corpus:
            renamed = rename_variable(formula, 'u', 'u_new')
            for team in _teams(structure, FREE, params, rng, limits):
                relabeled = team.rename('u', 'u_new')
                for mode in (STRICT, LAX):
                    try:
                        before = evaluate(structure, team, formula, mode, limits)
                        after = evaluate(structure, relabeled, renamed, mode, limits)
                    except LimitExceeded:
                        result.skipped += 1
                        continue
                    result.expect(before == after, f"{mode}: {_label(formula, structure, team)}")
    return result


RELATIVIZATION_ATOMS = (
    "dep(;v)", "dep(u; v)", "inc(u; v)", "inc(v; u)", "ind(; u; v)", "ind(u; v; v)",
)


@claim('lemma-relativization', "rel_a(α) holds iff α holds on every selection of the team by a")
def check_relativization(params, seed, limits) -> ClaimResult:
    result = ClaimResult('lemma-relativization')
    variables = ('a', 'u', 'v', 'w')[:params.get('variables', 3)]
    atoms_ = [parse_formula(text) for text in RELATIVIZATION_ATOMS]
    if 'w' in variables:
        atoms_ += [parse_formula(text) for text in ("inc(u w; v w)", "ind(w; u; v)", "dep(u w; v)")]
    rng = random.Random(seed)
    for structure in enumerate_structures(Vocabulary(), params.get('max_size', 2)):
        teams = list(_teams(structure, variables, params, rng, limits))
        for atom in atoms_:
            relativized = relativize(('a',), atom)
            for team in teams:
                selected = all(
                    evaluate(structure, select(team, ('a',), (value,)), atom, STRICT, limits)
                    for value in structure.domain
                )
                result.expect(
                    evaluate(structure, team, relativized, STRICT, limits) == selected,
                    _label(relativized, structure, team),
                )
    return result


def _equivalence_check(result: ClaimResult, left, right, variables, params, seed, limits, vocabulary=None):
    for mode in (STRICT, LAX):
        report = check_open_equivalence(
            left, right, variables, vocabulary=vocabulary or Vocabulary(),
            max_size=params.get('max_size', 2), mode=mode, limits=limits,
            max_rows=params.get('max_rows'), samples=params.get('team_samples', 200), seed=seed,
        )
        if report.verdict == LIMIT_EXCEEDED:
            result.skipped += 1
            continue
        result.expect(
            report.verdict == EQUIVALENT,
            f"{mode}: {format_formula(left)} vs {format_formula(right)}: {report.verdict}",
        )


@claim('lemma-contraction', "An independence atom equals the conjunction of its contracted atoms")
def check_contraction(params, seed, limits) -> ClaimResult:
    result = ClaimResult('lemma-contraction')
    for text in ("ind(x; y v; z)", "ind(; y v; z x)"):
        atom = parse_formula(text)
        _equivalence_check(result, atom, contract_independence(atom), ('v', 'x', 'y', 'z'), params, seed, limits)
    return result


@claim('dependence-as-independence', "dep(x̄; y) is equivalent to ind(x̄; y; y)")
def check_dependence_as_independence(params, seed, limits) -> ClaimResult:
    result = ClaimResult('dependence-as-independence')
    for text in ("dep(x; y)", "dep(; y)"):
        atom = parse_formula(text)
        _equivalence_check(result, atom, dep_to_independence(atom), ('x', 'y'), params, seed, limits)
    return result


@claim('prenex-normal-form', "Sentences are equivalent to their prenex normal form under strict semantics")
def check_prenex_normal_form(params, seed, limits) -> ClaimResult:
    result = ClaimResult('prenex-normal-form')
    spec = CorpusSpec(
        VOCABULARY, max_depth=params.get('max_depth', 3),
        max_universals=params.get('max_universals', 2), seed=seed, count=params['formulas'],
    )
    for sentence in generate_corpus(spec):
        prenex = to_prenex_normal_form(sentence)
        problems = prenex.shape_violations()
        result.expect(not problems, f"{format_formula(sentence)}: {'; '.join(problems)}")
        result.expect(
            len(prenex.universals) <= universal_count(sentence),
            f"{format_formula(sentence)}: universal count grew to {len(prenex.universals)}",
        )
        report = check_sentence_equivalence(
            sentence, prenex.to_formula(), VOCABULARY, params.get('max_size', 2), STRICT, limits
        )
        if report.verdict == LIMIT_EXCEEDED:
            result.skipped += 1
            continue
        result.expect(report.equivalent, f"{format_formula(sentence)}: {report.verdict}")
    return result


@claim('eso-translation', "∀∃ sentences and their ESO translations are true on the same structures")
def check_eso_translation(params, seed, limits) -> ClaimResult:
    result = ClaimResult('eso-translation')
    spec = CorpusSpec(
        VOCABULARY, max_depth=params.get('max_depth', 2), atom_kinds=ATOM_KINDS,
        max_universals=params.get('max_universals', 2), seed=seed, count=params['formulas'],
        forall_exists_form=True, max_existentials=params.get('max_existentials', 2),
    )
    rng = random.Random(seed)
    for sentence in generate_corpus(spec):
        translated = translate_to_eso(sentence)
        k = universal_count(sentence)
        contracted = contract_independence(sentence)
        bound = k + 1 if any(isinstance(atom, IndAtom) for atom in atoms(contracted)) else k
        rank = eso_rank(translated)
        result.expect(rank <= bound, f"{format_formula(sentence)}: rank {rank} above {bound}")
        for structure in _structures(VOCABULARY, params, rng):
            try:
                team_verdict = satisfies_sentence(structure, sentence, STRICT, limits)
                eso_verdict = evaluate_eso(structure, translated, limits)
            except LimitExceeded:
                result.skipped += 1
                continue
            result.expect(team_verdict == eso_verdict, _label(sentence, structure))
    return result


@claim('inclusion-translation', "ESO sentences in normal form and their inclusion logic translations agree")
def check_inclusion_translation(params, seed, limits) -> ClaimResult:
    result = ClaimResult('inclusion-translation')
    rng = random.Random(seed)
    structures = _structures(INCLUSION_VOCABULARY, params, rng)
    for text in INCLUSION_SUITE:
        sentence = parse_eso(text)
        translation = eso_to_inclusion(sentence)
        profile = classify_fragment(translation)
        result.expect(
            profile.universal_count == sentence.rank and profile.in_fragment('forall', sentence.rank),
            f"{text}: translation has {profile.universal_count} universals",
        )
        result.expect(
            all(isinstance(atom, IncAtom) for atom in atoms(translation)),
            f"{text}: translation uses atoms other than inclusion",
        )
        for structure in structures:
            try:
                eso_verdict = evaluate_eso(structure, sentence, limits)
                team_verdict = satisfies_sentence(structure, translation, STRICT, limits)
                unique = witness_uniqueness(structure, sentence, translation, limits)
            except LimitExceeded:
                result.skipped += 1
                continue
            result.expect(eso_verdict == team_verdict, f"{text} on {structure}")
            result.expect(unique is not False, f"{text} on {structure}: inclusion witness is not unique")
    for text in INVALID_NORMAL_FORMS:
        result.expect(not validate_durand_form(parse_eso(text)).valid, f"{text} should be rejected")
    return result


def claim_names() -> List[str]:
    return list(CLAIMS)


def get_claim(name: str) -> Optional[Claim]:
    return CLAIMS.get(name)
