"""
Translations between team-semantic sentences and ESO sentences.

fo_to_eso codes the team produced by a ∀x1..∀xk ∃y1..∃ym prefix by a k-ary
relation S (the x-values present) and functions f1..fm (the values of the
y's), then states each atom of the quantifier-free matrix as a first-order
property of S and the f's. eso_to_inclusion goes the other way for ESO
sentences in the function-only normal form checked by validate_durand_form.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Set, Tuple

from eso.normal_form import validate_durand_form
from eso.evaluate import EsoEvaluator, EsoModel
from eso.terms import (
    And,
    Apply,
    Atom,
    EsoSentence,
    Implies,
    Matrix,
    Not,
    Or,
    Symbol,
    Term,
    Var,
    conjunction,
    term_equals,
)
from semantics.evaluator import SemanticsMode, explain
from semantics.limits import EvalLimits
from structures.structure import Structure
from structures.team import Team, strict_extension, universal_extension
from syntax.analysis import (
    all_variables,
    atoms,
    free_variables,
    fresh_variable,
    is_quantifier_free,
    predicates,
)
from syntax.formula import (
    BODY,
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
from transform.prenex import to_prenex_normal_form
from transform.rewrite import contract_independence

logger = logging.getLogger(__name__)


class TranslationError(ValueError):
    pass


def split_forall_exists(formula: Formula) -> Tuple[Tuple[str, ...], Tuple[str, ...], Formula]:
    """
    Split ∀x1..∀xk ∃y1..∃ym χ into its universals, existentials and matrix.

    Raises:
        TranslationError: If the formula is not of that form with a quantifier-free matrix
    """
    universals, existentials = [], []
    while isinstance(formula, Forall):
        universals.append(formula.variable)
        formula = formula.body
    while isinstance(formula, Exists):
        existentials.append(formula.variable)
        formula = formula.body
    if not is_quantifier_free(formula):
        raise TranslationError("Expected a sentence of the form ∀x..∃y..χ with χ quantifier-free")
    names = universals + existentials
    if len(set(names)) != len(names):
        raise TranslationError("Every variable must be quantified exactly once")
    loose = free_variables(formula) - set(names)
    if loose:
        raise TranslationError(f"Not a sentence, free variables: {', '.join(sorted(loose))}")
    return tuple(universals), tuple(existentials), formula


class SymbolNames:
    """Deterministic fresh symbol names: S, S1, S2, ... and f1, f2, ... avoiding taken names."""

    def __init__(self, taken):
        self.taken: Set[str] = set(taken)

    def next(self, prefix: str, bare: bool = False) -> str:
        if bare and prefix not in self.taken:
            self.taken.add(prefix)
            return prefix
        counter = 1
        while f"{prefix}{counter}" in self.taken:
            counter += 1
        name = f"{prefix}{counter}"
        self.taken.add(name)
        return name


@dataclass
class _Context:
    universals: Tuple[str, ...]
    existentials: Dict[str, str]
    extra: Optional[str]
    names: SymbolNames
    functions: List[Symbol] = field(default_factory=list)
    relations: List[Symbol] = field(default_factory=list)

    def row(self) -> Tuple[Term, ...]:
        return tuple(Var(x) for x in self.universals)

    def term(self, variable: str, row: Tuple[Term, ...] = None) -> Term:
        """The term for a team variable, read on the row whose universal values are given."""
        row = self.row() if row is None else row
        if variable in self.existentials:
            return Apply(self.existentials[variable], row)
        return row[self.universals.index(variable)]

    def terms(self, variables, row=None) -> Tuple[Term, ...]:
        return tuple(self.term(v, row) for v in variables)

    def function(self, prefix: str, arity: int) -> str:
        name = self.names.next(prefix)
        self.functions.append(Symbol(name, arity))
        return name

    def relation(self, arity: int) -> str:
        name = self.names.next('S')
        self.relations.append(Symbol(name, arity))
        return name


def _translate(formula: Formula, team: str, context: _Context) -> List[Matrix]:
    """Conjuncts, under the universal prefix, stating that the team coded by `team` satisfies formula."""
    guard = Atom(team, context.row())

    if isinstance(formula, Literal):
        atom = Atom(formula.predicate, context.terms(formula.args))
        return [Implies(guard, atom if formula.positive else Not(atom))]

    if isinstance(formula, DepAtom):
        g = context.function('g', len(formula.condition))
        determined = context.term(formula.determined)
        return [Implies(guard, term_equals(determined, Apply(g, context.terms(formula.condition))))]

    if isinstance(formula, IncAtom):
        k = len(context.universals)
        skolem = tuple(Apply(context.function('h', k), context.row()) for _ in range(k))
        equations = [
            term_equals(t, s)
            for t, s in zip(context.terms(formula.left), context.terms(formula.right, skolem))
        ]
        return [Implies(guard, conjunction([Atom(team, skolem)] + equations))]

    if isinstance(formula, IndAtom):
        if len(formula.left) != 1 or len(formula.right) != 1:
            raise TranslationError(
                "Independence atoms must have one variable on each side; contract them first"
            )
        k = len(context.universals)
        arity = len(formula.condition) + 1
        s1, s2 = context.relation(arity), context.relation(arity)
        extra = Var(context.extra)
        witness_args = context.row() + (extra,)
        skolem = tuple(Apply(context.function('h', k + 1), witness_args) for _ in range(k))

        u1, z1 = context.terms(formula.condition), context.term(formula.left[0])
        u2, z2 = context.terms(formula.condition, skolem), context.term(formula.left[0], skolem)
        w1, w2 = context.term(formula.right[0]), context.term(formula.right[0], skolem)
        combined = conjunction(
            [Atom(team, skolem)]
            + [term_equals(a, b) for a, b in zip(u1, u2)]
            + [term_equals(z1, z2), term_equals(extra, w2)]
        )
        return [Implies(guard, conjunction([
            Atom(s1, u1 + (z1,)),
            Atom(s2, u1 + (w1,)),
            Implies(Atom(s2, u1 + (extra,)), combined),
        ]))]

    if isinstance(formula, Conj):
        return _translate(formula.left, team, context) + _translate(formula.right, team, context)

    if isinstance(formula, Disj):
        k = len(context.universals)
        s1, s2 = context.relation(k), context.relation(k)
        left, right = Atom(s1, context.row()), Atom(s2, context.row())
        cover = [
            Implies(guard, Or(left, right)),
            Implies(Or(left, right), guard),
            Not(And(left, right)),
        ]
        return cover + _translate(formula.left, s1, context) + _translate(formula.right, s2, context)

    raise TranslationError(f"Unexpected subformula in a quantifier-free matrix: {formula!r}")


def fo_to_eso(formula: Formula) -> EsoSentence:
    """
    Translate ∀x1..∀xk ∃y1..∃ym χ into an equivalent ESO sentence.

    Independence atoms must already be contracted to single variables on
    both sides. The result has rank k, or k + 1 when χ contains an
    independence atom.

    Raises:
        TranslationError: If the formula is not in that form
    """
    universals, existentials, matrix = split_forall_exists(formula)
    names = SymbolNames(predicates([formula]))
    team = names.next('S', bare=True)
    f_names = {y: names.next('f') for y in existentials}
    k = len(universals)

    has_independence = any(isinstance(atom, IndAtom) for atom in atoms(matrix))
    extra = fresh_variable(all_variables(formula), base='x') if has_independence else None
    context = _Context(universals, f_names, extra, names)
    context.relations.append(Symbol(team, k))
    context.functions.extend(Symbol(f_names[y], k) for y in existentials)

    conjuncts = [Atom(team, context.row())] + _translate(matrix, team, context)
    result = EsoSentence(
        functions=tuple(context.functions),
        relations=tuple(context.relations),
        universals=universals + ((extra,) if extra else ()),
        matrix=conjunction(conjuncts),
    )
    logger.debug(
        "ESO translation: %d functions, %d relations, rank %d",
        len(result.functions), len(result.relations), result.rank,
    )
    return result


def in_forall_exists_form(formula: Formula) -> bool:
    try:
        split_forall_exists(formula)
    except TranslationError:
        return False
    return True


def translate_to_eso(formula: Formula, normalize: bool = True) -> EsoSentence:
    """Prenex normal form when needed, independence contraction, then fo_to_eso."""
    if not in_forall_exists_form(formula):
        formula = to_prenex_normal_form(formula, normalize=normalize).to_formula()
    return fo_to_eso(contract_independence(formula, both_sides=True))


def eso_rank(sentence: EsoSentence) -> int:
    """Number of universally quantified first-order variables."""
    return sentence.rank


def _inclusion_names(sentence: EsoSentence, profile) -> Tuple[Dict[str, str], Dict[Apply, str]]:
    """Variable names for the flat term of every symbol and for every composed term."""
    taken = set(sentence.universals)
    flat, composed = {}, {}
    for symbol in sentence.functions:
        name = f"y_{symbol.name}"
        if name in taken:
            name = fresh_variable(taken, base=name)
        taken.add(name)
        flat[symbol.name] = name
    for outer, terms in profile.composed_terms.items():
        for j, term in enumerate(terms, start=1):
            name = f"z_{outer}_{j}"
            if name in taken:
                name = fresh_variable(taken, base=name)
            taken.add(name)
            composed[term] = name
    return flat, composed


def _nnf(matrix: Matrix, positive: bool, rename) -> Formula:
    if isinstance(matrix, Atom):
        return Literal(positive, matrix.predicate, tuple(rename(arg) for arg in matrix.args))
    if isinstance(matrix, Not):
        return _nnf(matrix.body, not positive, rename)
    if isinstance(matrix, Implies):
        left, right = _nnf(matrix.left, not positive, rename), _nnf(matrix.right, positive, rename)
        return Disj(left, right) if positive else Conj(left, right)
    left, right = _nnf(matrix.left, positive, rename), _nnf(matrix.right, positive, rename)
    if isinstance(matrix, And):
        return Conj(left, right) if positive else Disj(left, right)
    return Disj(left, right) if positive else Conj(left, right)


def eso_to_inclusion(sentence: EsoSentence) -> Formula:
    """
    Translate an ESO sentence in function-only normal form into an
    inclusion logic sentence with the same number of universal quantifiers.

    Flat terms f(x1..xk) become existential variables y_f, each composed term
    f(g1(x..)..gk(x..)) becomes z_f_j, fixed to its value by
    inc(y_g1..y_gk z_f_j; x1..xk y_f). Correct under strict semantics.

    Raises:
        TranslationError: If the sentence is not in the normal form
    """
    profile = validate_durand_form(sentence)
    if not profile.valid:
        raise TranslationError("Not in function-only normal form: " + '; '.join(profile.problems))
    flat, composed = _inclusion_names(sentence, profile)

    def rename(term: Term) -> str:
        if isinstance(term, Var):
            return term.name
        if term in composed:
            return composed[term]
        return flat[term.function]

    matrix = _nnf(sentence.matrix, True, rename)
    universals = sentence.universals
    inclusions = [
        IncAtom(
            tuple(flat[arg.function] for arg in term.args) + (name,),
            universals + (flat[term.function],),
        )
        for term, name in composed.items()
    ]
    prefix = (
        [(Forall, x) for x in universals]
        + [(Exists, y) for y in flat.values()]
        + [(Exists, z) for z in composed.values()]
    )
    return quantify(prefix, conjoin([matrix] + inclusions))


def _matrix_team(structure: Structure, translation: Formula, trace) -> Team:
    """The team the quantifier-free part of the translation was satisfied on."""
    team, path, formula = Team.unit(), (), translation
    while isinstance(formula, (Forall, Exists)):
        if isinstance(formula, Forall):
            team = universal_extension(team, formula.variable, structure)
        else:
            team = strict_extension(team, formula.variable, trace.steps[path].witness_map())
        path, formula = path + (BODY,), formula.body
    return team


def witness_uniqueness(structure: Structure, sentence: EsoSentence, translation: Formula, limits: EvalLimits = None) -> Optional[bool]:
    """
    Read function interpretations off the team on which strict evaluation
    satisfies the translation, and check that they explain it.

    The row with universal values ȳ_g is the only possible witness of each
    inclusion inc(ȳ_g z; x̄ y_f), so f(ȳ_g) is well defined and must equal z.
    The functions read off this way must also satisfy the ESO matrix. None
    when the translation is false on the structure.
    """
    verdict, trace = explain(structure, Team.unit(), translation, SemanticsMode.STRICT, limits)
    if not verdict:
        return None
    team = _matrix_team(structure, translation, trace)
    flat, composed = _inclusion_names(sentence, validate_durand_form(sentence))
    universals = sentence.universals

    functions: Dict[str, Dict[Tuple[int, ...], int]] = {}
    for function, column in flat.items():
        table = functions.setdefault(function, {})
        for assignment in team.assignments():
            key = tuple(assignment[x] for x in universals)
            if table.setdefault(key, assignment[column]) != assignment[column]:
                logger.debug("%s has two values at %r", function, key)
                return False

    for term, column in composed.items():
        for assignment in team.assignments():
            key = tuple(assignment[flat[arg.function]] for arg in term.args)
            if functions[term.function].get(key) != assignment[column]:
                logger.debug("%s is %d, not the value of %r", column, assignment[column], term)
                return False

    evaluator = EsoEvaluator(structure, sentence, limits)
    model = EsoModel(functions, {})
    return all(
        evaluator.matrix_holds(model, dict(zip(universals, values)))
        for values in product(structure.domain, repeat=len(universals))
    )
