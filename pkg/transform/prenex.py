"""
Prenex normal form for sentences with dependence, independence and
inclusion atoms.

Every sentence is compiled into the shape

    ∀x1..∀xm ∃y1..∃yn (χ ∧ θ)

where χ is a conjunction of dependence, independence and inclusion atoms whose
non-conditional variables are all existentially quantified, and θ is a
quantifier-free first-order formula. The number of universal quantifiers never
grows, so sentences of the k-forall fragment stay in it.

The compiler works bottom-up. Every subformula is compiled relative to its
scope, the variables quantified above it, into a PrenexPart; the connectives
and quantifiers then merge parts as follows:

- literals go to θ unchanged;
- atoms get their non-conditional variables replaced by existentially
  quantified copies, with the equalities between copy and original put in θ;
- an existential that has to move past universals gets dep(scope; x);
- conjunctions align the shorter universal prefix with the longer one and
  freeze the existentials of the shorter side with dependence atoms;
- disjunctions pick the disjunct through fresh a, b, c with
  dep(;b), dep(;c), b != c and a = b or a = c, relativizing both χ parts to a.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Set, Tuple

from syntax.analysis import (
    all_variables,
    bound_variables,
    free_variables,
    fresh_variable,
    is_first_order,
    is_quantifier_free,
    nonconditional_variables,
)
from syntax.formula import (
    ATOM_TYPES,
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    Formula,
    Literal,
    conjoin,
    differs,
    equals,
    quantify,
)
from transform.rewrite import normalize_bound_variables, relativize, substitute

logger = logging.getLogger(__name__)

Variables = Tuple[str, ...]


class NotASentenceError(ValueError):
    pass


class QuantifierReuseError(ValueError):
    pass


@dataclass(frozen=True)
class PrenexSentence:
    universals: Variables
    existentials: Variables
    chi: Tuple[Formula, ...]
    theta: Formula

    @property
    def prefix(self) -> List[Tuple[type, str]]:
        return [(Forall, v) for v in self.universals] + [(Exists, v) for v in self.existentials]

    @property
    def matrix(self) -> Formula:
        return conjoin(list(self.chi) + [self.theta])

    def to_formula(self) -> Formula:
        return quantify(self.prefix, self.matrix)

    def shape_violations(self) -> List[str]:
        """Every way in which this sentence misses the prenex normal form. Empty when it is well formed."""
        problems = []
        counts = Counter(self.universals + self.existentials)
        for variable, count in sorted(counts.items()):
            if count > 1:
                problems.append(f"{variable} is quantified {count} times")
        existentials = set(self.existentials)
        for atom in self.chi:
            if not isinstance(atom, ATOM_TYPES):
                problems.append(f"χ contains a non-atom: {atom!r}")
                continue
            for variable in sorted(nonconditional_variables(atom) - existentials):
                problems.append(f"{variable} is not existentially quantified but occurs non-conditionally in {atom!r}")
        if not is_first_order(self.theta) or not is_quantifier_free(self.theta):
            problems.append("θ is not a quantifier-free first-order formula")
        loose = free_variables(self.to_formula())
        if loose:
            problems.append(f"free variables: {', '.join(sorted(loose))}")
        return problems


@dataclass(frozen=True)
class PrenexPart:
    universals: Variables
    existentials: Variables
    chi: Tuple[Formula, ...]
    theta: Formula

    def renamed(self, mapping) -> 'PrenexPart':
        return PrenexPart(
            universals=tuple(mapping.get(v, v) for v in self.universals),
            existentials=self.existentials,
            chi=tuple(substitute(atom, mapping) for atom in self.chi),
            theta=substitute(self.theta, mapping),
        )


class PrenexCompiler:
    def __init__(self, formula: Formula):
        self.formula = formula
        self._used: Set[str] = set(all_variables(formula))

    def fresh(self, base: str) -> str:
        name = fresh_variable(self._used, base=base)
        self._used.add(name)
        return name

    def compile(self) -> PrenexSentence:
        part = self._compile(self.formula, ())
        return PrenexSentence(part.universals, part.existentials, part.chi, part.theta)

    def _compile(self, formula: Formula, scope: Variables) -> PrenexPart:
        if isinstance(formula, Literal):
            return PrenexPart((), (), (), formula)
        if isinstance(formula, ATOM_TYPES):
            return self._atom(formula)
        if isinstance(formula, Forall):
            inner = self._compile(formula.body, scope + (formula.variable,))
            return PrenexPart((formula.variable,) + inner.universals, inner.existentials, inner.chi, inner.theta)
        if isinstance(formula, Exists):
            return self._exists(formula, scope)
        if isinstance(formula, Conj):
            return self._conjunction(formula, scope)
        if isinstance(formula, Disj):
            return self._disjunction(formula, scope)
        raise TypeError(f"Not a formula: {formula!r}")

    def _atom(self, atom: Formula) -> PrenexPart:
        copies = {variable: self.fresh(variable) for variable in sorted(nonconditional_variables(atom))}
        primed = substitute(atom, copies)
        theta = conjoin(equals(copy, variable) for variable, copy in copies.items())
        return PrenexPart((), tuple(copies.values()), (primed,), theta)

    def _exists(self, formula: Exists, scope: Variables) -> PrenexPart:
        inner = self._compile(formula.body, scope + (formula.variable,))
        chi = inner.chi
        if inner.universals:
            chi = (DepAtom(scope, formula.variable),) + chi
        return PrenexPart(inner.universals, (formula.variable,) + inner.existentials, chi, inner.theta)

    def _aligned(self, formula, scope: Variables) -> Tuple[PrenexPart, PrenexPart, List[Formula]]:
        """
        Compile both sides and rename the shorter universal prefix onto the
        longer one. Returns the two parts, left first, and the dependence
        atoms that keep the shorter side's existentials independent of the
        extra universals.
        """
        left = self._compile(formula.left, scope)
        right = self._compile(formula.right, scope)
        # on a tie the right side is renamed onto the left
        short_is_left = len(left.universals) < len(right.universals)
        short, long = (left, right) if short_is_left else (right, left)

        k = len(short.universals)
        short = short.renamed(dict(zip(short.universals, long.universals[:k])))
        freezes = []
        if len(long.universals) > k:
            condition = scope + long.universals[:k]
            freezes = [DepAtom(condition, y) for y in short.existentials]
        if short_is_left:
            return short, long, freezes
        return long, short, freezes

    def _conjunction(self, formula: Conj, scope: Variables) -> PrenexPart:
        left, right, freezes = self._aligned(formula, scope)
        universals = max(left.universals, right.universals, key=len)
        return PrenexPart(
            universals,
            left.existentials + right.existentials,
            tuple(freezes) + left.chi + right.chi,
            Conj(left.theta, right.theta),
        )

    def _disjunction(self, formula: Disj, scope: Variables) -> PrenexPart:
        left, right, freezes = self._aligned(formula, scope)
        universals = max(left.universals, right.universals, key=len)
        a, b, c = self.fresh('a'), self.fresh('b'), self.fresh('c')

        chi = [DepAtom((), b), DepAtom((), c)]
        if universals:
            chi += [DepAtom(scope, a), DepAtom(scope, b), DepAtom(scope, c)]
        chi += freezes
        chi += [relativize((a,), atom) for atom in left.chi + right.chi]
        theta = Conj(
            differs(b, c),
            Disj(Conj(left.theta, equals(a, b)), Conj(right.theta, equals(a, c))),
        )
        return PrenexPart(universals, (a, b, c) + left.existentials + right.existentials, tuple(chi), theta)


def to_prenex_normal_form(formula: Formula, normalize: bool = False) -> PrenexSentence:
    """
    Compile a sentence into prenex normal form.

    Args:
        formula: A sentence
        normalize: Rename re-used quantified variables first instead of failing

    Returns:
        The equivalent PrenexSentence under strict semantics

    Raises:
        NotASentenceError: If the formula has free variables
        QuantifierReuseError: If a variable is quantified twice and normalize is off
    """
    loose = free_variables(formula)
    if loose:
        raise NotASentenceError(f"Not a sentence, free variables: {', '.join(sorted(loose))}")
    reused = sorted(v for v, n in Counter(bound_variables(formula)).items() if n > 1)
    if reused:
        if not normalize:
            raise QuantifierReuseError(f"Variables quantified more than once: {', '.join(reused)}")
        formula = normalize_bound_variables(formula)

    result = PrenexCompiler(formula).compile()
    logger.debug(
        "Prenex form has %d universals, %d existentials and %d atoms",
        len(result.universals), len(result.existentials), len(result.chi),
    )
    return result

