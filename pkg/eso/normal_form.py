"""
Validator for the function-only ESO normal form that the inclusion logic
translation expects.

With k universal variables x1..xk the form requires:

- every function symbol has arity k;
- every term is a variable, a flat term f(x1..xk), or a composed term
  f(g1(x1..xk) .. gk(x1..xk)) whose arguments are flat terms;
- no symbol occurs both inside a composed term (inner) and as the head of
  one (outer);
- every symbol has at least one flat occurrence.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from eso.grammar import format_term
from eso.terms import Apply, EsoSentence, Term, Var, matrix_atoms


@dataclass
class SymbolProfile:
    name: str
    arity: int
    composed_count: int = 0
    has_flat_occurrence: bool = False
    is_inner: bool = False
    is_outer: bool = False
    arity_equals_k: bool = True


@dataclass
class DurandProfile:
    k: int
    symbols: Dict[str, SymbolProfile] = field(default_factory=dict)
    problems: List[str] = field(default_factory=list)
    # distinct composed terms per outer symbol, in order of first occurrence
    composed_terms: Dict[str, List[Apply]] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.problems

    def to_lines(self) -> List[str]:
        lines = [f"k = {self.k}", f"valid = {self.valid}"]
        for profile in self.symbols.values():
            lines.append(
                f"{profile.name}/{profile.arity}: c={profile.composed_count}"
                f" flat={profile.has_flat_occurrence} inner={profile.is_inner}"
                f" outer={profile.is_outer} arity_ok={profile.arity_equals_k}"
            )
        lines.extend(f"problem: {problem}" for problem in self.problems)
        return lines


def _is_flat(term: Term, universals: Tuple[str, ...]) -> bool:
    return isinstance(term, Apply) and tuple(
        arg.name if isinstance(arg, Var) else None for arg in term.args
    ) == universals


def _top_terms(sentence: EsoSentence):
    for atom in matrix_atoms(sentence.matrix):
        yield from atom.args


def validate_durand_form(sentence: EsoSentence) -> DurandProfile:
    """Per-symbol diagnostics and a validity verdict. Never raises for well-formed sentences."""
    universals = sentence.universals
    profile = DurandProfile(k=sentence.rank)
    for symbol in sentence.functions:
        profile.symbols[symbol.name] = SymbolProfile(
            symbol.name, symbol.arity, arity_equals_k=symbol.arity == sentence.rank
        )
        if symbol.arity != sentence.rank:
            profile.problems.append(f"{symbol} does not have arity {sentence.rank}")
    if sentence.relations:
        profile.problems.append(
            f"quantified relations are not allowed: {', '.join(str(s) for s in sentence.relations)}"
        )

    for term in _top_terms(sentence):
        if isinstance(term, Var):
            continue
        head = profile.symbols[term.function]
        if _is_flat(term, universals):
            head.has_flat_occurrence = True
            continue
        if all(_is_flat(arg, universals) for arg in term.args) and term.args:
            head.is_outer = True
            seen = profile.composed_terms.setdefault(term.function, [])
            if term not in seen:
                seen.append(term)
                head.composed_count += 1
            for arg in term.args:
                profile.symbols[arg.function].is_inner = True
                profile.symbols[arg.function].has_flat_occurrence = True
            continue
        profile.problems.append(f"term {format_term(term)} is neither flat nor composed of flat terms")

    for name, symbol in profile.symbols.items():
        if symbol.is_inner and symbol.is_outer:
            profile.problems.append(f"{name} is used both as an inner and an outer symbol")
        if not symbol.has_flat_occurrence:
            profile.problems.append(f"{name} has no occurrence of the form {name}({' '.join(universals)})")
    return profile
