"""
Concrete ASCII syntax for formulas.

    formula := disj
    disj    := conj ("|" conj)*
    conj    := quant ("&" quant)*
    quant   := ("A" var "." | "E" var ".") quant | unit
    unit    := atom | literal | "(" formula ")"
    atom    := "dep(" varlist? ";" var ")"
             | "ind(" varlist? ";" varlist ";" varlist ")"
             | "inc(" varlist ";" varlist ")"
    literal := ["!"] ident "(" varlist ")" | var ("=" | "!=") var

Variable lists are separated by whitespace. Quantifiers bind tighter than
"&", which binds tighter than "|"; both connectives associate to the left.
"""

import logging
from functools import reduce

import pyparsing as pp

from syntax.formula import (
    EQUALITY,
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    Formula,
    FormulaSyntaxError,
    IncAtom,
    IndAtom,
    InclusionWidthError,
    Literal,
)

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

IDENTIFIER = r"[a-zA-Z][a-zA-Z0-9_]*"
RESERVED = ('dep', 'ind', 'inc')


def _build_grammar() -> pp.ParserElement:
    LPAR, RPAR, SEMI, DOT = map(pp.Suppress, "();.")

    var = pp.Regex(IDENTIFIER)
    reserved = pp.MatchFirst(pp.Keyword(word) for word in RESERVED)
    predicate = ~reserved + pp.Regex(IDENTIFIER)

    varlist = pp.Group(pp.OneOrMore(var))
    optional_varlist = pp.Group(pp.ZeroOrMore(var))

    dep_atom = pp.Suppress(pp.Keyword('dep')) + LPAR + optional_varlist + SEMI + var + RPAR
    dep_atom.set_parse_action(lambda t: DepAtom(tuple(t[0]), t[1]))

    ind_atom = (
        pp.Suppress(pp.Keyword('ind')) + LPAR + optional_varlist + SEMI
        + varlist + SEMI + varlist + RPAR
    )
    ind_atom.set_parse_action(lambda t: IndAtom(tuple(t[0]), tuple(t[1]), tuple(t[2])))

    inc_atom = pp.Suppress(pp.Keyword('inc')) + LPAR + varlist + SEMI + varlist + RPAR

    def make_inclusion(s, loc, t):
        left, right = tuple(t[0]), tuple(t[1])
        if len(left) != len(right):
            raise pp.ParseFatalException(
                s, loc, f"Inclusion atom sides differ in width: {len(left)} vs {len(right)}"
            )
        return IncAtom(left, right)

    inc_atom.set_parse_action(make_inclusion)

    relational = pp.Optional(pp.Literal('!')) + predicate + LPAR + varlist + RPAR
    relational.set_parse_action(
        lambda t: Literal(t[0] != '!', t[-2], tuple(t[-1]))
    )

    comparison = var + (pp.Literal('!=') | pp.Literal('=')) + var
    comparison.set_parse_action(lambda t: Literal(t[1] == '=', EQUALITY, (t[0], t[2])))

    formula = pp.Forward()
    quant = pp.Forward()

    unit = dep_atom | ind_atom | inc_atom | relational | comparison | (LPAR + formula + RPAR)

    quantifier = (pp.Keyword('A') | pp.Keyword('E')) + var + DOT + quant
    quantifier.set_parse_action(
        lambda t: (Forall if t[0] == 'A' else Exists)(t[1], t[2])
    )
    quant <<= quantifier | unit

    conj = quant + pp.ZeroOrMore(pp.Suppress('&') + quant)
    conj.set_parse_action(lambda t: reduce(Conj, t))

    disj = conj + pp.ZeroOrMore(pp.Suppress('|') + conj)
    disj.set_parse_action(lambda t: reduce(Disj, t))

    formula <<= disj
    return formula


FORMULA = _build_grammar()


def parse_formula(text: str) -> Formula:
    """
    Parse formula text into an AST.

    Args:
        text: Formula in the ASCII grammar

    Returns:
        The parsed formula

    Raises:
        FormulaSyntaxError: If the text does not follow the grammar
        InclusionWidthError: If an inclusion atom has sides of different width
    """
    try:
        return FORMULA.parse_string(text, parse_all=True)[0]
    except pp.ParseFatalException as exc:
        raise InclusionWidthError(exc.msg, exc.lineno, exc.col) from exc
    except pp.ParseException as exc:
        raise FormulaSyntaxError(f"Invalid formula: {exc.msg}", exc.lineno, exc.col) from exc


def _varlist(variables) -> str:
    return ' '.join(variables)


def format_formula(formula: Formula) -> str:
    """Print a formula with the fewest parentheses that still parse back to the same AST."""
    if isinstance(formula, Literal):
        if formula.is_equality:
            operator = '=' if formula.positive else '!='
            return f"{formula.args[0]} {operator} {formula.args[1]}"
        sign = '' if formula.positive else '!'
        return f"{sign}{formula.predicate}({_varlist(formula.args)})"
    if isinstance(formula, DepAtom):
        return f"dep({_varlist(formula.condition)}; {formula.determined})".replace('(; ', '(;')
    if isinstance(formula, IndAtom):
        condition = _varlist(formula.condition)
        head = f"ind({condition}; " if condition else "ind(; "
        return f"{head}{_varlist(formula.left)}; {_varlist(formula.right)})"
    if isinstance(formula, IncAtom):
        return f"inc({_varlist(formula.left)}; {_varlist(formula.right)})"
    if isinstance(formula, Conj):
        left = _wrap(formula.left, isinstance(formula.left, Disj))
        right = _wrap(formula.right, isinstance(formula.right, (Conj, Disj)))
        return f"{left} & {right}"
    if isinstance(formula, Disj):
        left = format_formula(formula.left)
        right = _wrap(formula.right, isinstance(formula.right, Disj))
        return f"{left} | {right}"
    if isinstance(formula, (Exists, Forall)):
        symbol = 'E' if isinstance(formula, Exists) else 'A'
        body = _wrap(formula.body, isinstance(formula.body, (Conj, Disj)))
        return f"{symbol} {formula.variable}. {body}"
    raise TypeError(f"Not a formula: {formula!r}")


def _wrap(formula: Formula, parenthesize: bool) -> str:
    text = format_formula(formula)
    return f"({text})" if parenthesize else text
