"""
Concrete syntax for ESO sentences.

    sentence := ["exists" decl* ["rel" decl*] "."] ["forall" var* "."] matrix
    decl     := ident "/" integer
    matrix   := or ("->" matrix)?
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := "!" unary | atom | "(" matrix ")"
    atom     := term ("=" | "!=") term | ident "(" term* ")"
    term     := ident "(" term* ")" | ident

For example ``exists f/1 g/1 . forall x . P(f(x)) & g(f(x)) = x``.
"""

from functools import reduce

import pyparsing as pp

from eso.terms import (
    EQUALITY,
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
)
from syntax.formula import FormulaSyntaxError

pp.ParserElement.enable_packrat()

KEYWORDS = ('exists', 'forall', 'rel')


def _build_grammar() -> pp.ParserElement:
    LPAR, RPAR, DOT, SLASH = map(pp.Suppress, "()./")

    keyword = pp.MatchFirst(pp.Keyword(word) for word in KEYWORDS)
    ident = ~keyword + pp.Regex(r"[a-zA-Z][a-zA-Z0-9_]*")
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))

    term = pp.Forward()
    application = ident + LPAR + pp.Group(pp.ZeroOrMore(term)) + RPAR
    application.set_parse_action(lambda t: Apply(t[0], tuple(t[1])))
    variable = ident.copy().set_parse_action(lambda t: Var(t[0]))
    term <<= application | variable

    comparison = term + (pp.Literal('!=') | pp.Literal('=')) + term

    def make_comparison(t):
        atom = Atom(EQUALITY, (t[0], t[2]))
        return atom if t[1] == '=' else Not(atom)

    comparison.set_parse_action(make_comparison)

    relational = ident + LPAR + pp.Group(pp.ZeroOrMore(term)) + RPAR
    relational.set_parse_action(lambda t: Atom(t[0], tuple(t[1])))

    matrix = pp.Forward()
    unary = pp.Forward()
    negation = pp.Suppress('!') + unary
    negation.set_parse_action(lambda t: Not(t[0]))
    unary <<= negation | comparison | relational | (LPAR + matrix + RPAR)

    conjunction = unary + pp.ZeroOrMore(pp.Suppress('&') + unary)
    conjunction.set_parse_action(lambda t: reduce(And, t))
    disjunction = conjunction + pp.ZeroOrMore(pp.Suppress('|') + conjunction)
    disjunction.set_parse_action(lambda t: reduce(Or, t))

    implication = disjunction + pp.Optional(pp.Suppress('->') + matrix)
    implication.set_parse_action(lambda t: Implies(t[0], t[1]) if len(t) == 2 else t[0])
    matrix <<= implication

    decl = (ident + SLASH + integer).set_parse_action(lambda t: Symbol(t[0], t[1]))
    functions = pp.Group(pp.ZeroOrMore(decl))
    relations = pp.Group(pp.Optional(pp.Suppress(pp.Keyword('rel')) + pp.ZeroOrMore(decl)))
    exists = pp.Group(pp.Optional(pp.Suppress(pp.Keyword('exists')) + functions + relations + DOT))
    forall = pp.Group(pp.Optional(pp.Suppress(pp.Keyword('forall')) + pp.Group(pp.ZeroOrMore(ident)) + DOT))

    return exists('exists') + forall('forall') + pp.Group(matrix)('matrix')


SENTENCE = _build_grammar()


def parse_eso(text: str) -> EsoSentence:
    """
    Parse an ESO sentence.

    Raises:
        FormulaSyntaxError: If the text does not follow the grammar, or it
            uses undeclared symbols or variables
    """
    try:
        result = SENTENCE.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise FormulaSyntaxError(f"Invalid ESO sentence: {exc.msg}", exc.lineno, exc.col) from exc

    functions, relations = (), ()
    if len(result['exists']):
        functions, relations = tuple(result['exists'][0]), tuple(result['exists'][1])
    universals = tuple(result['forall'][0]) if len(result['forall']) else ()
    try:
        return EsoSentence(functions, relations, universals, result['matrix'][0])
    except ValueError as exc:
        raise FormulaSyntaxError(f"Invalid ESO sentence: {exc}") from exc


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    return f"{term.function}({' '.join(format_term(arg) for arg in term.args)})"


_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 4}


def format_matrix(matrix: Matrix, minimum: int = 1) -> str:
    text = _format_matrix(matrix)
    return f"({text})" if _PRECEDENCE[type(matrix)] < minimum else text


def _format_matrix(matrix: Matrix) -> str:
    if isinstance(matrix, Atom):
        args = [format_term(arg) for arg in matrix.args]
        if matrix.is_equality:
            return f"{args[0]} = {args[1]}"
        return f"{matrix.predicate}({' '.join(args)})"
    if isinstance(matrix, Not):
        body = matrix.body
        if isinstance(body, Atom) and body.is_equality:
            return f"{format_term(body.args[0])} != {format_term(body.args[1])}"
        return f"!{format_matrix(body, 4)}"
    if isinstance(matrix, And):
        return f"{format_matrix(matrix.left, 3)} & {format_matrix(matrix.right, 4)}"
    if isinstance(matrix, Or):
        return f"{format_matrix(matrix.left, 2)} | {format_matrix(matrix.right, 3)}"
    if isinstance(matrix, Implies):
        return f"{format_matrix(matrix.left, 2)} -> {format_matrix(matrix.right, 1)}"
    raise TypeError(f"Not an ESO matrix: {matrix!r}")


def format_eso(sentence: EsoSentence) -> str:
    parts = []
    if sentence.functions or sentence.relations:
        declarations = [str(symbol) for symbol in sentence.functions]
        if sentence.relations:
            declarations += ['rel'] + [str(symbol) for symbol in sentence.relations]
        parts.append(f"exists {' '.join(declarations)} .")
    if sentence.universals:
        parts.append(f"forall {' '.join(sentence.universals)} .")
    parts.append(format_matrix(sentence.matrix))
    return ' '.join(parts)
