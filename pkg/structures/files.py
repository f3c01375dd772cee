"""
Line-oriented structure and team files.

Structure file:

    domain = 3
    constant c = 0
    relation P/1 = {0, 2}
    relation E/2 = {(0,1), (1,2)}

Team file:

    vars u v w
    row 0 1 2
    row 1 0 1

Whitespace is insignificant and '#' starts a comment.
"""

from pathlib import Path
from typing import Iterator, List, Tuple

import pyparsing as pp

from structures.structure import Relation, Structure, StructureError
from structures.team import Team, TeamError


class StructureFileError(ValueError):
    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


NAME = pp.Regex(r"[a-zA-Z][a-zA-Z0-9_]*")
NUMBER = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
EQ = pp.Suppress('=')

DOMAIN = pp.Keyword('domain') + EQ + NUMBER
CONSTANT = pp.Keyword('constant') + NAME + EQ + NUMBER
TUPLE = pp.Group(
    pp.Suppress('(') + pp.Optional(pp.DelimitedList(NUMBER)) + pp.Suppress(')')
) | pp.Group(NUMBER)
RELATION = (
    pp.Keyword('relation') + NAME + pp.Suppress('/') + NUMBER + EQ
    + pp.Suppress('{') + pp.Group(pp.Optional(pp.DelimitedList(TUPLE))) + pp.Suppress('}')
)
STRUCTURE_LINE = DOMAIN | CONSTANT | RELATION

VARS = pp.Keyword('vars') + pp.Group(pp.ZeroOrMore(NAME))
ROW = pp.Keyword('row') + pp.Group(pp.ZeroOrMore(NUMBER))
TEAM_LINE = VARS | ROW


def _statements(text: str, grammar: pp.ParserElement) -> Iterator[Tuple[int, pp.ParseResults]]:
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        try:
            yield number, grammar.parse_string(content, parse_all=True)
        except pp.ParseException as exc:
            raise StructureFileError(f"cannot parse {content!r}: {exc.msg}", number) from exc


def parse_structure(text: str) -> Structure:
    size = None
    relations: List[Relation] = []
    constants = {}
    for number, tokens in _statements(text, STRUCTURE_LINE):
        keyword = tokens[0]
        if keyword == 'domain':
            if size is not None:
                raise StructureFileError("domain declared twice", number)
            size = tokens[1]
        elif keyword == 'constant':
            constants[tokens[1]] = tokens[2]
        else:
            name, arity, tuples = tokens[1], tokens[2], tokens[3]
            try:
                relations.append(Relation(name, arity, frozenset(tuple(t) for t in tuples)))
            except StructureError as exc:
                raise StructureFileError(str(exc), number) from exc
    if size is None:
        raise StructureFileError("missing 'domain = N' line")
    try:
        return Structure(size, tuple(relations), tuple(constants.items()))
    except StructureError as exc:
        raise StructureFileError(str(exc)) from exc


def parse_team(text: str) -> Team:
    variables = None
    rows = []
    for number, tokens in _statements(text, TEAM_LINE):
        if tokens[0] == 'vars':
            if variables is not None:
                raise StructureFileError("vars declared twice", number)
            variables = tuple(tokens[1])
        else:
            if variables is None:
                raise StructureFileError("row before vars line", number)
            row = tuple(tokens[1])
            if len(row) != len(variables):
                raise StructureFileError(
                    f"row has {len(row)} values for {len(variables)} variables", number
                )
            rows.append(row)
    if variables is None:
        raise StructureFileError("missing 'vars' line")
    try:
        return Team(variables, frozenset(rows))
    except TeamError as exc:
        raise StructureFileError(str(exc)) from exc


def read_structure(path) -> Structure:
    return parse_structure(Path(path).read_text())


def read_team(path) -> Team:
    return parse_team(Path(path).read_text())


def format_structure(structure: Structure) -> str:
    lines = [f"domain = {structure.size}"]
    lines += [f"constant {name} = {value}" for name, value in structure.constants]
    for relation in structure.relations:
        tuples = ', '.join(
            '(' + ','.join(map(str, values)) + ')' for values in sorted(relation.tuples)
        )
        lines.append(f"relation {relation.name}/{relation.arity} = {{{tuples}}}")
    return '\n'.join(lines) + '\n'


def format_team(team: Team) -> str:
    lines = ['vars ' + ' '.join(team.variables) if team.variables else 'vars']
    lines += ['row ' + ' '.join(map(str, row)) if row else 'row' for row in team.sorted_rows]
    return '\n'.join(lines) + '\n'
