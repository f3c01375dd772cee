import logging
from pathlib import Path

import pytest

from semantics.atoms import evaluate_atom
from semantics.evaluator import Evaluator, FreeVariableError, SemanticsMode, evaluate, explain, satisfies_sentence
from semantics.limits import EvalLimits, LimitExceeded
from semantics.tarski import NotFirstOrderError, check_flatness_shortcut, holds
from semantics.trace import replay
from structures.enumerate import enumerate_structures, enumerate_teams
from structures.files import read_structure, read_team
from structures.structure import Structure
from structures.team import Team, TeamError
from structures.vocabulary import parse_vocabulary
from syntax.formula import NotAnAtomError
from syntax.grammar import parse_formula

FIXTURES = Path(__file__).parent / 'fixtures'
STRICT, LAX = SemanticsMode.STRICT, SemanticsMode.LAX

STRUCTURE = read_structure(FIXTURES / 'counterexample_structure.txt')
TEAM = read_team(FIXTURES / 'counterexample_team.txt')
PSI = parse_formula("inc(u; v) | inc(w; v)")


def team(variables, *rows):
    return Team(tuple(variables), frozenset(rows))


def test_counterexample_disjunction():
    """Strict disjunction fails on the three-row team where lax succeeds"""
    assert evaluate(STRUCTURE, TEAM, PSI, STRICT) is False
    assert evaluate(STRUCTURE, TEAM, PSI, LAX) is True


def test_counterexample_universal():
    """Adding a universally quantified column makes the strict disjunction true"""
    inside = parse_formula("A x. (inc(w; x) & (inc(u; v) | inc(w; v)))")
    outside = parse_formula("(A x. inc(w; x)) & (inc(u; v) | inc(w; v))")
    assert evaluate(STRUCTURE, TEAM, inside, STRICT) is True
    assert evaluate(STRUCTURE, TEAM, outside, STRICT) is False


def test_dependence_atom():
    structure = Structure(2)
    dep = parse_formula("dep(x; y)")
    assert evaluate_atom(structure, team('xy', (0, 0), (1, 1)), dep)
    assert not evaluate_atom(structure, team('xy', (0, 0), (0, 1)), dep)
    assert evaluate_atom(structure, team('xy', (0, 1), (1, 1)), parse_formula("dep(; y)"))


def test_independence_atom():
    structure = Structure(2)
    ind = parse_formula("ind(; x; y)")
    assert not evaluate_atom(structure, team('xy', (0, 0), (1, 1)), ind)
    assert evaluate_atom(structure, team('xy', (0, 0), (0, 1), (1, 0), (1, 1)), ind)
    # conditioned on z, each z-slice is a product
    conditioned = parse_formula("ind(z; x; y)")
    assert evaluate_atom(structure, team('xyz', (0, 0, 0), (1, 1, 1)), conditioned)


def test_inclusion_atom():
    structure = Structure(2)
    assert evaluate_atom(structure, team('xy', (0, 1), (1, 0)), parse_formula("inc(x; y)"))
    assert not evaluate_atom(structure, team('xy', (0, 1), (1, 1)), parse_formula("inc(x; y)"))
    with pytest.raises(NotAnAtomError):
        evaluate_atom(structure, team('xy'), parse_formula("P(x)"))


def test_sentences():
    structure = Structure(2)
    assert not satisfies_sentence(structure, parse_formula("A x. E y. (dep(; y) & x = y)"))
    assert satisfies_sentence(structure, parse_formula("A x. E y. (dep(x; y) & x = y)"))
    assert satisfies_sentence(structure, parse_formula("A x. E y. (dep(; y) & x != y)"), LAX) is False
    # strict picks one value for y, lax may pick the whole domain
    assert not satisfies_sentence(structure, parse_formula("E y. A x. inc(x; y)"), STRICT)
    assert satisfies_sentence(structure, parse_formula("E y. A x. inc(x; y)"), LAX)


def test_empty_team_satisfies_everything():
    formula = parse_formula("inc(u; v) & dep(; u) & u != u")
    assert evaluate(STRUCTURE, Team.empty(('u', 'v')), formula, STRICT)
    assert evaluate(STRUCTURE, Team.empty(('u', 'v')), formula, LAX)


def test_constants_are_bound_from_the_structure():
    structure = read_structure(FIXTURES / 'graph_structure.txt')
    assert satisfies_sentence(structure, parse_formula("P(c)"))
    assert satisfies_sentence(structure, parse_formula("E x. E(c x)"))
    assert not satisfies_sentence(structure, parse_formula("A x. E(c x)"))


def test_free_variable_error():
    with pytest.raises(FreeVariableError):
        evaluate(Structure(2), Team.unit(), parse_formula("x = x"))


def test_limits_stop_the_search():
    with pytest.raises(LimitExceeded) as info:
        evaluate(STRUCTURE, TEAM, PSI, STRICT, EvalLimits(max_split_candidates=4))
    assert info.value.limit == 'max_split_candidates'
    assert info.value.required == 8

    with pytest.raises(LimitExceeded):
        evaluate(STRUCTURE, TEAM, PSI, LAX, EvalLimits(max_split_candidates=26))


def test_requantified_team_variable():
    with pytest.raises(TeamError, match="already in the team domain"):
        evaluate(Structure(2), team('x', (0,)), parse_formula("P(x) | E x. Q(x)"))


def test_search_node_budget():
    """The node budget bounds the total work of one evaluation"""
    with pytest.raises(LimitExceeded) as info:
        evaluate(STRUCTURE, TEAM, PSI, LAX, EvalLimits(max_search_nodes=3))
    assert info.value.limit == 'max_search_nodes'
    assert evaluate(STRUCTURE, TEAM, PSI, LAX, EvalLimits(max_search_nodes=100_000))


def test_limits_from_settings(settings):
    settings.TEAMLOGIC = {**settings.TEAMLOGIC, 'EVAL_LIMITS': {'max_teams': 5}}
    limits = EvalLimits.from_settings(max_team_rows=9, max_split_candidates=None)
    assert limits.max_teams == 5
    assert limits.max_team_rows == 9
    assert limits.max_split_candidates is None
    with pytest.raises(ValueError):
        EvalLimits(max_teams=-1)


def test_trace_replays():
    """A recorded derivation re-derives the verdict without search"""
    verdict, trace = explain(STRUCTURE, TEAM, PSI, LAX)
    assert verdict
    assert replay(STRUCTURE, trace.team, PSI, trace, LAX)
    assert 'split' in trace.to_text()

    inside = parse_formula("A x. (inc(w; x) & (inc(u; v) | inc(w; v)))")
    verdict, trace = explain(STRUCTURE, TEAM, inside, STRICT)
    assert verdict
    assert replay(STRUCTURE, trace.team, inside, trace, STRICT)


def test_trace_of_existential_block():
    formula = parse_formula("A x. E y. E z. (dep(x; y) & y != x & inc(z; x))")
    verdict, trace = explain(Structure(2), Team.unit(), formula, STRICT)
    assert verdict
    assert replay(Structure(2), trace.team, formula, trace, STRICT)


def test_false_verdict_has_no_trace():
    verdict, trace = explain(STRUCTURE, TEAM, PSI, STRICT)
    assert verdict is False
    assert trace is None


BLOCK_FORMULAS = [
    "E y. (dep(; y) & R(x y))",
    "E y. E z. (dep(x; y) & dep(y; z) & z != x)",
    "E y. (inc(y; x) & y != x)",
    "E y. (ind(; x; y) & P(y))",
    "E y. (R(x y) | dep(; y))",
    "E y. E z. (R(y z) & inc(z; x) & dep(z; y))",
]


@pytest.mark.parametrize('text', BLOCK_FORMULAS)
def test_block_search_agrees_with_plain_search(text):
    """The pruned strict search gives the same verdicts as one-variable-at-a-time search"""
    formula = parse_formula(text)
    limits = EvalLimits.unlimited()
    for structure in enumerate_structures(parse_vocabulary("P/1,R/2"), 2):
        block = Evaluator(structure, STRICT, limits, block_search=True)
        plain = Evaluator(structure, STRICT, limits, block_search=False)
        for candidate in enumerate_teams(structure, ['x'], limits=limits):
            assert block.evaluate(candidate, formula) == plain.evaluate(candidate, formula), (str(structure), str(candidate))


def test_flat_shortcut_matches_team_evaluation():
    formula = parse_formula("A y. (R(x y) | x = y) & P(x)")
    limits = EvalLimits.unlimited()
    for structure in enumerate_structures(parse_vocabulary("P/1,R/2"), 2):
        for candidate in enumerate_teams(structure, ['x'], limits=limits):
            expected = check_flatness_shortcut(structure, candidate, formula)
            assert evaluate(structure, candidate, formula, STRICT, limits) == expected
            assert evaluate(structure, candidate, formula, LAX, limits, flat_shortcut=True) == expected


def test_tarski_semantics():
    structure = read_structure(FIXTURES / 'graph_structure.txt')
    assert holds(structure, {}, parse_formula("A x. E y. E(x y)"))
    assert not holds(structure, {}, parse_formula("E x. A y. E(x y)"))
    with pytest.raises(NotFirstOrderError):
        holds(structure, {'x': 0}, parse_formula("dep(; x)"))
    with pytest.raises(NotFirstOrderError):
        check_flatness_shortcut(structure, Team.unit(), parse_formula("E x. dep(; x)"))


def test_single_element_structure_warns(caplog):
    with caplog.at_level(logging.WARNING, logger='semantics.evaluator'):
        satisfies_sentence(Structure(1), parse_formula("A x. x = x"))
    assert "at least two" in caplog.text
