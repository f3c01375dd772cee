import pytest

from oracle.equivalence import check_open_equivalence, check_sentence_equivalence
from semantics.limits import EvalLimits
from structures.vocabulary import parse_vocabulary
from syntax.analysis import classify_fragment
from syntax.formula import Conj, DepAtom, IncAtom, IndAtom, equals
from syntax.grammar import parse_formula
from transform.prenex import (
    NotASentenceError,
    PrenexSentence,
    QuantifierReuseError,
    to_prenex_normal_form,
)
from transform.rewrite import (
    VariableCaptureError,
    contract_atom,
    contract_independence,
    dep_to_independence,
    normalize_bound_variables,
    relativize,
    rename_variable,
    swap_independence,
)


def test_rename_variable():
    formula = parse_formula("E y. R(x y)")
    assert rename_variable(formula, 'x', 'z') == parse_formula("E y. R(z y)")
    assert rename_variable(formula, 'x', 'x') is formula
    with pytest.raises(VariableCaptureError):
        rename_variable(formula, 'x', 'y')


def test_relativize_prefixes_atoms_only():
    formula = parse_formula("dep(x; y) & inc(x; y) & ind(; x; y) & P(x)")
    assert relativize(['a'], formula) == parse_formula("dep(a x; y) & inc(a x; a y) & ind(a; x; y) & P(x)")


def test_contract_atom():
    """Test that an independence atom splits into single-variable atoms"""
    atom = IndAtom(('x',), ('y', 'v'), ('z',))
    assert contract_atom(atom) == [IndAtom(('x', 'v'), ('y',), ('z',)), IndAtom(('x',), ('v',), ('z',))]
    assert swap_independence(atom) == IndAtom(('x',), ('z',), ('y', 'v'))

    both = contract_atom(IndAtom((), ('x',), ('y', 'z')))
    assert all(len(part.left) == 1 and len(part.right) == 1 for part in both)
    one_side = contract_atom(IndAtom((), ('x',), ('y', 'z')), both_sides=False)
    assert one_side == [IndAtom((), ('x',), ('y', 'z'))]


def test_contract_independence_rewrites_inside_quantifiers():
    formula = parse_formula("A u. ind(; x y; z)")
    assert contract_independence(formula) == parse_formula("A u. (ind(y; x; z) & ind(; y; z))")


def test_contraction_is_an_equivalence():
    left = parse_formula("ind(; x y; z)")
    report = check_open_equivalence(left, contract_independence(left), ['x', 'y', 'z'], max_size=2)
    assert report.equivalent


def test_dep_to_independence():
    assert dep_to_independence(parse_formula("A x. E y. dep(x; y)")) == parse_formula("A x. E y. ind(x; y; y)")
    report = check_open_equivalence(parse_formula("dep(x; y)"), parse_formula("ind(x; y; y)"), ['x', 'y'], max_size=3)
    assert report.equivalent


def test_normalize_bound_variables():
    formula = parse_formula("E x. P(x) & E x. Q(x)")
    assert normalize_bound_variables(formula) == parse_formula("E x. P(x) & E x_0. Q(x_0)")
    # a quantified name that also occurs free is renamed
    assert normalize_bound_variables(parse_formula("P(x) & E x. Q(x)")) == parse_formula("P(x) & E x_0. Q(x_0)")


def test_prenex_of_inclusion_sentence():
    """Test that non-conditional variables are replaced by existential copies"""
    prenex = to_prenex_normal_form(parse_formula("A x. E y. inc(y; x)"))
    assert prenex.universals == ('x',)
    assert prenex.existentials == ('y', 'x_0', 'y_0')
    assert prenex.chi == (IncAtom(('y_0',), ('x_0',)),)
    assert prenex.theta == Conj(equals('x_0', 'x'), equals('y_0', 'y'))
    assert prenex.shape_violations() == []


def test_prenex_conjunction_aligns_universals():
    prenex = to_prenex_normal_form(parse_formula("(A x. P(x)) & (A y. Q(y))"))
    assert prenex.to_formula() == parse_formula("A x. (P(x) & Q(x))")

    frozen = to_prenex_normal_form(parse_formula("(E y. P(y)) & (A x. Q(x))"))
    assert frozen.universals == ('x',)
    assert frozen.existentials == ('y',)
    assert frozen.chi == (DepAtom((), 'y'),)


def test_prenex_keeps_universal_count():
    formula = parse_formula("A x. (P(x) | E y. (dep(; y) & E(x y)))")
    prenex = to_prenex_normal_form(formula)
    assert prenex.universals == ('x',)
    assert classify_fragment(prenex.to_formula()).universal_count == 1
    assert prenex.shape_violations() == []


@pytest.mark.parametrize('text', [
    "A x. E y. inc(y; x)",
    "A x. (P(x) | E y. (dep(; y) & E(x y)))",
    "E y. (P(y) & A x. (E(x y) | x = y))",
])
def test_prenex_is_equivalent(text):
    """The prenex form has the same truth value on all small structures"""
    formula = parse_formula(text)
    prenex = to_prenex_normal_form(formula).to_formula()
    report = check_sentence_equivalence(
        formula, prenex, parse_vocabulary("P/1,E/2"), max_size=2, limits=EvalLimits.unlimited(),
    )
    assert report.equivalent, report.to_text()


def test_prenex_errors():
    with pytest.raises(NotASentenceError):
        to_prenex_normal_form(parse_formula("P(x)"))
    with pytest.raises(QuantifierReuseError):
        to_prenex_normal_form(parse_formula("(E x. P(x)) & (E x. Q(x))"))
    prenex = to_prenex_normal_form(parse_formula("(E x. P(x)) & (E x. Q(x))"), normalize=True)
    assert prenex.existentials == ('x', 'x_0')


def test_shape_violations():
    broken = PrenexSentence(('x',), ('y', 'y'), (DepAtom((), 'x'),), equals('x', 'z'))
    problems = broken.shape_violations()
    assert "y is quantified 2 times" in problems
    assert any("x is not existentially quantified" in problem for problem in problems)
    assert any("free variables: z" in problem for problem in problems)
