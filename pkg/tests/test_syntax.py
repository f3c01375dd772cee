import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from syntax.analysis import (
    all_variables,
    atoms,
    bound_variables,
    classify_fragment,
    free_variables,
    fresh_variable,
    is_first_order,
    iter_subformulas,
    nonconditional_variables,
    predicates,
    subformula_at,
    subformula_scope,
    universal_count,
)
from syntax.formula import (
    Conj,
    DepAtom,
    Disj,
    Exists,
    Forall,
    FormulaSyntaxError,
    IncAtom,
    IndAtom,
    InclusionWidthError,
    InvalidPathError,
    Literal,
    NotAnAtomError,
    conjoin,
    equals,
)
from syntax.grammar import format_formula, parse_formula

VARIABLES = st.sampled_from(['x', 'y', 'z', 'u'])
VARIABLE_LISTS = st.lists(VARIABLES, min_size=1, max_size=3).map(tuple)

LITERALS = st.one_of(
    st.builds(lambda positive, a: Literal(positive, 'P', (a,)), st.booleans(), VARIABLES),
    st.builds(lambda positive, a, b: Literal(positive, 'R', (a, b)), st.booleans(), VARIABLES, VARIABLES),
    st.builds(lambda positive, a, b: Literal(positive, '=', (a, b)), st.booleans(), VARIABLES, VARIABLES),
)
DEPENDENCE = st.builds(DepAtom, st.lists(VARIABLES, max_size=2).map(tuple), VARIABLES)
INDEPENDENCE = st.builds(IndAtom, st.lists(VARIABLES, max_size=2).map(tuple), VARIABLE_LISTS, VARIABLE_LISTS)
INCLUSION = st.integers(1, 3).flatmap(
    lambda width: st.builds(
        IncAtom,
        st.lists(VARIABLES, min_size=width, max_size=width).map(tuple),
        st.lists(VARIABLES, min_size=width, max_size=width).map(tuple),
    )
)
FORMULAS = st.recursive(
    st.one_of(LITERALS, DEPENDENCE, INDEPENDENCE, INCLUSION),
    lambda children: st.one_of(
        st.builds(Conj, children, children),
        st.builds(Disj, children, children),
        st.builds(Exists, VARIABLES, children),
        st.builds(Forall, VARIABLES, children),
    ),
    max_leaves=8,
)


@given(FORMULAS)
@hypothesis_settings(max_examples=200, deadline=None)
def test_printed_formulas_parse_back(formula):
    """Printing then parsing gives back the same AST"""
    assert parse_formula(format_formula(formula)) == formula


def test_parse_atoms():
    """Test the three atom forms, including empty conditions"""
    assert parse_formula("dep(x y; z)") == DepAtom(('x', 'y'), 'z')
    assert parse_formula("dep(; z)") == DepAtom((), 'z')
    assert parse_formula("ind(x; y v; z)") == IndAtom(('x',), ('y', 'v'), ('z',))
    assert parse_formula("ind(; y; z)") == IndAtom((), ('y',), ('z',))
    assert parse_formula("inc(x y; z w)") == IncAtom(('x', 'y'), ('z', 'w'))


def test_parse_literals():
    """Test relational literals, negation and (in)equality"""
    assert parse_formula("P(x)") == Literal(True, 'P', ('x',))
    assert parse_formula("!R(x y)") == Literal(False, 'R', ('x', 'y'))
    assert parse_formula("x = y") == equals('x', 'y')
    assert parse_formula("x != y") == Literal(False, '=', ('x', 'y'))


def test_quantifiers_bind_tighter_than_connectives():
    """A quantifier only takes the next unit unless parentheses say otherwise"""
    assert parse_formula("A x. P(x) & Q(y)") == Conj(Forall('x', Literal(True, 'P', ('x',))), Literal(True, 'Q', ('y',)))
    assert parse_formula("A x. (P(x) & Q(x))") == Forall('x', Conj(Literal(True, 'P', ('x',)), Literal(True, 'Q', ('x',))))


def test_connectives_associate_left():
    formula = parse_formula("P(x) | Q(x) | R(x x) & P(y)")
    assert isinstance(formula, Disj)
    assert isinstance(formula.left, Disj)
    assert isinstance(formula.right, Conj)


def test_quantifier_letter_as_predicate():
    """E(x y) is a literal, E x. is a quantifier"""
    assert parse_formula("E(x y)") == Literal(True, 'E', ('x', 'y'))
    assert parse_formula("E x. E(x x)") == Exists('x', Literal(True, 'E', ('x', 'x')))


def test_parse_errors():
    """Test that malformed text raises FormulaSyntaxError with a position"""
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("P(x")
    assert info.value.column is not None

    with pytest.raises(FormulaSyntaxError):
        parse_formula("dep(x)")

    with pytest.raises(FormulaSyntaxError):
        parse_formula("P(x) &")


def test_inclusion_width_mismatch():
    with pytest.raises(InclusionWidthError):
        parse_formula("inc(x y; z)")
    with pytest.raises(InclusionWidthError):
        IncAtom(('x',), ('y', 'z'))


def test_variables():
    formula = parse_formula("A x. E y. (dep(x; y) & R(y z)) | E x. P(x)")
    assert free_variables(formula) == {'z'}
    assert bound_variables(formula) == ['x', 'y', 'x']
    assert all_variables(formula) == {'x', 'y', 'z'}
    assert universal_count(formula) == 1
    assert atoms(formula) == [DepAtom(('x',), 'y')]
    assert not is_first_order(formula)
    assert is_first_order(parse_formula("A x. P(x) | x = y"))


def test_subformula_paths():
    formula = parse_formula("A x. (P(x) | E y. R(x y))")
    paths = dict(iter_subformulas(formula))
    assert paths[()] == formula
    assert paths[('body', 'right', 'body')] == Literal(True, 'R', ('x', 'y'))
    assert subformula_at(formula, ('body', 'left')) == Literal(True, 'P', ('x',))
    assert subformula_scope(formula, ('body', 'right', 'body')) == {'x', 'y'}

    with pytest.raises(InvalidPathError):
        subformula_at(formula, ('left',))


def test_nonconditional_variables():
    assert nonconditional_variables(parse_formula("dep(x y; z)")) == {'z'}
    assert nonconditional_variables(parse_formula("ind(x; y; z)")) == {'y', 'z'}
    assert nonconditional_variables(parse_formula("inc(x; y)")) == {'x', 'y'}
    with pytest.raises(NotAnAtomError):
        nonconditional_variables(parse_formula("P(x)"))


def test_classify_fragment():
    """Test the fragment profile of a two-universal inclusion sentence"""
    profile = classify_fragment(parse_formula("A x. A y. E z. inc(x z; x y)"))
    assert profile.universal_count == 2
    assert profile.max_inc_width == 2
    assert profile.max_dep_condition_arity == 0
    assert profile.quantified_exactly_once
    assert profile.is_sentence
    assert profile.in_fragment('forall', 2)
    assert not profile.in_fragment('forall', 1)
    assert profile.in_fragment('inc', 2)


def test_classify_open_and_reused():
    profile = classify_fragment(parse_formula("E x. P(x) & E x. ind(x; y v; z)"))
    assert not profile.is_sentence
    assert not profile.quantified_exactly_once
    assert profile.max_ind_distinct_vars == 3
    assert not profile.in_fragment('ind', 3)
    with pytest.raises(ValueError, match="Unknown fragment kind"):
        profile.in_fragment('exists', 1)


def test_fresh_variable():
    assert fresh_variable([], 'x') == 'x_0'
    assert fresh_variable(['x_0', 'x_1'], 'x') == 'x_2'
    assert fresh_variable(['y_0'], 'y_3') == 'y_1'


def test_predicates():
    formulas = [parse_formula("P(x) & E(x y)"), parse_formula("x = y")]
    assert predicates(formulas) == {'P': 1, 'E': 2}
    with pytest.raises(ValueError, match="arities"):
        predicates([parse_formula("P(x) & P(x y)")])


def test_conjoin():
    p, q, r = (Literal(True, name, ('x',)) for name in 'PQR')
    assert conjoin([p, q, r]) == Conj(Conj(p, q), r)
    with pytest.raises(ValueError):
        conjoin([])
