from pathlib import Path

import pytest

from eso.normal_form import validate_durand_form
from eso.evaluate import EMPTY, FULL, evaluate_eso, find_eso_model, fixed_relations
from eso.grammar import format_eso, parse_eso
from eso.terms import Apply, Atom, Var
from eso.translate import (
    TranslationError,
    eso_rank,
    eso_to_inclusion,
    fo_to_eso,
    translate_to_eso,
    witness_uniqueness,
)
from semantics.evaluator import satisfies_sentence
from semantics.limits import EvalLimits, LimitExceeded
from structures.enumerate import enumerate_structures
from structures.structure import Structure
from structures.vocabulary import parse_vocabulary
from syntax.formula import FormulaSyntaxError
from syntax.grammar import parse_formula

FIXTURES = Path(__file__).parent / 'fixtures'
NORMAL_FORM = (FIXTURES / 'normal_form.eso').read_text().strip()
NOT_NORMAL_FORM = (FIXTURES / 'not_normal_form.eso').read_text().strip()


def unary(size, **relations):
    return Structure.build(size, {name: (1, [(value,) for value in values]) for name, values in relations.items()})


def test_parse_and_format():
    sentence = parse_eso(NORMAL_FORM)
    assert [str(symbol) for symbol in sentence.functions] == ['f/1', 'g/1']
    assert sentence.universals == ('x',)
    assert sentence.rank == 1
    assert sentence.matrix.left.left == Atom('P', (Apply('f', (Var('x'),)),))
    assert format_eso(sentence) == NORMAL_FORM


def test_parse_bare_atom_matrix():
    """A matrix that is a single atom parses to that atom"""
    assert parse_eso("forall x . P(x)").matrix == Atom('P', (Var('x'),))
    sentence = parse_eso("exists f/1 . forall x . f(x) != x")
    assert sentence.matrix.body == Atom('=', (Apply('f', (Var('x'),)), Var('x')))
    assert format_eso(sentence) == "exists f/1 . forall x . f(x) != x"


def test_parse_errors():
    with pytest.raises(FormulaSyntaxError):
        parse_eso("exists f/1 . forall x . P(f(x)")
    with pytest.raises(FormulaSyntaxError, match="not declared"):
        parse_eso("exists f/1 . forall x . P(g(x))")
    with pytest.raises(FormulaSyntaxError, match="not universally quantified"):
        parse_eso("forall x . P(y)")


def test_evaluate_eso():
    sentence = parse_eso(NORMAL_FORM)
    assert evaluate_eso(unary(2, P=[0, 1], Q=[0, 1]), sentence)
    assert not evaluate_eso(unary(2, P=[0], Q=[0, 1]), sentence)


def test_first_model_is_reproducible():
    model = find_eso_model(unary(2, P=[0, 1], Q=[0, 1]), parse_eso(NORMAL_FORM))
    assert model.functions['f'] == {(0,): 0, (1,): 1}
    assert model.functions['g'] == {(0,): 0, (1,): 1}
    assert model.to_lines()[0] == "f: (0)->0, (1)->1"


def test_eso_search_limit():
    with pytest.raises(LimitExceeded) as info:
        evaluate_eso(unary(2, P=[0, 1], Q=[0, 1]), parse_eso(NORMAL_FORM), EvalLimits(max_witness_functions=3))
    assert info.value.required == 4


def test_fixed_relations():
    """Relations used with one polarity only need not be searched"""
    sentence = parse_eso(
        "exists rel S/1 T/1 R/1 U/1 . forall x . S(x) & (T(x) -> P(x)) & (!R(x) | P(x))"
        " & (U(x) -> P(x)) & (P(x) -> U(x))"
    )
    assert fixed_relations(sentence) == {'S': FULL, 'T': EMPTY, 'R': EMPTY}


def test_fo_to_eso():
    sentence = fo_to_eso(parse_formula("A x. E y. (dep(; y) & x = y)"))
    assert [str(symbol) for symbol in sentence.functions] == ['f1/1', 'g1/0']
    assert [str(symbol) for symbol in sentence.relations] == ['S/1']
    assert sentence.rank == 1
    assert format_eso(sentence) == (
        "exists f1/1 g1/0 rel S/1 . forall x . S(x) & (S(x) -> f1(x) = g1()) & (S(x) -> x = f1(x))"
    )
    assert not evaluate_eso(Structure(2), sentence)
    assert evaluate_eso(Structure(2), fo_to_eso(parse_formula("A x. E y. (dep(x; y) & x = y)")))


def test_fo_to_eso_rank():
    """One extra universal is needed only for independence atoms"""
    assert eso_rank(fo_to_eso(parse_formula("A x. E y. ind(; x; y)"))) == 2
    assert eso_rank(fo_to_eso(parse_formula("A x. E y. (inc(y; x) & dep(x; y))"))) == 1
    assert eso_rank(translate_to_eso(parse_formula("A x. A y. E z. ind(x; y; z)"))) == 3


def test_fo_to_eso_errors():
    with pytest.raises(TranslationError):
        fo_to_eso(parse_formula("E y. A x. E(x y)"))
    with pytest.raises(TranslationError, match="contract"):
        fo_to_eso(parse_formula("A x. E y. E z. ind(; x; y z)"))


@pytest.mark.parametrize('text', [
    "A x. E y. (dep(; y) & E(x y))",
    "A x. E y. (inc(y; x) & E(x y))",
    "A x. E y. (E(x y) | x = y)",
])
def test_translation_preserves_truth(text):
    formula = parse_formula(text)
    sentence = translate_to_eso(formula)
    for structure in enumerate_structures(parse_vocabulary("E/2"), 2):
        assert evaluate_eso(structure, sentence) == satisfies_sentence(structure, formula), str(structure)


def test_normal_form_profile():
    profile = validate_durand_form(parse_eso(NORMAL_FORM))
    assert profile.valid
    assert profile.k == 1
    assert profile.symbols['g'].is_outer
    assert profile.symbols['g'].composed_count == 1
    assert profile.symbols['f'].is_inner
    assert profile.to_lines()[:2] == ["k = 1", "valid = True"]

    invalid = validate_durand_form(parse_eso(NOT_NORMAL_FORM))
    assert not invalid.valid
    assert any("both as an inner and an outer" in problem for problem in invalid.problems)


def test_normal_form_rejects_arity_and_relations():
    profile = validate_durand_form(parse_eso("exists f/0 rel S/1 . forall x . P(f()) & S(x)"))
    assert any("does not have arity 1" in problem for problem in profile.problems)
    assert any("quantified relations" in problem for problem in profile.problems)


def test_eso_to_inclusion():
    translation = eso_to_inclusion(parse_eso(NORMAL_FORM))
    assert translation == parse_formula(
        "A x. E y_f. E y_g. E z_g_1. (P(y_f) & z_g_1 = x & Q(y_g) & inc(y_f z_g_1; x y_g))"
    )
    assert eso_to_inclusion(parse_eso("exists f/1 . forall x . P(f(x))")) == parse_formula("A x. E y_f. P(y_f)")
    with pytest.raises(TranslationError):
        eso_to_inclusion(parse_eso(NOT_NORMAL_FORM))


def test_inclusion_translation_preserves_truth():
    """The inclusion sentence holds exactly where the ESO sentence does"""
    sentence = parse_eso(NORMAL_FORM)
    translation = eso_to_inclusion(sentence)
    for structure in enumerate_structures(parse_vocabulary("P/1,Q/1"), 2):
        assert satisfies_sentence(structure, translation) == evaluate_eso(structure, sentence), str(structure)


def test_witness_uniqueness():
    sentence = parse_eso(NORMAL_FORM)
    translation = eso_to_inclusion(sentence)
    assert witness_uniqueness(unary(2, P=[0, 1], Q=[0, 1]), sentence, translation) is True
    assert witness_uniqueness(unary(2, P=[0], Q=[0, 1]), sentence, translation) is None


def test_witness_uniqueness_needs_the_inclusions():
    """Without its inclusion atom the composed variable is unconstrained and disagrees with g(f(x))"""
    sentence = parse_eso(NORMAL_FORM)
    stripped = parse_formula("A x. E y_f. E y_g. E z_g_1. (P(y_f) & z_g_1 = x & Q(y_g))")
    structure = unary(2, P=[0], Q=[0, 1])
    assert satisfies_sentence(structure, stripped)
    assert witness_uniqueness(structure, sentence, stripped) is False
