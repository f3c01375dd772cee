from collections import Counter

import pytest

from eso.translate import in_forall_exists_form
from oracle.claims import CLAIMS, claim_names, get_claim
from oracle.corpus import (
    LITERAL,
    CorpusSpec,
    atom_conjunctions,
    dependence_corpus,
    first_order_corpus,
    formula_depth,
    generate_corpus,
)
from oracle.equivalence import (
    COUNTEREXAMPLE,
    EQUIVALENT,
    INCONCLUSIVE,
    LIMIT_EXCEEDED,
    check_open_equivalence,
    check_sentence_equivalence,
)
from semantics.limits import EvalLimits
from structures.vocabulary import parse_vocabulary
from syntax.analysis import atoms, bound_variables, free_variables, is_first_order, universal_count
from syntax.formula import DepAtom
from syntax.grammar import parse_formula

VOCABULARY = parse_vocabulary("P/1,E/2")


def test_corpus_is_reproducible():
    spec = CorpusSpec(VOCABULARY, seed=11, count=20)
    assert list(generate_corpus(spec)) == list(generate_corpus(spec))
    assert list(generate_corpus(spec)) != list(generate_corpus(CorpusSpec(VOCABULARY, seed=12, count=20)))


def test_corpus_sentences():
    """Generated sentences have no free variables and quantify each variable once"""
    spec = CorpusSpec(VOCABULARY, max_depth=3, max_universals=1, seed=3, count=40)
    for formula in generate_corpus(spec):
        assert free_variables(formula) == set()
        assert all(count == 1 for count in Counter(bound_variables(formula)).values())
        assert universal_count(formula) <= 1
        assert formula_depth(formula) <= 3


def test_forall_exists_corpus():
    spec = CorpusSpec(VOCABULARY, seed=5, count=20, forall_exists_form=True, max_depth=2)
    assert all(in_forall_exists_form(formula) for formula in generate_corpus(spec))


def test_restricted_corpora():
    for formula in first_order_corpus(VOCABULARY, ['u', 'v'], 20, seed=1):
        assert is_first_order(formula)
        assert free_variables(formula) <= {'u', 'v'}
    for formula in dependence_corpus(VOCABULARY, ['u', 'v'], 20, seed=1):
        assert all(isinstance(atom, DepAtom) for atom in atoms(formula))
    for formula in atom_conjunctions(VOCABULARY, ['u', 'v'], ['dep', 'inc'], 10, seed=2):
        assert atoms(formula)
        assert free_variables(formula) <= {'u', 'v'}


def test_corpus_spec_validation():
    with pytest.raises(ValueError, match="Unknown atom kinds"):
        CorpusSpec(VOCABULARY, atom_kinds=(LITERAL, 'exclusion'))
    with pytest.raises(ValueError):
        CorpusSpec(VOCABULARY, atom_kinds=())


def test_sentence_equivalence():
    """Test that a constant dependence makes the choice of y uniform"""
    left = parse_formula("A x. E y. (dep(; y) & E(x y))")
    right = parse_formula("E y. A x. E(x y)")
    report = check_sentence_equivalence(left, right, max_size=3)
    assert report.verdict == EQUIVALENT
    assert report.structures == 16 + 512
    assert report.to_summary()['verdict'] == EQUIVALENT


def test_sentence_counterexample():
    left = parse_formula("A x. E y. E(x y)")
    right = parse_formula("E y. A x. E(x y)")
    report = check_sentence_equivalence(left, right, max_size=2)
    assert report.verdict == COUNTEREXAMPLE
    example = report.counterexample
    assert example.team is None
    assert example.left_verdict != example.right_verdict
    assert example.replay(left, right) == (example.left_verdict, example.right_verdict)

    summary = report.to_summary()
    assert 'counterexample_structure' in summary
    assert report.summary_text().startswith(f"verdict={COUNTEREXAMPLE}\n")
    assert "counterexample structure:" in report.to_text()


def test_open_equivalence():
    report = check_open_equivalence(parse_formula("dep(x; y)"), parse_formula("ind(x; y; y)"), ['x', 'y'])
    assert report.equivalent
    assert report.teams > 0

    report = check_open_equivalence(parse_formula("inc(x; y)"), parse_formula("inc(y; x)"), ['x', 'y'])
    assert report.verdict == COUNTEREXAMPLE
    assert report.counterexample.team is not None
    assert 'counterexample_team' in report.to_summary()


def test_open_equivalence_needs_free_variables():
    with pytest.raises(ValueError, match="not among"):
        check_open_equivalence(parse_formula("dep(x; y)"), parse_formula("dep(x; z)"), ['x', 'y'])


def test_open_equivalence_one_side_not_evaluable():
    """A team that only one formula can be evaluated on separates them"""
    report = check_open_equivalence(parse_formula("E x. P(x)"), parse_formula("E y. P(y)"), ['x'])
    assert report.verdict == COUNTEREXAMPLE
    assert report.counterexample.left_verdict is None
    assert report.counterexample.right_verdict is not None
    assert "left is not evaluable" in report.to_text()


def test_open_equivalence_without_evaluable_teams():
    report = check_open_equivalence(parse_formula("E x. P(x)"), parse_formula("A x. P(x)"), ['x'])
    assert report.verdict == INCONCLUSIVE
    assert not report.equivalent
    assert report.teams == 0
    assert report.skipped > 0
    assert "neither formula" in report.reason


def test_equivalence_limit():
    report = check_sentence_equivalence(
        parse_formula("A x. E y. E(x y)"),
        parse_formula("E y. A x. E(x y)"),
        limits=EvalLimits(max_witness_functions=0),
    )
    assert report.verdict == LIMIT_EXCEEDED
    assert report.reason
    assert "stopped:" in report.to_text()


def test_claim_registry(settings):
    """Every registered claim has parameters at both scales"""
    names = claim_names()
    assert len(names) == 16
    assert get_claim('lemma-contraction') is CLAIMS['lemma-contraction']
    assert get_claim('no-such-claim') is None
    for scale in ('quick', 'full'):
        assert set(settings.TEAMLOGIC['HARNESS_SCALES'][scale]) == set(names)
