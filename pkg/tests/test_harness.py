import os
import time
from io import StringIO
from unittest.mock import patch

import pytest
from django.core.management import call_command

from oracle.claims import CLAIMS
from oracle.harness import claim_params, default_seed, run_harness
from oracle.models import ClaimOutcome, HarnessRun
from semantics.limits import EvalLimits

CLAIMS_RUN = ['strict-disjunction-example', 'lemma-contraction']

SMALL = {'formulas': 3, 'max_depth': 2, 'max_size': 2, 'max_rows': 2, 'team_samples': 3, 'structure_samples': 3}
TINY = {
    'strict-disjunction-example': {},
    'flatness': SMALL,
    'strict-implies-lax': SMALL,
    'empty-team': {'formulas': 5, 'max_depth': 2, 'max_size': 2, 'structure_samples': 3},
    'downward-closure': SMALL,
    'dependence-strict-lax': SMALL,
    'lax-locality': SMALL,
    'strict-locality-failure': {'limits': {'max_split_candidates': 3 ** 9}},
    'restricted-locality': SMALL,
    'lemma-renaming': SMALL,
    'lemma-relativization': {'max_size': 2, 'variables': 3, 'max_rows': 2},
    'lemma-contraction': {'max_size': 2, 'max_rows': 2},
    'dependence-as-independence': {'max_size': 2},
    'prenex-normal-form': {'formulas': 2, 'max_depth': 2, 'max_size': 2, 'max_universals': 1},
    'eso-translation': {
        'formulas': 2, 'max_depth': 1, 'max_size': 2, 'max_universals': 1, 'max_existentials': 1,
        'structure_samples': 4,
    },
    'inclusion-translation': {'max_size': 2, 'structure_samples': 3},
}


@pytest.fixture
def tiny_scale(settings):
    scales = {**settings.TEAMLOGIC['HARNESS_SCALES'], 'tiny': TINY}
    settings.TEAMLOGIC = {**settings.TEAMLOGIC, 'HARNESS_SCALES': scales}
    return 'tiny'


@pytest.mark.django_db
def test_recorded_run():
    """Test that a recorded run stores one outcome per claim"""
    report = run_harness(CLAIMS_RUN, seed=0, scale='quick', record=True)
    assert report.passed
    assert [result.name for result in report.results] == CLAIMS_RUN

    run = HarnessRun.objects.get(pk=report.run_id)
    assert run.passed
    assert run.seed == 0
    assert run.scale == 'quick'
    assert run.finished_at is not None
    assert str(run) == f"Run {run.pk} seed=0 scale=quick PASS"

    outcomes = ClaimOutcome.objects.filter(run=run).order_by('claim')
    assert [outcome.claim for outcome in outcomes] == sorted(CLAIMS_RUN)
    assert all(outcome.passed and outcome.checked > 0 for outcome in outcomes)


def test_report_table():
    report = run_harness(['strict-disjunction-example'], seed=3, scale='quick')
    text = report.to_text()
    assert text.startswith("Harness run (seed 3, scale quick)")
    assert "strict-disjunction-example" in text
    assert text.endswith("1 passed, 0 failed")
    assert report.run_id is None


def test_unknown_claim_or_scale():
    with pytest.raises(ValueError, match="Unknown claims"):
        run_harness(['no-such-claim'])
    with pytest.raises(ValueError, match="Unknown harness scale"):
        run_harness(CLAIMS_RUN, scale='huge')
    with pytest.raises(ValueError, match="Unknown harness scale"):
        claim_params('lemma-contraction', 'huge')


def test_claim_params_are_copies(settings):
    params = claim_params('eso-translation', 'quick')
    params.pop('limits')
    assert 'limits' in settings.TEAMLOGIC['HARNESS_SCALES']['quick']['eso-translation']


def test_default_seed_from_environment(settings):
    with patch.dict(os.environ, {'TEAMLOGIC_SEED': '7'}):
        assert default_seed() == 7
    with patch.dict(os.environ, {}, clear=True):
        settings.TEAMLOGIC = {**settings.TEAMLOGIC, 'SEED': 4}
        assert default_seed() == 4


@pytest.mark.django_db
def test_harness_history_command():
    run_harness(['strict-disjunction-example'], seed=0, scale='quick', record=True)
    out = StringIO()
    call_command('harness_history', '--failures', stdout=out)
    output = out.getvalue()
    assert "Harness History" in output
    assert "quick" in output
    assert "PASS" in output


@pytest.mark.parametrize('name', list(CLAIMS))
def test_claim_passes_at_a_tiny_scale(tiny_scale, name):
    report = run_harness([name], seed=0, scale=tiny_scale)
    result = report.results[0]
    assert result.passed, result.detail


def test_limit_fails_the_claim_not_the_run(tiny_scale):
    """A claim stopped by a limit is reported as failed and the remaining claims still run"""
    names = ['strict-locality-failure', 'lemma-contraction']
    report = run_harness(names, seed=0, scale=tiny_scale, limits=EvalLimits.from_settings(max_team_rows=4))
    stopped, contraction = report.results
    assert not stopped.passed
    assert stopped.failures[0].startswith("stopped: max_team_rows exceeded")
    assert contraction.passed
    assert report.to_text().endswith("1 passed, 1 failed")


@pytest.mark.slow
def test_quick_scale_finishes():
    """The default scale runs every claim within a couple of minutes"""
    started = time.monotonic()
    report = run_harness(seed=0, scale='quick')
    assert report.passed, report.to_text()
    assert time.monotonic() - started < 120
