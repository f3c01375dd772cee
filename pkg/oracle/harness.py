import logging
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from django.conf import settings
from django.db import transaction
from django.utils import timezone

from oracle.claims import CLAIMS, ClaimResult
from oracle.models import ClaimOutcome, HarnessRun
from semantics.limits import EvalLimits, LimitExceeded

logger = logging.getLogger(__name__)

TABLE_WIDTH = 92


@dataclass
class HarnessReport:
    seed: int
    scale: str
    results: List[ClaimResult] = field(default_factory=list)
    run_id: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_text(self) -> str:
        lines = [
            f"Harness run (seed {self.seed}, scale {self.scale})",
            "=" * TABLE_WIDTH,
            f"{'Claim':<30} {'Status':<6} {'Checked':>8} {'Skipped':>8} {'Seconds':>9}",
            "-" * TABLE_WIDTH,
        ]
        for result in self.results:
            lines.append(
                f"{result.name:<30} "
                f"{'PASS' if result.passed else 'FAIL':<6} "
                f"{result.checked:>8} "
                f"{result.skipped:>8} "
                f"{result.seconds:>9.2f}"
            )
            for failure in result.failures:
                lines.append(f"    {failure}")
        lines.append("=" * TABLE_WIDTH)
        failed = sum(1 for result in self.results if not result.passed)
        lines.append(f"{len(self.results) - failed} passed, {failed} failed")
        return '\n'.join(lines)


def default_seed() -> int:
    """TEAMLOGIC_SEED from the environment wins over the configured seed."""
    seed = os.getenv('TEAMLOGIC_SEED')
    if seed is not None:
        return int(seed)
    return settings.TEAMLOGIC.get('SEED', 0)


def claim_params(name: str, scale: str) -> dict:
    scales = settings.TEAMLOGIC['HARNESS_SCALES']
    if scale not in scales:
        raise ValueError(f"Unknown harness scale {scale!r}; choose one of {', '.join(scales)}")
    return dict(scales[scale].get(name, {}))


def run_claim(name: str, seed: int, scale: str, limits: EvalLimits) -> ClaimResult:
    """
    Run one registered claim at the given scale.

    Raises:
        ValueError: If the claim or the scale is unknown
    """
    if name not in CLAIMS:
        raise ValueError(f"Unknown claim {name!r}")
    params = claim_params(name, scale)
    claim_limits = limits.with_overrides(**params.pop('limits', {}))
    logger.info("Claim %s started (seed %d, scale %s)", name, seed, scale)
    started = time.monotonic()
    try:
        result = CLAIMS[name].check(params, seed, claim_limits)
    except LimitExceeded as exc:
        logger.warning("Claim %s stopped by a limit: %s", name, exc)
        result = ClaimResult(name)
        result.fail(f"stopped: {exc}")
    result.seconds = time.monotonic() - started
    logger.info(
        "Claim %s %s: %d checked, %d skipped in %.2fs",
        name, 'passed' if result.passed else 'failed', result.checked, result.skipped, result.seconds,
    )
    return result


def run_harness(
    names: Optional[Iterable[str]] = None,
    seed: Optional[int] = None,
    scale: Optional[str] = None,
    record: bool = False,
    limits: Optional[EvalLimits] = None,
) -> HarnessReport:
    """
    Run the named claims (all registered claims by default) and optionally
    store the run in the database.

    Args:
        names: Claim names, in the order to run them
        seed: Seed for every corpus and sample; defaults to default_seed()
        scale: 'quick' or 'full'; defaults to settings.TEAMLOGIC['HARNESS_SCALE']
        record: Persist a HarnessRun with one ClaimOutcome per claim
        limits: Base evaluation limits; claim parameters may tighten them

    Raises:
        ValueError: If a claim or the scale is unknown
    """
    names = list(names) if names else list(CLAIMS)
    unknown = [name for name in names if name not in CLAIMS]
    if unknown:
        raise ValueError(f"Unknown claims: {', '.join(unknown)}")
    seed = default_seed() if seed is None else seed
    scale = scale or settings.TEAMLOGIC.get('HARNESS_SCALE', 'quick')
    if scale not in settings.TEAMLOGIC['HARNESS_SCALES']:
        raise ValueError(f"Unknown harness scale {scale!r}")
    limits = limits or EvalLimits.from_settings()

    report = HarnessReport(seed, scale)
    for name in names:
        report.results.append(run_claim(name, seed, scale, limits))

    if record:
        report.run_id = record_run(report).pk
    return report


@transaction.atomic
def record_run(report: HarnessReport):
    run = HarnessRun.objects.create(seed=report.seed, scale=report.scale, passed=report.passed)
    for result in report.results:
        ClaimOutcome.objects.create(
            run=run,
            claim=result.name,
            passed=result.passed,
            checked=result.checked,
            skipped=result.skipped,
            detail=result.detail,
            seconds=result.seconds,
        )
    run.finished_at = timezone.now()
    run.save(update_fields=['finished_at'])
    logger.info("Recorded harness run %d", run.pk)
    return run
