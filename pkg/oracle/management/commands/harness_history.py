from django.core.management.base import BaseCommand
from django.db.models import Count, Q, Sum

from oracle.models import HarnessRun


class Command(BaseCommand):
    help = 'Show recorded harness runs with per-run claim totals'

    def add_arguments(self, parser):
        parser.add_argument('--limit', type=int, default=10)
        parser.add_argument('--failures', action='store_true', help='List the failed claims of each run')

    def handle(self, *args, **options):
        runs = HarnessRun.objects.annotate(
            claims=Count('outcomes'),
            failed=Count('outcomes', filter=Q(outcomes__passed=False)),
            checked=Sum('outcomes__checked'),
            skipped=Sum('outcomes__skipped'),
        ).order_by('-started_at', '-pk')[:options['limit']]

        total_width = 88

        self.stdout.write("\nHarness History")
        self.stdout.write("=" * total_width)
        self.stdout.write(
            f"{'Run':>5} "
            f"{'Started':<20} "
            f"{'Scale':<6} "
            f"{'Seed':>6} "
            f"{'Claims':>6} "
            f"{'Failed':>6} "
            f"{'Checked':>9} "
            f"{'Skipped':>8} "
            f"{'Status':<6}"
        )
        self.stdout.write("-" * total_width)

        for run in runs:
            self.stdout.write(
                f"{run.pk:>5} "
                f"{run.started_at.strftime('%Y-%m-%d %H:%M:%S'):<20} "
                f"{run.scale:<6} "
                f"{run.seed:>6} "
                f"{run.claims:>6} "
                f"{run.failed:>6} "
                f"{run.checked or 0:>9} "
                f"{run.skipped or 0:>8} "
                f"{'PASS' if run.passed else 'FAIL':<6}"
            )
            if options['failures']:
                for outcome in run.outcomes.filter(passed=False).order_by('claim'):
                    self.stdout.write(f"      {outcome.claim}: {outcome.detail}")

        self.stdout.write("=" * total_width)
