from django.db import models


class HarnessRun(models.Model):
    """
    One invocation of the claim harness
    """
    seed = models.IntegerField()
    scale = models.CharField(max_length=20)
    started_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    passed = models.BooleanField(default=False)

    class Meta:
        indexes = [
            models.Index(fields=['started_at'], name='oracle_harn_started_5c1e2a_idx'),
        ]

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f"Run {self.pk} seed={self.seed} scale={self.scale} {status}"


class ClaimOutcome(models.Model):
    """
    Result of a single claim within a run
    """
    run = models.ForeignKey(HarnessRun, on_delete=models.CASCADE, related_name='outcomes')
    claim = models.CharField(max_length=100)
    passed = models.BooleanField()
    checked = models.IntegerField(default=0)
    skipped = models.IntegerField(default=0)
    detail = models.TextField(blank=True)
    seconds = models.FloatField(default=0.0)

    class Meta:
        unique_together = ('run', 'claim')
        indexes = [
            models.Index(fields=['claim'], name='oracle_clai_claim_8d4f7b_idx'),
        ]

    def __str__(self):
        return f"{self.claim} - {'PASS' if self.passed else 'FAIL'} ({self.checked} checked)"
