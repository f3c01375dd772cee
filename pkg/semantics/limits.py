from dataclasses import dataclass, fields, replace
from typing import Optional

from django.conf import settings


class LimitExceeded(RuntimeError):
    """A search space is larger than the configured limit allows."""

    def __init__(self, limit: str, required: int, allowed: int):
        self.limit = limit
        self.required = required
        self.allowed = allowed
        super().__init__(f"{limit} exceeded: need {required}, allowed {allowed}")


@dataclass(frozen=True)
class EvalLimits:
    """Upper bounds on exhaustive searches. None means unlimited."""
    max_split_candidates: Optional[int] = None
    max_witness_functions: Optional[int] = None
    max_team_rows: Optional[int] = None
    max_teams: Optional[int] = None
    # Subformula evaluations and witness tuples tried in one evaluation.
    max_search_nodes: Optional[int] = None

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if value is not None and value < 0:
                raise ValueError(f"{item.name} must be nonnegative, got {value}")

    @classmethod
    def from_settings(cls, **overrides) -> 'EvalLimits':
        """Limits from settings.TEAMLOGIC['EVAL_LIMITS']; keyword arguments that are not None win."""
        configured = dict(settings.TEAMLOGIC.get('EVAL_LIMITS', {}))
        configured.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**configured)

    @classmethod
    def unlimited(cls) -> 'EvalLimits':
        return cls()

    def check(self, limit: str, required: int) -> None:
        allowed = getattr(self, limit)
        if allowed is not None and required > allowed:
            raise LimitExceeded(limit, required, allowed)

    def with_overrides(self, **overrides) -> 'EvalLimits':
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})
