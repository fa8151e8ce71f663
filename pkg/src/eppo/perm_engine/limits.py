from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

DEFAULT_THRESHOLD = 2**21
DEFAULT_PAIRWISE_THRESHOLD = 2**12


@dataclass
class Limits:
    threshold: int = DEFAULT_THRESHOLD
    pairwise: int = DEFAULT_PAIRWISE_THRESHOLD


LIMITS = Limits()


@contextmanager
def limits(threshold: int | None = None, pairwise: int | None = None):
    """Temporarily override the enumeration and pair-scan thresholds."""
    saved = (LIMITS.threshold, LIMITS.pairwise)
    if threshold is not None:
        if threshold < 1:
            raise ValueError("threshold must be positive")
        LIMITS.threshold = threshold
    if pairwise is not None:
        if pairwise < 1:
            raise ValueError("pairwise threshold must be positive")
        LIMITS.pairwise = pairwise
    try:
        yield LIMITS
    finally:
        LIMITS.threshold, LIMITS.pairwise = saved
