"""Z-scores under an i.i.d. equiprobable source, and ranked output order."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .model import Motif, Pattern


@dataclass(frozen=True)
class ScoredMotif:
    pattern: Pattern
    frequency: int
    length: int
    solid_count: int
    zscore: float
    density: Fraction
    positions: tuple[int, ...] = ()


def zscore(f: int, n: int, m: int, c: int, alphabet_size: int = 4) -> float:
    """Standardised excess of ``f`` occurrences over the ``n - m + 1`` windows.

    Each window matches with probability ``p = alphabet_size ** -c``; ``p``
    is handled through its logarithm so large ``c`` does not underflow.
    """
    if m < 1 or n < m:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if c < 1 or c > m:
        raise ValueError(f"need 1 <= c <= m, got c={c}, m={m}")
    if f < 0:
        raise ValueError("frequency must be non-negative")
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be >= 2")
    windows = n - m + 1
    log_p = -c * math.log(alphabet_size)
    p = float(alphabet_size) ** -c
    q = -math.expm1(log_p)
    if p > 1e-300:
        mean = windows * p
        return (f - mean) / math.sqrt(mean * q)
    # p underflows or is subnormal: the mean is negligible next to any f >= 1
    log_sd = 0.5 * (math.log(windows) + log_p + math.log(q))
    if f == 0:
        return -math.exp(0.5 * (math.log(windows) + log_p - math.log(q)))
    return math.exp(math.log(f) - log_sd)


def score(
    motifs: Iterable[Motif], n: int, alphabet_size: int = 4, *, positions: bool = True
) -> list[ScoredMotif]:
    out = []
    for m in motifs:
        pat = m.pattern
        out.append(
            ScoredMotif(
                pattern=pat,
                frequency=m.frequency,
                length=len(pat),
                solid_count=pat.solid_count,
                zscore=zscore(m.frequency, n, len(pat), pat.solid_count, alphabet_size),
                density=pat.density,
                positions=m.locations.positions if positions else (),
            )
        )
    return out


def rank(motifs: Iterable[ScoredMotif]) -> list[ScoredMotif]:
    """Descending z-score; ties by higher frequency, longer pattern, then pattern string."""
    return sorted(motifs, key=lambda s: (-s.zscore, -s.frequency, -s.length, s.pattern.chars))
