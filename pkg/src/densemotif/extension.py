"""Maximal extension by column consensus, and maximal dense substrings of it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .model import (
    DONT_CARE,
    LocationList,
    Motif,
    Pattern,
    SequenceStore,
    as_fraction,
    is_dense,
    scan_occurrences,
)


@dataclass(frozen=True)
class MaximalPattern:
    pattern: Pattern
    locations: LocationList
    anchor: int
    """Index in ``pattern`` of the column the input locations pointed at."""


def maximal_extension(locations, s: SequenceStore) -> MaximalPattern:
    """Column consensus over the occurrences in ``locations``.

    Columns are scanned as far as every occurrence stays inside its matchable
    run. ``locations`` must be the exact location list of some pattern for the
    returned location list to be exact.
    """
    pos = np.asarray(locations.positions if isinstance(locations, LocationList) else list(locations), dtype=np.int64)
    if len(pos) == 0:
        raise ValueError("maximal extension of an empty location list")
    run_start, run_end = s.run_bounds
    lo = int((run_start[pos] - pos).max())
    hi = int((run_end[pos] - pos).min())
    if hi <= lo or lo > 0 or hi <= 0:
        return MaximalPattern(Pattern(""), LocationList(), 0)
    codes = s.codes
    cols = np.arange(lo, hi)
    cons = codes[pos[0] + cols].astype(np.int32)
    alive = np.flatnonzero(cons >= 0)
    for p in pos[1:].tolist():
        if len(alive) == 0:
            break
        same = codes[p + cols[alive]] == cons[alive]
        cons[alive[~same]] = -1
        alive = alive[same]
    solid = np.flatnonzero(cons >= 0)
    if len(solid) == 0:
        return MaximalPattern(Pattern(""), LocationList(), 0)
    first, last = int(solid[0]), int(solid[-1])
    glyphs = np.array(list(s.alphabet.symbols) + [DONT_CARE])
    chars = "".join(glyphs[cons[first : last + 1]].tolist())
    start = lo + first
    return MaximalPattern(Pattern(chars), LocationList(tuple((pos + start).tolist())), -start)


def dense_intervals(chars: str, rho) -> list[tuple[int, int]]:
    """Inclusive intervals ``[i, j]`` with solid ends and density >= rho, not inside another such interval.

    Uses prefix sums: ``[i, j]`` is dense iff ``g(j + 1) >= g(i)`` with
    ``g(k) = q * solid(0..k-1) - p * k`` for ``rho = p / q``.
    """
    rho = as_fraction(rho)
    if not chars:
        return []
    solid = np.frombuffer(chars.encode("utf-32-le"), dtype=np.uint32) != ord(DONT_CARE)
    p, q = rho.numerator, rho.denominator
    g = np.zeros(len(chars) + 1, dtype=np.int64)
    g[1:] = np.cumsum(np.where(solid, q - p, -p))
    ends = np.flatnonzero(solid) + 1
    if len(ends) == 0:
        return []
    # running max from the right, over k = j + 1 with j solid
    sufmax = np.maximum.accumulate(g[ends][::-1])[::-1]
    lefts = ends - 1
    # last index t with sufmax[t] >= g[i]; sufmax is non-increasing
    t = np.searchsorted(-sufmax, -g[lefts], side="right") - 1
    rights = ends[t] - 1
    best = np.maximum.accumulate(rights)
    keep = np.ones(len(lefts), dtype=bool)
    keep[1:] = rights[1:] > best[:-1]
    return list(zip(lefts[keep].tolist(), rights[keep].tolist()))


def dense_intervals_naive(chars: str, rho) -> list[tuple[int, int]]:
    rho = as_fraction(rho)
    solid = [i for i, c in enumerate(chars) if c != DONT_CARE]
    dense = [(i, j) for i in solid for j in solid if j >= i and is_dense(chars[i : j + 1], rho)]
    return sorted(
        (i, j) for i, j in dense
        if not any(a <= i and j <= b and (a, b) != (i, j) for a, b in dense)
    )


def extract_maximal_dense(w, rho) -> set[Pattern]:
    """Patterns of the interval-maximal dense substrings of ``w``."""
    chars = w.pattern.chars if isinstance(w, MaximalPattern) else (w.chars if isinstance(w, Pattern) else w)
    return {Pattern(chars[i : j + 1]) for i, j in dense_intervals(chars, rho)}


def intervals_covering(chars: str, rho, cores: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Interval-maximal dense intervals of ``chars`` that cover at least one ``[a, b]`` core."""
    cores = list(cores)
    return [
        (i, j) for i, j in dense_intervals(chars, rho)
        if any(i <= a and b <= j for a, b in cores)
    ]


def canonicalize(x, s: SequenceStore, rho, *, locations: LocationList | None = None) -> list[Motif]:
    """Maximal dense patterns subsuming the dense pattern ``x``, with their location lists."""
    x = x if isinstance(x, Pattern) else Pattern(x)
    rho = as_fraction(rho)
    if not x.chars or not is_dense(x, rho):
        raise ValueError(f"canonicalize needs a dense pattern, got {x.chars!r}")
    locs = locations if locations is not None else scan_occurrences(x, s)
    if len(locs) == 0:
        raise ValueError(f"{x.chars!r} does not occur in the sequence")
    ext = maximal_extension(locs, s)
    w = ext.pattern.chars
    a = ext.anchor
    base = np.asarray(ext.locations.positions, dtype=np.int64)
    out = []
    for i, j in intervals_covering(w, rho, [(a, a + len(x) - 1)]):
        out.append(Motif(Pattern(w[i : j + 1]), LocationList(tuple((base + i).tolist()))))
    return sorted(out, key=lambda m: m.pattern.chars)
