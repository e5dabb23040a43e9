"""Pattern combination: d-merge, d-fusion and enumeration of valid fusions.

Alignment convention for ``op(x, y, d)``: ``y[i]`` sits under ``x[i + d]``,
so ``y`` starts at index ``d`` of ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .model import DONT_CARE, LocationList, Motif, Pattern, SequenceStore

_GAP = re.compile(r"\.+")


def fuse_chars(c1: str, c2: str) -> str | None:
    """Character fusion; ``None`` when both are solid and differ."""
    if c1 == c2:
        return c1
    if c1 == DONT_CARE:
        return c2
    if c2 == DONT_CARE:
        return c1
    return None


def _chars(x) -> str:
    return x.chars if isinstance(x, Pattern) else x


def _fuse_raw(xs: str, ys: str, d: int) -> str | None:
    lo, hi = min(0, d), max(len(xs), d + len(ys))
    # overlap in x coordinates
    a, b = max(0, d), min(len(xs), d + len(ys))
    if a >= b:
        gap = DONT_CARE * (a - b)
        return xs + gap + ys if d >= 0 else ys + gap + xs
    mid = []
    for cx, cy in zip(xs[a:b], ys[a - d : b - d]):
        if cx == cy or cy == DONT_CARE:
            mid.append(cx)
        elif cx == DONT_CARE:
            mid.append(cy)
        else:
            return None
    left = xs[:a] if d >= 0 else ys[: -d]
    right = xs[b:] if b < len(xs) else ys[b - d :]
    out = left + "".join(mid) + right
    assert len(out) == hi - lo
    return out


def fuse(x, y, d: int) -> Pattern | None:
    """d-fusion of two non-empty patterns, or ``None`` where it is undefined."""
    xs, ys = _chars(x), _chars(y)
    if not xs or not ys:
        raise ValueError("fusion needs non-empty patterns")
    raw = _fuse_raw(xs, ys, d)
    return None if raw is None else Pattern.trimmed(raw)


def merge(x, y, d: int) -> Pattern:
    """d-merge: keep characters on which both agree, don't care elsewhere (padding included)."""
    xs, ys = _chars(x), _chars(y)
    a, b = max(0, d), min(len(xs), d + len(ys))
    if a >= b:
        return Pattern("")
    raw = "".join(cx if cx == cy else DONT_CARE for cx, cy in zip(xs[a:b], ys[a - d : b - d]))
    return Pattern.trimmed(raw)


@dataclass(frozen=True)
class FusionCandidate:
    left: Pattern
    right: Pattern
    offset: int
    fused: Pattern
    locations: LocationList
    witness_gap: int
    junctions: tuple[tuple[int, int], ...]
    """Pairs ``(i, j)`` in ``fused`` coordinates: solid flanks of a witnessing don't-care run."""


def witnesses(xs: str, ys: str, d: int, fused: str) -> tuple[tuple[int, int], ...]:
    """Don't-care runs of ``fused`` flanked by a solid of one operand and a solid of the other."""
    shift = -min(0, d)
    ox, oy = shift, shift + d

    def solid_x(k):
        k -= ox
        return 0 <= k < len(xs) and xs[k] != DONT_CARE

    def solid_y(k):
        k -= oy
        return 0 <= k < len(ys) and ys[k] != DONT_CARE

    found = []
    for m in _GAP.finditer(fused):
        i, j = m.start() - 1, m.end()
        if (solid_x(i) and solid_y(j)) or (solid_y(i) and solid_x(j)):
            found.append((i, j))
    return tuple(found)


def valid_fusions(m1: Motif, m2: Motif, s: SequenceStore, *, min_support: int = 1) -> list[FusionCandidate]:
    """Valid fusions at every offset realised by an occurrence pair.

    Offsets realised by fewer than ``min_support`` pairs are skipped.
    """
    x1, x2 = m1.pattern.chars, m2.pattern.chars
    l1 = np.asarray(m1.locations.positions, dtype=np.int64)
    l2 = np.asarray(m2.locations.positions, dtype=np.int64)
    if len(l1) == 0 or len(l2) == 0:
        return []
    diff = (l2[None, :] - l1[:, None]).ravel()
    order = np.argsort(diff, kind="stable")
    sdiff = diff[order]
    cut = np.flatnonzero(sdiff[1:] != sdiff[:-1]) + 1
    starts = np.concatenate(([0], cut))
    ends = np.concatenate((cut, [len(sdiff)]))
    _, run_end = s.run_bounds
    out = []
    for a, b in zip(starts.tolist(), ends.tolist()):
        if b - a < min_support:
            continue
        d = int(sdiff[a])
        raw = _fuse_raw(x1, x2, d)
        if raw is None or raw == x1 or raw == x2:
            continue
        junctions = witnesses(x1, x2, d, raw)
        if not junctions:
            continue
        pos = l1[order[a:b] // len(l2)] + min(0, d)
        pos = pos[run_end[pos] >= pos + len(raw)]
        if len(pos) < min_support:
            continue
        j0 = junctions[0]
        out.append(
            FusionCandidate(
                left=m1.pattern,
                right=m2.pattern,
                offset=d,
                fused=Pattern(raw),
                locations=LocationList(tuple(np.sort(pos).tolist())),
                witness_gap=j0[1] - j0[0] - 1,
                junctions=junctions,
            )
        )
    return out
