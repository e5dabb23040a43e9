"""Brute-force reference: every maximal dense motif of a small string.

Every position subset P with |P| >= sigma is turned into its column
consensus; the interval-maximal dense substrings of all consensus patterns
are rescanned, thresholded and filtered pairwise for subsumption. Any
maximal dense motif x is produced by the subset P = L_x, so the search is
complete. Cost is 2^n, hence the size limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import (
    DONT_CARE,
    Motif,
    Pattern,
    SequenceStore,
    as_fraction,
    contains,
    is_dense,
    scan_occurrences,
)

DEFAULT_LIMIT = 24
_CHUNK = 1 << 18


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    motifs: frozenset[Motif]
    text: str
    sigma: int
    rho: Fraction

    def patterns(self) -> set[str]:
        return {m.pattern.chars for m in self.motifs}


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a - ((a >> 1) & 0x55555555)
    a = (a & 0x33333333) + ((a >> 2) & 0x33333333)
    a = (a + (a >> 4)) & 0x0F0F0F0F
    return (a * 0x01010101 & 0xFFFFFFFF) >> 24


def consensus_patterns(s: SequenceStore, min_size: int) -> set[str]:
    """Distinct trimmed column-consensus patterns over all subsets of at least ``min_size`` positions."""
    n = s.n
    codes = s.codes.tolist()
    k = len(s.alphabet)
    offsets = range(-(n - 1), n)
    # per offset r: bitmask of p with s[p + r] == c, and of p with s[p + r] matchable
    char_masks = []
    ok_masks = []
    for r in offsets:
        per_c = [0] * k
        ok = 0
        for p in range(n):
            q = p + r
            if 0 <= q < n and codes[q] >= 0:
                per_c[codes[q]] |= 1 << p
                ok |= 1 << p
        char_masks.append([np.uint32(~m & 0xFFFFFFFF) for m in per_c])
        ok_masks.append(np.uint32(~ok & 0xFFFFFFFF))
    zero = n - 1  # column index of offset 0
    width = len(offsets)
    # column codes 0 (don't care) .. k packed into uint64 words
    bits = (k + 1).bit_length()
    per_word = 64 // bits
    shift = np.uint64(bits)
    rows: set[tuple[int, ...]] = set()
    total = 1 << n
    for lo in range(1, total, _CHUNK):
        subsets = np.arange(lo, min(total, lo + _CHUNK), dtype=np.uint32)
        subsets = subsets[_popcount(subsets.astype(np.int64)) >= max(1, min_size)]
        if len(subsets) == 0:
            continue
        inside = np.empty((width, len(subsets)), dtype=bool)
        for ci in range(width):
            inside[ci] = (subsets & ok_masks[ci]) == 0
        # keep only the contiguous matchable window around offset 0
        window = np.empty_like(inside)
        window[zero:] = np.logical_and.accumulate(inside[zero:], axis=0)
        window[: zero + 1] = np.logical_and.accumulate(inside[zero::-1], axis=0)[::-1]
        words = []
        word = np.zeros(len(subsets), dtype=np.uint64)
        for ci in range(width):
            col = np.zeros(len(subsets), dtype=np.uint64)
            for c in range(k):
                col[(subsets & char_masks[ci][c]) == 0] = c + 1
            col[~window[ci]] = 0
            word = (word << shift) | col
            if (ci + 1) % per_word == 0 or ci == width - 1:
                words.append(word)
                word = np.zeros(len(subsets), dtype=np.uint64)
        packed = np.stack(words, axis=1)
        packed = packed[packed.any(axis=1)]
        if len(packed):
            order = np.lexsort(packed.T[::-1])
            packed = packed[order]
            first = np.ones(len(packed), dtype=bool)
            first[1:] = (packed[1:] != packed[:-1]).any(axis=1)
            rows.update(map(tuple, packed[first].tolist()))
    glyphs = [DONT_CARE] + list(s.alphabet.symbols)
    mask = (1 << bits) - 1
    found: set[str] = set()
    for row in rows:
        chars = []
        for wi, word in enumerate(row):
            count = min(per_word, width - wi * per_word)
            chars.extend(glyphs[(word >> (bits * (count - 1 - j))) & mask] for j in range(count))
        found.add("".join(chars).strip(DONT_CARE))
    return found


def _interval_maximal_dense(chars: str, rho: Fraction) -> list[str]:
    solid = [i for i, c in enumerate(chars) if c != DONT_CARE]
    dense = [(i, j) for i in solid for j in solid if j >= i and is_dense(chars[i : j + 1], rho)]
    spans = set(dense)
    out = []
    for i, j in dense:
        if any((a, b) != (i, j) and a <= i and j <= b for a, b in spans):
            continue
        out.append(chars[i : j + 1])
    return out


def brute_force_motifs(
    s: SequenceStore, sigma: int, rho, *, limit: int = DEFAULT_LIMIT
) -> OracleResult:
    rho = as_fraction(rho)
    if s.n > limit:
        raise InstanceTooLarge(f"oracle limited to n <= {limit}, got {s.n}")
    if sigma < 1 or not 0 < rho <= 1:
        raise ValueError("need sigma >= 1 and 0 < rho <= 1")
    candidates: set[str] = set()
    for w in consensus_patterns(s, sigma):
        candidates.update(_interval_maximal_dense(w, rho))
    scored = []
    for c in sorted(candidates):
        locs = scan_occurrences(c, s)
        if len(locs) >= sigma and is_dense(c, rho):
            scored.append(Motif(Pattern(c), locs))
    # subsumption needs equal frequency, hence equal translated location lists
    groups: dict[tuple, list[Motif]] = {}
    for m in scored:
        groups.setdefault(m.locations.translated + (len(m.locations),), []).append(m)
    kept = []
    for group in groups.values():
        for x in group:
            if not any(y is not x and contains(y.pattern, x.pattern) for y in group):
                kept.append(x)
    return OracleResult(frozenset(kept), s.text, sigma, rho)
