"""Maximal solid blocks: the repeated substrings that seed motif generation."""

from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .model import ExtractionParams, LocationList, Pattern, SequenceStore, as_fraction


@dataclass(frozen=True)
class SolidBlock:
    pattern: Pattern
    locations: LocationList
    minimal_period: int

    @property
    def frequency(self) -> int:
        return len(self.locations)


def failure_function(word: str) -> list[int]:
    """KMP border table: ``fail[i]`` is the longest proper border of ``word[:i]``."""
    fail = [0] * (len(word) + 1)
    fail[0] = -1
    k = -1
    for i, c in enumerate(word):
        while k >= 0 and word[k] != c:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    return fail


def minimal_period(word: str) -> int:
    if not word:
        raise ValueError("empty word has no period")
    return len(word) - failure_function(word)[-1]


def is_periodic(word: str, max_period_fraction=Fraction(1, 2)) -> bool:
    """Short-period test: minimal period at most ``floor(|word| * fraction)``."""
    frac = as_fraction(max_period_fraction)
    limit = (len(word) * frac.numerator) // frac.denominator
    return minimal_period(word) <= limit


def suffix_array(keys: np.ndarray) -> np.ndarray:
    """Suffix array of an integer sequence by prefix doubling.

    A suffix that is a proper prefix of another sorts first.
    """
    n = len(keys)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(keys, return_inverse=True)
    rank = rank.astype(np.int64).ravel()
    h = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:]
        sa = np.lexsort((second, rank))
        r, s2 = rank[sa], second[sa]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = (r[1:] != r[:-1]) | (s2[1:] != s2[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.cumsum(step)
        if rank.max() == n - 1 or h >= n:
            return sa
        h *= 2


def lcp_array(keys, sa) -> np.ndarray:
    """Kasai et al.: ``lcp[i]`` is the common prefix of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    seq = list(keys.tolist() if isinstance(keys, np.ndarray) else keys)
    sa_l = sa.tolist()
    n = len(seq)
    rank = [0] * n
    for i, p in enumerate(sa_l):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = sa_l[r - 1]
        while p + h < n and q + h < n and seq[p + h] == seq[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


class SuffixIndex:
    """Suffix array over a SequenceStore.

    Unmatchable positions get unique keys, so no common prefix runs across them.
    """

    def __init__(self, s: SequenceStore):
        self.store = s
        codes = s.codes.astype(np.int64)
        k = len(s.alphabet)
        self.keys = np.where(codes >= 0, codes, k + np.arange(s.n))
        self.sa = suffix_array(self.keys)
        self._sa_list = self.sa.tolist()
        # order-preserving text for binary search; unmatchables all map to the top glyph
        self._mapped = "".join(chr(0x30 + c) if c >= 0 else "\U0010ffff" for c in codes.tolist())

    @cached_property
    def lcp(self) -> np.ndarray:
        return lcp_array(self.keys, self.sa)

    @cached_property
    def rank(self) -> np.ndarray:
        rank = np.empty(len(self.sa), dtype=np.int64)
        rank[self.sa] = np.arange(len(self.sa))
        return rank

    def find(self, block: str) -> np.ndarray:
        """Sorted start positions of a solid string."""
        lut = self.store.alphabet.code
        try:
            target = "".join(chr(0x30 + lut[c]) for c in block)
        except KeyError:
            return np.zeros(0, dtype=np.int64)
        m = len(target)
        mapped = self._mapped

        def key(p):
            return mapped[p : p + m]

        lo = bisect.bisect_left(self._sa_list, target, key=key)
        hi = bisect.bisect_right(self._sa_list, target, lo=lo, key=key)
        return np.sort(self.sa[lo:hi])


def _block(s: SequenceStore, start: int, length: int, positions) -> SolidBlock:
    word = s.text[start : start + length]
    return SolidBlock(Pattern(word), LocationList(tuple(sorted(positions))), minimal_period(word))


def _maximal_blocks_suffix(s: SequenceStore, sigma: int, index: SuffixIndex | None) -> list[SolidBlock]:
    index = index or SuffixIndex(s)
    sa, lcp, keys = index.sa, index.lcp, index.keys
    n = s.n
    # key of the character preceding each suffix; unique where there is none
    prev = np.where(sa > 0, keys[np.maximum(sa - 1, 0)], -1 - np.arange(n))
    unmatch_prev = (sa > 0) & (s.codes[np.maximum(sa - 1, 0)] < 0)
    prev = np.where(unmatch_prev, -1 - np.arange(n), prev)
    # next_change[i]: smallest j > i where prev[j] != prev[j-1]
    change = np.flatnonzero(prev[1:] != prev[:-1]) + 1
    change_pos = np.searchsorted(change, np.arange(n), side="right")
    next_change = np.append(change, n)[change_pos]

    out: list[SolidBlock] = []
    sa_list = sa.tolist()
    nc = next_change.tolist()
    stack: list[list[int]] = [[0, 0]]  # [lcp value, left bound]
    lcp_l = lcp.tolist() + [0]
    for i in range(1, n + 1):
        cur = lcp_l[i] if i < n else 0
        lb = i - 1
        while cur < stack[-1][0]:
            depth, left = stack.pop()
            lb = left
            right = i - 1
            if right - left + 1 >= sigma and nc[left] <= right:
                out.append(_block(s, sa_list[left], depth, sa_list[left : right + 1]))
        if cur > stack[-1][0]:
            stack.append([cur, lb])

    if sigma <= 1:
        # frequency-one blocks are whole matchable runs whose string occurs once
        run_start, run_end = s.run_bounds
        rank = index.rank
        starts = np.flatnonzero((s.codes >= 0) & (run_start == np.arange(n)))
        for a in starts.tolist():
            length = int(run_end[a]) - a
            r = int(rank[a])
            shared = max(lcp_l[r], lcp_l[r + 1] if r + 1 < n else 0)
            if length > shared:
                out.append(_block(s, a, length, [a]))
    out.sort(key=lambda b: b.pattern.chars)
    return out


def _maximal_blocks_naive(s: SequenceStore, sigma: int) -> list[SolidBlock]:
    text = s.text
    run_start, run_end = s.run_bounds
    occ: dict[str, list[int]] = defaultdict(list)
    for p in range(s.n):
        for q in range(p + 1, int(run_end[p]) + 1):
            occ[text[p:q]].append(p)
    out = []
    for word, positions in occ.items():
        f = len(positions)
        if f < sigma:
            continue
        # one-character extensions keeping every occurrence rule out maximality
        lefts = {text[p - 1] if p > run_start[p] else None for p in positions}
        rights = {text[p + len(word)] if p + len(word) < run_end[p] else None for p in positions}
        if len(lefts) == 1 and None not in lefts:
            continue
        if len(rights) == 1 and None not in rights:
            continue
        out.append(_block(s, positions[0], len(word), positions))
    out.sort(key=lambda b: b.pattern.chars)
    return out


def extract_maximal_solid_blocks(
    s: SequenceStore, sigma: int, *, method: str = "suffix", index: SuffixIndex | None = None
) -> list[SolidBlock]:
    """Solid strings with frequency >= sigma not subsumed by a longer solid string.

    ``method="naive"`` enumerates every substring; use it only on small inputs.
    """
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    if method == "suffix":
        return _maximal_blocks_suffix(s, sigma, index)
    if method == "naive":
        return _maximal_blocks_naive(s, sigma)
    raise ValueError(f"unknown method {method!r}")


def filter_seeds(blocks: Iterable[SolidBlock], params: ExtractionParams) -> list[SolidBlock]:
    kept = [b for b in blocks if len(b.pattern) >= params.min_block_len]
    if params.filter_periodic:
        frac = params.max_period_fraction
        kept = [
            b for b in kept
            if b.minimal_period > (len(b.pattern) * frac.numerator) // frac.denominator
        ]
    return kept
