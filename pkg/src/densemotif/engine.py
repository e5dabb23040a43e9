"""Breadth-first generation of maximal dense motifs.

Seeds are the maximal solid blocks; each generation fuses the motifs found
in the previous round with everything found so far and keeps the new
maximal dense motifs until no new motif appears.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import valid_fusions
from .blocks import SuffixIndex, extract_maximal_solid_blocks, filter_seeds
from .extension import canonicalize, intervals_covering, maximal_extension
from .model import (
    DONT_CARE,
    ExtractionParams,
    LocationList,
    Motif,
    Pattern,
    SequenceStore,
    contains,
    is_dense,
    scan_occurrences,
)

log = logging.getLogger(__name__)


class ResourceLimitExceeded(RuntimeError):
    """Raised when the number of retained motifs passes the configured cap."""


@dataclass
class EngineStats:
    iterations: int = 0
    seeds: int = 0
    fusions_attempted: int = 0
    candidates_admitted: int = 0
    output_size: int = 0


@dataclass
class MotifSet:
    previous: dict[str, Motif] = field(default_factory=dict)
    current: dict[str, Motif] = field(default_factory=dict)
    next: dict[str, Motif] = field(default_factory=dict)
    stats: EngineStats = field(default_factory=EngineStats)

    def __contains__(self, key: str) -> bool:
        return key in self.previous or key in self.current or key in self.next

    def __len__(self) -> int:
        return len(self.previous) + len(self.current) + len(self.next)


def admit(candidate: Motif, params: ExtractionParams, sets: MotifSet) -> bool:
    """Add a canonicalized motif to ``next`` unless it is infrequent or already known."""
    if candidate.frequency < params.sigma or candidate.key in sets:
        return False
    sets.next[candidate.key] = candidate
    sets.stats.candidates_admitted += 1
    return True


class Locator:
    """Occurrence lookup through the suffix index: anchor on the longest solid block, then verify."""

    def __init__(self, s: SequenceStore, index: SuffixIndex):
        self.s = s
        self.index = index
        self._lut = s.alphabet.code

    def __call__(self, chars: str) -> np.ndarray:
        s = self.s
        blocks = Pattern(chars).solid_blocks
        off, longest = max(blocks, key=lambda b: len(b[1]))
        pos = self.index.find(longest) - off
        m = len(chars)
        pos = pos[(pos >= 0) & (pos + m <= s.n)]
        if len(pos) == 0:
            return pos
        _, run_end = s.run_bounds
        pos = pos[run_end[pos] >= pos + m]
        codes = s.codes
        for i, c in enumerate(chars):
            if c == DONT_CARE or off <= i < off + len(longest):
                continue
            pos = pos[codes[pos + i] == self._lut[c]]
            if len(pos) == 0:
                break
        return pos


class Engine:
    """One extraction run over a fixed sequence and parameter set."""

    def __init__(
        self,
        s: SequenceStore,
        params: ExtractionParams,
        *,
        max_motifs: int | None = None,
        workers: int = 1,
        progress: Callable[[int, MotifSet], None] | None = None,
        check: bool = False,
    ):
        self.s = s
        self.params = params
        self.max_motifs = max_motifs
        self.workers = max(1, int(workers))
        self.progress = progress
        self.check = check
        self.index = SuffixIndex(s)
        self.locate = Locator(s, self.index)
        self.sets = MotifSet()
        self._fused_memo: dict[str, list[Motif]] = {}
        self._arrays: dict[str, np.ndarray] = {}

    # seeds

    def seed(self) -> list[Motif]:
        p = self.params
        blocks = extract_maximal_solid_blocks(self.s, p.sigma, index=self.index)
        blocks = filter_seeds(blocks, p)
        self.sets.stats.seeds = len(blocks)
        found: dict[str, Motif] = {}
        for b in blocks:
            for m in canonicalize(b.pattern, self.s, p.rho, locations=b.locations):
                found.setdefault(m.key, m)
        return [found[k] for k in sorted(found)]

    # fusion step

    def _expand(self, fused: Pattern, locations: LocationList, junctions) -> list[Motif]:
        """Maximal dense motifs inside M(fused) that span a witness junction and keep its frequency."""
        ext = maximal_extension(locations, self.s)
        w, a = ext.pattern.chars, ext.anchor
        freq = len(ext.locations)
        base = np.asarray(ext.locations.positions, dtype=np.int64)
        cores = [(a + i, a + j) for i, j in junctions]
        out = []
        for i, j in intervals_covering(w, self.params.rho, cores):
            chars = w[i : j + 1]
            if not (i <= a and a + len(fused) - 1 <= j):
                if len(self.locate(chars)) != freq:
                    continue
            out.append(Motif(Pattern(chars), LocationList(tuple((base + i).tolist()))))
        return out

    def fusions_for(self, m1: Motif, partners: list[Motif]) -> tuple[int, list[tuple[int, Motif]]]:
        """Number of valid fusions of ``m1`` with the partners, and the resulting
        candidates as ``(min operand frequency, motif)``."""
        out = []
        count = 0
        sigma = self.params.sigma
        for m2 in partners:
            for cand in valid_fusions(m1, m2, self.s, min_support=sigma):
                count += 1
                key = cand.fused.chars
                motifs = self._fused_memo.get(key)
                if motifs is None:
                    motifs = self._expand(cand.fused, cand.locations, cand.junctions)
                    self._fused_memo[key] = motifs
                bound = min(m1.frequency, m2.frequency)
                out.extend((bound, m) for m in motifs)
        return count, out

    def _check_candidate(self, m: Motif, bound: int) -> None:
        assert m.frequency <= bound, (m.key, m.frequency, bound)
        assert is_dense(m.pattern, self.params.rho), m.key
        assert scan_occurrences(m.pattern, self.s) == m.locations, m.key
        assert canonicalize(m.pattern, self.s, self.params.rho, locations=m.locations) == [m], m.key

    def run(self) -> list[Motif]:
        sets = self.sets
        for m in self.seed():
            sets.current[m.key] = m
        self._guard()
        pool = ThreadPoolExecutor(self.workers) if self.workers > 1 else None
        try:
            while sets.current:
                sets.stats.iterations += 1
                if self.progress:
                    self.progress(sets.stats.iterations, sets)
                cur_keys = sorted(sets.current)
                prev = [sets.previous[k] for k in sorted(sets.previous)]
                cur = [sets.current[k] for k in cur_keys]
                # both orders of a current/current pair give the same fusions
                jobs = [(cur[i], prev + cur[i:]) for i in range(len(cur))]
                if pool is None:
                    results = [self.fusions_for(m1, partners) for m1, partners in jobs]
                else:
                    results = list(pool.map(lambda job: self.fusions_for(*job), jobs))
                for count, batch in results:
                    sets.stats.fusions_attempted += count
                    for bound, m in sorted(batch, key=lambda t: t[1].key):
                        if self.check:
                            self._check_candidate(m, bound)
                        if admit(m, self.params, sets):
                            self._guard()
                sets.previous.update(sets.current)
                sets.current, sets.next = sets.next, {}
                log.debug("iteration %d: %d found", sets.stats.iterations, len(sets.previous))
        finally:
            if pool is not None:
                pool.shutdown()
        result = [sets.previous[k] for k in sorted(sets.previous)]
        sets.stats.output_size = len(result)
        if self.check:
            check_pairwise_maximality(result)
        return result

    def _guard(self) -> None:
        if self.max_motifs is not None and len(self.sets) > self.max_motifs:
            raise ResourceLimitExceeded(
                f"motif cap of {self.max_motifs} exceeded ({len(self.sets)} retained)"
            )


def check_pairwise_maximality(motifs: list[Motif]) -> None:
    """Debug cross-check: no output motif subsumes another."""
    by_shape: dict[tuple, list[Motif]] = {}
    for m in motifs:
        by_shape.setdefault((m.frequency, m.locations.translated), []).append(m)
    for group in by_shape.values():
        for y in group:
            for x in group:
                if x is not y and contains(y.pattern, x.pattern):
                    raise AssertionError(f"{y.key} subsumes {x.key}")


def extract_motifs(
    s: SequenceStore,
    params: ExtractionParams,
    *,
    max_motifs: int | None = None,
    workers: int = 1,
    progress: Callable[[int, MotifSet], None] | None = None,
    check: bool = False,
) -> list[Motif]:
    """All maximal dense motifs of ``s``, sorted by pattern string.

    Seed filters in ``params`` (minimum block length, periodic blocks) only
    restrict the starting set. ``check=True`` re-verifies every admitted
    motif and is meant for tests.
    """
    engine = Engine(s, params, max_motifs=max_motifs, workers=workers, progress=progress, check=check)
    return engine.run()
