"""Property checks of the structural invariants over random inputs."""

from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from densemotif import (
    ExtractionParams,
    LocationList,
    Motif,
    Pattern,
    SequenceStore,
    brute_force_motifs,
    extract_maximal_solid_blocks,
    extract_motifs,
    maximal_extension,
    scan_occurrences,
    subsumes,
    valid_fusions,
    zscore,
)
from densemotif.model import DONT_CARE, occurs_at

RHOS = st.sampled_from([Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(4, 5), Fraction(1)])
texts = st.text(alphabet="AB$", min_size=2, max_size=14).filter(lambda t: t.strip("$"))
patterns = st.text(alphabet="AB.", min_size=1, max_size=10).map(lambda t: t.strip(".")).filter(bool)


def _store(text):
    return SequenceStore.from_string(text, "AB")


@given(patterns)
def test_pattern_shape_invariants(chars):
    p = Pattern(chars)
    assert p.density == 1 - Fraction(p.dc_count, p.length)
    covered = [i for off, block in p.solid_blocks for i in range(off, off + len(block))]
    assert covered == [i for i, c in enumerate(chars) if c != DONT_CARE]
    for (o1, b1), (o2, _) in zip(p.solid_blocks, p.solid_blocks[1:]):
        assert o2 - (o1 + len(b1)) >= 1


@given(texts, patterns)
def test_scanned_locations_all_occur(text, chars):
    s = _store(text)
    locs = scan_occurrences(chars, s)
    assert all(occurs_at(chars, s, p) for p in locs)
    assert (locs.translated == ()) == (locs.frequency <= 1)


@given(texts, st.data())
def test_maximal_extension_cannot_be_specialised(text, data):
    s = _store(text)
    matchable = [p for p in range(s.n) if s.is_matchable(p)]
    assume(len(matchable) >= 2)
    subset = sorted(data.draw(st.sets(st.sampled_from(matchable), min_size=2, max_size=4)))
    ext = maximal_extension(LocationList(tuple(subset)), s)
    assume(ext.pattern.chars)
    w = ext.pattern.chars
    locs = scan_occurrences(w, s)
    assert set(ext.locations) <= set(locs)
    assert maximal_extension(locs, s).pattern == ext.pattern
    # every don't care, and each column just outside, breaks some occurrence when made solid
    for i in list(range(-1, len(w) + 1)):
        if 0 <= i < len(w) and w[i] != DONT_CARE:
            continue
        for c in "AB":
            if 0 <= i < len(w):
                narrowed = w[:i] + c + w[i + 1 :]
                start = 0
            elif i < 0:
                narrowed, start = c + w, 1
            else:
                narrowed, start = w + c, 0
            hits = {p + start for p in scan_occurrences(narrowed, s)}
            assert hits != set(locs)


@given(texts, patterns, patterns)
def test_fusion_witness(text, x, y):
    s = _store(text)
    m1, m2 = Motif(Pattern(x), scan_occurrences(x, s)), Motif(Pattern(y), scan_occurrences(y, s))
    assume(m1.frequency and m2.frequency)
    for cand in valid_fusions(m1, m2, s):
        assert cand.witness_gap >= 1
        i, j = cand.junctions[0]
        assert cand.fused.chars[i + 1 : j] == DONT_CARE * cand.witness_gap
        assert cand.locations == scan_occurrences(cand.fused, s)


@given(texts, st.integers(1, 3))
def test_solid_blocks_are_maximal(text, sigma):
    s = _store(text)
    blocks = extract_maximal_solid_blocks(s, sigma)
    for b in blocks:
        assert b.frequency >= sigma
        for c in "AB":
            for longer in (c + b.pattern.chars, b.pattern.chars + c):
                assert not subsumes(longer, b.pattern, s)


@given(texts, st.integers(1, 3), RHOS)
def test_engine_agrees_with_oracle(text, sigma, rho):
    s = _store(text)
    sets_seen = []

    def progress(_, sets):
        keys = [set(sets.previous), set(sets.current), set(sets.next)]
        sets_seen.append(all(not (a & b) for k, a in enumerate(keys) for b in keys[k + 1 :]))

    got = extract_motifs(s, ExtractionParams(sigma=sigma, rho=rho), progress=progress)
    assert all(sets_seen)
    assert set(got) == brute_force_motifs(s, sigma, rho).motifs
    for m in got:
        assert m.pattern.is_dense(rho) and m.frequency >= sigma


@given(st.integers(1, 10**7), st.integers(1, 80), st.integers(1, 80), st.integers(0, 10**4), st.integers(2, 26))
def test_zscore_is_finite(n, m, c, f, a):
    assume(m <= n and c <= m)
    assert math.isfinite(zscore(f, n, m, c, a))
