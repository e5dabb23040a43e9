from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from densemotif import InstanceTooLarge, SequenceStore, brute_force_motifs
from densemotif.extension import maximal_extension
from densemotif.oracle import consensus_patterns


def test_worked_example(worked):
    res = brute_force_motifs(worked, 2, Fraction(2, 3))
    assert res.patterns() == {"A.B", "B.C"}


def test_overlapping_solid_runs():
    res = brute_force_motifs(SequenceStore.from_string("AAAA"), 2, 1)
    assert {(m.pattern.chars, m.frequency) for m in res.motifs} == {("A", 4), ("AA", 3), ("AAA", 2)}


def test_threshold_above_length(worked):
    assert brute_force_motifs(worked, worked.n + 1, Fraction(1, 2)).motifs == frozenset()


def test_size_limit():
    with pytest.raises(InstanceTooLarge):
        brute_force_motifs(SequenceStore.from_string("A" * 30), 2, 1)


def test_consensus_matches_pointwise_extension():
    s = SequenceStore.from_string("ABCAB$BCA", "ABC")
    expected = set()
    for k in range(2, s.n + 1):
        for subset in combinations(range(s.n), k):
            expected.add(maximal_extension(subset, s).pattern.chars)
    assert consensus_patterns(s, 2) == expected - {""}
