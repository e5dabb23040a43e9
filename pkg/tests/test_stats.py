from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from densemotif import LocationList, Motif, Pattern, ScoredMotif, rank, score, zscore


def _reference(f, n, m, c, a):
    mpmath.mp.dps = 60
    p = mpmath.mpf(a) ** -c
    big_n = n - m + 1
    return (f - big_n * p) / mpmath.sqrt(big_n * p * (1 - p))


def test_known_value():
    assert zscore(4, 1000, 6, 5) == pytest.approx(3.0736, abs=1e-4)


def test_zero_when_frequency_equals_expectation():
    # 16 windows at p = 1/16 expect exactly one occurrence
    assert zscore(1, 17, 2, 2) == 0.0


def test_below_expectation_is_negative():
    assert zscore(10, 500, 3, 2) < 0


def test_deep_underflow_stays_finite():
    z = zscore(3, 10**6, 60, 60)
    assert math.isfinite(z) and z > 0
    assert z == pytest.approx(float(_reference(3, 10**6, 60, 60, 4)), rel=1e-9)


@given(
    st.integers(10, 10**6),
    st.integers(1, 60),
    st.integers(0, 60),
    st.integers(0, 500),
    st.sampled_from([2, 4, 20]),
)
def test_matches_arbitrary_precision(n, m, c, f, a):
    c = max(1, min(c, m))
    if n < m:
        return
    ref = _reference(f, n, m, c, a)
    assert zscore(f, n, m, c, a) == pytest.approx(float(ref), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize(
    "args", [(1, 5, 6, 2), (1, 10, 0, 0), (1, 10, 3, 4), (-1, 10, 3, 2), (1, 10, 3, 2, 1)]
)
def test_invalid_arguments(args):
    with pytest.raises(ValueError):
        zscore(*args)


def _scored(chars, f, z):
    p = Pattern(chars)
    return ScoredMotif(p, f, len(p), p.solid_count, z, p.density)


def test_rank_order():
    assert [m.zscore for m in rank([_scored("A", 2, 3.0), _scored("C", 2, 5.0)])] == [5.0, 3.0]
    tied = rank([_scored("A", 4, 1.0), _scored("C", 7, 1.0)])
    assert [m.frequency for m in tied] == [7, 4]
    assert [m.pattern.chars for m in rank([_scored("A", 2, 1.0), _scored("A.C", 2, 1.0)])] == ["A.C", "A"]
    assert rank([]) == []


def test_score_fields():
    (m,) = score([Motif(Pattern("A.B"), LocationList((0, 6)))], 11, alphabet_size=4)
    assert (m.length, m.solid_count, m.frequency, m.density) == (3, 2, 2, Fraction(2, 3))
    assert m.positions == (0, 6)
    assert m.zscore == pytest.approx(float(_reference(2, 11, 3, 2, 4)), rel=1e-12)
