from __future__ import annotations

from fractions import Fraction

import pytest

from densemotif import (
    DNA,
    Alphabet,
    ExtractionParams,
    LocationList,
    Pattern,
    SequenceStore,
    contains,
    density,
    is_dense,
    scan_occurrences,
    subsumes,
)
from densemotif.model import as_fraction, occurs_at


@pytest.mark.parametrize(
    "chars, expected",
    [("ACGT", Fraction(1)), ("A.B", Fraction(2, 3)), ("A..T.G", Fraction(1, 2))],
)
def test_density(chars, expected):
    assert density(chars) == expected
    assert Pattern(chars).density == expected


def test_density_of_empty_pattern_is_an_error():
    with pytest.raises(ValueError):
        density("")


def test_density_threshold_is_exact():
    assert is_dense("A.B", Fraction(2, 3))
    assert not is_dense("A.B", Fraction(2, 3) + Fraction(1, 10**12))
    assert is_dense("A.B", "2/3")


def test_pattern_rejects_dont_care_at_the_ends():
    with pytest.raises(ValueError):
        Pattern(".A")
    with pytest.raises(ValueError):
        Pattern("A.")
    assert Pattern.trimmed("..A.B.").chars == "A.B"


def test_pattern_shape():
    p = Pattern("AC..G.T")
    assert (p.length, p.solid_count, p.dc_count) == (7, 4, 3)
    assert p.solid_blocks == ((0, "AC"), (4, "G"), (6, "T"))


def test_occurs_at(worked):
    assert occurs_at("A.B", worked, 0)
    assert not occurs_at("A.B", worked, 1)
    assert occurs_at("A", worked, 0)


def test_scan_occurrences(worked):
    assert scan_occurrences("B", worked).positions == (2, 8)
    assert scan_occurrences("A.B", worked).positions == (0, 6)
    assert scan_occurrences("Z", worked).frequency == 0


def test_scan_agrees_with_pointwise_check(worked):
    for chars in ["A", "A.B", "B.C", "A...C", "C", "h"]:
        expected = tuple(p for p in range(worked.n) if occurs_at(chars, worked, p))
        assert scan_occurrences(chars, worked).positions == expected


def test_unmatchable_symbols_block_occurrences():
    s = SequenceStore.from_string("AC$AC$A.C".replace(".", "G"), "ACG")
    assert scan_occurrences("AC", s).positions == (0, 3)
    assert scan_occurrences("C.A", s).positions == ()
    masked = SequenceStore("ACGNNT", Alphabet(tuple("ACGT"), unmatchable=frozenset("N$")))
    assert scan_occurrences("G..T", masked).positions == ()


def test_contains():
    assert contains("A.B.C", "B")
    assert contains("A.B", "A.B")
    assert not contains("A.B", "AB")
    assert contains("ACG", "A.G")
    assert not contains("A.G", "ACG")


def test_subsumes(worked):
    assert subsumes("A.B", "B", worked)
    assert subsumes("A.B.C", "B", worked)
    assert subsumes("A", "A", worked)
    assert not subsumes("A.B", "A", SequenceStore.from_string("ABAC"))


def test_location_list():
    locs = LocationList((3, 7, 12))
    assert locs.frequency == 3
    assert locs.translated == (4, 9)
    assert LocationList((5,)).translated == ()
    with pytest.raises(ValueError):
        LocationList((4, 4))


def test_sequence_store_records():
    s = SequenceStore.from_string("ACGT$GGTA")
    assert s.record_offsets == (0, 5)
    assert not s.is_matchable(4)
    start, end = s.run_bounds
    assert (start[6], end[6]) == (5, 9)
    with pytest.raises(ValueError):
        SequenceStore("ACGU", DNA)
    with pytest.raises(ValueError):
        SequenceStore("", DNA)


@pytest.mark.parametrize("kwargs", [{"sigma": 0}, {"rho": 0}, {"rho": Fraction(3, 2)}, {"min_block_len": 0}])
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        ExtractionParams(**kwargs)


def test_as_fraction():
    assert as_fraction("2/3") == Fraction(2, 3)
    assert as_fraction("0.8") == Fraction(4, 5)
    assert as_fraction(0.8) == Fraction(4, 5)
