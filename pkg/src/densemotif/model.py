"""Pattern and occurrence model shared by every stage of motif extraction.

Patterns are rigid strings over an alphabet plus the don't-care glyph ``.``.
A non-empty pattern always starts and ends with a solid character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

DONT_CARE = "."
RECORD_SEPARATOR = "$"

_DC_RUN = re.compile(r"[^.]+")


def as_fraction(value) -> Fraction:
    """Parse a density threshold given as Fraction, int, decimal or ``"p/q"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # decimal repr, not the binary expansion: 0.8 -> 4/5
        return Fraction(repr(value))
    return Fraction(str(value).strip())


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    dontcare: str = DONT_CARE
    unmatchable: frozenset[str] = frozenset({RECORD_SEPARATOR})

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "unmatchable", frozenset(self.unmatchable))
        if not self.symbols:
            raise ValueError("alphabet needs at least one solid symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate alphabet symbols")
        if any(len(c) != 1 for c in self.symbols):
            raise ValueError("alphabet symbols must be single characters")
        if self.dontcare in self.symbols or self.dontcare in self.unmatchable:
            raise ValueError(f"don't-care glyph {self.dontcare!r} is reserved")
        if self.unmatchable & set(self.symbols):
            raise ValueError("unmatchable symbols overlap the alphabet")

    @cached_property
    def code(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)


DNA = Alphabet(tuple("ACGT"))
PROTEIN = Alphabet(tuple("ACDEFGHIKLMNPQRSTVWY"))


@dataclass(frozen=True)
class SequenceStore:
    """The input text, possibly several records joined by unmatchable separators."""

    text: str
    alphabet: Alphabet
    record_offsets: tuple[int, ...] = (0,)

    def __post_init__(self):
        object.__setattr__(self, "record_offsets", tuple(self.record_offsets))
        n = len(self.text)
        offs = self.record_offsets
        if n == 0:
            raise ValueError("empty sequence")
        if not offs or offs[0] != 0:
            raise ValueError("record_offsets must start at 0")
        if any(b <= a for a, b in zip(offs, offs[1:])) or offs[-1] >= n:
            raise ValueError("record_offsets must be strictly increasing and < n")
        allowed = set(self.alphabet.symbols) | self.alphabet.unmatchable
        bad = set(self.text) - allowed
        if bad:
            raise ValueError(f"symbols outside alphabet: {''.join(sorted(bad))!r}")

    @classmethod
    def from_string(cls, text: str, symbols: Iterable[str] | None = None) -> SequenceStore:
        """Wrap a single string; the alphabet defaults to its distinct non-separator characters."""
        if symbols is None:
            symbols = sorted(set(text) - {RECORD_SEPARATOR})
        alphabet = Alphabet(tuple(symbols))
        offsets = [0] + [i + 1 for i, c in enumerate(text) if c == RECORD_SEPARATOR and i + 1 < len(text)]
        return cls(text, alphabet, tuple(offsets))

    @property
    def n(self) -> int:
        return len(self.text)

    def __len__(self) -> int:
        return len(self.text)

    @cached_property
    def codes(self) -> np.ndarray:
        """Alphabet index per position, -1 where unmatchable."""
        lut = self.alphabet.code
        return np.fromiter((lut.get(c, -1) for c in self.text), dtype=np.int16, count=self.n)

    @cached_property
    def run_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Start and (exclusive) end of the matchable run holding each position.

        Unmatchable positions get the empty run ``[p, p)``.
        """
        n = self.n
        ok = self.codes >= 0
        idx = np.arange(n)
        # start: last unmatchable index before p, plus one
        bad_left = np.where(ok, -1, idx)
        start = np.maximum.accumulate(bad_left) + 1
        bad_right = np.where(ok, n, idx)
        end = np.minimum.accumulate(bad_right[::-1])[::-1]
        start = np.where(ok, start, idx)
        end = np.where(ok, end, idx)
        return start.astype(np.int64), end.astype(np.int64)

    def is_matchable(self, p: int) -> bool:
        return 0 <= p < self.n and self.text[p] not in self.alphabet.unmatchable


@dataclass(frozen=True, order=True)
class Pattern:
    chars: str

    def __post_init__(self):
        if self.chars and (self.chars[0] == DONT_CARE or self.chars[-1] == DONT_CARE):
            raise ValueError(f"pattern must start and end with a solid character: {self.chars!r}")

    @classmethod
    def trimmed(cls, raw: str) -> Pattern:
        return cls(raw.strip(DONT_CARE))

    def __str__(self) -> str:
        return self.chars

    def __len__(self) -> int:
        return len(self.chars)

    def __getitem__(self, i):
        return self.chars[i]

    @property
    def length(self) -> int:
        return len(self.chars)

    @property
    def dc_count(self) -> int:
        return self.chars.count(DONT_CARE)

    @property
    def solid_count(self) -> int:
        return len(self.chars) - self.chars.count(DONT_CARE)

    @property
    def density(self) -> Fraction:
        return density(self)

    @property
    def solid_blocks(self) -> tuple[tuple[int, str], ...]:
        """Maximal runs of solid characters as ``(offset, block)`` pairs."""
        return tuple((m.start(), m.group()) for m in _DC_RUN.finditer(self.chars))

    def is_dense(self, rho) -> bool:
        return is_dense(self, rho)


@dataclass(frozen=True)
class LocationList:
    positions: tuple[int, ...] = ()

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)

    @property
    def frequency(self) -> int:
        return len(self.positions)

    @property
    def translated(self) -> tuple[int, ...]:
        if len(self.positions) <= 1:
            return ()
        first = self.positions[0]
        return tuple(p - first for p in self.positions[1:])

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __getitem__(self, i):
        return self.positions[i]


@dataclass(frozen=True)
class Motif:
    """A pattern together with its exact location list."""

    pattern: Pattern
    locations: LocationList

    @property
    def frequency(self) -> int:
        return len(self.locations)

    @property
    def key(self) -> str:
        return self.pattern.chars


@dataclass(frozen=True)
class ExtractionParams:
    sigma: int = 2
    rho: Fraction = Fraction(1)
    min_block_len: int = 1
    filter_periodic: bool = False
    max_period_fraction: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "rho", as_fraction(self.rho))
        object.__setattr__(self, "max_period_fraction", as_fraction(self.max_period_fraction))
        if int(self.sigma) != self.sigma or self.sigma < 1:
            raise ValueError("sigma must be an integer >= 1")
        if not 0 < self.rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        if int(self.min_block_len) != self.min_block_len or self.min_block_len < 1:
            raise ValueError("min_block_len must be an integer >= 1")
        if self.max_period_fraction < 0:
            raise ValueError("max_period_fraction must be non-negative")


def _chars(x) -> str:
    return x.chars if isinstance(x, Pattern) else x


def density(x) -> Fraction:
    """Fraction of solid characters, as an exact rational."""
    chars = _chars(x)
    if not chars:
        raise ValueError("density of the empty pattern is undefined")
    return 1 - Fraction(chars.count(DONT_CARE), len(chars))


def is_dense(x, rho) -> bool:
    chars = _chars(x)
    rho = as_fraction(rho)
    solid = len(chars) - chars.count(DONT_CARE)
    return solid * rho.denominator >= rho.numerator * len(chars)


def occurs_at(x, s: SequenceStore, p: int) -> bool:
    chars = _chars(x)
    if p < 0 or p + len(chars) > s.n:
        return False
    text = s.text
    bad = s.alphabet.unmatchable
    for i, c in enumerate(chars):
        t = text[p + i]
        if t in bad:
            return False
        if c != DONT_CARE and c != t:
            return False
    return True


def scan_occurrences(x, s: SequenceStore) -> LocationList:
    """All positions where ``x`` occurs, by direct scan of the text."""
    chars = _chars(x)
    if not chars:
        raise ValueError("cannot scan for the empty pattern")
    m = len(chars)
    if m > s.n:
        return LocationList()
    cand = np.arange(s.n - m + 1)
    _, run_end = s.run_bounds
    keep = run_end[cand] >= cand + m
    codes = s.codes
    lut = s.alphabet.code
    for i, c in enumerate(chars):
        if c == DONT_CARE:
            continue
        code = lut.get(c)
        if code is None:
            return LocationList()
        keep &= codes[cand + i] == code
    return LocationList(tuple(cand[keep].tolist()))


def contains(y, x) -> bool:
    """True iff ``x`` occurs in ``y`` at some offset (``y`` is at least as specific there)."""
    ys, xs = _chars(y), _chars(x)
    if not xs:
        return True
    for off in range(len(ys) - len(xs) + 1):
        for i, c in enumerate(xs):
            if c != DONT_CARE and ys[off + i] != c:
                break
        else:
            return True
    return False


def subsumes(y, x, s: SequenceStore) -> bool:
    ly, lx = scan_occurrences(y, s), scan_occurrences(x, s)
    if ly.frequency != lx.frequency or not contains(y, x):
        return False
    assert ly.translated == lx.translated
    return True
