"""FASTA ingestion and TSV/JSON result files."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, TextIO

from .model import DNA, PROTEIN, RECORD_SEPARATOR, Alphabet, Pattern, SequenceStore
from .stats import ScoredMotif

COLUMNS = ("pattern", "length", "solid_count", "density", "frequency", "zscore")
# commonly used mask letters; never solid in auto mode
_MASK_LETTERS = frozenset("NX")


class AlphabetError(ValueError):
    """A symbol outside the declared alphabet was found in strict mode."""


def read_records(handle: Iterable[str]) -> list[str]:
    """Sequences of a FASTA stream; text without a header line is one record."""
    records: list[list[str]] = []
    current: list[str] | None = None
    for line in handle:
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            current = []
            records.append(current)
            continue
        if current is None:
            current = []
            records.append(current)
        current.append("".join(line.split()).upper())
    return [seq for seq in ("".join(r) for r in records) if seq]


def _alphabet(mode: str, records: list[str]) -> Alphabet:
    if mode == "dna":
        base = DNA
    elif mode == "protein":
        base = PROTEIN
    elif mode == "auto":
        letters = sorted({c for r in records for c in r if c.isalpha()} - _MASK_LETTERS)
        if not letters:
            raise ValueError("no usable symbols in input")
        base = Alphabet(tuple(letters))
    else:
        raise ValueError(f"unknown alphabet mode {mode!r}")
    others = {c for r in records for c in r} - set(base.symbols)
    return Alphabet(base.symbols, unmatchable=others | {RECORD_SEPARATOR})


def load_fasta(path, alphabet: str = "dna", *, strict: bool = False) -> SequenceStore:
    """Concatenate all records of a FASTA (or raw sequence) file, one separator between records.

    Symbols are upper-cased; symbols outside the alphabet stay in the text but
    match nothing, unless ``strict`` is set.
    """
    with open(path) as fh:
        records = read_records(fh)
    if not records:
        raise ValueError(f"{path}: empty sequence")
    alpha = _alphabet(alphabet, records)
    bad = alpha.unmatchable - {RECORD_SEPARATOR}
    if RECORD_SEPARATOR in "".join(records):
        raise AlphabetError(f"{path}: reserved symbol {RECORD_SEPARATOR!r} in sequence")
    if strict and bad:
        raise AlphabetError(f"{path}: symbols outside alphabet: {''.join(sorted(bad))}")
    offsets = []
    pos = 0
    for r in records:
        offsets.append(pos)
        pos += len(r) + 1
    return SequenceStore(RECORD_SEPARATOR.join(records), alpha, tuple(offsets))


def format_density(d: Fraction) -> str:
    return f"{float(d):.6f}"


def format_zscore(z: float) -> str:
    return f"{z:.5e}"


def _row(m: ScoredMotif, positions: bool) -> list[str]:
    row = [
        m.pattern.chars,
        str(m.length),
        str(m.solid_count),
        format_density(m.density),
        str(m.frequency),
        format_zscore(m.zscore),
    ]
    if positions:
        row.append(";".join(map(str, m.positions)))
    return row


def write_results(
    motifs: Iterable[ScoredMotif],
    out: TextIO,
    *,
    fmt: str = "tsv",
    positions: bool = False,
    max_output: int | None = None,
) -> None:
    motifs = list(motifs)
    if max_output is not None:
        motifs = motifs[:max_output]
    if fmt == "tsv":
        header = list(COLUMNS) + (["positions"] if positions else [])
        out.write("\t".join(header) + "\n")
        for m in motifs:
            out.write("\t".join(_row(m, positions)) + "\n")
    elif fmt == "json":
        items = []
        for m in motifs:
            item = {
                "pattern": m.pattern.chars,
                "length": m.length,
                "solid_count": m.solid_count,
                "density": float(format_density(m.density)),
                "frequency": m.frequency,
                "zscore": float(format_zscore(m.zscore)),
            }
            if positions:
                item["positions"] = list(m.positions)
            items.append(item)
        json.dump(items, out, indent=2)
        out.write("\n")
    else:
        raise ValueError(f"unknown output format {fmt!r}")


def read_results(path) -> list[tuple[Pattern, int, tuple[int, ...]]]:
    """``(pattern, frequency, positions)`` rows from a TSV or JSON result file."""
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        return [
            (Pattern(d["pattern"]), int(d["frequency"]), tuple(d.get("positions", ())))
            for d in json.loads(text)
        ]
    rows = []
    for rec in csv.DictReader(text.splitlines(), delimiter="\t"):
        pos = rec.get("positions") or ""
        rows.append((Pattern(rec["pattern"]), int(rec["frequency"]), tuple(int(p) for p in pos.split(";") if p)))
    return rows
