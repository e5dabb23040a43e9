"""Maximal dense rigid motifs with don't cares."""

from .algebra import fuse, merge, valid_fusions
from .blocks import SolidBlock, extract_maximal_solid_blocks, filter_seeds, minimal_period
from .engine import ResourceLimitExceeded, extract_motifs
from .extension import canonicalize, extract_maximal_dense, maximal_extension
from .io import load_fasta, read_results, write_results
from .model import (
    DNA,
    PROTEIN,
    Alphabet,
    ExtractionParams,
    LocationList,
    Motif,
    Pattern,
    SequenceStore,
    contains,
    density,
    is_dense,
    scan_occurrences,
    subsumes,
)
from .oracle import InstanceTooLarge, brute_force_motifs
from .stats import ScoredMotif, rank, score, zscore

__all__ = [
    "DNA", "PROTEIN", "Alphabet", "ExtractionParams", "InstanceTooLarge", "LocationList",
    "Motif", "Pattern", "ResourceLimitExceeded", "ScoredMotif", "SequenceStore", "SolidBlock",
    "brute_force_motifs", "canonicalize", "contains", "density", "extract_maximal_dense",
    "extract_maximal_solid_blocks", "extract_motifs", "filter_seeds", "fuse", "is_dense",
    "load_fasta", "maximal_extension", "merge", "minimal_period", "rank", "read_results",
    "scan_occurrences", "score", "subsumes", "valid_fusions", "write_results", "zscore",
]
