"""Reversibility decisions for cardinal sequences and disconnected
binary structures, with machine-checkable witness certificates."""

from .sequence import (
    AP,
    Cardinal,
    CardinalSpec,
    INF,
    NonRevCase,
    Single,
    Verdict,
    aleph,
    decide,
    fin,
    normalize,
    spec,
)
from .witness import WitnessMap, build_witness, search_bounded, verify_witness

__all__ = [
    "AP",
    "Cardinal",
    "CardinalSpec",
    "INF",
    "NonRevCase",
    "Single",
    "Verdict",
    "WitnessMap",
    "aleph",
    "build_witness",
    "decide",
    "fin",
    "normalize",
    "search_bounded",
    "spec",
    "verify_witness",
]
