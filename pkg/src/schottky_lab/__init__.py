"""Numerical toolkit for Fuchsian Schottky groups.

Discretizes twisted transfer operators on Bergman spaces over the Schottky
disks, locates resonances as Fredholm-determinant zeros, samples uniformly
random finite covers, and measures the operator-norm bounds that control the
spectral gap of random covers.
"""

from .mobius import Disk, MobiusMap
from .schottky import (
    SchottkyData,
    ValidationReport,
    load_schottky,
    theta,
    upsilon,
    validate_schottky,
    word_geometry,
    word_map,
)
from .words import Word, count_words, mirror_letter, words_of_length

__version__ = "0.1.0"

__all__ = [
    "Disk",
    "MobiusMap",
    "SchottkyData",
    "ValidationReport",
    "Word",
    "count_words",
    "load_schottky",
    "mirror_letter",
    "theta",
    "upsilon",
    "validate_schottky",
    "word_geometry",
    "word_map",
    "words_of_length",
    "__version__",
]
