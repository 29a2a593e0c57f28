"""Lyndon array construction in linear time.

Builds both the plain word-width Lyndon array (constant extra working
space) and the succinct 2n+2-bit balanced-parentheses representation of
the previous-smaller-suffix tree, with query support, brute-force oracles,
and benchmark tooling.
"""

from ._backend import BACKEND
from .bps import AppendOnlyBps, BuildStats, SuccinctPssTree
from .construct import build_plain, build_succinct
from .duval import ExtendedRun, detect_extended_run, lyndon_factorization
from .errors import IntegrityError, UsageError, VerificationError
from .textcore import SuffixOrder, Text, is_lyndon_word, lce, suffix_compare

__version__ = "0.1.0"

__all__ = [
    "AppendOnlyBps",
    "BACKEND",
    "BuildStats",
    "ExtendedRun",
    "IntegrityError",
    "SuccinctPssTree",
    "SuffixOrder",
    "Text",
    "UsageError",
    "VerificationError",
    "build_plain",
    "build_succinct",
    "detect_extended_run",
    "is_lyndon_word",
    "lce",
    "lyndon_factorization",
    "suffix_compare",
    "__version__",
]
