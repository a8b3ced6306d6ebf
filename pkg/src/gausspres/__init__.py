"""Exact synthesis, normal forms and a verified presentation for unitaries over Z[1/2, i]."""

from .errors import GaussPresError
from .mainlemma import CASE_IDS, classify_case, complete_diagram, verify_completion
from .matrix import Level, UMat, is_unitary, level_of, mat_identity, one_level, two_level
from .relations import derive, find_rewrites, instantiate, rewrite_once, verify_soundness
from .ring import DyadicGauss, GaussInt, di_canonical, di_from_dyadic
from .synth import equivalent, normal_form, normal_path, normal_word, syllable_at
from .words import K, X, Generator, Phase, eval_word, expand_basic, invert_word, parse_word, print_word

__all__ = [
    "CASE_IDS",
    "DyadicGauss",
    "GaussInt",
    "GaussPresError",
    "Generator",
    "K",
    "Level",
    "Phase",
    "UMat",
    "X",
    "classify_case",
    "complete_diagram",
    "derive",
    "di_canonical",
    "di_from_dyadic",
    "equivalent",
    "eval_word",
    "expand_basic",
    "find_rewrites",
    "instantiate",
    "invert_word",
    "is_unitary",
    "level_of",
    "mat_identity",
    "normal_form",
    "normal_path",
    "normal_word",
    "one_level",
    "parse_word",
    "print_word",
    "rewrite_once",
    "syllable_at",
    "two_level",
    "verify_completion",
    "verify_soundness",
]
