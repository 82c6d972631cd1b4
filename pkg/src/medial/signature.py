"""Signatures: words over {alpha, beta} labelling descending paths.

A signature is written as a string over ``"a"`` (alpha, a left edge) and
``"b"`` (beta, a right edge); ``""`` is the empty word.
"""

from __future__ import annotations

import re

from .groups import KL, Element, GroupSpec, path_color
from .terms import Leaf, Node, Position, PositionError, Term, subterm_at

__all__ = [
    "validate",
    "sigma_term",
    "is_compressed",
    "is_compressed_by_factors",
    "terminator",
    "to_position",
    "from_position",
    "evaluate",
    "FORBIDDEN_FACTORS",
]

_WORD_RE = re.compile(r"[ab]*\Z")
_FAMILIES_RE = re.compile(r"(a*|b*|ab*|ba*)\Z")
FORBIDDEN_FACTORS = ("aab", "aba", "bba", "bab")


def validate(word: str) -> str:
    if not _WORD_RE.match(word):
        raise ValueError(f"signature must be a word over 'a' and 'b': {word!r}")
    return word


def to_position(word: str) -> Position:
    return validate(word).translate(str.maketrans("ab", "LR"))


def from_position(p: Position) -> str:
    return p.translate(str.maketrans("LR", "ab"))


def evaluate(word: str, g: GroupSpec = KL) -> Element:
    return path_color(to_position(word), g)


def sigma_term(word: str, var: str = "x") -> Term:
    """The linear term whose path from the root to ``var`` is ``word``.

    Auxiliary variables ``z1, z2, ...`` are numbered from the deepest one up.
    """
    validate(word)
    aux = {f"z{i}" for i in range(1, len(word) + 1)}
    if var in aux:
        raise ValueError(f"variable {var!r} collides with an auxiliary variable")
    t: Term = Leaf(var)
    # build from the innermost letter outwards
    for depth, letter in enumerate(reversed(word), start=1):
        z = Leaf(f"z{depth}")
        t = Node(t, z) if letter == "a" else Node(z, t)
    return t


def is_compressed(word: str) -> bool:
    """Is ``word`` one of alpha^k, beta^k, alpha beta^k, beta alpha^k?"""
    return _FAMILIES_RE.match(validate(word)) is not None


def is_compressed_by_factors(word: str) -> bool:
    """Same question, answered by avoiding the four reducible factors."""
    validate(word)
    return not any(f in word for f in FORBIDDEN_FACTORS)


def terminator(t: Term, start: Position, word: str) -> Position:
    """End of the descending path from ``start`` with signature ``word``."""
    p = start + to_position(word)
    try:
        subterm_at(t, p)
    except PositionError:
        raise PositionError(f"no descending path {word!r} from {start!r}") from None
    return p
