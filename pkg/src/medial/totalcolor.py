"""Total colors of Klein-colored trees.

The total color of a tree is the tuple ``(a, b, c, d)`` counting leaves
colored alpha, beta, gamma and 1.  With ``m = a + b`` and ``n = c + d``::

    phi1 = (2m + n - 1) / 3        phi2 = (m + 2n - 2) / 3

Every tree satisfies ``2m + n = 1 (mod 3)``; it has ``phi1`` alpha-vertices,
``phi1`` beta-vertices, ``phi2`` gamma-vertices and ``phi2 + 1`` vertices of
color 1.  A tuple other than ``(0, 0, 0, 1)`` is the total color of some tree
iff the congruence holds and ``a, b <= phi1``, ``c, d <= phi2``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Tuple, Union

from .groups import ALPHA, BETA, GAMMA, KL, KL_ORDER, ONE, Element, leaf_colors, vertex_colors
from .terms import Leaf, Node, Term, as_term, dual, leaf_positions, relabel, replace_at

__all__ = [
    "TotalColor",
    "NotRepresentable",
    "total_color",
    "phi",
    "is_representable",
    "construct_tree",
    "vertex_color_counts",
    "shapes",
    "shape_profiles",
    "representable_tuples",
]


class NotRepresentable(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TotalColor:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError(f"total color counts must be nonnegative: {self.as_tuple()}")

    @classmethod
    def parse(cls, text: str) -> "TotalColor":
        try:
            vals = [int(v) for v in text.split(",")]
        except ValueError:
            raise ValueError(f"total color must be four comma-separated integers: {text!r}") from None
        if len(vals) != 4:
            raise ValueError(f"total color must be four comma-separated integers: {text!r}")
        return cls(*vals)

    @property
    def m(self) -> int:
        return self.a + self.b

    @property
    def n(self) -> int:
        return self.c + self.d

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return ",".join(map(str, self.as_tuple()))


def phi(m: int, n: int) -> Tuple[Fraction, Fraction]:
    """``(phi1, phi2)``; integral exactly when ``2m + n = 1 (mod 3)``."""
    return Fraction(2 * m + n - 1, 3), Fraction(m + 2 * n - 2, 3)


def _as_int(x: Fraction) -> Union[int, Fraction]:
    return int(x) if x.denominator == 1 else x


def total_color(t: Union[Term, str]) -> Tuple[TotalColor, Union[int, Fraction], Union[int, Fraction]]:
    counts = Counter(leaf_colors(as_term(t)).values())
    q = TotalColor(*(counts[g] for g in KL_ORDER))
    p1, p2 = phi(q.m, q.n)
    return q, _as_int(p1), _as_int(p2)


def is_representable(q: Union[TotalColor, Tuple[int, int, int, int]]) -> bool:
    q = q if isinstance(q, TotalColor) else TotalColor(*q)
    if q.as_tuple() == (0, 0, 0, 1):
        return True
    if (2 * q.m + q.n) % 3 != 1:
        return False
    p1, p2 = phi(q.m, q.n)
    return q.a <= p1 and q.b <= p1 and q.c <= p2 and q.d <= p2


def vertex_color_counts(t: Union[Term, str]) -> Dict[Element, int]:
    return dict(Counter(vertex_colors(as_term(t)).values()))


# --------------------------------------------------------------------------
# witnesses

# symmetries of the tuple: mirror the tree (alpha <-> beta) or swap the root's
# children (every color times gamma)
def _mirror(q: Tuple[int, ...]) -> Tuple[int, ...]:
    a, b, c, d = q
    return (b, a, c, d)


def _child_swap(q: Tuple[int, ...]) -> Tuple[int, ...]:
    a, b, c, d = q
    return (b, a, d, c)


def _swap_children(t: Term) -> Term:
    return Node(t.right, t.left) if isinstance(t, Node) else t


_TRANSFORMS = (
    ("id", lambda q: q, lambda t: t),
    ("mirror", _mirror, dual),
    ("child-swap", _child_swap, _swap_children),
    ("both", lambda q: _mirror(_child_swap(q)), lambda t: dual(_swap_children(t))),
)

_RANK2 = Node(Leaf("x"), Leaf("x"))


def _first_leaf_of(t: Term, color: Element) -> str:
    for p, g in leaf_colors(t).items():
        if g == color:
            return p
    raise AssertionError(f"no leaf of color {color}")


@lru_cache(maxsize=None)
def _build(q: Tuple[int, int, int, int]) -> Term:
    if q == (0, 0, 0, 1):
        return Leaf("x")
    if q == (1, 1, 0, 0):
        return _RANK2
    for _, fwd, back in _TRANSFORMS:
        a, b, c, d = fwd(q)
        if a <= b and c <= d:
            break
    if c > 0:
        # an alpha-leaf grows into an (alpha-colored) cherry: children 1 and gamma
        sub = _build((a + 1, b, c - 1, d - 1))
        t = replace_at(sub, _first_leaf_of(sub, ALPHA), _RANK2)
    else:
        # a gamma-leaf grows into a cherry with children beta and alpha
        sub = _build((a - 1, b - 1, c + 1, d))
        t = replace_at(sub, _first_leaf_of(sub, GAMMA), _RANK2)
    # each transform is an involution, so applying it again undoes it
    return back(t)


def construct_tree(q: Union[TotalColor, Tuple[int, int, int, int], str]) -> Term:
    """A tree with total color ``q``, leaves named ``v1, v2, ...``."""
    if isinstance(q, str):
        q = TotalColor.parse(q)
    q = q if isinstance(q, TotalColor) else TotalColor(*q)
    if not is_representable(q):
        raise NotRepresentable(f"{q} is not the total color of any tree")
    return relabel(_build(q.as_tuple()))


# --------------------------------------------------------------------------
# enumeration


def shapes(n: int) -> Iterator[Term]:
    """All tree shapes with ``n`` leaves (every leaf is named ``x``)."""
    if n == 1:
        yield Leaf("x")
        return
    for k in range(1, n):
        for left in _shape_list(k):
            for right in _shape_list(n - k):
                yield Node(left, right)


@lru_cache(maxsize=None)
def _shape_list(n: int) -> Tuple[Term, ...]:
    return tuple(shapes(n))


_INDEX = {g: i for i, g in enumerate(KL_ORDER)}
# color permutation induced by left-multiplying with alpha / beta
_TIMES = {
    h: tuple(_INDEX[KL.mul(h, g)] for g in KL_ORDER) for h in (ALPHA, BETA)
}

Profile = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _shift(v: Tuple[int, ...], h: Element) -> Tuple[int, ...]:
    out = [0] * 4
    for i, j in enumerate(_TIMES[h]):
        out[j] += v[i]
    return tuple(out)


@lru_cache(maxsize=None)
def shape_profiles(n: int) -> FrozenSet[Profile]:
    """Distinct ``(leaf counts, vertex counts)`` over all shapes of rank ``n``.

    Counts are indexed alpha, beta, gamma, 1.  Every property that depends on
    these counts only is checked over all shapes by checking these profiles.
    """
    if n == 1:
        return frozenset({((0, 0, 0, 1), (0, 0, 0, 1))})
    out = set()
    for k in range(1, n):
        for ll, lv in shape_profiles(k):
            lla, lva = _shift(ll, ALPHA), _shift(lv, ALPHA)
            for rl, rv in shape_profiles(n - k):
                rlb, rvb = _shift(rl, BETA), _shift(rv, BETA)
                leaves = tuple(x + y for x, y in zip(lla, rlb))
                verts = tuple(x + y for x, y in zip(lva, rvb))
                out.add((leaves, verts[:3] + (verts[3] + 1,)))
    return frozenset(out)


def representable_tuples(max_sum: int) -> List[TotalColor]:
    """Every representable tuple with ``a + b + c + d <= max_sum``."""
    out = []
    for s in range(1, max_sum + 1):
        for a in range(s + 1):
            for b in range(s + 1 - a):
                for c in range(s + 1 - a - b):
                    q = TotalColor(a, b, c, s - a - b - c)
                    if is_representable(q):
                        out.append(q)
    return out
