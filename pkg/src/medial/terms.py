"""Groupoid terms: full binary trees over named variables.

Concrete syntax is juxtaposition, left-associative, with parentheses for
grouping::

    (xy)(zt)      Node(Node(x, y), Node(z, t))
    xyzt          ((xy)z)t
    z3(z2(xz1))   variables are one lowercase letter plus optional digits

A trailing ``^2`` squares a factor, so ``(xy^2)y^2`` reads as ``(x(yy))(yy)``.

Positions are strings over ``"LR"`` addressing a subterm from the root; the
empty string is the root.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Tuple, Union

__all__ = [
    "Leaf",
    "Node",
    "Term",
    "Identity",
    "Position",
    "TermSyntaxError",
    "PositionError",
    "parse",
    "parse_identity",
    "print_canonical",
    "dual",
    "dual_position",
    "measures",
    "Measures",
    "subterm_at",
    "replace_at",
    "positions",
    "leaf_positions",
    "variables",
    "substitute",
    "is_linear",
    "rank",
]

VARIABLE_RE = re.compile(r"[a-z][0-9]*\Z")

Position = str


class TermSyntaxError(ValueError):
    """Raised by the parser; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class PositionError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Leaf:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Node:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return print_canonical(self)


Term = Union[Leaf, Node]


@dataclass(frozen=True, slots=True)
class Identity:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{print_canonical(self.lhs)}={print_canonical(self.rhs)}"

    def dual(self) -> "Identity":
        return Identity(dual(self.lhs), dual(self.rhs))

    def swapped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)


# --------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, message: str, at: int | None = None):
        at = self.i if at is None else at
        raise TermSyntaxError(message, len(self.text[:at].encode("utf-8")))

    def skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def term(self) -> Term:
        t = self.factor()
        while True:
            c = self.peek()
            if c == "(" or ("a" <= c <= "z"):
                t = Node(t, self.factor())
            else:
                return t

    def factor(self) -> Term:
        c = self.peek()
        start = self.i
        if c == "(":
            self.i += 1
            if self.peek() == ")":
                self.error("empty factor")
            t = self.term()
            if self.peek() != ")":
                self.error("unbalanced parenthesis, expected ')'", start if not self.peek() else None)
            self.i += 1
        elif "a" <= c <= "z":
            j = self.i + 1
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            # a name such as "x1y" is two variables; "X" or "_" is illegal
            t = Leaf(self.text[self.i:j])
            self.i = j
        elif c == "":
            self.error("unexpected end of input, expected a factor")
        elif c == ")":
            self.error("unbalanced parenthesis, unexpected ')'")
        else:
            self.error(f"illegal identifier character {c!r}")
        if self.peek() == "^":
            self.i += 1
            self.skip()
            if self.text[self.i:self.i + 1] != "2" or self.text[self.i + 1:self.i + 2].isdigit():
                self.error("only the exponent ^2 is supported")
            self.i += 1
            t = Node(t, t)
        return t

    def finish(self) -> None:
        c = self.peek()
        if c == ")":
            self.error("unbalanced parenthesis, unexpected ')'")
        if c:
            self.error(f"unexpected character {c!r}")


def parse(text: str) -> Term:
    """Parse a single term."""
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_identity(text: str) -> Identity:
    """Parse ``lhs = rhs``."""
    p = _Parser(text)
    lhs = p.term()
    if p.peek() != "=":
        p.error("expected '='")
    p.i += 1
    rhs = p.term()
    p.finish()
    return Identity(lhs, rhs)


def as_term(t: Union[Term, str]) -> Term:
    return parse(t) if isinstance(t, str) else t


def as_identity(e: Union[Identity, str]) -> Identity:
    return parse_identity(e) if isinstance(e, str) else e


# --------------------------------------------------------------------------
# printing


def print_canonical(t: Term) -> str:
    if isinstance(t, Leaf):
        return t.name
    parts = []
    for child in (t.left, t.right):
        s = print_canonical(child)
        parts.append(f"({s})" if isinstance(child, Node) else s)
    return "".join(parts)


# --------------------------------------------------------------------------
# structure


def dual(t: Term) -> Term:
    """Mirror image of ``t``."""
    if isinstance(t, Leaf):
        return t
    return Node(dual(t.right), dual(t.left))


def dual_position(p: Position) -> Position:
    return p.translate(_MIRROR)


_MIRROR = str.maketrans("LR", "RL")


def subterm_at(t: Term, p: Position) -> Term:
    for i, step in enumerate(p):
        if not isinstance(t, Node):
            raise PositionError(f"position {p!r} leaves the term at step {i}")
        if step == "L":
            t = t.left
        elif step == "R":
            t = t.right
        else:
            raise PositionError(f"bad position step {step!r}")
    return t


def replace_at(t: Term, p: Position, s: Term) -> Term:
    """Return ``t`` with the subterm at ``p`` replaced by ``s``."""
    if not p:
        return s
    if not isinstance(t, Node):
        raise PositionError(f"position {p!r} leaves the term")
    if p[0] == "L":
        return Node(replace_at(t.left, p[1:], s), t.right)
    if p[0] == "R":
        return Node(t.left, replace_at(t.right, p[1:], s))
    raise PositionError(f"bad position step {p[0]!r}")


def positions(t: Term, prefix: Position = "") -> Iterator[Position]:
    """All positions in preorder."""
    yield prefix
    if isinstance(t, Node):
        yield from positions(t.left, prefix + "L")
        yield from positions(t.right, prefix + "R")


def leaf_positions(t: Term, prefix: Position = "") -> Iterator[Tuple[Position, str]]:
    """``(position, name)`` for every leaf, left to right."""
    if isinstance(t, Leaf):
        yield prefix, t.name
    else:
        yield from leaf_positions(t.left, prefix + "L")
        yield from leaf_positions(t.right, prefix + "R")


def variables(t: Term) -> List[str]:
    """Distinct variable names in order of first occurrence."""
    seen: Dict[str, None] = {}
    for _, name in leaf_positions(t):
        seen.setdefault(name)
    return list(seen)


def rank(t: Term) -> int:
    if isinstance(t, Leaf):
        return 1
    return rank(t.left) + rank(t.right)


def is_linear(t: Term) -> bool:
    names = [name for _, name in leaf_positions(t)]
    return len(names) == len(set(names))


class Measures(NamedTuple):
    rank: int
    linear: bool
    occurrences: Dict[str, int]
    positions: Dict[str, List[Position]]


def measures(t: Term) -> Measures:
    occ: Dict[str, int] = {}
    pos: Dict[str, List[Position]] = {}
    for p, name in leaf_positions(t):
        occ[name] = occ.get(name, 0) + 1
        pos.setdefault(name, []).append(p)
    n = sum(occ.values())
    return Measures(n, all(c == 1 for c in occ.values()), occ, pos)


def substitute(t: Term, subst: Dict[str, Term]) -> Term:
    """Simultaneous substitution; unmapped variables are left alone."""
    if isinstance(t, Leaf):
        return subst.get(t.name, t)
    return Node(substitute(t.left, subst), substitute(t.right, subst))


def relabel(t: Term, prefix: str = "v") -> Term:
    """Rename leaves left to right as ``v1, v2, ...`` (one name per leaf)."""
    counter = iter(range(1, 1 << 30))

    def go(u: Term) -> Term:
        if isinstance(u, Leaf):
            return Leaf(f"{prefix}{next(counter)}")
        left = go(u.left)
        return Node(left, go(u.right))

    return go(t)
