"""Deriving interchange laws from the mutation laws M1-M6.

Every mutation law is an interchange law, so applying one at a position
swaps two fixed slots below it:

    M1  LR  <-> RL        M4  LRL <-> R
    M2  LL  <-> RR        M5  L   <-> RLR
    M3  LLR <-> R         M6  L   <-> RRL

:func:`interchange_moves` swaps two same-colored leaves by induction on the
rank of their smallest common subterm ``qr``.  With ``sigma`` the path from
``q`` to the first leaf and ``tau`` the path from ``r`` to the second, each
round applies exactly one mutation law:

1. compression: a factor aab/aba/bba/bab of sigma or tau is cut by M3/M4/M6/M5
   at the top of the factor, shortening the path by two;
2. exponent reduction: sigma = a^k or b^k (k >= 2), or tau = b^k or a^k,
   moves ``r`` (resp. ``q``) next to the other leaf with M3/M4 (resp. M6/M5);
3. the case on the common color: alpha uses M6/M5, beta the mirrored M3/M4,
   gamma the medial law, 1 uses M1 or M2.

A round either swaps the two leaves outright or produces a term where the
leaves are closer or their paths shorter.  Every non-final move is undone in
reverse order once the leaves are swapped; since all moves are slot swaps and
the leaves are leaves, the undo sequence replays on the swapped term.

:func:`to_quad_form` rewrites a linear term with leaves of all four Klein
colors until it contains a subterm ``((xy)v)(zt)`` or ``(u(yx))(zt)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .groups import ALPHA, BETA, GAMMA, KL, ONE, path_color, vertex_colors
from .rewrite import FWD, MUTATION_LAWS, DerivationTrace, apply_identity_at, search, verify_trace
from .terms import (
    Leaf,
    Node,
    Position,
    Term,
    as_term,
    dual,
    dual_position,
    leaf_positions,
    measures,
    replace_at,
    subterm_at,
)

__all__ = [
    "SwapRequest",
    "InterchangeError",
    "DerivationFailure",
    "SLOTS",
    "interchange_moves",
    "swap_vertices",
    "derive_interchange",
    "swap_leaves",
    "has_quad_shape",
    "find_quad_shape",
    "quad_form_moves",
    "to_quad_form",
]

Move = Tuple[Position, str]

SLOTS: Dict[str, Tuple[Position, Position]] = {
    "M1": ("LR", "RL"),
    "M2": ("LL", "RR"),
    "M3": ("LLR", "R"),
    "M4": ("LRL", "R"),
    "M5": ("L", "RLR"),
    "M6": ("L", "RRL"),
}
MIRROR_RULE = {"M1": "M1", "M2": "M2", "M3": "M6", "M6": "M3", "M4": "M5", "M5": "M4"}

# forbidden factors of a path (L = alpha, R = beta) and the law that cuts them
_COMPRESS = {"LLR": "M3", "LRL": "M4", "RRL": "M6", "RLR": "M5"}

_MAX_ROUNDS = 10_000


class InterchangeError(ValueError):
    """The request violates the preconditions of an interchange."""


class DerivationFailure(RuntimeError):
    """The constructive procedure reached a state it does not handle."""


@dataclass(frozen=True)
class SwapRequest:
    term: Term
    first: Position
    second: Position


# --------------------------------------------------------------------------
# slot moves


def _apply(t: Term, move: Move) -> Term:
    pos, rule = move
    return apply_identity_at(t, MUTATION_LAWS[rule], pos, FWD)[0]


def _track(p: Position, move: Move) -> Position:
    pos, rule = move
    s1, s2 = (pos + s for s in SLOTS[rule])
    if p.startswith(s1):
        return s2 + p[len(s1):]
    if p.startswith(s2):
        return s1 + p[len(s2):]
    return p


def _common_prefix(a: Position, b: Position) -> Position:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return a[:i]


def _is_power(word: str, letter: str) -> bool:
    return len(word) >= 2 and set(word) == {letter}


def _choose(a: Position, b: Position) -> Move:
    """One round of the case analysis, relative to the common subterm.

    ``a`` starts with L and ``b`` with R.
    """
    sigma, tau = a[1:], b[1:]
    for prefix, path in (("L", sigma), ("R", tau)):
        for i in range(len(path) - 2):
            rule = _COMPRESS.get(path[i:i + 3])
            if rule:
                return prefix + path[:i], rule
    if _is_power(sigma, "L"):
        return "", "M3"
    if _is_power(sigma, "R"):
        return "", "M4"
    if _is_power(tau, "R"):
        return "", "M6"
    if _is_power(tau, "L"):
        return "", "M5"

    c = path_color(a)
    if c == ALPHA:
        if sigma == "" and tau[:1] == "R" and set(tau[1:]) == {"L"}:
            return "", "M6"
        if sigma == "" and tau[:1] == "L" and set(tau[1:]) == {"R"}:
            return "", "M5"
    elif c == BETA:
        if tau == "" and sigma[:1] == "L" and set(sigma[1:]) == {"R"}:
            return "", "M3"
        if tau == "" and sigma[:1] == "R" and set(sigma[1:]) == {"L"}:
            return "", "M4"
    elif c == GAMMA:
        if sigma and tau:
            return "", "M1"
    elif c == ONE:
        if sigma and tau:
            return "", "M1" if sigma[0] == tau[0] else "M2"
    raise DerivationFailure(f"no case applies to paths {a!r}, {b!r} of color {c}")


def interchange_moves(t: Term, a: Position, b: Position) -> List[Move]:
    """Mutation-law moves that swap the leaves at ``a`` and ``b``.

    The leaves must have the same Klein color; the term need not be linear
    since only the tree shape is consulted.
    """
    for p in (a, b):
        if not isinstance(subterm_at(t, p), Leaf):
            raise InterchangeError(f"position {p!r} is not a leaf")
    if a == b:
        raise InterchangeError("the two positions coincide")
    if path_color(a) != path_color(b):
        raise InterchangeError("the two leaves have different colors")

    done: List[Move] = []
    final: Optional[Move] = None
    for _ in range(_MAX_ROUNDS):
        w = _common_prefix(a, b)
        ra, rb = a[len(w):], b[len(w):]
        if ra[0] == "R":
            ra, rb = rb, ra
        rel = _choose(ra, rb)
        move = (w + rel[0], rel[1])
        slots = {move[0] + s for s in SLOTS[move[1]]}
        if slots == {a, b}:
            final = move
            break
        t = _apply(t, move)
        a, b = _track(a, move), _track(b, move)
        done.append(move)
    if final is None:
        raise DerivationFailure("round limit exceeded")
    return done + [final] + done[::-1]


def swap_vertices(t: Term, a: Position, b: Position) -> List[Move]:
    """Moves that exchange the subterms at two incomparable same-colored vertices."""
    if a.startswith(b) or b.startswith(a):
        raise InterchangeError(f"positions {a!r} and {b!r} are comparable")
    # the leaves' names are irrelevant to the moves
    shape = replace_at(replace_at(t, a, Leaf("w1")), b, Leaf("w2"))
    return interchange_moves(shape, a, b)


def _moves_to_trace(t: Term, moves: List[Move]) -> DerivationTrace:
    return DerivationTrace.replay(t, [(p, r, FWD) for p, r in moves], MUTATION_LAWS)


def swap_leaves(t: Term, a: Position, b: Position) -> Term:
    ta, tb = subterm_at(t, a), subterm_at(t, b)
    return replace_at(replace_at(t, a, tb), b, ta)


def derive_interchange(r: SwapRequest, fallback_depth: int = 12) -> DerivationTrace:
    """A verified trace over M1-M6 from ``r.term`` to the term with the two
    leaves' variables exchanged.

    If the constructive procedure fails, an iterative-deepening search over
    the mutation laws is tried before giving up.
    """
    t = as_term(r.term)
    m = measures(t)
    if not m.linear:
        raise InterchangeError("term is not linear")
    la, lb = subterm_at(t, r.first), subterm_at(t, r.second)
    if not (isinstance(la, Leaf) and isinstance(lb, Leaf)):
        raise InterchangeError("both positions must address leaves")
    if la == lb:
        raise InterchangeError("both positions hold the same variable")
    if path_color(r.first) != path_color(r.second):
        raise InterchangeError(
            f"leaves {la.name} and {lb.name} have different colors; the interchange law is not in Sigma"
        )
    target = swap_leaves(t, r.first, r.second)
    try:
        tr = _moves_to_trace(t, interchange_moves(t, r.first, r.second))
    except DerivationFailure:
        tr = None
        for depth in range(1, fallback_depth + 1):
            tr = search(t, lambda u: u == target, MUTATION_LAWS, depth, max_nodes=200_000)
            if tr is not None:
                break
        if tr is None:
            raise
    res = verify_trace(tr, MUTATION_LAWS)
    if not res.ok or res.final != target:
        raise DerivationFailure("derived trace does not verify")
    return tr


# --------------------------------------------------------------------------
# quad form


def _is_leaf(t: Term) -> bool:
    return isinstance(t, Leaf)


def has_quad_shape(t: Term) -> bool:
    """Is ``t`` itself ``((xy)v)(zt)`` or ``(u(yx))(zt)`` with x, y, z, t, u variables?"""
    if not (isinstance(t, Node) and isinstance(t.right, Node) and isinstance(t.left, Node)):
        return False
    if not (_is_leaf(t.right.left) and _is_leaf(t.right.right)):
        return False
    q = t.left
    first = isinstance(q.left, Node) and _is_leaf(q.left.left) and _is_leaf(q.left.right)
    second = _is_leaf(q.left) and isinstance(q.right, Node) and _is_leaf(q.right.left) and _is_leaf(q.right.right)
    return first or second


def find_quad_shape(t: Term) -> Optional[Position]:
    """Position of the first (preorder) subterm with a quad shape."""
    stack = [(t, "")]
    while stack:
        u, p = stack.pop()
        if has_quad_shape(u):
            return p
        if isinstance(u, Node):
            stack.append((u.right, p + "R"))
            stack.append((u.left, p + "L"))
    return None


class _Work:
    """A term being rewritten, with the moves applied so far."""

    def __init__(self, t: Term):
        self.term = t
        self.moves: List[Move] = []

    def color(self, p: Position):
        return path_color(p)

    def at(self, p: Position) -> Term:
        return subterm_at(self.term, p)

    def is_leaf(self, p: Position) -> bool:
        return isinstance(self.at(p), Leaf)

    def step(self, move: Move) -> None:
        self.term = _apply(self.term, move)
        self.moves.append(move)

    def swap(self, a: Position, b: Position) -> None:
        if a == b:
            return
        if self.color(a) != self.color(b):
            raise DerivationFailure(f"cannot interchange {a!r} and {b!r}: colors differ")
        for mv in swap_vertices(self.term, a, b):
            self.step(mv)

    def where(self, name: str) -> Position:
        for p, n in leaf_positions(self.term):
            if n == name:
                return p
        raise DerivationFailure(f"variable {name!r} vanished")

    def leaves_of(self, color) -> List[Tuple[Position, str]]:
        return [(p, n) for p, n in leaf_positions(self.term) if self.color(p) == color]

    def internal(self, color, exclude_root: bool = True) -> List[Position]:
        out = []
        for p, c in vertex_colors(self.term).items():
            if c == color and isinstance(self.at(p), Node) and (p or not exclude_root):
                out.append(p)
        return sorted(out, key=lambda p: (len(p), p))

    def place(self, name: str, target: Position, spare: Position) -> None:
        """Double rule: put leaf ``name`` at ``target``, using ``spare`` (a vertex
        of the same color incomparable with ``target``) if ``target`` contains it."""
        p = self.where(name)
        if p == target:
            return
        if p.startswith(target):
            self.swap(target, spare)
            p = self.where(name)
        self.swap(target, p)


def _pick_leaf(w: _Work, color, preferred: Position) -> str:
    u = w.at(preferred) if _exists(w.term, preferred) else None
    if isinstance(u, Leaf) and w.color(preferred) == color:
        return u.name
    leaves = w.leaves_of(color)
    if not leaves:
        raise DerivationFailure(f"no leaf of color {color}")
    return leaves[0][1]


def _exists(t: Term, p: Position) -> bool:
    try:
        subterm_at(t, p)
        return True
    except ValueError:
        return False


def _descend(w: _Work, start: Position, letter: str) -> Position:
    p = start
    while not w.is_leaf(p):
        p += letter
    return p


def _main_case(w: _Work) -> None:
    """Internal alpha- and beta-vertices both exist; one pass of the argument."""
    if w.is_leaf("L"):
        w.swap("L", w.internal(ALPHA)[0])
    if w.is_leaf("R"):
        w.swap("R", w.internal(BETA)[0])
    if w.is_leaf("LR") and w.internal(GAMMA):
        w.swap("LR", w.internal(GAMMA)[0])
    if w.is_leaf("LL"):
        ones = [p for p in w.internal(ONE) if p]
        if ones:
            w.swap("LL", ones[0])

    w.place(_pick_leaf(w, GAMMA, "RL"), "RL", "LR")
    w.place(_pick_leaf(w, ONE, "RR"), "RR", "LL")
    if find_quad_shape(w.term) is not None:
        return

    q_leaf, r_leaf = w.is_leaf("LL"), w.is_leaf("LR")
    if not q_leaf and not r_leaf:
        w.place(_pick_leaf(w, ALPHA, "LLL"), "LLL", "LRR")
        w.place(_pick_leaf(w, BETA, "LLR"), "LLR", "LRL")
        return

    if r_leaf:
        # no internal gamma-vertices anywhere; q = q1 q2
        if q_leaf:
            raise DerivationFailure("both children of L are leaves")
        if not w.is_leaf("LLL"):
            u = _descend(w, "LLL", "L")
            if w.color(u) == ONE:
                w.swap(u[:-1], w.where(_pick_leaf(w, ALPHA, u[:-1])))
                return
            x = u
            v = x[:-1] + "R"
            w.place(_pick_leaf(w, BETA, v), v, "LLR")
            if find_quad_shape(w.term) is not None:
                return
            w.swap(x[:-3] + "R", "R")
            return
        if not w.is_leaf("LLR"):
            u = _descend(w, "LLR", "R")
            if w.color(u) == ONE:
                w.swap(u[:-1], w.where(_pick_leaf(w, BETA, u[:-1])))
                return
            y = u
            w.swap("LLL", y[:-1] + "L")
            w.swap("LL", "RR")
            w.swap("LR", "RL")
            node = "RR" + y[2:-3]
            w.swap(node + "L", "L")
            w.step((node, "M1"))
            w.step((node, "M2"))
            return
        return

    # q_leaf: no internal 1-vertices below the root; r = r1 r2
    if not w.is_leaf("LRL"):
        u = _descend(w, "LRL", "L")
        if w.color(u) == GAMMA:
            w.swap(u[:-1], w.where(_pick_leaf(w, BETA, u[:-1])))
            return
        y = u
        sib = y[:-1] + "R"
        w.place(_pick_leaf(w, ALPHA, sib), sib, "LRR")
        w.swap("LL", "RR")
        w.swap("LR", "RL")
        node = "RL" + y[2:-3]
        w.swap(node + "R", "L")
        return
    if not w.is_leaf("LRR"):
        u = _descend(w, "LRR", "R")
        if w.color(u) == GAMMA:
            w.swap(u[:-1], w.where(_pick_leaf(w, ALPHA, u[:-1])))
            return
        x = u
        w.swap("LRL", x[:-1] + "L")
        node = x[:-3]
        w.swap(node + "L", "R")
        w.step((node, "M1"))
        w.step((node, "M2"))
        return


def quad_form_moves(t: Term) -> Tuple[List[Move], Position]:
    """Moves reaching a quad-shaped subterm, and that subterm's position."""
    colors = {path_color(p) for p, _ in leaf_positions(t)}
    if colors != {ALPHA, BETA, GAMMA, ONE}:
        raise InterchangeError("term must have leaves of all four colors")
    w = _Work(t)
    p = find_quad_shape(t)
    if p is not None:
        return [], p

    if not w.internal(ALPHA):
        # t = x q with the alpha-leaf x on the left; swap it with an alpha-vertex of q
        target = next(p for p, c in vertex_colors(t).items() if c == ALPHA and p.startswith("R"))
        w.swap("L", target)
        sub, sp = quad_form_moves(w.at("R"))
        return w.moves + [("R" + q, r) for q, r in sub], "R" + sp
    if not w.internal(BETA):
        sub, sp = quad_form_moves(dual(t))
        moves = [(dual_position(q), MIRROR_RULE[r]) for q, r in sub]
        pos = dual_position(sp)
        # the mirror image of a quad shape becomes one after M2 then M1
        return moves + [(pos, "M2"), (pos, "M1")], pos

    for _ in range(8):
        _main_case(w)
        p = find_quad_shape(w.term)
        if p is not None:
            return w.moves, p
    raise DerivationFailure("quad form not reached")


def to_quad_form(t: Term, fallback_depth: int = 10) -> Tuple[Term, DerivationTrace]:
    """Rewrite a linear term using all four colors until it has a subterm
    ``((xy)v)(zt)`` or ``(u(yx))(zt)``; returns the new term and the trace."""
    t = as_term(t)
    if not measures(t).linear:
        raise InterchangeError("term is not linear")
    try:
        moves, _ = quad_form_moves(t)
        tr = _moves_to_trace(t, moves)
    except DerivationFailure:
        tr = None
        for depth in range(1, fallback_depth + 1):
            tr = search(t, lambda u: find_quad_shape(u) is not None, MUTATION_LAWS, depth, max_nodes=200_000)
            if tr is not None:
                break
        if tr is None:
            raise
    res = verify_trace(tr, MUTATION_LAWS)
    if not res.ok or find_quad_shape(res.final) is None:
        raise DerivationFailure("quad-form trace does not verify")
    return res.final, tr
