"""Finite abelian groups Z_m x Z_n with two generators, tree colorings, and
coefficient vectors in the integral group ring.

A term is evaluated with the product ``xy`` read as ``alpha*x + beta*y``.
Its value assigns every variable a group-ring element (``Counter`` from
group elements to integers); identities are compared on these values.

All arithmetic is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, NamedTuple, Tuple, Union

from .terms import Identity, Leaf, Node, Position, Term, as_identity, as_term, leaf_positions, measures

__all__ = [
    "GroupSpec",
    "KL",
    "Element",
    "leaf_colors",
    "vertex_colors",
    "path_color",
    "coefficient_vector",
    "in_sigma",
    "oracle_in_sigma_K",
    "criterion_in_sigma_K",
    "UnsupportedSelector",
    "classify",
    "Classification",
    "parse_group",
    "parse_selector",
    "OPERATIONS",
    "SUPPORTED_SELECTORS",
    "KL_ORDER",
]

Element = Tuple[int, int]
GroupRingElement = Counter
CoefficientVector = Dict[str, Counter]


@dataclass(frozen=True)
class GroupSpec:
    """``Z_m x Z_n`` with ``alpha = (a, a')`` and ``beta = (b, b')``."""

    m: int
    n: int
    alpha: Element
    beta: Element

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"group orders must be positive, got {self.m}, {self.n}")
        object.__setattr__(self, "alpha", self.reduce(self.alpha))
        object.__setattr__(self, "beta", self.reduce(self.beta))
        if len(self.subgroup((self.alpha, self.beta))) != self.order:
            raise ValueError(f"{self.alpha} and {self.beta} do not generate Z_{self.m} x Z_{self.n}")

    @property
    def order(self) -> int:
        return self.m * self.n

    @property
    def identity(self) -> Element:
        return (0, 0)

    @property
    def gamma(self) -> Element:
        return self.mul(self.alpha, self.beta)

    def reduce(self, g: Tuple[int, int]) -> Element:
        return (g[0] % self.m, g[1] % self.n)

    def mul(self, g: Element, h: Element) -> Element:
        return ((g[0] + h[0]) % self.m, (g[1] + h[1]) % self.n)

    def elements(self) -> Iterator[Element]:
        for j in range(self.n):
            for i in range(self.m):
                yield (i, j)

    def subgroup(self, gens: Iterable[Element]) -> FrozenSet[Element]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            g = frontier.pop()
            for h in gens:
                k = self.mul(g, h)
                if k not in seen:
                    seen.add(k)
                    frontier.append(k)
        return frozenset(seen)

    def encode(self) -> str:
        return f"{self.m},{self.n},{self.alpha[0]},{self.alpha[1]},{self.beta[0]},{self.beta[1]}"

    def name(self, g: Element) -> str:
        if self == KL:
            return KL_NAMES[g]
        return f"({g[0]},{g[1]})"


KL = GroupSpec(2, 2, (1, 0), (0, 1))
ALPHA, BETA, GAMMA, ONE = (1, 0), (0, 1), (1, 1), (0, 0)
KL_NAMES = {ALPHA: "alpha", BETA: "beta", GAMMA: "gamma", ONE: "1"}
KL_ORDER = (ALPHA, BETA, GAMMA, ONE)


def parse_group(text: str) -> GroupSpec:
    """Decode ``"m,n,a,a',b,b'"``."""
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"group spec must be six comma-separated integers: {text!r}") from None
    if len(vals) != 6 or any(v < 0 for v in vals):
        raise ValueError(f"group spec must be six comma-separated nonnegative integers: {text!r}")
    m, n, a, a2, b, b2 = vals
    return GroupSpec(m, n, (a, a2), (b, b2))


def parse_selector(text: str) -> FrozenSet[int]:
    try:
        k = frozenset(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"operation selector must list integers 1..4: {text!r}") from None
    if not k or not k <= {1, 2, 3, 4}:
        raise ValueError(f"operation selector must be a nonempty subset of 1..4: {text!r}")
    return k


# --------------------------------------------------------------------------
# colorings


def path_color(p: Position, g: GroupSpec = KL) -> Element:
    """Color reached from the root along ``p``: alpha per L, beta per R."""
    nl = p.count("L")
    nr = len(p) - nl
    a, b = g.alpha, g.beta
    return g.reduce((nl * a[0] + nr * b[0], nl * a[1] + nr * b[1]))


def vertex_colors(t: Term, g: GroupSpec = KL) -> Dict[Position, Element]:
    """Color of every vertex, root colored with the identity."""
    out: Dict[Position, Element] = {}
    stack = [(t, "", g.identity)]
    while stack:
        u, p, c = stack.pop()
        out[p] = c
        if isinstance(u, Node):
            stack.append((u.left, p + "L", g.mul(c, g.alpha)))
            stack.append((u.right, p + "R", g.mul(c, g.beta)))
    return out


def leaf_colors(t: Term, g: GroupSpec = KL) -> Dict[Position, Element]:
    """Color of every leaf position."""
    colors = vertex_colors(t, g)
    return {p: colors[p] for p, _ in leaf_positions(t)}


def _group_ring_value(t: Term, g: GroupSpec, scale: Element, acc: Dict[str, Counter]) -> None:
    if isinstance(t, Leaf):
        acc.setdefault(t.name, Counter())[scale] += 1
    else:
        _group_ring_value(t.left, g, g.mul(scale, g.alpha), acc)
        _group_ring_value(t.right, g, g.mul(scale, g.beta), acc)


def coefficient_vector(t: Union[Term, str], g: GroupSpec = KL) -> CoefficientVector:
    """The value of ``t`` in the group ring: variable -> Counter(element -> int)."""
    acc: Dict[str, Counter] = {}
    _group_ring_value(as_term(t), g, g.identity, acc)
    return acc


def _difference(p: CoefficientVector, q: CoefficientVector) -> Dict[str, Counter]:
    out = {}
    for v in set(p) | set(q):
        d = Counter(p.get(v, Counter()))
        d.subtract(q.get(v, Counter()))
        d = Counter({k: c for k, c in d.items() if c})
        if d:
            out[v] = d
    return out


def in_sigma(e: Union[Identity, str], g: GroupSpec = KL) -> bool:
    """Membership in Sigma(G; alpha, beta): equal coefficient vectors."""
    e = as_identity(e)
    return not _difference(coefficient_vector(e.lhs, g), coefficient_vector(e.rhs, g))


# --------------------------------------------------------------------------
# the four integer operations +-x+-y

OPERATIONS = {1: (1, 1), 2: (1, -1), 3: (-1, 1), 4: (-1, -1)}


def _linear_form(t: Term, a: int, b: int) -> Dict[str, int]:
    if isinstance(t, Leaf):
        return {t.name: 1}
    out: Dict[str, int] = {}
    for child, w in ((t.left, a), (t.right, b)):
        for v, c in _linear_form(child, a, b).items():
            out[v] = out.get(v, 0) + w * c
    return out


def _holds_for(e: Identity, k: int) -> bool:
    a, b = OPERATIONS[k]
    lhs = {v: c for v, c in _linear_form(e.lhs, a, b).items() if c}
    rhs = {v: c for v, c in _linear_form(e.rhs, a, b).items() if c}
    return lhs == rhs


def oracle_in_sigma_K(e: Union[Identity, str], k: Iterable[int]) -> bool:
    """Does ``e`` hold in the integers under every operation f_k, k in K?

    Each f_k is a signed linear form, so both sides evaluate to integer
    combinations of the variables and the identity holds iff they agree.
    """
    e = as_identity(e)
    ks = frozenset(k)
    if not ks or not ks <= set(OPERATIONS):
        raise ValueError(f"bad operation selector {sorted(ks)}")
    return all(_holds_for(e, i) for i in sorted(ks))


class UnsupportedSelector(ValueError):
    """The lattice criterion has no closed form for this K; use the oracle."""


# per-variable coefficient tuples (alpha, beta, gamma, 1) allowed in [p]-[q]
def _lattice_123(v):
    return v[0] == v[1] == -v[2] == -v[3]


def _lattice_124(v):
    return v[0] == -v[1] == v[2] == -v[3]


def _lattice_234(v):
    return v[0] == v[1] == v[2] == v[3]


def _lattice_24(v):
    return v[0] == v[2] and v[1] == v[3]


_LATTICES = {
    frozenset({1, 2, 3}): _lattice_123,
    frozenset({1, 2, 4}): _lattice_124,
    frozenset({2, 3, 4}): _lattice_234,
    frozenset({2, 4}): _lattice_24,
}
# duality exchanges f2 and f3
_DUAL_IMAGES = {
    frozenset({1, 3, 4}): frozenset({1, 2, 4}),
    frozenset({3, 4}): frozenset({2, 4}),
}
SUPPORTED_SELECTORS = frozenset(_LATTICES) | frozenset(_DUAL_IMAGES)


def criterion_in_sigma_K(e: Union[Identity, str], k: Iterable[int]) -> bool:
    """Decide Sigma_K membership from [p]-[q] over Z[KL].

    Raises :class:`UnsupportedSelector` for selectors without a lattice
    description.
    """
    e = as_identity(e)
    ks = frozenset(k)
    if ks in _DUAL_IMAGES:
        e, ks = e.dual(), _DUAL_IMAGES[ks]
    test = _LATTICES.get(ks)
    if test is None:
        raise UnsupportedSelector(f"no lattice criterion for K={sorted(ks)}")
    diff = _difference(coefficient_vector(e.lhs, KL), coefficient_vector(e.rhs, KL))
    return all(test(tuple(d.get(c, 0) for c in KL_ORDER)) for d in diff.values())


# --------------------------------------------------------------------------
# classification


class Classification(NamedTuple):
    balanced: bool
    linear: bool
    interchange: bool
    general_123: bool
    general_124: bool


def _color_multisets(t: Term, g: GroupSpec) -> Dict[str, Counter]:
    colors = leaf_colors(t, g)
    out: Dict[str, Counter] = {}
    for p, name in leaf_positions(t):
        out.setdefault(name, Counter())[colors[p]] += 1
    return out


def _is_general(lc: Dict[str, Counter], rc: Dict[str, Counter], pair_a, pair_b) -> bool:
    for v in set(lc) | set(rc):
        left, right = lc.get(v, Counter()), rc.get(v, Counter())
        nl, nr = sum(left.values()), sum(right.values())
        if nl == 1 and nr == 1:
            if left != right:
                return False
        elif nl == 2 and nr == 2:
            if {frozenset(left.elements()), frozenset(right.elements())} != {pair_a, pair_b}:
                return False
            if len(left) != 2 or len(right) != 2:
                return False
        else:
            return False
    return True


def classify(e: Union[Identity, str], g: GroupSpec = KL) -> Classification:
    """Structural and color classification of an identity.

    ``general_123`` and ``general_124`` are the occurrence/color conditions
    describing the generating identities of Sigma_{1,2,3} and Sigma_{1,2,4};
    they use the colors of ``g`` (the conditions are stated for KL).
    """
    e = as_identity(e)
    ml, mr = measures(e.lhs), measures(e.rhs)
    balanced = ml.occurrences == mr.occurrences
    linear = balanced and ml.linear and mr.linear

    interchange = False
    if ml.linear and mr.linear and balanced:
        lhs_leaves = [n for _, n in leaf_positions(e.lhs)]
        rhs_leaves = [n for _, n in leaf_positions(e.rhs)]
        same_shape = _shape(e.lhs) == _shape(e.rhs)
        diff = [i for i, (a, b) in enumerate(zip(lhs_leaves, rhs_leaves)) if a != b]
        interchange = (
            same_shape
            and len(diff) == 2
            and lhs_leaves[diff[0]] == rhs_leaves[diff[1]]
            and lhs_leaves[diff[1]] == rhs_leaves[diff[0]]
        )

    lc, rc = _color_multisets(e.lhs, g), _color_multisets(e.rhs, g)
    general_123 = _is_general(lc, rc, frozenset({g.alpha, g.beta}), frozenset({g.gamma, g.identity}))
    general_124 = _is_general(lc, rc, frozenset({g.alpha, g.gamma}), frozenset({g.beta, g.identity}))
    return Classification(balanced, linear, interchange, general_123, general_124)


def _shape(t: Term) -> str:
    if isinstance(t, Leaf):
        return "."
    return f"({_shape(t.left)}{_shape(t.right)})"
