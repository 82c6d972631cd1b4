"""Local equational derivation: one rewrite replaces a single subterm
occurrence by a substitution instance of an identity (either direction).

Derivation traces record every step with its full substitution so that
:func:`verify_trace` can replay them without doing any matching of its own.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .terms import (
    Identity,
    Leaf,
    Node,
    Position,
    PositionError,
    Term,
    as_identity,
    as_term,
    parse,
    parse_identity,
    positions,
    print_canonical,
    replace_at,
    subterm_at,
    substitute,
    variables,
)

__all__ = [
    "IdentitySet",
    "TraceStep",
    "DerivationTrace",
    "NoMatch",
    "RuleError",
    "MUTATION_LAWS",
    "TABLE1",
    "get_rules",
    "match",
    "apply_identity_at",
    "verify_trace",
    "VerifyResult",
    "bounded_search",
    "search",
    "one_step_rewrites",
    "FiniteGroupoid",
    "model_check",
    "FWD",
    "REV",
]

FWD, REV = "fwd", "rev"


class NoMatch(ValueError):
    """The rule's source side does not match at the given position."""


class RuleError(ValueError):
    pass


# --------------------------------------------------------------------------
# identity sets


@dataclass(frozen=True)
class IdentitySet:
    name: str
    rules: Dict[str, Identity]

    def __post_init__(self):
        # dict keys are unique already; guard against empty names
        if any(not n for n in self.rules):
            raise RuleError("identity names must be nonempty")

    def __getitem__(self, name: str) -> Identity:
        try:
            return self.rules[name]
        except KeyError:
            raise RuleError(f"unknown rule {name!r} in {self.name}") from None

    def __iter__(self) -> Iterator[Tuple[str, Identity]]:
        return iter(self.rules.items())

    def __len__(self) -> int:
        return len(self.rules)

    def without(self, *names: str) -> "IdentitySet":
        return IdentitySet(f"{self.name}-{'-'.join(names)}", {k: v for k, v in self.rules.items() if k not in names})

    @classmethod
    def of(cls, name: str, pairs: Iterable[Tuple[str, Union[str, Identity]]]) -> "IdentitySet":
        rules: Dict[str, Identity] = {}
        for n, e in pairs:
            if n in rules:
                raise RuleError(f"duplicate identity name {n!r}")
            rules[n] = as_identity(e)
        return cls(name, rules)


MUTATION_LAWS = IdentitySet.of(
    "M",
    [
        ("M1", "(xy)(zt)=(xz)(yt)"),
        ("M2", "(xy)(zt)=(ty)(zx)"),
        ("M3", "((xy)z)t=((xt)z)y"),
        ("M4", "(x(yz))t=(x(tz))y"),
        ("M5", "x((yz)t)=z((yx)t)"),
        ("M6", "x(y(zt))=z(y(xt))"),
    ],
)

_M = list(MUTATION_LAWS)
_M1, _M2 = _M[0], _M[1]


def _row(name: str, *extra: Tuple[str, str], base=()) -> IdentitySet:
    return IdentitySet.of(name, list(base) + list(extra))


# Finite bases for Sigma_K, keyed by K.  The {1,2,3} row uses the pair
# (x^2 z)y^2=(y^2 z)x^2, (zx^2)y^2=(zy^2)x^2.
TABLE1: Dict[frozenset, IdentitySet] = {
    frozenset({1}): _row("1", ("S1a", "x(yz)=(xy)z"), ("S1b", "xy=yx")),
    frozenset({2}): _row("2", ("S2a", "x(y(z(xy)))=z")),
    frozenset({3}): _row("3", ("S3a", "(((yx)z)y)x=z")),
    frozenset({4}): _row("4", ("S4a", "xy=yx"), ("S4b", "x(xy)=y"), base=[_M1]),
    frozenset({1, 2}): _row("1,2", ("S12a", "(xy)z=(xz)y"), ("S12b", "x(zy)=y(zx)"), base=[_M1]),
    frozenset({1, 3}): _row("1,3", ("S13a", "z(yx)=y(zx)"), ("S13b", "(yz)x=(xz)y"), base=[_M1]),
    frozenset({1, 4}): _row("1,4", ("S14a", "xy=yx"), ("S14b", "x(z(ty))=y(z(tx))"), base=[_M1]),
    frozenset({2, 3}): _row("2,3", ("S23a", "x^2=y^2"), ("S23b", "(xx^2)x^2=x"), base=[_M1]),
    frozenset({2, 4}): _row("2,4", ("S24a", "x(xy)=y"), base=[_M2]),
    frozenset({3, 4}): _row("3,4", ("S34a", "(yx)x=y"), base=[_M2]),
    frozenset({1, 2, 3}): _row("1,2,3", ("S123a", "(x^2y)z^2=(z^2y)x^2"), ("S123b", "(zx^2)y^2=(zy^2)x^2"), base=_M),
    frozenset({1, 2, 4}): _row("1,2,4", ("S124a", "x(x(yz))=(x(zy))x"), base=_M),
    frozenset({1, 3, 4}): _row("1,3,4", ("S134a", "((zy)x)x=x((yz)x)"), base=_M),
    frozenset({2, 3, 4}): _row("2,3,4", ("S234a", "(xy^2)y^2=x"), base=[_M1, _M2]),
}


def get_rules(name: str) -> IdentitySet:
    """``"M"`` for the mutation laws, or the finite basis for a selector such as ``"2,4"``."""
    if name == "M":
        return MUTATION_LAWS
    try:
        key = frozenset(int(v) for v in name.split(","))
    except ValueError:
        raise RuleError(f"unknown rule set {name!r}") from None
    if key not in TABLE1:
        raise RuleError(f"unknown rule set {name!r}")
    return TABLE1[key]


# --------------------------------------------------------------------------
# matching and one-step application


def match(pattern: Term, t: Term, subst: Optional[Dict[str, Term]] = None) -> Optional[Dict[str, Term]]:
    """First-order matching of ``pattern`` against ``t``."""
    subst = {} if subst is None else dict(subst)
    stack = [(pattern, t)]
    while stack:
        p, u = stack.pop()
        if isinstance(p, Leaf):
            bound = subst.get(p.name)
            if bound is None:
                subst[p.name] = u
            elif bound != u:
                return None
        elif isinstance(u, Node):
            stack.append((p.right, u.right))
            stack.append((p.left, u.left))
        else:
            return None
    return subst


def _sides(e: Identity, direction: str) -> Tuple[Term, Term]:
    if direction == FWD:
        return e.lhs, e.rhs
    if direction == REV:
        return e.rhs, e.lhs
    raise RuleError(f"direction must be {FWD!r} or {REV!r}, got {direction!r}")


def apply_identity_at(
    t: Term,
    e: Identity,
    p: Position,
    direction: str = FWD,
    extra: Optional[Dict[str, Term]] = None,
) -> Tuple[Term, Dict[str, Term]]:
    """Rewrite the subterm at ``p`` with ``e`` (or its opposite).

    Variables of the target side that do not occur in the source side must
    be supplied through ``extra``.
    """
    src, tgt = _sides(e, direction)
    sub = subterm_at(t, p)
    seed = {k: v for k, v in (extra or {}).items() if k in set(variables(src))}
    s = match(src, sub, seed)
    if s is None:
        raise NoMatch(f"{print_canonical(src)} does not match {print_canonical(sub)} at {p!r}")
    missing = [v for v in variables(tgt) if v not in s]
    for v in missing:
        if extra is None or v not in extra:
            raise NoMatch(f"variable {v!r} of the target side is unbound")
        s[v] = extra[v]
    return replace_at(t, p, substitute(tgt, s)), s


# --------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceStep:
    position: Position
    rule: str
    direction: str
    substitution: Dict[str, Term] = field(hash=False)

    def to_json(self) -> dict:
        return {
            "pos": self.position,
            "rule": self.rule,
            "dir": self.direction,
            "subst": {k: print_canonical(v) for k, v in sorted(self.substitution.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "TraceStep":
        pos = d["pos"]
        if any(c not in "LR" for c in pos):
            raise ValueError(f"bad position {pos!r}")
        return cls(pos, d["rule"], d["dir"], {k: parse(v) for k, v in d["subst"].items()})


@dataclass(frozen=True)
class DerivationTrace:
    initial: Term
    steps: Tuple[TraceStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def rules_used(self) -> set:
        return {s.rule for s in self.steps}

    def to_json(self) -> dict:
        return {"initial": print_canonical(self.initial), "steps": [s.to_json() for s in self.steps]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, d: dict) -> "DerivationTrace":
        return cls(parse(d["initial"]), tuple(TraceStep.from_json(s) for s in d["steps"]))

    @classmethod
    def loads(cls, text: str) -> "DerivationTrace":
        return cls.from_json(json.loads(text))

    @classmethod
    def replay(cls, initial: Term, moves: Iterable[Tuple[Position, str, str]], rules: IdentitySet) -> "DerivationTrace":
        """Build a trace from ``(position, rule, direction)`` moves."""
        cur = initial
        steps = []
        for pos, name, direction in moves:
            e = rules[name]
            cur, s = apply_identity_at(cur, e, pos, direction)
            steps.append(TraceStep(pos, name, direction, s))
        return cls(initial, tuple(steps))


class VerifyResult(NamedTuple):
    ok: bool
    final: Term
    failed_step: Optional[int] = None
    reason: str = ""


def verify_trace(tr: DerivationTrace, rules: IdentitySet) -> VerifyResult:
    """Replay ``tr`` step by step against ``rules``.

    Each step must name a known rule, bind every variable of that rule, and
    find the instantiated source side at its position.
    """
    cur = tr.initial
    for i, step in enumerate(tr.steps):
        if step.rule not in rules.rules:
            return VerifyResult(False, cur, i, f"unknown rule {step.rule!r}")
        e = rules.rules[step.rule]
        if step.direction == FWD:
            src, tgt = e.lhs, e.rhs
        elif step.direction == REV:
            src, tgt = e.rhs, e.lhs
        else:
            return VerifyResult(False, cur, i, f"bad direction {step.direction!r}")
        needed = set(variables(src)) | set(variables(tgt))
        if not needed <= set(step.substitution):
            return VerifyResult(False, cur, i, "substitution does not bind every rule variable")
        try:
            here = subterm_at(cur, step.position)
        except PositionError as exc:
            return VerifyResult(False, cur, i, str(exc))
        if substitute(src, step.substitution) != here:
            return VerifyResult(False, cur, i, "source instance not found at position")
        cur = replace_at(cur, step.position, substitute(tgt, step.substitution))
    return VerifyResult(True, cur)


# --------------------------------------------------------------------------
# search


def _usable(rules: IdentitySet) -> List[Tuple[str, str, Term, Identity]]:
    out = []
    for name, e in rules:
        for direction in (FWD, REV):
            src, tgt = _sides(e, direction)
            if set(variables(tgt)) <= set(variables(src)):
                out.append((name, direction, src, e))
    return out


def one_step_rewrites(t: Term, rules: IdentitySet) -> Iterator[Tuple[Term, Tuple[Position, str, str]]]:
    """Every term reachable in one step, with the move that reaches it.

    Rule directions whose target side has variables absent from the source
    side are skipped (they would need an arbitrary term for those variables).
    """
    usable = _usable(rules)
    for p in positions(t):
        sub = subterm_at(t, p)
        for name, direction, src, e in usable:
            s = match(src, sub)
            if s is None:
                continue
            tgt = e.rhs if direction == FWD else e.lhs
            yield replace_at(t, p, substitute(tgt, s)), (p, name, direction)


def search(
    start: Term,
    goal: Callable[[Term], bool],
    rules: IdentitySet,
    depth: int,
    max_nodes: Optional[int] = None,
) -> Optional[DerivationTrace]:
    """Breadth-first search for a term satisfying ``goal``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if goal(start):
        return DerivationTrace(start)
    parent: Dict[str, Tuple[Optional[str], Optional[Tuple[Position, str, str]]]] = {print_canonical(start): (None, None)}
    frontier = deque([(start, 0)])
    while frontier:
        t, d = frontier.popleft()
        if d == depth:
            continue
        key_t = print_canonical(t)
        for u, move in one_step_rewrites(t, rules):
            key = print_canonical(u)
            if key in parent:
                continue
            parent[key] = (key_t, move)
            if goal(u):
                moves = []
                k: Optional[str] = key
                while parent[k][0] is not None:
                    prev, mv = parent[k]
                    moves.append(mv)
                    k = prev
                moves.reverse()
                tr = DerivationTrace.replay(start, moves, rules)
                assert verify_trace(tr, rules).ok
                return tr
            if max_nodes is not None and len(parent) > max_nodes:
                return None
            frontier.append((u, d + 1))
    return None


def bounded_search(e: Union[Identity, str], rules: IdentitySet, depth: int) -> Optional[DerivationTrace]:
    """Shortest derivation of ``e`` from ``rules`` within ``depth`` steps."""
    e = as_identity(e)
    target = e.rhs
    return search(e.lhs, lambda t: t == target, rules, depth)


# --------------------------------------------------------------------------
# finite models


@dataclass(frozen=True)
class FiniteGroupoid:
    """Multiplication table on ``{0, ..., k-1}``; row ``i`` lists ``i*j``."""

    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.table)
        if k == 0:
            raise ValueError("a groupoid needs at least one element")
        for row in self.table:
            if len(row) != k:
                raise ValueError("multiplication table must be square")
            for v in row:
                if not 0 <= v < k:
                    raise ValueError(f"table entry {v} out of range [0, {k})")

    @property
    def size(self) -> int:
        return len(self.table)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "FiniteGroupoid":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def loads(cls, text: str) -> "FiniteGroupoid":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise ValueError("first line must hold the size k")
        k = int(lines[0][0])
        rows = lines[1:]
        if len(rows) != k:
            raise ValueError(f"expected {k} table rows, found {len(rows)}")
        return cls.from_rows([[int(v) for v in r] for r in rows])

    def dumps(self) -> str:
        return "\n".join([str(self.size)] + [" ".join(map(str, r)) for r in self.table]) + "\n"

    @classmethod
    def affine(cls, k: int, a: int, b: int) -> "FiniteGroupoid":
        """``x*y = a x + b y`` on Z_k."""
        return cls(tuple(tuple((a * i + b * j) % k for j in range(k)) for i in range(k)))

    def evaluate(self, t: Term, env: Dict[str, int]) -> int:
        if isinstance(t, Leaf):
            return env[t.name]
        return self.table[self.evaluate(t.left, env)][self.evaluate(t.right, env)]


def model_check(m: FiniteGroupoid, e: Union[Identity, str]) -> bool:
    """Does ``e`` hold under every assignment of elements to variables?"""
    e = as_identity(e)
    names = list(dict.fromkeys(variables(e.lhs) + variables(e.rhs)))
    for values in itertools.product(range(m.size), repeat=len(names)):
        env = dict(zip(names, values))
        if m.evaluate(e.lhs, env) != m.evaluate(e.rhs, env):
            return False
    return True
